#pragma once

#include <Eigen/Core>
#include <array>
#include <stdexcept>
#include <utility>

#include "cmhd/grid.hpp"

namespace cmhd {

/// Real-valued samples on a uniform periodic grid.
///
/// Value semantics throughout: every operation returns a fresh field and
/// never mutates its inputs. Pointwise algebra is Eigen array arithmetic.
struct ScalarField {
    Grid grid;
    Eigen::ArrayXd values;

    explicit ScalarField(const Grid& g) : grid(g), values(Eigen::ArrayXd::Zero(g.size())) {}
    ScalarField(const Grid& g, Eigen::ArrayXd v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.size())
            throw std::invalid_argument("ScalarField: value array does not match grid size");
    }

    double& at(int i, int j, int k) { return values[grid.index(i, j, k)]; }
    double at(int i, int j, int k) const { return values[grid.index(i, j, k)]; }

    /// Sample f(x,y,z) at the grid points.
    template <class F>
    static ScalarField sample(const Grid& g, F&& f) {
        ScalarField out(g);
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j)
                for (int k = 0; k < g.nz; ++k)
                    out.values[g.index(i, j, k)] = f(g.x(i), g.y(j), g.z(k));
        return out;
    }

    static ScalarField constant(const Grid& g, double c) {
        ScalarField out(g);
        out.values.setConstant(c);
        return out;
    }
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

inline ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid, b.grid, "operator+");
    return {a.grid, a.values + b.values};
}
inline ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid, b.grid, "operator-");
    return {a.grid, a.values - b.values};
}
inline ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid, b.grid, "operator*");
    return {a.grid, a.values * b.values};
}
inline ScalarField operator/(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid, b.grid, "operator/");
    return {a.grid, a.values / b.values};
}
inline ScalarField operator*(double c, const ScalarField& a) { return {a.grid, c * a.values}; }
inline ScalarField operator*(const ScalarField& a, double c) { return {a.grid, c * a.values}; }
inline ScalarField operator/(const ScalarField& a, double c) { return {a.grid, a.values / c}; }
inline ScalarField operator+(const ScalarField& a, double c) { return {a.grid, a.values + c}; }
inline ScalarField operator+(double c, const ScalarField& a) { return {a.grid, a.values + c}; }
inline ScalarField operator-(const ScalarField& a, double c) { return {a.grid, a.values - c}; }
inline ScalarField operator-(double c, const ScalarField& a) { return {a.grid, c - a.values}; }
inline ScalarField operator-(const ScalarField& a) { return {a.grid, -a.values}; }

inline ScalarField& operator+=(ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid, b.grid, "operator+=");
    a.values += b.values;
    return a;
}
inline ScalarField& operator-=(ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid, b.grid, "operator-=");
    a.values -= b.values;
    return a;
}

/// Three scalar components on one shared grid.
struct VectorField {
    std::array<ScalarField, 3> comp;

    explicit VectorField(const Grid& g) : comp{ScalarField(g), ScalarField(g), ScalarField(g)} {}
    VectorField(ScalarField cx, ScalarField cy, ScalarField cz)
        : comp{std::move(cx), std::move(cy), std::move(cz)} {
        require_same_grid(comp[0].grid, comp[1].grid, "VectorField");
        require_same_grid(comp[0].grid, comp[2].grid, "VectorField");
    }

    const Grid& grid() const { return comp[0].grid; }
    ScalarField& x() { return comp[0]; }
    ScalarField& y() { return comp[1]; }
    ScalarField& z() { return comp[2]; }
    const ScalarField& x() const { return comp[0]; }
    const ScalarField& y() const { return comp[1]; }
    const ScalarField& z() const { return comp[2]; }
};

inline VectorField operator+(const VectorField& a, const VectorField& b) {
    return {a.comp[0] + b.comp[0], a.comp[1] + b.comp[1], a.comp[2] + b.comp[2]};
}
inline VectorField operator-(const VectorField& a, const VectorField& b) {
    return {a.comp[0] - b.comp[0], a.comp[1] - b.comp[1], a.comp[2] - b.comp[2]};
}
inline VectorField operator-(const VectorField& a) { return {-a.comp[0], -a.comp[1], -a.comp[2]}; }
inline VectorField operator*(double c, const VectorField& a) {
    return {c * a.comp[0], c * a.comp[1], c * a.comp[2]};
}
inline VectorField operator*(const VectorField& a, double c) { return c * a; }
inline VectorField operator*(const ScalarField& s, const VectorField& a) {
    return {s * a.comp[0], s * a.comp[1], s * a.comp[2]};
}
inline VectorField operator*(const VectorField& a, const ScalarField& s) { return s * a; }
inline VectorField operator/(const VectorField& a, const ScalarField& s) {
    return {a.comp[0] / s, a.comp[1] / s, a.comp[2] / s};
}
inline VectorField& operator+=(VectorField& a, const VectorField& b) {
    for (int c = 0; c < 3; ++c) a.comp[c] += b.comp[c];
    return a;
}
inline VectorField& operator-=(VectorField& a, const VectorField& b) {
    for (int c = 0; c < 3; ++c) a.comp[c] -= b.comp[c];
    return a;
}

inline ScalarField sin(const ScalarField& a) { return {a.grid, a.values.sin()}; }
inline ScalarField cos(const ScalarField& a) { return {a.grid, a.values.cos()}; }
inline ScalarField abs(const ScalarField& a) { return {a.grid, a.values.abs()}; }

inline ScalarField dot(const VectorField& a, const VectorField& b) {
    return a.comp[0] * b.comp[0] + a.comp[1] * b.comp[1] + a.comp[2] * b.comp[2];
}

/// Right-handed cross product.
inline VectorField cross(const VectorField& a, const VectorField& b) {
    return {a.comp[1] * b.comp[2] - a.comp[2] * b.comp[1],
            a.comp[2] * b.comp[0] - a.comp[0] * b.comp[2],
            a.comp[0] * b.comp[1] - a.comp[1] * b.comp[0]};
}

inline ScalarField norm_squared(const VectorField& a) { return dot(a, a); }

/// Periodic quadrature: mean of the samples times the box volume.
/// Spectrally exact for band-limited integrands.
inline double integrate(const ScalarField& f) {
    return f.values.sum() * f.grid.cell_volume();
}

inline double max_abs(const ScalarField& f) {
    return f.values.size() ? f.values.abs().maxCoeff() : 0.0;
}
inline double max_abs(const VectorField& v) {
    return std::max(max_abs(v.comp[0]), std::max(max_abs(v.comp[1]), max_abs(v.comp[2])));
}
inline double rms(const ScalarField& f) {
    return std::sqrt(f.values.square().mean());
}
inline double mean(const ScalarField& f) { return f.values.mean(); }

inline bool all_finite(const ScalarField& f) { return f.values.allFinite(); }
inline bool all_finite(const VectorField& v) {
    return all_finite(v.comp[0]) && all_finite(v.comp[1]) && all_finite(v.comp[2]);
}

inline void require_finite(const ScalarField& f, const char* what) {
    if (!all_finite(f)) throw std::invalid_argument(std::string(what) + ": non-finite input");
}
inline void require_finite(const VectorField& v, const char* what) {
    if (!all_finite(v)) throw std::invalid_argument(std::string(what) + ": non-finite input");
}

} // namespace cmhd
