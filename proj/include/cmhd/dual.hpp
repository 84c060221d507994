#pragma once

#include "cmhd/spectral.hpp"

namespace cmhd {

/// Forward-mode linearization through the field algebra: a field paired with
/// its directional derivative along some seed perturbation. Evaluating a
/// formula on duals yields the formula's value and its exact linearization
/// in one pass (the chain rule applied operation by operation), with no
/// finite-difference noise.
struct DualScalarField {
    ScalarField value;
    ScalarField deriv;

    static DualScalarField seeded(ScalarField v, ScalarField d) {
        require_same_grid(v.grid, d.grid, "DualScalarField");
        return {std::move(v), std::move(d)};
    }
    static DualScalarField constant(ScalarField v) {
        ScalarField zero(v.grid);
        return {std::move(v), std::move(zero)};
    }
};

struct DualVectorField {
    VectorField value;
    VectorField deriv;

    static DualVectorField constant(VectorField v) {
        VectorField zero(v.grid());
        return {std::move(v), std::move(zero)};
    }
};

inline DualScalarField operator+(const DualScalarField& a, const DualScalarField& b) {
    return {a.value + b.value, a.deriv + b.deriv};
}
inline DualScalarField operator-(const DualScalarField& a, const DualScalarField& b) {
    return {a.value - b.value, a.deriv - b.deriv};
}
inline DualScalarField operator-(const DualScalarField& a) { return {-a.value, -a.deriv}; }
inline DualScalarField operator*(const DualScalarField& a, const DualScalarField& b) {
    return {a.value * b.value, a.value * b.deriv + a.deriv * b.value};
}
inline DualScalarField operator/(const DualScalarField& a, const DualScalarField& b) {
    ScalarField v = a.value / b.value;
    return {v, a.deriv / b.value - (a.value / b.value) / b.value * b.deriv};
}
inline DualScalarField operator*(double c, const DualScalarField& a) {
    return {c * a.value, c * a.deriv};
}
inline DualScalarField operator*(const DualScalarField& a, double c) { return c * a; }
inline DualScalarField operator+(const DualScalarField& a, double c) {
    return {a.value + c, a.deriv};
}
inline DualScalarField operator-(const DualScalarField& a, double c) {
    return {a.value - c, a.deriv};
}
inline DualScalarField operator-(double c, const DualScalarField& a) {
    return {c - a.value, -a.deriv};
}

inline DualScalarField sin(const DualScalarField& a) {
    return {{a.value.grid, a.value.values.sin()}, {a.value.grid, a.value.values.cos() * a.deriv.values}};
}
inline DualScalarField cos(const DualScalarField& a) {
    return {{a.value.grid, a.value.values.cos()}, {a.value.grid, -a.value.values.sin() * a.deriv.values}};
}

inline DualVectorField operator+(const DualVectorField& a, const DualVectorField& b) {
    return {a.value + b.value, a.deriv + b.deriv};
}
inline DualVectorField operator-(const DualVectorField& a, const DualVectorField& b) {
    return {a.value - b.value, a.deriv - b.deriv};
}
inline DualVectorField operator-(const DualVectorField& a) { return {-a.value, -a.deriv}; }
inline DualVectorField operator*(const DualScalarField& s, const DualVectorField& a) {
    return {s.value * a.value, s.value * a.deriv + s.deriv * a.value};
}
inline DualVectorField operator*(const DualVectorField& a, const DualScalarField& s) {
    return s * a;
}
inline DualVectorField operator*(double c, const DualVectorField& a) {
    return {c * a.value, c * a.deriv};
}
inline DualScalarField dot(const DualVectorField& a, const DualVectorField& b) {
    return {dot(a.value, b.value), dot(a.value, b.deriv) + dot(a.deriv, b.value)};
}
inline DualVectorField cross(const DualVectorField& a, const DualVectorField& b) {
    return {cross(a.value, b.value), cross(a.value, b.deriv) + cross(a.deriv, b.value)};
}

// Linear operators act on value and derivative alike.
inline DualVectorField grad(const DualScalarField& a) { return {grad(a.value), grad(a.deriv)}; }
inline DualScalarField div(const DualVectorField& a) { return {div(a.value), div(a.deriv)}; }
inline DualVectorField curl(const DualVectorField& a) { return {curl(a.value), curl(a.deriv)}; }
inline DualScalarField dealias(const DualScalarField& a) {
    return {dealias(a.value), dealias(a.deriv)};
}
inline DualVectorField dealias(const DualVectorField& a) {
    return {dealias(a.value), dealias(a.deriv)};
}

// Uniform construction helpers so formulas can be written once and evaluated
// on plain or dual fields.
inline ScalarField ones_like(const ScalarField& f) { return ScalarField::constant(f.grid, 1.0); }
inline DualScalarField ones_like(const DualScalarField& f) {
    return DualScalarField::constant(ScalarField::constant(f.value.grid, 1.0));
}
inline ScalarField zeros_like(const ScalarField& f) { return ScalarField(f.grid); }
inline DualScalarField zeros_like(const DualScalarField& f) {
    return DualScalarField::constant(ScalarField(f.value.grid));
}

template <class S>
struct vector_of;
template <>
struct vector_of<ScalarField> {
    using type = VectorField;
};
template <>
struct vector_of<DualScalarField> {
    using type = DualVectorField;
};
template <class S>
using vector_of_t = typename vector_of<S>::type;

} // namespace cmhd
