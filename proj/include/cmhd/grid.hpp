#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cmhd {

/// Uniform periodic grid on a 3-torus [0,Lx) x [0,Ly) x [0,Lz).
///
/// Axis counts must be even and at least 4: the real-to-complex transform
/// symmetry and the 2/3 dealiasing mask both rely on it.
struct Grid {
    int nx, ny, nz;
    double lx, ly, lz;

    Grid(int nx_, int ny_, int nz_,
         double lx_ = 2.0 * std::numbers::pi,
         double ly_ = 2.0 * std::numbers::pi,
         double lz_ = 2.0 * std::numbers::pi)
        : nx(nx_), ny(ny_), nz(nz_), lx(lx_), ly(ly_), lz(lz_) {
        auto check_n = [](int n, const char* axis) {
            if (n < 4 || n % 2 != 0)
                throw std::invalid_argument(std::string("Grid: axis count for ") + axis +
                                            " must be even and >= 4, got " + std::to_string(n));
        };
        check_n(nx, "x");
        check_n(ny, "y");
        check_n(nz, "z");
        if (!(lx > 0.0) || !(ly > 0.0) || !(lz > 0.0))
            throw std::invalid_argument("Grid: box lengths must be strictly positive");
    }

    static Grid cubic(int n, double l = 2.0 * std::numbers::pi) { return Grid(n, n, n, l, l, l); }

    std::int64_t size() const { return std::int64_t(nx) * ny * nz; }
    double volume() const { return lx * ly * lz; }
    double cell_volume() const { return volume() / double(size()); }

    double dx() const { return lx / nx; }
    double dy() const { return ly / ny; }
    double dz() const { return lz / nz; }
    double min_spacing() const { return std::min(dx(), std::min(dy(), dz())); }

    double x(int i) const { return lx * i / nx; }
    double y(int j) const { return ly * j / ny; }
    double z(int k) const { return lz * k / nz; }

    /// Flat index; z runs fastest (matches the r2c transform layout).
    std::int64_t index(int i, int j, int k) const {
        return (std::int64_t(i) * ny + j) * nz + k;
    }

    /// Largest retained mode index per axis under the 2/3 rule.
    int dealias_cap_x() const { return nx / 3; }
    int dealias_cap_y() const { return ny / 3; }
    int dealias_cap_z() const { return nz / 3; }

    /// Largest wavenumber magnitude representable after dealiasing.
    double max_wavenumber() const {
        const double kx = 2.0 * std::numbers::pi / lx * dealias_cap_x();
        const double ky = 2.0 * std::numbers::pi / ly * dealias_cap_y();
        const double kz = 2.0 * std::numbers::pi / lz * dealias_cap_z();
        return std::sqrt(kx * kx + ky * ky + kz * kz);
    }

    bool operator==(const Grid& o) const {
        return nx == o.nx && ny == o.ny && nz == o.nz && lx == o.lx && ly == o.ly && lz == o.lz;
    }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

} // namespace cmhd
