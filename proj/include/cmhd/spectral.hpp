#pragma once

#include <Eigen/Core>
#include <complex>

#include "cmhd/field.hpp"

namespace cmhd {

/// Fourier coefficients of a real field in the r2c half-spectrum layout:
/// dimensions nx * ny * (nz/2 + 1), z index fastest, unit-amplitude
/// normalization (coefficient of e^{ik.x} for a single mode is its amplitude).
struct Spectrum {
    Grid grid;
    Eigen::ArrayXcd coeff;

    explicit Spectrum(const Grid& g)
        : grid(g), coeff(Eigen::ArrayXcd::Zero(std::int64_t(g.nx) * g.ny * (g.nz / 2 + 1))) {}

    std::int64_t index(int i, int j, int k) const {
        return (std::int64_t(i) * grid.ny + j) * (grid.nz / 2 + 1) + k;
    }
};

/// Signed mode index for position i on an n-point axis: 0..n/2, then negative.
inline int signed_mode(int i, int n) { return i <= n / 2 ? i : i - n; }

Spectrum forward_transform(const ScalarField& f);
ScalarField inverse_transform(const Spectrum& s);

/// Spectral gradient. Exact for band-limited fields up to rounding; the
/// Nyquist mode has no well-defined odd derivative and is dropped.
VectorField grad(const ScalarField& f);
ScalarField div(const VectorField& v);
VectorField curl(const VectorField& v);

/// Laplacian^{-1}-free Coulomb-gauge inversion A_k = i k x B_k / |k|^2 with
/// zero mean. Requires B divergence-free and mean-free; rejects otherwise.
VectorField inverse_curl(const VectorField& b);

/// 2/3-rule spectral truncation: modes with any |signed index| above
/// floor(n/3) are zeroed. Orthogonal projection; idempotent.
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& v);

/// max |k . B_k| over modes, normalized by k_max * ||B||_inf. Zero for a
/// solenoidal field up to rounding.
double divergence_residual(const VectorField& b);

/// Volume means of the three components.
std::array<double, 3> component_means(const VectorField& v);

/// Tolerances accepted by inverse_curl preconditions.
struct InverseCurlTolerances {
    double divergence = 1e-10; // on divergence_residual
    double mean = 1e-10;       // on |mean| / ||B||_inf
};

VectorField inverse_curl(const VectorField& b, const InverseCurlTolerances& tol);

} // namespace cmhd
