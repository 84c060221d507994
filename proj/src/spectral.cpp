#include "cmhd/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

namespace cmhd {
namespace {

// RAII wrapper over fftw_malloc'd storage so new-array execution keeps the
// alignment the plans were created with.
template <class T>
struct FftwBuffer {
    T* p = nullptr;
    explicit FftwBuffer(std::size_t n) : p(static_cast<T*>(fftw_malloc(sizeof(T) * n))) {
        if (!p) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(p); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

// One pair of r2c/c2r plans per grid shape, created once under a lock.
// fftw_execute_dft_* on caller-owned buffers is thread-safe, so concurrent
// transforms on distinct fields are fine.
class PlanCache {
  public:
    static PlanCache& get(int nx, int ny, int nz) {
        static std::mutex mu;
        static std::map<std::tuple<int, int, int>, std::unique_ptr<PlanCache>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_tuple(nx, ny, nz);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, std::unique_ptr<PlanCache>(new PlanCache(nx, ny, nz))).first;
        return *it->second;
    }

    void r2c(const double* in, std::complex<double>* out) const {
        FftwBuffer<double> rbuf(nreal_);
        FftwBuffer<fftw_complex> cbuf(ncomplex_);
        std::copy(in, in + nreal_, rbuf.p);
        fftw_execute_dft_r2c(fwd_, rbuf.p, cbuf.p);
        auto* src = reinterpret_cast<std::complex<double>*>(cbuf.p);
        std::copy(src, src + ncomplex_, out);
    }

    void c2r(const std::complex<double>* in, double* out) const {
        FftwBuffer<double> rbuf(nreal_);
        FftwBuffer<fftw_complex> cbuf(ncomplex_);
        std::copy(in, in + ncomplex_, reinterpret_cast<std::complex<double>*>(cbuf.p));
        fftw_execute_dft_c2r(bwd_, cbuf.p, rbuf.p);
        std::copy(rbuf.p, rbuf.p + nreal_, out);
    }

    std::size_t nreal() const { return nreal_; }
    std::size_t ncomplex() const { return ncomplex_; }

  private:
    PlanCache(int nx, int ny, int nz)
        : nreal_(std::size_t(nx) * ny * nz), ncomplex_(std::size_t(nx) * ny * (nz / 2 + 1)) {
        FftwBuffer<double> rbuf(nreal_);
        FftwBuffer<fftw_complex> cbuf(ncomplex_);
        // FFTW_ESTIMATE keeps planning deterministic, so repeated runs of the
        // same binary produce bit-identical transforms.
        fwd_ = fftw_plan_dft_r2c_3d(nx, ny, nz, rbuf.p, cbuf.p, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_c2r_3d(nx, ny, nz, cbuf.p, rbuf.p, FFTW_ESTIMATE);
        if (!fwd_ || !bwd_) throw std::runtime_error("FFTW plan creation failed");
    }

    std::size_t nreal_, ncomplex_;
    fftw_plan fwd_, bwd_;
};

// Derivative wavenumber: 2*pi*s/L with the Nyquist bin zeroed.
double deriv_wavenumber(int i, int n, double l) {
    const int s = signed_mode(i, n);
    if (2 * std::abs(s) == n) return 0.0;
    return 2.0 * std::numbers::pi * s / l;
}

bool inside_dealias_mask(const Grid& g, int i, int j, int k) {
    return std::abs(signed_mode(i, g.nx)) <= g.dealias_cap_x() &&
           std::abs(signed_mode(j, g.ny)) <= g.dealias_cap_y() &&
           std::abs(signed_mode(k, g.nz)) <= g.dealias_cap_z();
}

} // namespace

Spectrum forward_transform(const ScalarField& f) {
    const Grid& g = f.grid;
    Spectrum s(g);
    PlanCache::get(g.nx, g.ny, g.nz).r2c(f.values.data(), s.coeff.data());
    s.coeff /= double(g.size());
    return s;
}

ScalarField inverse_transform(const Spectrum& s) {
    const Grid& g = s.grid;
    ScalarField f(g);
    Eigen::ArrayXcd scratch = s.coeff; // c2r destroys its input
    PlanCache::get(g.nx, g.ny, g.nz).c2r(scratch.data(), f.values.data());
    return f;
}

VectorField grad(const ScalarField& f) {
    require_finite(f, "grad");
    const Grid& g = f.grid;
    const Spectrum s = forward_transform(f);
    Spectrum dx(g), dy(g), dz(g);
    const int nzc = g.nz / 2 + 1;
    for (int i = 0; i < g.nx; ++i) {
        const double kx = deriv_wavenumber(i, g.nx, g.lx);
        for (int j = 0; j < g.ny; ++j) {
            const double ky = deriv_wavenumber(j, g.ny, g.ly);
            for (int k = 0; k < nzc; ++k) {
                const double kz = deriv_wavenumber(k, g.nz, g.lz);
                const auto idx = s.index(i, j, k);
                const std::complex<double> ic = std::complex<double>(0.0, 1.0) * s.coeff[idx];
                dx.coeff[idx] = kx * ic;
                dy.coeff[idx] = ky * ic;
                dz.coeff[idx] = kz * ic;
            }
        }
    }
    return {inverse_transform(dx), inverse_transform(dy), inverse_transform(dz)};
}

ScalarField div(const VectorField& v) {
    require_finite(v, "div");
    const Grid& g = v.grid();
    const Spectrum sx = forward_transform(v.x());
    const Spectrum sy = forward_transform(v.y());
    const Spectrum sz = forward_transform(v.z());
    Spectrum out(g);
    const int nzc = g.nz / 2 + 1;
    for (int i = 0; i < g.nx; ++i) {
        const double kx = deriv_wavenumber(i, g.nx, g.lx);
        for (int j = 0; j < g.ny; ++j) {
            const double ky = deriv_wavenumber(j, g.ny, g.ly);
            for (int k = 0; k < nzc; ++k) {
                const double kz = deriv_wavenumber(k, g.nz, g.lz);
                const auto idx = out.index(i, j, k);
                out.coeff[idx] = std::complex<double>(0.0, 1.0) *
                                 (kx * sx.coeff[idx] + ky * sy.coeff[idx] + kz * sz.coeff[idx]);
            }
        }
    }
    return inverse_transform(out);
}

VectorField curl(const VectorField& v) {
    require_finite(v, "curl");
    const Grid& g = v.grid();
    const Spectrum sx = forward_transform(v.x());
    const Spectrum sy = forward_transform(v.y());
    const Spectrum sz = forward_transform(v.z());
    Spectrum cx(g), cy(g), cz(g);
    const int nzc = g.nz / 2 + 1;
    for (int i = 0; i < g.nx; ++i) {
        const double kx = deriv_wavenumber(i, g.nx, g.lx);
        for (int j = 0; j < g.ny; ++j) {
            const double ky = deriv_wavenumber(j, g.ny, g.ly);
            for (int k = 0; k < nzc; ++k) {
                const double kz = deriv_wavenumber(k, g.nz, g.lz);
                const auto idx = cx.index(i, j, k);
                const std::complex<double> ic(0.0, 1.0);
                cx.coeff[idx] = ic * (ky * sz.coeff[idx] - kz * sy.coeff[idx]);
                cy.coeff[idx] = ic * (kz * sx.coeff[idx] - kx * sz.coeff[idx]);
                cz.coeff[idx] = ic * (kx * sy.coeff[idx] - ky * sx.coeff[idx]);
            }
        }
    }
    return {inverse_transform(cx), inverse_transform(cy), inverse_transform(cz)};
}

double divergence_residual(const VectorField& b) {
    const double scale = max_abs(b) * b.grid().max_wavenumber();
    if (scale == 0.0) return 0.0;
    return max_abs(div(b)) / scale;
}

std::array<double, 3> component_means(const VectorField& v) {
    return {mean(v.x()), mean(v.y()), mean(v.z())};
}

VectorField inverse_curl(const VectorField& b) { return inverse_curl(b, InverseCurlTolerances{}); }

VectorField inverse_curl(const VectorField& b, const InverseCurlTolerances& tol) {
    require_finite(b, "inverse_curl");
    const Grid& g = b.grid();
    const double bscale = max_abs(b);
    if (bscale > 0.0) {
        const auto means = component_means(b);
        for (double m : means)
            if (std::abs(m) > tol.mean * bscale)
                throw std::invalid_argument("inverse_curl: B has a nonzero mean component");
        if (divergence_residual(b) > tol.divergence)
            throw std::invalid_argument("inverse_curl: B is not divergence-free");
    }
    const Spectrum sx = forward_transform(b.x());
    const Spectrum sy = forward_transform(b.y());
    const Spectrum sz = forward_transform(b.z());
    Spectrum ax(g), ay(g), az(g);
    const int nzc = g.nz / 2 + 1;
    for (int i = 0; i < g.nx; ++i) {
        const double kx = deriv_wavenumber(i, g.nx, g.lx);
        for (int j = 0; j < g.ny; ++j) {
            const double ky = deriv_wavenumber(j, g.ny, g.ly);
            for (int k = 0; k < nzc; ++k) {
                const double kz = deriv_wavenumber(k, g.nz, g.lz);
                const double k2 = kx * kx + ky * ky + kz * kz;
                const auto idx = ax.index(i, j, k);
                if (k2 == 0.0) continue; // zero mode of A pinned to 0 (Coulomb gauge, zero mean)
                const std::complex<double> ic(0.0, 1.0);
                // A_k = i k x B_k / |k|^2
                ax.coeff[idx] = ic * (ky * sz.coeff[idx] - kz * sy.coeff[idx]) / k2;
                ay.coeff[idx] = ic * (kz * sx.coeff[idx] - kx * sz.coeff[idx]) / k2;
                az.coeff[idx] = ic * (kx * sy.coeff[idx] - ky * sx.coeff[idx]) / k2;
            }
        }
    }
    return {inverse_transform(ax), inverse_transform(ay), inverse_transform(az)};
}

ScalarField dealias(const ScalarField& f) {
    const Grid& g = f.grid;
    Spectrum s = forward_transform(f);
    const int nzc = g.nz / 2 + 1;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < nzc; ++k)
                if (!inside_dealias_mask(g, i, j, k)) s.coeff[s.index(i, j, k)] = 0.0;
    return inverse_transform(s);
}

VectorField dealias(const VectorField& v) {
    return {dealias(v.x()), dealias(v.y()), dealias(v.z())};
}

} // namespace cmhd
