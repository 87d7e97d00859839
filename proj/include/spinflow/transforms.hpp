#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <memory>
#include <mutex>

#include "spinflow/errors.hpp"
#include "spinflow/fields.hpp"
#include "spinflow/lattice.hpp"

namespace spinflow {

namespace detail {

/// Cached FFTW plan pair for one grid shape, with dedicated aligned buffers.
/// Plans use FFTW_ESTIMATE so the algorithm choice (and hence round-off) is
/// reproducible run to run on the same platform.
class FftPlans {
  public:
    explicit FftPlans(const Int3& n) : count_(std::int64_t(n[0]) * n[1] * n[2]) {
        in_ = fftw_alloc_complex(count_);
        out_ = fftw_alloc_complex(count_);
        // x is the contiguous axis, so it is the last FFTW dimension.
        fwd_ = fftw_plan_dft_3d(n[2], n[1], n[0], in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_3d(n[2], n[1], n[0], in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~FftPlans() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(in_);
        fftw_free(out_);
    }
    FftPlans(const FftPlans&) = delete;
    FftPlans& operator=(const FftPlans&) = delete;

    void execute(const Complex* src, Complex* dst, bool forward) {
        auto* in = reinterpret_cast<Complex*>(in_);
        auto* out = reinterpret_cast<Complex*>(out_);
        std::copy(src, src + count_, in);
        fftw_execute(forward ? fwd_ : bwd_);
        std::copy(out, out + count_, dst);
    }

    std::int64_t count() const { return count_; }

  private:
    std::int64_t count_;
    fftw_complex* in_;
    fftw_complex* out_;
    fftw_plan fwd_;
    fftw_plan bwd_;
};

/// FFTW's planner is not thread-safe; all plan use is serialized here.
inline std::mutex& fft_mutex() {
    static std::mutex m;
    return m;
}

inline FftPlans& plans_for(const Int3& n) {
    static std::map<Int3, std::unique_ptr<FftPlans>> cache;
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<FftPlans>(n)).first;
    return *it->second;
}

}  // namespace detail

/// Largest Hermitian-symmetry defect max |coeff(-xi) - conj(coeff(xi))|.
inline double hermitian_residual(const SpectralVectorField& u) {
    const Lattice& lat = u.lattice();
    const auto& n = lat.n();
    double r = 0.0;
    for (int c = 0; c < 3; ++c)
        for (int mz = 0; mz < n[2]; ++mz)
            for (int my = 0; my < n[1]; ++my)
                for (int mx = 0; mx < n[0]; ++mx) {
                    const Int3 j = lat.conj_index(mx, my, mz);
                    const Complex d =
                        u.at(c, j[0], j[1], j[2]) - std::conj(u.at(c, mx, my, mz));
                    r = std::max(r, std::abs(d));
                }
    return r;
}

/// Discrete Fourier analysis of a real vector field.
/// Convention: coeff(xi) = (1/N) sum_x u(x) e^{-i xi.x}, so coeff(0) is the
/// mean and Parseval reads sum_x |u|^2 = N * sum_xi |coeff|^2.
/// Hermitian symmetry is exact by construction from real input.
inline SpectralVectorField forward_transform(const PhysicalVectorField& u) {
    const Lattice& lat = u.lattice();
    const auto N = lat.size();
    SpectralVectorField out(lat);
    std::vector<Complex> tmp(N);

    std::lock_guard<std::mutex> lock(detail::fft_mutex());
    auto& plans = detail::plans_for(lat.n());
    for (int c = 0; c < 3; ++c) {
        const double* src = u.component(c);
        for (std::int64_t i = 0; i < N; ++i) tmp[i] = Complex(src[i], 0.0);
        plans.execute(tmp.data(), out.component(c), true);
        Complex* dst = out.component(c);
        const double inv = 1.0 / double(N);
        for (std::int64_t i = 0; i < N; ++i) dst[i] *= inv;
        // Symmetrize exactly: average each mode with the conjugate of its
        // partner.  Real input makes this a round-off-level correction, and
        // downstream multiplier algebra can then rely on exact symmetry.
        const auto& n = lat.n();
        for (int mz = 0; mz < n[2]; ++mz)
            for (int my = 0; my < n[1]; ++my)
                for (int mx = 0; mx < n[0]; ++mx) {
                    const Int3 j = lat.conj_index(mx, my, mz);
                    const std::int64_t a = lat.flat(mx, my, mz);
                    const std::int64_t b = lat.flat(j[0], j[1], j[2]);
                    if (b < a) continue;
                    const Complex za = dst[a];
                    const Complex zb = dst[b];
                    const Complex avg = 0.5 * (za + std::conj(zb));
                    dst[a] = avg;
                    dst[b] = std::conj(avg);
                }
    }
    return out;
}

inline constexpr double hermitian_tolerance = 1e-10;

/// Fourier synthesis back to a real field.
/// Throws SymmetryViolation if the Hermitian defect exceeds 1e-10 relative
/// to the largest coefficient; such a defect means a multiplier upstream
/// produced a field with no real-space counterpart.
inline PhysicalVectorField inverse_transform(const SpectralVectorField& u) {
    const Lattice& lat = u.lattice();
    const double scale = u.max_abs();
    if (scale > 0.0) {
        const double defect = hermitian_residual(u);
        if (defect > hermitian_tolerance * scale)
            throw SymmetryViolation("inverse_transform: Hermitian defect " +
                                    std::to_string(defect) + " exceeds " +
                                    std::to_string(hermitian_tolerance * scale));
    }
    const auto N = lat.size();
    PhysicalVectorField out(lat);
    std::vector<Complex> tmp(N);

    std::lock_guard<std::mutex> lock(detail::fft_mutex());
    auto& plans = detail::plans_for(lat.n());
    for (int c = 0; c < 3; ++c) {
        plans.execute(u.component(c), tmp.data(), false);
        double* dst = out.component(c);
        for (std::int64_t i = 0; i < N; ++i) dst[i] = tmp[i].real();
    }
    return out;
}

/// Scalar-field analogs, used for stream functions and pressure.
inline std::vector<Complex> forward_transform_scalar(const PhysicalScalarField& f) {
    const Lattice& lat = f.lattice();
    const auto N = lat.size();
    std::vector<Complex> tmp(N), out(N);
    for (std::int64_t i = 0; i < N; ++i) tmp[i] = Complex(f.data()[i], 0.0);
    std::lock_guard<std::mutex> lock(detail::fft_mutex());
    detail::plans_for(lat.n()).execute(tmp.data(), out.data(), true);
    const double inv = 1.0 / double(N);
    for (auto& z : out) z *= inv;
    return out;
}

inline PhysicalScalarField inverse_transform_scalar(const Lattice& lat,
                                                    const std::vector<Complex>& coeff) {
    const auto N = lat.size();
    std::vector<Complex> tmp(N);
    {
        std::lock_guard<std::mutex> lock(detail::fft_mutex());
        detail::plans_for(lat.n()).execute(coeff.data(), tmp.data(), false);
    }
    PhysicalScalarField out(lat);
    for (std::int64_t i = 0; i < N; ++i) out.data()[i] = tmp[i].real();
    return out;
}

/// Sharp 2/3-rule spectral truncation: zero every mode with |k_j| > n_j/3.
/// Idempotent orthogonal projection; modes inside the band pass unchanged.
inline SpectralVectorField dealias(const SpectralVectorField& u) {
    const Lattice& lat = u.lattice();
    const auto& n = lat.n();
    const int kx = lat.dealias_limit(0), ky = lat.dealias_limit(1), kz = lat.dealias_limit(2);
    SpectralVectorField out = u;
    for (int c = 0; c < 3; ++c)
        for (int mz = 0; mz < n[2]; ++mz) {
            const bool cutz = std::abs(lat.k_of(mz, 2)) > kz;
            for (int my = 0; my < n[1]; ++my) {
                const bool cuty = cutz || std::abs(lat.k_of(my, 1)) > ky;
                for (int mx = 0; mx < n[0]; ++mx)
                    if (cuty || std::abs(lat.k_of(mx, 0)) > kx)
                        out.at(c, mx, my, mz) = Complex{0.0, 0.0};
            }
        }
    return out;
}

/// Zero the Nyquist planes k_j = -n_j/2 in place.  These modes have no
/// Hermitian partner and are dropped after every multiplier application.
inline void zero_nyquist(SpectralVectorField& u) {
    const Lattice& lat = u.lattice();
    const auto& n = lat.n();
    for (int c = 0; c < 3; ++c)
        for (int mz = 0; mz < n[2]; ++mz)
            for (int my = 0; my < n[1]; ++my)
                for (int mx = 0; mx < n[0]; ++mx)
                    if (lat.is_nyquist(mx, my, mz))
                        u.at(c, mx, my, mz) = Complex{0.0, 0.0};
}

}  // namespace spinflow
