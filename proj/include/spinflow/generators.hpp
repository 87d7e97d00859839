#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <tuple>

#include "spinflow/curl_ops.hpp"
#include "spinflow/fields.hpp"
#include "spinflow/transforms.hpp"

namespace spinflow {

enum class SpinSign { positive, negative, mixed };

/// Planar Beltrami wave: amplitude * [cos(xi.x + phase) e2 - sign * sin(xi.x + phase) e3]
/// with e1 = xi/|xi| and a deterministic right-handed frame (e1, e2, e3).
/// Satisfies curl W = sign * |xi| * W and is spin-definite with that sign.
struct BeltramiWaveSpec {
    Int3 k{1, 0, 0};      // integer wavevector on the lattice
    double phase = 0.0;   // in [0, 2*pi)
    int sign = +1;        // +1 positive spin, -1 negative spin
    double amplitude = 1.0;
};

namespace detail {

/// Frame rule: e2 is the canonical axis least aligned with e1 (ties broken
/// in x, y, z order), orthogonalized against e1; e3 = e1 x e2.
inline void beltrami_frame(const Vec3& xi, Vec3& e1, Vec3& e2, Vec3& e3) {
    const double mag = norm3(xi);
    e1 = {xi[0] / mag, xi[1] / mag, xi[2] / mag};
    int best = 0;
    double best_align = 2.0;
    for (int a = 0; a < 3; ++a) {
        const double align = std::fabs(e1[a]);
        if (align < best_align - 1e-15) {
            best_align = align;
            best = a;
        }
    }
    Vec3 axis{0.0, 0.0, 0.0};
    axis[best] = 1.0;
    const double d = dot3(axis, e1);
    e2 = {axis[0] - d * e1[0], axis[1] - d * e1[1], axis[2] - d * e1[2]};
    const double n2 = norm3(e2);
    e2 = {e2[0] / n2, e2[1] / n2, e2[2] / n2};
    e3 = cross3(e1, e2);
}

}  // namespace detail

inline PhysicalVectorField beltrami_wave(const Lattice& lat, const BeltramiWaveSpec& spec) {
    if (spec.k == Int3{0, 0, 0})
        throw std::invalid_argument("beltrami_wave: k must be nonzero");
    for (int a = 0; a < 3; ++a)
        if (3 * std::abs(spec.k[a]) >= lat.n()[a])
            throw UnrepresentableWavevector("beltrami_wave: |k_" + std::to_string(a) +
                                            "| >= n/3 would be dealiased away");
    Vec3 xi{two_pi * spec.k[0] / lat.l()[0], two_pi * spec.k[1] / lat.l()[1],
            two_pi * spec.k[2] / lat.l()[2]};
    Vec3 e1, e2, e3;
    detail::beltrami_frame(xi, e1, e2, e3);

    const auto& n = lat.n();
    PhysicalVectorField out(lat);
    for (int iz = 0; iz < n[2]; ++iz)
        for (int iy = 0; iy < n[1]; ++iy)
            for (int ix = 0; ix < n[0]; ++ix) {
                const Vec3 x = lat.site(ix, iy, iz);
                const double th = dot3(xi, x) + spec.phase;
                const double c = spec.amplitude * std::cos(th);
                const double s = spec.amplitude * double(spec.sign) * std::sin(th);
                for (int comp = 0; comp < 3; ++comp)
                    out.at(comp, ix, iy, iz) = c * e2[comp] - s * e3[comp];
            }
    return out;
}

enum class PaperField { u1, u2, three_wave };

namespace detail {

inline void require_two_pi_box(const Lattice& lat, const char* who) {
    for (int a = 0; a < 3; ++a)
        if (std::fabs(lat.l()[a] - two_pi) > 1e-12)
            throw std::invalid_argument(std::string(who) + " requires a 2*pi box");
}

}  // namespace detail

/// Reference positive-spin fields.
///
/// u1 superposes two unit-frequency-sqrt(2) Beltrami waves and is itself
/// Beltrami: curl u1 = sqrt(2) u1.  u2 mixes spectral radii sqrt(2) and
/// sqrt(5); it still has positive spin but curl(curl u2 x u2) != 0.
/// three_wave superposes three positive-spin waves with linearly
/// independent directions {(1,-1,0), (0,1,1), (1,0,-2)}, zero phases and
/// unit amplitudes; it develops separated vorticity concentrations.
inline PhysicalVectorField paper_field(const Lattice& lat, PaperField which) {
    detail::require_two_pi_box(lat, "paper_field");
    const auto& n = lat.n();
    PhysicalVectorField out(lat);
    const double r2 = std::sqrt(2.0);
    const double r5 = std::sqrt(5.0);
    switch (which) {
        case PaperField::u1:
            for (int iz = 0; iz < n[2]; ++iz)
                for (int iy = 0; iy < n[1]; ++iy)
                    for (int ix = 0; ix < n[0]; ++ix) {
                        const Vec3 x = lat.site(ix, iy, iz);
                        const double a = x[0] - x[1];
                        const double b = x[1] + x[2];
                        out.at(0, ix, iy, iz) = -0.5 * (std::cos(a) + 2.0 * std::sin(b));
                        out.at(1, ix, iy, iz) = -0.5 * (std::cos(a) + r2 * std::cos(b));
                        out.at(2, ix, iy, iz) = 0.5 * r2 * (std::sin(a) + std::cos(b));
                    }
            break;
        case PaperField::u2:
            for (int iz = 0; iz < n[2]; ++iz)
                for (int iy = 0; iy < n[1]; ++iy)
                    for (int ix = 0; ix < n[0]; ++ix) {
                        const Vec3 x = lat.site(ix, iy, iz);
                        const double a = x[0] - 2.0 * x[1];
                        const double b = x[1] + x[2];
                        out.at(0, ix, iy, iz) = -0.2 * (4.0 * std::cos(a) + 5.0 * std::sin(b));
                        out.at(1, ix, iy, iz) = -0.1 * (4.0 * std::cos(a) + 5.0 * r2 * std::cos(b));
                        out.at(2, ix, iy, iz) = 0.1 * (4.0 * r5 * std::sin(a) + 5.0 * r2 * std::cos(b));
                    }
            break;
        case PaperField::three_wave: {
            const Int3 ks[3] = {{1, -1, 0}, {0, 1, 1}, {1, 0, -2}};
            for (const Int3& k : ks) {
                const PhysicalVectorField w =
                    beltrami_wave(lat, BeltramiWaveSpec{k, 0.0, +1, 1.0});
                for (std::size_t i = 0; i < out.data().size(); ++i)
                    out.data()[i] += w.data()[i];
            }
            break;
        }
    }
    return out;
}

/// Scalar stream function depending on (x1, x2) only.
struct StreamFunction2D {
    Lattice lattice;
    std::vector<double> psi;  // one sample per site, constant along x3

    StreamFunction2D(const Lattice& lat, const std::function<double(double, double)>& f)
        : lattice(lat), psi(lat.size()) {
        const auto& n = lat.n();
        for (int iz = 0; iz < n[2]; ++iz)
            for (int iy = 0; iy < n[1]; ++iy)
                for (int ix = 0; ix < n[0]; ++ix) {
                    const Vec3 x = lat.site(ix, iy, iz);
                    psi[lat.flat(ix, iy, iz)] = f(x[0], x[1]);
                }
    }
};

/// 2D flow embedded in 3D: v = (d2 psi, -d1 psi, 0), exactly divergence-free;
/// its vorticity points along x3 only.
inline PhysicalVectorField embed_2d(const StreamFunction2D& sf) {
    const Lattice& lat = sf.lattice;
    PhysicalScalarField ps(lat);
    ps.data() = sf.psi;
    const std::vector<Complex> psi_hat = forward_transform_scalar(ps);
    const auto& n = lat.n();
    const Complex i{0.0, 1.0};
    SpectralVectorField v(lat);
    for (int mz = 0; mz < n[2]; ++mz)
        for (int my = 0; my < n[1]; ++my)
            for (int mx = 0; mx < n[0]; ++mx) {
                if (lat.is_nyquist(mx, my, mz)) continue;
                const Vec3 xi = lat.wavevector(mx, my, mz);
                const std::int64_t f = lat.flat(mx, my, mz);
                v.at(0, f) = i * xi[1] * psi_hat[f];
                v.at(1, f) = -i * xi[0] * psi_hat[f];
            }
    return inverse_transform(v);
}

/// Mode-amplitude profile for seeded random fields.  The default band and
/// slope are a test convenience, not a physical claim.
struct SpectrumProfile {
    double k_min = 1.0;
    double k_max = 4.0;
    double slope = -11.0 / 6.0;

    double amplitude(double kmag) const {
        if (kmag < k_min || kmag > k_max) return 0.0;
        return std::pow(kmag, slope);
    }
};

/// Deterministic divergence-free random field, built directly in the helical
/// basis so a definite sign produces an exactly spin-definite output.
/// The same seed reproduces the same field bit for bit.
inline PhysicalVectorField random_spin_field(const Lattice& lat, std::uint64_t seed,
                                             SpinSign sign,
                                             const SpectrumProfile& spectrum = {}) {
    const auto& n = lat.n();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uphase(0.0, two_pi);
    HelicalCoefficients hc(lat);
    for (int mz = 0; mz < n[2]; ++mz)
        for (int my = 0; my < n[1]; ++my)
            for (int mx = 0; mx < n[0]; ++mx) {
                if (lat.is_nyquist(mx, my, mz)) continue;
                const Int3 k = lat.kvec(mx, my, mz);
                if (std::abs(k[0]) > lat.dealias_limit(0) ||
                    std::abs(k[1]) > lat.dealias_limit(1) ||
                    std::abs(k[2]) > lat.dealias_limit(2))
                    continue;
                // Fill each conjugate pair once, from its canonical member.
                if (std::make_tuple(k[2], k[1], k[0]) <
                    std::make_tuple(-k[2], -k[1], -k[0]))
                    continue;
                const Vec3 xi = lat.wavevector(mx, my, mz);
                const double amp = spectrum.amplitude(norm3(xi));
                if (amp == 0.0) continue;
                Complex tp{0.0, 0.0}, tm{0.0, 0.0};
                if (sign != SpinSign::negative)
                    tp = amp * std::exp(Complex(0.0, uphase(rng)));
                if (sign != SpinSign::positive)
                    tm = amp * std::exp(Complex(0.0, uphase(rng)));
                const std::int64_t f = lat.flat(mx, my, mz);
                const Int3 j = lat.conj_index(mx, my, mz);
                const std::int64_t g = lat.flat(j[0], j[1], j[2]);
                hc.theta_plus[f] = tp;
                hc.theta_minus[f] = tm;
                hc.theta_plus[g] = std::conj(tp);
                hc.theta_minus[g] = std::conj(tm);
            }
    return inverse_transform(helical_reconstruct(hc));
}

}  // namespace spinflow
