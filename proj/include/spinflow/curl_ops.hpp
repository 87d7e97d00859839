#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "spinflow/errors.hpp"
#include "spinflow/fields.hpp"
#include "spinflow/transforms.hpp"

namespace spinflow {

using Cvec3 = std::array<Complex, 3>;
using Cmat3 = std::array<Cvec3, 3>;  // row-major

namespace symbols {

/// Mode symbols of the operators as 3x3 complex matrices.  These are the
/// single source of truth for the per-mode algebra; the field sweeps below
/// apply the same formulas componentwise.

inline Cmat3 identity() {
    return {{{Complex(1), Complex(0), Complex(0)},
             {Complex(0), Complex(1), Complex(0)},
             {Complex(0), Complex(0), Complex(1)}}};
}

/// Orthogonal projection onto xi-perp: I - xi xi^T / |xi|^2.
inline Cmat3 leray(const Vec3& xi) {
    const double q = dot3(xi, xi);
    Cmat3 m = identity();
    if (q == 0.0) return m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] -= xi[i] * xi[j] / q;
    return m;
}

/// Matrix of eta -> i xi x eta.
inline Cmat3 rot(const Vec3& xi) {
    const Complex i{0.0, 1.0};
    return {{{Complex(0), -i * xi[2], i * xi[1]},
             {i * xi[2], Complex(0), -i * xi[0]},
             {-i * xi[1], i * xi[0], Complex(0)}}};
}

/// Spin projector Q_sign(xi) = (leray(xi) + sign * rot(xi)/|xi|) / 2.
/// At xi = 0 the mean mode carries no spin; it is shared half and half so
/// that Q+ + Q- = P holds exactly everywhere.
inline Cmat3 spin_projector(const Vec3& xi, int sign) {
    const double mag = norm3(xi);
    Cmat3 m = leray(xi);
    if (mag == 0.0) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] *= 0.5;
        return m;
    }
    const Cmat3 r = rot(xi);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m[i][j] = 0.5 * (m[i][j] + double(sign) * r[i][j] / mag);
    return m;
}

inline Cvec3 apply(const Cmat3& m, const Cvec3& v) {
    Cvec3 r{};
    for (int i = 0; i < 3; ++i)
        r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    return r;
}

inline Cmat3 multiply(const Cmat3& a, const Cmat3& b) {
    Cmat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

inline double max_abs(const Cmat3& m) {
    double r = 0.0;
    for (const auto& row : m)
        for (const auto& z : row) r = std::max(r, std::abs(z));
    return r;
}

}  // namespace symbols

/// Leray projection: mode-wise removal of the gradient part.
/// The xi = 0 mode passes through unchanged; Nyquist planes are zeroed.
inline SpectralVectorField leray_project(const SpectralVectorField& u) {
    const Lattice& lat = u.lattice();
    const auto& n = lat.n();
    SpectralVectorField out(lat);
    for (int mz = 0; mz < n[2]; ++mz)
        for (int my = 0; my < n[1]; ++my)
            for (int mx = 0; mx < n[0]; ++mx) {
                if (lat.is_nyquist(mx, my, mz)) continue;
                const Vec3 xi = lat.wavevector(mx, my, mz);
                const double q = dot3(xi, xi);
                const std::int64_t f = lat.flat(mx, my, mz);
                const Cvec3 v{u.at(0, f), u.at(1, f), u.at(2, f)};
                if (q == 0.0) {
                    for (int c = 0; c < 3; ++c) out.at(c, f) = v[c];
                    continue;
                }
                const Complex proj = (xi[0] * v[0] + xi[1] * v[1] + xi[2] * v[2]) / q;
                for (int c = 0; c < 3; ++c) out.at(c, f) = v[c] - proj * xi[c];
            }
    return out;
}

/// Curl: mode-wise i xi x coeff.  Output is exactly divergence-free.
inline SpectralVectorField curl(const SpectralVectorField& u) {
    const Lattice& lat = u.lattice();
    const auto& n = lat.n();
    const Complex i{0.0, 1.0};
    SpectralVectorField out(lat);
    for (int mz = 0; mz < n[2]; ++mz)
        for (int my = 0; my < n[1]; ++my)
            for (int mx = 0; mx < n[0]; ++mx) {
                if (lat.is_nyquist(mx, my, mz)) continue;
                const Vec3 xi = lat.wavevector(mx, my, mz);
                const std::int64_t f = lat.flat(mx, my, mz);
                const Cvec3 v{u.at(0, f), u.at(1, f), u.at(2, f)};
                out.at(0, f) = i * (xi[1] * v[2] - xi[2] * v[1]);
                out.at(1, f) = i * (xi[2] * v[0] - xi[0] * v[2]);
                out.at(2, f) = i * (xi[0] * v[1] - xi[1] * v[0]);
            }
    return out;
}

/// Spectral gradient of a scalar coefficient array: (grad f)^ = i xi f^.
inline SpectralVectorField spectral_gradient(const Lattice& lat,
                                             const std::vector<Complex>& f) {
    const auto& n = lat.n();
    const Complex i{0.0, 1.0};
    SpectralVectorField out(lat);
    for (int mz = 0; mz < n[2]; ++mz)
        for (int my = 0; my < n[1]; ++my)
            for (int mx = 0; mx < n[0]; ++mx) {
                if (lat.is_nyquist(mx, my, mz)) continue;
                const Vec3 xi = lat.wavevector(mx, my, mz);
                const std::int64_t f0 = lat.flat(mx, my, mz);
                for (int c = 0; c < 3; ++c) out.at(c, f0) = i * xi[c] * f[f0];
            }
    return out;
}

namespace detail {

inline bool zero_mode_clean(const SpectralVectorField& u, double* mag = nullptr) {
    double m = 0.0;
    for (int c = 0; c < 3; ++c) m = std::max(m, std::abs(u.at(c, 0, 0, 0)));
    if (mag) *mag = m;
    const double scale = u.max_abs();
    return m <= 1e-13 * scale;
}

}  // namespace detail

/// |D|^s: mode-wise |xi|^s with the convention |0|^0 = 1 (s = 0 is the
/// identity, mean included).  For s < 0 the mean mode must vanish.
inline SpectralVectorField fractional_laplacian_half_pow(const SpectralVectorField& u,
                                                         double s) {
    const Lattice& lat = u.lattice();
    const auto& n = lat.n();
    if (s < 0.0 && !detail::zero_mode_clean(u))
        throw NegativePowerAtZeroMode("|D|^s with s < 0 on a field with nonzero mean");
    SpectralVectorField out(lat);
    for (int mz = 0; mz < n[2]; ++mz)
        for (int my = 0; my < n[1]; ++my)
            for (int mx = 0; mx < n[0]; ++mx) {
                if (lat.is_nyquist(mx, my, mz)) continue;
                const double mag = norm3(lat.wavevector(mx, my, mz));
                const std::int64_t f = lat.flat(mx, my, mz);
                double w;
                if (mag == 0.0)
                    w = s == 0.0 ? 1.0 : 0.0;
                else
                    w = std::pow(mag, s);
                for (int c = 0; c < 3; ++c) out.at(c, f) = w * u.at(c, f);
            }
    return out;
}

/// Helical decomposition u = Q+u + Q-u.
/// Non-divergence-free input is projected implicitly (P is inside Q+-).
inline SpinPair spin_split(const SpectralVectorField& u) {
    const Lattice& lat = u.lattice();
    const auto& n = lat.n();
    SpinPair out{SpectralVectorField(lat), SpectralVectorField(lat)};
    for (int mz = 0; mz < n[2]; ++mz)
        for (int my = 0; my < n[1]; ++my)
            for (int mx = 0; mx < n[0]; ++mx) {
                if (lat.is_nyquist(mx, my, mz)) continue;
                const Vec3 xi = lat.wavevector(mx, my, mz);
                const double q = dot3(xi, xi);
                const std::int64_t f = lat.flat(mx, my, mz);
                const Cvec3 v{u.at(0, f), u.at(1, f), u.at(2, f)};
                if (q == 0.0) {
                    for (int c = 0; c < 3; ++c) {
                        out.plus.at(c, f) = 0.5 * v[c];
                        out.minus.at(c, f) = 0.5 * v[c];
                    }
                    continue;
                }
                const double mag = std::sqrt(q);
                const Complex proj = (xi[0] * v[0] + xi[1] * v[1] + xi[2] * v[2]) / q;
                const Complex i{0.0, 1.0};
                const Cvec3 pv{v[0] - proj * xi[0], v[1] - proj * xi[1],
                               v[2] - proj * xi[2]};
                const Cvec3 rv{i * (xi[1] * v[2] - xi[2] * v[1]) / mag,
                               i * (xi[2] * v[0] - xi[0] * v[2]) / mag,
                               i * (xi[0] * v[1] - xi[1] * v[0]) / mag};
                for (int c = 0; c < 3; ++c) {
                    out.plus.at(c, f) = 0.5 * (pv[c] + rv[c]);
                    out.minus.at(c, f) = 0.5 * (pv[c] - rv[c]);
                }
            }
    return out;
}

/// Signed fractional curl rot_sign^s = |D|^s Q_sign.
/// s = 1 coincides with curl on the matching spin component; s = 0 is the
/// plain spin projector.  s < 0 requires a clean mean mode.
inline SpectralVectorField signed_curl_pow(const SpectralVectorField& u, int sign,
                                           double s) {
    SpinPair pair = spin_split(u);
    SpectralVectorField& part = sign > 0 ? pair.plus : pair.minus;
    if (s == 0.0) return part;
    if (s < 0.0 && !detail::zero_mode_clean(part))
        throw NegativePowerAtZeroMode("rot^s with s < 0 on a field with nonzero mean");
    // Clear the round-off mean before weighting so |0|^s never sees it.
    for (int c = 0; c < 3; ++c) part.at(c, std::int64_t(0)) = Complex{0.0, 0.0};
    return fractional_laplacian_half_pow(part, s);
}

inline constexpr double helical_axis_threshold = 1e-8;

/// Unit eigenvectors of the curl symbol: i xi x delta_± = ±|xi| delta_±.
/// Built from a column of Q_+(xi); near the axis xi2 = xi3 = 0 the first
/// column degenerates and the second is used instead.  The free unit phase
/// is fixed by making the first nonzero component real positive, and
/// delta_- = conj(delta_+) exactly.
inline std::pair<Cvec3, Cvec3> helical_basis(const Vec3& xi) {
    const double q = dot3(xi, xi);
    if (q == 0.0) throw ZeroWavevector("helical_basis at xi = 0");
    const Cmat3 qp = symbols::spin_projector(xi, +1);
    const int col = (xi[1] * xi[1] + xi[2] * xi[2] < helical_axis_threshold * q) ? 1 : 0;
    Cvec3 d{qp[0][col], qp[1][col], qp[2][col]};
    double nrm = 0.0;
    for (const Complex& z : d) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    for (Complex& z : d) z /= nrm;
    for (const Complex& z : d) {
        if (std::abs(z) > 1e-8) {
            const Complex phase = std::conj(z) / std::abs(z);
            for (Complex& w : d) w *= phase;
            break;
        }
    }
    const Cvec3 dm{std::conj(d[0]), std::conj(d[1]), std::conj(d[2])};
    return {d, dm};
}

/// Spectral weights of a divergence-free field in the helical basis.
/// theta_±(xi) = <coeff(xi), delta_±(xi)>; theta(0) = 0 by convention.
inline HelicalCoefficients helical_coefficients(const SpectralVectorField& u) {
    const Lattice& lat = u.lattice();
    const auto& n = lat.n();
    HelicalCoefficients out(lat);
    for (int mz = 0; mz < n[2]; ++mz)
        for (int my = 0; my < n[1]; ++my)
            for (int mx = 0; mx < n[0]; ++mx) {
                const std::int64_t f = lat.flat(mx, my, mz);
                if (lat.is_nyquist(mx, my, mz) || f == 0) {
                    out.theta_plus[f] = out.theta_minus[f] = Complex{0.0, 0.0};
                    continue;
                }
                const auto [dp, dm] = helical_basis(lat.wavevector(mx, my, mz));
                Complex tp{0.0, 0.0}, tm{0.0, 0.0};
                for (int c = 0; c < 3; ++c) {
                    tp += u.at(c, f) * std::conj(dp[c]);
                    tm += u.at(c, f) * std::conj(dm[c]);
                }
                out.theta_plus[f] = tp;
                out.theta_minus[f] = tm;
            }
    return out;
}

/// Synthesis from helical weights: coeff = theta_+ delta_+ + theta_- delta_-.
inline SpectralVectorField helical_reconstruct(const HelicalCoefficients& hc) {
    const Lattice& lat = hc.lattice;
    const auto& n = lat.n();
    SpectralVectorField out(lat);
    for (int mz = 0; mz < n[2]; ++mz)
        for (int my = 0; my < n[1]; ++my)
            for (int mx = 0; mx < n[0]; ++mx) {
                const std::int64_t f = lat.flat(mx, my, mz);
                if (lat.is_nyquist(mx, my, mz) || f == 0) continue;
                const Complex tp = hc.theta_plus[f];
                const Complex tm = hc.theta_minus[f];
                if (tp == Complex{0.0, 0.0} && tm == Complex{0.0, 0.0}) continue;
                const auto [dp, dm] = helical_basis(lat.wavevector(mx, my, mz));
                for (int c = 0; c < 3; ++c) out.at(c, f) = tp * dp[c] + tm * dm[c];
            }
    return out;
}

/// Stream vector Psi = |D|^-2 curl u (gauge q = 0): curl Psi = Pu.
/// Requires a vanishing mean mode.
inline SpectralVectorField stream_vector(const SpectralVectorField& u) {
    const Lattice& lat = u.lattice();
    const auto& n = lat.n();
    if (!detail::zero_mode_clean(u))
        throw NegativePowerAtZeroMode("stream_vector requires a mean-free field");
    const Complex i{0.0, 1.0};
    SpectralVectorField out(lat);
    for (int mz = 0; mz < n[2]; ++mz)
        for (int my = 0; my < n[1]; ++my)
            for (int mx = 0; mx < n[0]; ++mx) {
                if (lat.is_nyquist(mx, my, mz)) continue;
                const Vec3 xi = lat.wavevector(mx, my, mz);
                const double q = dot3(xi, xi);
                if (q == 0.0) continue;
                const std::int64_t f = lat.flat(mx, my, mz);
                const Cvec3 v{u.at(0, f), u.at(1, f), u.at(2, f)};
                out.at(0, f) = i * (xi[1] * v[2] - xi[2] * v[1]) / q;
                out.at(1, f) = i * (xi[2] * v[0] - xi[0] * v[2]) / q;
                out.at(2, f) = i * (xi[0] * v[1] - xi[1] * v[0]) / q;
            }
    return out;
}

/// C2 cutoff: 1 inside radius r/2, 0 outside r, quintic smoothstep between.
inline double bump(double dist, double r) {
    if (dist <= 0.5 * r) return 1.0;
    if (dist >= r) return 0.0;
    const double t = (2.0 * dist - r) / r;  // in (0, 1)
    const double s = t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
    return 1.0 - s;
}

/// Spin content of curl(chi * Psi) for an arbitrary cutoff chi: exactly
/// divergence-free by construction.  chi = 1 reduces to spin_split(u).
inline SpinPair localized_spin_with_cutoff(const PhysicalVectorField& u,
                                           const PhysicalScalarField& chi) {
    SpectralVectorField uh = leray_project(forward_transform(u));
    PhysicalVectorField psi = inverse_transform(stream_vector(uh));
    for (int c = 0; c < 3; ++c)
        for (std::int64_t i = 0; i < u.lattice().size(); ++i)
            psi.at(c, i) *= chi.data()[i];
    return spin_split(curl(forward_transform(psi)));
}

/// Local spin content near x0: cut the stream vector with the bump and take
/// the curl, so the localized field is exactly divergence-free, coincides
/// with u inside the half-radius ball, and decays to zero past r.
inline SpinPair localized_spin(const PhysicalVectorField& u, const Vec3& x0, double r) {
    const Lattice& lat = u.lattice();
    for (int a = 0; a < 3; ++a)
        if (!(r > 0.0) || r >= 0.5 * lat.l()[a])
            throw std::invalid_argument("localized_spin: need 0 < r < min box side / 2");
    const auto& n = lat.n();
    PhysicalScalarField chi(lat);
    for (int iz = 0; iz < n[2]; ++iz)
        for (int iy = 0; iy < n[1]; ++iy)
            for (int ix = 0; ix < n[0]; ++ix) {
                const Vec3 x = lat.site(ix, iy, iz);
                double d2 = 0.0;
                for (int a = 0; a < 3; ++a) {
                    double dx = std::fabs(x[a] - x0[a]);
                    dx = std::min(dx, lat.l()[a] - dx);  // periodic distance
                    d2 += dx * dx;
                }
                chi.at(ix, iy, iz) = bump(std::sqrt(d2), r);
            }
    return localized_spin_with_cutoff(u, chi);
}

}  // namespace spinflow
