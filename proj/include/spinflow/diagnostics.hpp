#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "spinflow/curl_ops.hpp"
#include "spinflow/products.hpp"

namespace spinflow {

/// Which optional scalar series a diagnostics pass produces.
struct DiagOptions {
    std::vector<int> n_list;          // extra spin Sobolev orders beyond 1 and 3
    std::vector<double> theta_list;   // critical-determinant exponents
    double c0 = 1.0;                  // dynamic-wavenumber constant
};

/// One time-stamped row of every scalar diagnostic.
struct DiagRecord {
    double t = 0.0;
    double energy = 0.0;      // ||u||_{L2}^2
    double enstrophy = 0.0;   // ||curl u||_{L2}^2
    double helicity = 0.0;    // integral of (curl u) . u
    double hhalf_plus = 0.0;  // ||rot_+^{1/2} u||^2
    double hhalf_minus = 0.0;
    double h3half_plus = 0.0;  // ||rot_+^{3/2} u||^2
    double h3half_minus = 0.0;
    std::vector<double> hs_plus;    // ||rot_+^{n/2} u||^2 per configured n
    std::vector<double> hs_minus;
    std::vector<double> det_theta;  // det(curl u, u, |D|^{2 theta} u) integrals
    double det_zero = 0.0;          // det(curl u, u^-, u^+) integral
    double max_u = 0.0;
    double max_omega = 0.0;
    int q_dyn = 0;
    double omega_lowpass_max = 0.0;  // ||omega_{<= Q}||_{L_inf}
    Vec3 momentum{0.0, 0.0, 0.0};
};

/// Spin-resolved squared Sobolev seminorms (||rot_±^{n/2} u||^2).
/// n = 0 recovers the L2 energies of the two components; n = 1 their
/// difference is the helicity.
inline std::pair<double, double> spin_sobolev(const SpectralVectorField& u, int n) {
    const Lattice& lat = u.lattice();
    const auto& sz = lat.n();
    const SpinPair sp = spin_split(u);
    double plus = 0.0, minus = 0.0;
    for (int mz = 0; mz < sz[2]; ++mz)
        for (int my = 0; my < sz[1]; ++my)
            for (int mx = 0; mx < sz[0]; ++mx) {
                const double mag = norm3(lat.wavevector(mx, my, mz));
                const double w = (mag == 0.0) ? (n == 0 ? 1.0 : 0.0)
                                              : std::pow(mag, double(n));
                const std::int64_t f = lat.flat(mx, my, mz);
                double p2 = 0.0, m2 = 0.0;
                for (int c = 0; c < 3; ++c) {
                    p2 += std::norm(sp.plus.at(c, f));
                    m2 += std::norm(sp.minus.at(c, f));
                }
                plus += w * p2;
                minus += w * m2;
            }
    const double vol = lat.volume();
    return {vol * plus, vol * minus};
}

/// Helicity by two independent routes: grid quadrature of omega . u and the
/// spectral difference ||rot_+^{1/2}u||^2 - ||rot_-^{1/2}u||^2.  The two must
/// agree to 1e-10 relative; the spectral value is returned.
inline double helicity(const SpectralVectorField& u) {
    const auto [hp, hm] = spin_sobolev(u, 1);
    const double spectral = hp - hm;
    const PhysicalVectorField up = inverse_transform(u);
    const PhysicalVectorField wp = inverse_transform(curl(u));
    const double physical = fieldops::inner(wp, up);
    const double scale = std::max({std::fabs(spectral), std::fabs(physical), hp + hm});
    if (scale > 0.0 && std::fabs(spectral - physical) > 1e-10 * scale)
        throw Error("helicity: spectral and physical routes disagree: " +
                    std::to_string(spectral) + " vs " + std::to_string(physical));
    return spectral;
}

struct BasicFunctionals {
    double energy;
    double enstrophy;
    Vec3 momentum;
    double max_u;
    double max_omega;
};

inline BasicFunctionals basic_functionals(const SpectralVectorField& u) {
    BasicFunctionals r{};
    r.energy = u.l2_norm_sq();
    const SpectralVectorField w = curl(u);
    r.enstrophy = w.l2_norm_sq();
    const double vol = u.lattice().volume();
    for (int c = 0; c < 3; ++c) r.momentum[c] = vol * u.at(c, 0, 0, 0).real();
    r.max_u = inverse_transform(u).max_magnitude();
    r.max_omega = inverse_transform(w).max_magnitude();
    return r;
}

struct DetResult {
    double integral;  // grid integral of the pointwise determinant
    double l1_mass;   // grid integral of its absolute value
};

/// Critical determinant det(curl u, u, |D|^{2 theta} u), integrated on the
/// grid together with its pointwise L1 mass.  Column order follows the weak
/// form (curl u, u, w); the enstrophy-style ordering (u, curl u, lap u)
/// differs by a column swap and Delta = -|D|^2, two sign flips that cancel.
inline DetResult critical_determinant_full(const SpectralVectorField& u, double theta) {
    const PhysicalVectorField a = inverse_transform(curl(u));
    const PhysicalVectorField b = inverse_transform(u);
    const PhysicalVectorField c =
        inverse_transform(fractional_laplacian_half_pow(u, 2.0 * theta));
    const PhysicalScalarField d = pointwise_det(a, b, c);
    return {grid_integral(d), grid_l1(d)};
}

inline double critical_determinant(const SpectralVectorField& u, double theta) {
    return critical_determinant_full(u, theta).integral;
}

/// Spin-resolved variant det(curl u, u, rot_sign^{2 theta} u).
inline DetResult signed_determinant_full(const SpectralVectorField& u, int sign,
                                         double theta) {
    const PhysicalVectorField a = inverse_transform(curl(u));
    const PhysicalVectorField b = inverse_transform(u);
    const PhysicalVectorField c =
        inverse_transform(signed_curl_pow(u, sign, 2.0 * theta));
    const PhysicalScalarField d = pointwise_det(a, b, c);
    return {grid_integral(d), grid_l1(d)};
}

/// The theta = 0 balance drive det(curl u, u^-, u^+).
inline DetResult det_zero_mode_full(const SpectralVectorField& u) {
    const SpinPair sp = spin_split(u);
    const PhysicalVectorField a = inverse_transform(curl(u));
    const PhysicalVectorField um = inverse_transform(sp.minus);
    const PhysicalVectorField up = inverse_transform(sp.plus);
    const PhysicalScalarField d = pointwise_det(a, um, up);
    return {grid_integral(d), grid_l1(d)};
}

inline double det_zero_mode(const SpectralVectorField& u) {
    return det_zero_mode_full(u).integral;
}

/// Stability weight gamma = ||u1 x u2||^2 / ||u1 - u2||^2 of the geometric
/// weak-strong uniqueness criterion.
inline double weak_strong_gamma(const SpectralVectorField& u1,
                                const SpectralVectorField& u2) {
    const double d2 = fieldops::sub(u1, u2).l2_norm_sq();
    const double scale = std::max(u1.l2_norm_sq(), u2.l2_norm_sq());
    if (d2 < 1e-28 * scale)
        throw IdenticalFields("weak_strong_gamma: fields coincide to round-off");
    const PhysicalVectorField c =
        cross_product(inverse_transform(u1), inverse_transform(u2));
    const double cross2 = grid_integral(pointwise_norm_sq(c));
    return cross2 / d2;
}

struct DynamicWavenumber {
    int q = 0;
    double omega_lowpass_max = 0.0;
    std::vector<double> shell_max;  // ||Delta_p u||_{L_inf} per dyadic shell
};

namespace detail {

/// Sharp dyadic shell index: smallest p >= 0 with |xi| < 2^p.
inline int shell_of(double kmag) {
    if (kmag <= 0.0) return 0;
    int p = int(std::ceil(std::log2(kmag) + 1e-12));
    if (std::ldexp(1.0, p) <= kmag) ++p;  // guard the boundary |xi| = 2^p
    return std::max(p, 0);
}

}  // namespace detail

/// Dynamic wavenumber Q = min{q : for all p > q, 2^{-p} ||Delta_p u||_inf < c0 nu},
/// with Delta_p the sharp annulus 2^{p-1} <= |xi| < 2^p on the lattice, plus
/// the sup norm of the vorticity low-passed to |xi| < 2^Q.
inline DynamicWavenumber dynamic_wavenumber(const SpectralVectorField& u, double nu,
                                            double c0) {
    const Lattice& lat = u.lattice();
    const auto& n = lat.n();
    double kmax = 0.0;
    for (int a = 0; a < 3; ++a)
        kmax += std::pow(two_pi * (n[a] / 2) / lat.l()[a], 2.0);
    kmax = std::sqrt(kmax);
    const int pmax = detail::shell_of(kmax);

    DynamicWavenumber result;
    result.shell_max.assign(pmax + 1, 0.0);
    for (int p = 0; p <= pmax; ++p) {
        SpectralVectorField shell(lat);
        bool any = false;
        for (int mz = 0; mz < n[2]; ++mz)
            for (int my = 0; my < n[1]; ++my)
                for (int mx = 0; mx < n[0]; ++mx) {
                    const double km = norm3(lat.wavevector(mx, my, mz));
                    if (detail::shell_of(km) != p) continue;
                    const std::int64_t f = lat.flat(mx, my, mz);
                    for (int c = 0; c < 3; ++c) shell.at(c, f) = u.at(c, f);
                    any = true;
                }
        result.shell_max[p] = any ? inverse_transform(shell).max_magnitude() : 0.0;
    }

    int q = 0;
    for (int p = pmax; p >= 1; --p) {
        if (std::ldexp(result.shell_max[p], -p) >= c0 * nu) {
            q = p;
            break;
        }
    }
    result.q = q;

    SpectralVectorField low(lat);
    const double cut = std::ldexp(1.0, q);
    for (int mz = 0; mz < n[2]; ++mz)
        for (int my = 0; my < n[1]; ++my)
            for (int mx = 0; mx < n[0]; ++mx) {
                const double km = norm3(lat.wavevector(mx, my, mz));
                if (km >= cut) continue;
                const std::int64_t f = lat.flat(mx, my, mz);
                for (int c = 0; c < 3; ++c) low.at(c, f) = u.at(c, f);
            }
    result.omega_lowpass_max = inverse_transform(curl(low)).max_magnitude();
    return result;
}

/// The five on-average orthogonality relations of the helicity balance,
/// reported as residuals normalized by the factor norms.
struct OrthogonalityReport {
    double convection_vs_vorticity;  // <(u.grad)u, omega>
    double transport_vs_velocity;    // <(u.grad)omega, u>
    double stretching_vs_velocity;   // <(omega.grad)u, u>
    double convection_vs_velocity;   // <(u.grad)u, u>
    double pressure_vs_vorticity;    // <grad p, omega>

    double max_residual() const {
        return std::max({convection_vs_vorticity, transport_vs_velocity,
                         stretching_vs_velocity, convection_vs_velocity,
                         pressure_vs_vorticity});
    }
};

namespace detail {

inline double normalized_inner(const SpectralVectorField& a, const SpectralVectorField& b) {
    const double na = std::sqrt(a.l2_norm_sq());
    const double nb = std::sqrt(b.l2_norm_sq());
    if (na == 0.0 || nb == 0.0) return 0.0;
    return std::fabs(fieldops::inner(a, b).real()) / (na * nb);
}

}  // namespace detail

inline OrthogonalityReport orthogonality_suite(const SpectralVectorField& u_in) {
    const SpectralVectorField u = leray_project(dealias(u_in));
    const SpectralVectorField w = curl(u);
    const SpectralVectorField conv = advect(u, u);    // (u.grad)u
    const SpectralVectorField transp = advect(u, w);  // (u.grad)omega
    const SpectralVectorField stretch = advect(w, u); // (omega.grad)u

    // grad p from the Helmholtz split of the convection term.
    const Lattice& lat = u.lattice();
    const auto& n = lat.n();
    SpectralVectorField gradp(lat);
    for (int mz = 0; mz < n[2]; ++mz)
        for (int my = 0; my < n[1]; ++my)
            for (int mx = 0; mx < n[0]; ++mx) {
                const Vec3 xi = lat.wavevector(mx, my, mz);
                const double q = dot3(xi, xi);
                if (q == 0.0 || lat.is_nyquist(mx, my, mz)) continue;
                const std::int64_t f = lat.flat(mx, my, mz);
                Complex div{0.0, 0.0};
                for (int c = 0; c < 3; ++c) div += xi[c] * conv.at(c, f);
                for (int c = 0; c < 3; ++c) gradp.at(c, f) = -xi[c] * div / q;
            }

    OrthogonalityReport r{};
    r.convection_vs_vorticity = detail::normalized_inner(conv, w);
    r.transport_vs_velocity = detail::normalized_inner(transp, u);
    r.stretching_vs_velocity = detail::normalized_inner(stretch, u);
    r.convection_vs_velocity = detail::normalized_inner(conv, u);
    r.pressure_vs_vorticity = detail::normalized_inner(gradp, w);
    return r;
}

/// Assemble one diagnostics row from the spectral state.
inline DiagRecord compute_record(const SpectralVectorField& u, double t, double nu,
                                 const DiagOptions& opts) {
    DiagRecord r;
    r.t = t;
    const BasicFunctionals bf = basic_functionals(u);
    r.energy = bf.energy;
    r.enstrophy = bf.enstrophy;
    r.momentum = bf.momentum;
    r.max_u = bf.max_u;
    r.max_omega = bf.max_omega;
    const auto [h1p, h1m] = spin_sobolev(u, 1);
    r.hhalf_plus = h1p;
    r.hhalf_minus = h1m;
    r.helicity = h1p - h1m;
    const auto [h3p, h3m] = spin_sobolev(u, 3);
    r.h3half_plus = h3p;
    r.h3half_minus = h3m;
    for (int n : opts.n_list) {
        const auto [p, m] = spin_sobolev(u, n);
        r.hs_plus.push_back(p);
        r.hs_minus.push_back(m);
    }
    for (double theta : opts.theta_list)
        r.det_theta.push_back(critical_determinant(u, theta));
    r.det_zero = det_zero_mode(u);
    const DynamicWavenumber dw = dynamic_wavenumber(u, nu, opts.c0);
    r.q_dyn = dw.q;
    r.omega_lowpass_max = dw.omega_lowpass_max;
    return r;
}

/// Residual time series of the integral balance laws, trapezoid quadrature.
struct BalanceAudit {
    std::vector<double> t;
    std::vector<double> energy_residual;        // relative to E(0)
    std::vector<double> np_minus_nm_residual;   // spin route, relative
    std::vector<double> helicity_balance_residual;  // helicity route, relative
    std::vector<double> gauge_lambdas;
    std::vector<std::vector<double>> gauge_residual;  // one series per lambda
    std::vector<double> n_plus;   // N_+(u, t)
    std::vector<double> n_minus;  // N_-(u, t)
    std::vector<double> np_over_nm;  // N_+ / N_- singularity monitor
    std::vector<double> ld_ratio;  // enstrophy'(t) / enstrophy(t)^3, centered
    double bkm_omega_integral = 0.0;   // trapz of ||omega||_inf
    double ns_bkm_u2_integral = 0.0;   // trapz of ||u||_inf^2
    double cauchy_schwarz_margin = 0.0;  // min_t sqrt(E Z) - |H|
};

namespace detail {

inline std::vector<double> cumulative_trapezoid(const std::vector<double>& f, double dt) {
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i)
        out[i] = out[i - 1] + 0.5 * dt * (f[i - 1] + f[i]);
    return out;
}

}  // namespace detail

inline BalanceAudit balance_audit(const std::vector<DiagRecord>& series, double nu,
                                  const std::vector<double>& gauge_lambdas = {}) {
    if (series.size() < 2) throw NonUniformSeries("balance_audit: need >= 2 records");
    const double dt = series[1].t - series[0].t;
    if (!(dt > 0.0)) throw NonUniformSeries("balance_audit: non-increasing time");
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double step = series[i].t - series[i - 1].t;
        if (std::fabs(step - dt) > 1e-9 * std::max(dt, 1.0))
            throw NonUniformSeries("balance_audit: non-uniform spacing at index " +
                                   std::to_string(i));
    }

    const std::size_t m = series.size();
    std::vector<double> energy(m), enstrophy(m), h3p(m), h3m(m), h1p(m), h1m(m),
        hel(m), maxo(m), maxu2(m);
    for (std::size_t i = 0; i < m; ++i) {
        energy[i] = series[i].energy;
        enstrophy[i] = series[i].enstrophy;
        h3p[i] = series[i].h3half_plus;
        h3m[i] = series[i].h3half_minus;
        h1p[i] = series[i].hhalf_plus;
        h1m[i] = series[i].hhalf_minus;
        hel[i] = series[i].helicity;
        maxo[i] = series[i].max_omega;
        maxu2[i] = series[i].max_u * series[i].max_u;
    }

    BalanceAudit audit;
    audit.gauge_lambdas = gauge_lambdas;
    for (std::size_t i = 0; i < m; ++i) audit.t.push_back(series[i].t);

    const auto ienst = detail::cumulative_trapezoid(enstrophy, dt);
    const auto ih3p = detail::cumulative_trapezoid(h3p, dt);
    const auto ih3m = detail::cumulative_trapezoid(h3m, dt);
    std::vector<double> dh3(m);
    for (std::size_t i = 0; i < m; ++i) dh3[i] = h3p[i] - h3m[i];
    const auto idh3 = detail::cumulative_trapezoid(dh3, dt);

    const double e0 = energy[0];
    const double escale = e0 > 0.0 ? e0 : 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        audit.energy_residual.push_back(
            (energy[i] + 2.0 * nu * ienst[i] - e0) / escale);
        audit.n_plus.push_back(h1p[i] + 2.0 * nu * ih3p[i]);
        audit.n_minus.push_back(h1m[i] + 2.0 * nu * ih3m[i]);
    }
    const double d0 = audit.n_plus[0] - audit.n_minus[0];
    const double sum0 = audit.n_plus[0] + audit.n_minus[0];
    const double dscale = std::fabs(d0) > 1e-14 * sum0 ? std::fabs(d0)
                          : (sum0 > 0.0 ? sum0 : 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        audit.np_minus_nm_residual.push_back(
            ((audit.n_plus[i] - audit.n_minus[i]) - d0) / dscale);
        audit.helicity_balance_residual.push_back(
            ((hel[i] + 2.0 * nu * idh3[i]) - hel[0]) / dscale);
        audit.np_over_nm.push_back(
            audit.n_minus[i] > 0.0 ? audit.n_plus[i] / audit.n_minus[i]
                                   : std::numeric_limits<double>::infinity());
    }

    for (double lambda : gauge_lambdas) {
        std::vector<double> we(m), wz(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double w = std::exp(-2.0 * lambda * (series[i].t - series[0].t));
            we[i] = w * energy[i];
            wz[i] = w * enstrophy[i];
        }
        const auto iwe = detail::cumulative_trapezoid(we, dt);
        const auto iwz = detail::cumulative_trapezoid(wz, dt);
        std::vector<double> res(m);
        for (std::size_t i = 0; i < m; ++i)
            res[i] = (we[i] + 2.0 * lambda * iwe[i] + 2.0 * nu * iwz[i] - e0) / escale;
        audit.gauge_residual.push_back(std::move(res));
    }

    audit.ld_ratio.assign(m, 0.0);
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const double dz = (enstrophy[i + 1] - enstrophy[i - 1]) / (2.0 * dt);
        const double z3 = enstrophy[i] * enstrophy[i] * enstrophy[i];
        audit.ld_ratio[i] = z3 > 0.0 ? dz / z3 : 0.0;
    }

    audit.bkm_omega_integral = detail::cumulative_trapezoid(maxo, dt).back();
    audit.ns_bkm_u2_integral = detail::cumulative_trapezoid(maxu2, dt).back();

    double margin = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < m; ++i)
        margin = std::min(margin,
                          std::sqrt(energy[i] * enstrophy[i]) - std::fabs(hel[i]));
    audit.cauchy_schwarz_margin = margin;
    return audit;
}

}  // namespace spinflow
