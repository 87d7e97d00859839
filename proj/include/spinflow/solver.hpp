#pragma once

#include <functional>

#include "spinflow/diagnostics.hpp"
#include "spinflow/products.hpp"

namespace spinflow {

struct SolverConfig {
    double nu = 0.1;       // viscosity, L^2/T
    double dt = 1e-3;      // fixed step; CFL advisory dt <= 0.5 h / max|u|
    double t_end = 1.0;
    bool dealias = true;
    int diag_stride = 1;        // emit diagnostics every this many steps
    int checkpoint_stride = 0;  // 0 disables checkpoints
    double blowup_factor = 1e12;

    void validate() const {
        if (!(nu > 0.0)) throw std::invalid_argument("SolverConfig: nu must be > 0");
        if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be > 0");
        if (diag_stride < 1) throw std::invalid_argument("SolverConfig: diag_stride >= 1");
        if (checkpoint_stride < 0)
            throw std::invalid_argument("SolverConfig: checkpoint_stride >= 0");
    }
};

struct SolverState {
    double t = 0.0;
    SpectralVectorField u_hat;
    std::int64_t step_index = 0;
};

/// Rotational-form tendency -P((curl u) x u), evaluated pseudo-spectrally:
/// back to the grid, pointwise cross product, forward, truncation, projection.
/// The mean of (curl u) x u vanishes identically for periodic fields, so its
/// round-off is dropped and the momentum mode is never touched.
inline SpectralVectorField nonlinear_term(const SpectralVectorField& u,
                                          bool dealias_out = true) {
    const PhysicalVectorField up = inverse_transform(u);
    const PhysicalVectorField wp = inverse_transform(curl(u));
    SpectralVectorField out = forward_transform(cross_product(wp, up));
    if (dealias_out) out = dealias(out);
    out = leray_project(out);
    for (auto& z : out.coeff()) z = -z;
    for (int c = 0; c < 3; ++c) out.at(c, std::int64_t(0)) = Complex{0.0, 0.0};
    return out;
}

namespace detail {

/// Per-mode viscous decay factors e^{-nu |xi|^2 tau}.
inline std::vector<double> viscous_factors(const Lattice& lat, double nu, double tau) {
    const auto& n = lat.n();
    std::vector<double> f(lat.size());
    for (int mz = 0; mz < n[2]; ++mz)
        for (int my = 0; my < n[1]; ++my)
            for (int mx = 0; mx < n[0]; ++mx) {
                const Vec3 xi = lat.wavevector(mx, my, mz);
                f[lat.flat(mx, my, mz)] = std::exp(-nu * dot3(xi, xi) * tau);
            }
    return f;
}

inline void scale_modes(SpectralVectorField& u, const std::vector<double>& f) {
    const auto N = u.lattice().size();
    for (int c = 0; c < 3; ++c) {
        Complex* p = u.component(c);
        for (std::int64_t i = 0; i < N; ++i) p[i] *= f[i];
    }
}

inline SpectralVectorField scaled(const SpectralVectorField& u,
                                  const std::vector<double>& f) {
    SpectralVectorField r = u;
    scale_modes(r, f);
    return r;
}

}  // namespace detail

/// One step of integrating-factor (Lawson) RK4.  The viscous operator is
/// diagonal in Fourier space and is integrated exactly by e^{-nu |xi|^2 t};
/// classical RK4 handles the transformed nonlinearity, so a pure Beltrami
/// decay e^{-nu lambda^2 t} W is reproduced to round-off.
inline SolverState step(const SolverState& state, const SolverConfig& cfg) {
    const Lattice& lat = state.u_hat.lattice();
    const double dt = cfg.dt;
    const auto e_half = detail::viscous_factors(lat, cfg.nu, 0.5 * dt);
    const auto e_full = detail::viscous_factors(lat, cfg.nu, dt);

    const SpectralVectorField& un = state.u_hat;
    const SpectralVectorField a = nonlinear_term(un, cfg.dealias);

    SpectralVectorField ua = un;
    fieldops::axpy(ua, 0.5 * dt, a);
    detail::scale_modes(ua, e_half);
    const SpectralVectorField b = nonlinear_term(ua, cfg.dealias);

    SpectralVectorField ub = detail::scaled(un, e_half);
    fieldops::axpy(ub, 0.5 * dt, b);
    const SpectralVectorField c = nonlinear_term(ub, cfg.dealias);

    SpectralVectorField uc = detail::scaled(un, e_full);
    fieldops::axpy(uc, dt, detail::scaled(c, e_half));
    const SpectralVectorField d = nonlinear_term(uc, cfg.dealias);

    SpectralVectorField out = detail::scaled(un, e_full);
    fieldops::axpy(out, dt / 6.0, detail::scaled(a, e_full));
    fieldops::axpy(out, dt / 3.0, detail::scaled(b, e_half));
    fieldops::axpy(out, dt / 3.0, detail::scaled(c, e_half));
    fieldops::axpy(out, dt / 6.0, d);

    const double before = un.max_abs();
    const double after = out.max_abs();
    if (!std::isfinite(after) || (before > 0.0 && after > cfg.blowup_factor * before))
        throw BlowupDetected("step: spectral amplitude grew past the sentinel",
                             state.t + dt);

    return SolverState{state.t + dt, std::move(out), state.step_index + 1};
}

/// Consumers for the time loop; either may be empty.
struct EvolveSinks {
    std::function<void(const DiagRecord&)> on_diag;
    std::function<void(const SolverState&)> on_checkpoint;
};

/// March u0 to t_end, emitting diagnostics and checkpoints on their strides.
/// The initial field is Leray-projected and dealiased once up front.
/// Deterministic for fixed inputs.
inline SolverState evolve(const PhysicalVectorField& u0, const SolverConfig& cfg,
                          const DiagOptions& opts = {}, const EvolveSinks& sinks = {}) {
    cfg.validate();
    SpectralVectorField uh = leray_project(forward_transform(u0));
    if (cfg.dealias) uh = dealias(uh);

    SolverState state{0.0, std::move(uh), 0};
    const double initial_max = state.u_hat.max_abs();
    const auto n_steps = std::int64_t(std::llround(cfg.t_end / cfg.dt));

    const auto emit = [&](const SolverState& s) {
        if (sinks.on_diag && s.step_index % cfg.diag_stride == 0)
            sinks.on_diag(compute_record(s.u_hat, s.t, cfg.nu, opts));
        if (sinks.on_checkpoint && cfg.checkpoint_stride > 0 &&
            s.step_index % cfg.checkpoint_stride == 0)
            sinks.on_checkpoint(s);
    };

    emit(state);
    for (std::int64_t i = 0; i < n_steps; ++i) {
        state = step(state, cfg);
        const double now = state.u_hat.max_abs();
        if (!std::isfinite(now) ||
            (initial_max > 0.0 && now > cfg.blowup_factor * initial_max))
            throw BlowupDetected("evolve: amplitude grew past the sentinel", state.t);
        emit(state);
    }
    return state;
}

/// Pressure from the momentum balance: p solves lap p = -div((u.grad)u) with
/// zero mean, i.e. p^ = i xi . N^ / |xi|^2.  Using (u.grad)u =
/// (curl u) x u + grad(|u|^2)/2 this reduces to two grid products.
/// High pressure sits where the flow stagnates, low pressure on vortex cores.
inline std::vector<Complex> pressure_recover(const SpectralVectorField& u) {
    const Lattice& lat = u.lattice();
    const auto& n = lat.n();
    const PhysicalVectorField up = inverse_transform(u);
    const PhysicalVectorField wp = inverse_transform(curl(u));
    const SpectralVectorField cross = forward_transform(cross_product(wp, up));
    const std::vector<Complex> speed2 = forward_transform_scalar(pointwise_norm_sq(up));

    std::vector<Complex> p(lat.size(), Complex{0.0, 0.0});
    const Complex i{0.0, 1.0};
    const int kx = lat.dealias_limit(0), ky = lat.dealias_limit(1), kz = lat.dealias_limit(2);
    for (int mz = 0; mz < n[2]; ++mz)
        for (int my = 0; my < n[1]; ++my)
            for (int mx = 0; mx < n[0]; ++mx) {
                if (lat.is_nyquist(mx, my, mz)) continue;
                const Int3 k = lat.kvec(mx, my, mz);
                if (std::abs(k[0]) > kx || std::abs(k[1]) > ky || std::abs(k[2]) > kz)
                    continue;  // quadratic sources are retruncated
                const Vec3 xi = lat.wavevector(mx, my, mz);
                const double q = dot3(xi, xi);
                if (q == 0.0) continue;  // p^(0) = 0
                const std::int64_t f = lat.flat(mx, my, mz);
                Complex div_cross{0.0, 0.0};
                for (int c = 0; c < 3; ++c) div_cross += xi[c] * cross.at(c, f);
                p[f] = i * div_cross / q - 0.5 * speed2[f];
            }
    return p;
}

}  // namespace spinflow
