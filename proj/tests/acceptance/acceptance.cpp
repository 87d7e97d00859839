// Acceptance suite: one criterion per function, one pass/fail line each.
// Usage: acceptance [criterion-number]

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "spinflow/spinflow.hpp"

using namespace spinflow;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& what) {
        detail += (detail.empty() ? "" : "; ") + what;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

SpectralVectorField random_divfree(const Lattice& lat, std::uint64_t seed) {
    return forward_transform(random_spin_field(lat, seed, SpinSign::mixed));
}

std::vector<Vec3> random_wavevectors(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-6.0, 6.0);
    std::uniform_real_distribution<double> tiny(-1e-7, 1e-7);
    std::vector<Vec3> out;
    for (int i = 0; i < count; ++i) {
        Vec3 xi{d(rng), d(rng), d(rng)};
        if (i % 4 == 0) xi = {d(rng) + 2.0, tiny(rng), tiny(rng)};
        if (norm3(xi) < 1e-2) xi[2] += 1.0;
        out.push_back(xi);
    }
    return out;
}

double rel_l2(const SpectralVectorField& a, const SpectralVectorField& b) {
    return std::sqrt(fieldops::sub(a, b).l2_norm_sq() /
                     std::max(b.l2_norm_sq(), 1e-300));
}

// --------------------------------------------------------------------------
// 1. Operator algebra: projector and signed-curl identities, mode- and
//    field-wise.
// --------------------------------------------------------------------------
Outcome criterion1() {
    Outcome out;
    double mode_res = 0.0;
    for (const Vec3& xi : random_wavevectors(100, 11)) {
        const Cmat3 p = symbols::leray(xi);
        const Cmat3 qp = symbols::spin_projector(xi, +1);
        const Cmat3 qm = symbols::spin_projector(xi, -1);
        const Cmat3 rot = symbols::rot(xi);
        const double mag = norm3(xi);

        const Cmat3 qp2 = symbols::multiply(qp, qp);
        const Cmat3 qpm = symbols::multiply(qp, qm);
        const Cmat3 qmp = symbols::multiply(qm, qp);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                mode_res = std::max(mode_res, std::abs(qp2[a][b] - qp[a][b]));
                mode_res = std::max(mode_res, std::abs(qpm[a][b]));
                mode_res = std::max(mode_res, std::abs(qmp[a][b]));
                mode_res = std::max(mode_res,
                                    std::abs(qp[a][b] + qm[a][b] - p[a][b]));
                // rot(xi) = |xi| (Q+ - Q-): the diagonalization.
                mode_res = std::max(
                    mode_res, std::abs(rot[a][b] - mag * (qp[a][b] - qm[a][b])) / mag);
            }
    }
    out.require(mode_res <= 1e-13, "mode residual " + fmt(mode_res));

    const Lattice lat({32, 32, 32});
    const SpectralVectorField u = random_divfree(lat, 21);
    const double scale = u.max_abs();
    double field_res = 0.0;

    const SpectralVectorField rp = signed_curl_pow(u, +1, 1.0);
    const SpectralVectorField rm = signed_curl_pow(u, -1, 1.0);
    field_res = std::max(field_res,
                         fieldops::max_abs_diff(curl(u), fieldops::sub(rp, rm)) / scale);

    const SpinPair sp = spin_split(u);
    field_res = std::max(
        field_res, fieldops::max_abs_diff(
                       curl(sp.plus), fractional_laplacian_half_pow(sp.plus, 1.0)) /
                       scale);
    field_res = std::max(
        field_res,
        fieldops::max_abs_diff(curl(sp.minus),
                               fieldops::scale(
                                   fractional_laplacian_half_pow(sp.minus, 1.0), -1.0)) /
            scale);
    field_res = std::max(field_res, signed_curl_pow(rp, -1, 1.0).max_abs() / scale);
    field_res = std::max(
        field_res, fieldops::max_abs_diff(curl(curl(u)),
                                          fractional_laplacian_half_pow(u, 2.0)) /
                       (scale * 30.0));  // second-order operator scale
    out.require(field_res <= 1e-12, "field residual " + fmt(field_res));
    out.note("mode " + fmt(mode_res) + ", field " + fmt(field_res));
    return out;
}

// --------------------------------------------------------------------------
// 2. Spin-definiteness of the reference fields.
// --------------------------------------------------------------------------
Outcome criterion2() {
    Outcome out;
    const Lattice lat({16, 16, 16});
    const SpectralVectorField u1 = forward_transform(paper_field(lat, PaperField::u1));
    const double beltrami_rel = rel_l2(curl(u1), fieldops::scale(u1, std::sqrt(2.0)));
    out.require(beltrami_rel <= 1e-10, "curl u1 residual " + fmt(beltrami_rel));

    const SpinPair sp1 = spin_split(u1);
    const double ratio = sp1.minus.l2_norm_sq() / sp1.plus.l2_norm_sq();
    out.require(ratio <= 1e-20, "u1 minus/plus energy " + fmt(ratio));

    const SpectralVectorField u2 = forward_transform(paper_field(lat, PaperField::u2));
    const auto& n = lat.n();
    bool support_ok = true, has2 = false, has5 = false;
    const double scale = u2.max_abs();
    for (int mz = 0; mz < n[2]; ++mz)
        for (int my = 0; my < n[1]; ++my)
            for (int mx = 0; mx < n[0]; ++mx) {
                double mag = 0.0;
                for (int c = 0; c < 3; ++c) mag += std::abs(u2.at(c, mx, my, mz));
                if (mag <= 1e-13 * scale) continue;
                const Int3 k = lat.kvec(mx, my, mz);
                const int k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                if (k2 == 2) has2 = true;
                else if (k2 == 5) has5 = true;
                else support_ok = false;
            }
    out.require(support_ok && has2 && has5, "u2 spectral support not {sqrt2, sqrt5}");
    out.note("curl residual " + fmt(beltrami_rel) + ", spin leak " + fmt(ratio));
    return out;
}

// --------------------------------------------------------------------------
// 3. Exact-solution regression and RK self-convergence order.
// --------------------------------------------------------------------------
Outcome criterion3() {
    Outcome out;
    const Lattice lat({16, 16, 16});
    const PhysicalVectorField w0 =
        beltrami_wave(lat, BeltramiWaveSpec{{1, 0, 0}, 0.0, +1, 1.0});
    SolverConfig cfg;
    cfg.nu = 0.1;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.diag_stride = 1 << 20;
    const SolverState final = evolve(w0, cfg);
    const SpectralVectorField expected =
        fieldops::scale(leray_project(forward_transform(w0)), std::exp(-0.1));
    const double err = rel_l2(final.u_hat, expected);
    out.require(err <= 1e-8, "Beltrami regression error " + fmt(err));

    // Self-convergence on u2 against a dt/8 reference.
    const PhysicalVectorField u0 = paper_field(lat, PaperField::u2);
    const auto run = [&](double dt) {
        SolverConfig c;
        c.nu = 0.05;
        c.dt = dt;
        c.t_end = 0.2;
        c.diag_stride = 1 << 20;
        return evolve(u0, c);
    };
    const SolverState ref = run(2.5e-3);
    std::vector<double> errs;
    for (double dt : {2e-2, 1e-2, 5e-3})
        errs.push_back(std::sqrt(fieldops::sub(run(dt).u_hat, ref.u_hat).l2_norm_sq()));
    const double order1 = std::log2(errs[0] / errs[1]);
    const double order2 = std::log2(errs[1] / errs[2]);
    out.require(std::fabs(order1 - 4.0) <= 0.3, "order(dt->dt/2) " + fmt(order1));
    out.require(std::fabs(order2 - 4.0) <= 0.3, "order(dt/2->dt/4) " + fmt(order2));
    out.note("regression " + fmt(err) + ", orders " + fmt(order1) + " / " + fmt(order2));
    return out;
}

// --------------------------------------------------------------------------
// 4. Conservation audit along the u2 run.
// --------------------------------------------------------------------------
Outcome criterion4() {
    Outcome out;
    const Lattice lat({32, 32, 32});
    const PhysicalVectorField u0 = paper_field(lat, PaperField::u2);
    SolverConfig cfg;
    cfg.nu = 0.05;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.dealias = true;
    cfg.diag_stride = 1;

    std::vector<DiagRecord> records;
    EvolveSinks sinks;
    sinks.on_diag = [&records](const DiagRecord& r) { records.push_back(r); };
    evolve(u0, cfg, {}, sinks);

    const auto subsample = [&](int stride) {
        std::vector<DiagRecord> s;
        for (std::size_t i = 0; i < records.size(); i += std::size_t(stride))
            s.push_back(records[i]);
        return s;
    };
    const auto max_abs = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::fabs(x));
        return m;
    };

    const BalanceAudit fine = balance_audit(records, cfg.nu);
    const double e_res = max_abs(fine.energy_residual);
    const double d_res = max_abs(fine.np_minus_nm_residual);
    out.require(e_res <= 1e-6, "energy residual " + fmt(e_res));
    out.require(d_res <= 1e-6, "N+ - N- drift " + fmt(d_res));

    // The helicity route must agree with the spin route, and both must
    // converge at quadrature order under time refinement.
    double agree = 0.0;
    for (std::size_t i = 0; i < fine.t.size(); ++i)
        agree = std::max(agree, std::fabs(fine.helicity_balance_residual[i] -
                                          fine.np_minus_nm_residual[i]));
    out.require(agree <= 1e-9, "route disagreement " + fmt(agree));

    std::vector<double> spin_res, hel_res;
    for (int stride : {4, 2, 1}) {
        const BalanceAudit a = balance_audit(subsample(stride), cfg.nu);
        spin_res.push_back(max_abs(a.np_minus_nm_residual));
        hel_res.push_back(max_abs(a.helicity_balance_residual));
    }
    const double order_spin = 0.5 * std::log2(spin_res[0] / spin_res[2]);
    const double order_hel = 0.5 * std::log2(hel_res[0] / hel_res[2]);
    out.require(std::fabs(order_spin - 2.0) <= 0.2,
                "spin-route quadrature order " + fmt(order_spin));
    out.require(std::fabs(order_hel - 2.0) <= 0.2,
                "helicity-route quadrature order " + fmt(order_hel));
    out.note("energy " + fmt(e_res) + ", drift " + fmt(d_res) + ", orders " +
             fmt(order_spin) + " / " + fmt(order_hel));
    return out;
}

// --------------------------------------------------------------------------
// 5. 2D global cancellation and the embedded solver run.
// --------------------------------------------------------------------------
Outcome criterion5() {
    Outcome out;
    const Lattice lat({32, 32, 8});
    const StreamFunction2D psi(lat, [](double x1, double x2) {
        return std::cos(x1) * std::cos(x2) + std::cos(2.0 * x1);
    });
    const PhysicalVectorField v = embed_2d(psi);
    const SpectralVectorField vh = forward_transform(v);
    const DetResult det = critical_determinant_full(vh, 1.0);
    out.require(det.l1_mass > 1e-3, "determinant mass degenerate");
    out.require(std::fabs(det.integral) <= 1e-10 * det.l1_mass,
                "2D cancellation " + fmt(std::fabs(det.integral) / det.l1_mass));

    SolverConfig cfg;
    cfg.nu = 0.05;
    cfg.dt = 1e-3;
    cfg.t_end = 0.25;
    cfg.diag_stride = 10;
    cfg.checkpoint_stride = 10;
    std::vector<DiagRecord> records;
    double max_u3 = 0.0;
    EvolveSinks sinks;
    sinks.on_diag = [&records](const DiagRecord& r) { records.push_back(r); };
    sinks.on_checkpoint = [&max_u3](const SolverState& s) {
        const PhysicalVectorField up = inverse_transform(s.u_hat);
        for (std::int64_t i = 0; i < up.lattice().size(); ++i)
            max_u3 = std::max(max_u3, std::fabs(up.at(2, i)));
    };
    evolve(v, cfg, {}, sinks);
    out.require(max_u3 <= 1e-12, "third component grew to " + fmt(max_u3));

    bool monotone = true;
    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].enstrophy > records[i - 1].enstrophy * (1.0 + 1e-9))
            monotone = false;
    out.require(monotone, "enstrophy increased");
    out.note("cancellation " + fmt(std::fabs(det.integral) / det.l1_mass) + ", u3 " +
             fmt(max_u3));
    return out;
}

// --------------------------------------------------------------------------
// 6. Determinant identities on random and spin-definite fields.
// --------------------------------------------------------------------------
Outcome criterion6() {
    Outcome out;
    const Lattice lat({16, 16, 16});
    double worst_pair = 0.0, worst_sum = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const SpectralVectorField u = random_divfree(lat, 600 + trial);
        const DetResult lhs = critical_determinant_full(u, 0.5);
        const PhysicalVectorField up = inverse_transform(u);
        const PhysicalVectorField rp = inverse_transform(signed_curl_pow(u, +1, 1.0));
        const PhysicalVectorField rm = inverse_transform(signed_curl_pow(u, -1, 1.0));
        const double rhs = -2.0 * grid_integral(pointwise_det(up, rp, rm));
        worst_pair = std::max(
            worst_pair, std::fabs(lhs.integral - rhs) / std::max(lhs.l1_mass, 1e-12));
        for (double theta : {0.0, 0.5, 1.0, 1.3}) {
            const DetResult full = critical_determinant_full(u, theta);
            const DetResult dp = signed_determinant_full(u, +1, theta);
            const DetResult dm = signed_determinant_full(u, -1, theta);
            const double scale =
                std::max({full.l1_mass, dp.l1_mass, dm.l1_mass, 1e-12});
            worst_sum = std::max(
                worst_sum, std::fabs(dp.integral + dm.integral - full.integral) / scale);
        }
    }
    out.require(worst_pair <= 1e-10, "-2det identity " + fmt(worst_pair));
    out.require(worst_sum <= 1e-10, "spin-sum identity " + fmt(worst_sum));

    const SpectralVectorField definite[] = {
        forward_transform(beltrami_wave(lat, BeltramiWaveSpec{{2, 1, 0}, 0.2, +1, 1.0})),
        forward_transform(beltrami_wave(lat, BeltramiWaveSpec{{0, 1, 1}, 0.0, -1, 1.5})),
        forward_transform(paper_field(lat, PaperField::u1)),
        forward_transform(paper_field(lat, PaperField::u2)),
        forward_transform(paper_field(lat, PaperField::three_wave)),
    };
    double worst_vanish = 0.0;
    for (const SpectralVectorField& u : definite) {
        const double mag = inverse_transform(u).max_magnitude();
        const double mass_floor = mag * mag * mag * lat.volume();
        for (double theta : {0.0, 0.5, 1.0, 1.3}) {
            const DetResult d = critical_determinant_full(u, theta);
            worst_vanish = std::max(
                worst_vanish, std::fabs(d.integral) / std::max(d.l1_mass, mass_floor));
        }
        worst_vanish =
            std::max(worst_vanish, std::fabs(det_zero_mode(u)) / mass_floor);
    }
    out.require(worst_vanish <= 1e-10, "spin-definite vanish " + fmt(worst_vanish));
    out.note("pair " + fmt(worst_pair) + ", sum " + fmt(worst_sum) + ", vanish " +
             fmt(worst_vanish));
    return out;
}

// --------------------------------------------------------------------------
// 7. Orthogonality relations and the helicity bound.
// --------------------------------------------------------------------------
Outcome criterion7() {
    Outcome out;
    const Lattice lat({32, 32, 32});
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const OrthogonalityReport r =
            orthogonality_suite(random_divfree(lat, 700 + trial));
        worst = std::max(worst, r.max_residual());
    }
    out.require(worst <= 1e-10, "orthogonality residual " + fmt(worst));

    const Lattice small({16, 16, 16});
    int violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const SpectralVectorField u = random_divfree(small, 7000 + trial);
        const auto [hp, hm] = spin_sobolev(u, 1);
        if (std::fabs(hp - hm) > hp + hm) ++violations;
    }
    out.require(violations == 0,
                "helicity bound violations: " + std::to_string(violations));
    out.note("orthogonality " + fmt(worst) + ", violations 0/100");
    return out;
}

// --------------------------------------------------------------------------
// 8. Weak-strong stability along paired runs.
// --------------------------------------------------------------------------
Outcome criterion8() {
    Outcome out;
    const Lattice lat({16, 16, 16});
    const PhysicalVectorField base = paper_field(lat, PaperField::u2);
    PhysicalVectorField pert = base;
    {
        const PhysicalVectorField noise = random_spin_field(lat, 99, SpinSign::mixed);
        const double b = std::sqrt(forward_transform(base).l2_norm_sq());
        const double w = std::sqrt(forward_transform(noise).l2_norm_sq());
        const double eps = 0.01 * b / w;
        for (std::size_t i = 0; i < pert.data().size(); ++i)
            pert.data()[i] += eps * noise.data()[i];
    }

    SolverConfig cfg;
    cfg.nu = 0.05;
    cfg.dt = 1e-3;
    cfg.t_end = 0.5;
    SolverState s1{0.0, dealias(leray_project(forward_transform(base))), 0};
    SolverState s2{0.0, dealias(leray_project(forward_transform(pert))), 0};

    const double delta0 = fieldops::sub(s1.u_hat, s2.u_hat).l2_norm_sq();
    std::vector<double> gammas{weak_strong_gamma(s1.u_hat, s2.u_hat)};
    double min_margin = std::numeric_limits<double>::max();
    const int stride = 10;
    const int steps = int(std::llround(cfg.t_end / cfg.dt));
    double gamma_integral = 0.0;
    for (int i = 1; i <= steps; ++i) {
        s1 = step(s1, cfg);
        s2 = step(s2, cfg);
        if (i % stride != 0) continue;
        const double gamma = weak_strong_gamma(s1.u_hat, s2.u_hat);
        gamma_integral += 0.5 * (gammas.back() + gamma) * cfg.dt * stride;
        gammas.push_back(gamma);
        const double delta = fieldops::sub(s1.u_hat, s2.u_hat).l2_norm_sq();
        const double bound = delta0 * std::exp(gamma_integral);
        min_margin = std::min(min_margin, bound / delta);
        if (delta > bound * (1.0 + 1e-9)) {
            out.require(false, "bound violated at t = " + fmt(s1.t));
            break;
        }
    }
    out.require(min_margin >= 1.0, "margin " + fmt(min_margin));
    out.note("min bound/||delta||^2 margin " + fmt(min_margin));
    return out;
}

// --------------------------------------------------------------------------
// 9. Appendix identity suite.
// --------------------------------------------------------------------------
Outcome criterion9() {
    Outcome out;
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    std::vector<AlgebraicSample> samples(100);
    for (AlgebraicSample& s : samples) {
        for (Vec3* v : {&s.a, &s.b, &s.c, &s.x, &s.y}) *v = {d(rng), d(rng), d(rng)};
        for (Vec3& row : s.r) row = {d(rng), d(rng), d(rng)};
    }
    double alg = 0.0;
    for (const IdentityReport& r : algebraic_identities(samples)) {
        alg = std::max(alg, r.max_residual / r.scale);
        out.require(r.pass, r.name + " residual " + fmt(r.max_residual / r.scale));
    }

    const Lattice lat({32, 32, 32});
    const SpectrumProfile half_band{1.0, lat.dealias_limit(0) / 2.0, -1.0};
    const PhysicalVectorField u = random_spin_field(lat, 91, SpinSign::mixed, half_band);
    const PhysicalVectorField v = random_spin_field(lat, 92, SpinSign::mixed, half_band);
    PhysicalScalarField alpha(lat);
    const auto& n = lat.n();
    for (int iz = 0; iz < n[2]; ++iz)
        for (int iy = 0; iy < n[1]; ++iy)
            for (int ix = 0; ix < n[0]; ++ix) {
                const Vec3 x = lat.site(ix, iy, iz);
                alpha.at(ix, iy, iz) = 1.0 + 0.5 * std::cos(x[0]) * std::sin(x[1]);
            }
    double diff = 0.0;
    for (const IdentityReport& r : curl_product_rules(alpha, u, v)) {
        diff = std::max(diff, r.max_residual / r.scale);
        out.require(r.pass, r.name + " residual " + fmt(r.max_residual / r.scale));
    }
    const IdentityReport adv = advection_curl_identity(u, v);
    diff = std::max(diff, adv.max_residual / adv.scale);
    out.require(adv.pass, "advection-curl " + fmt(adv.max_residual / adv.scale));

    PhysicalVectorField nondiv(lat);
    for (int iz = 0; iz < n[2]; ++iz)
        for (int iy = 0; iy < n[1]; ++iy)
            for (int ix = 0; ix < n[0]; ++ix) {
                const Vec3 x = lat.site(ix, iy, iz);
                nondiv.at(0, ix, iy, iz) = std::cos(x[0]);
                nondiv.at(1, ix, iy, iz) = 0.3 * std::sin(x[1] + x[2]);
                nondiv.at(2, ix, iy, iz) = -0.2 * std::cos(2.0 * x[2]);
            }
    const IdentityReport adv2 = advection_curl_identity(nondiv, v);
    diff = std::max(diff, adv2.max_residual / adv2.scale);
    out.require(adv2.pass,
                "advection-curl (div u != 0) " + fmt(adv2.max_residual / adv2.scale));
    out.note("algebraic " + fmt(alg) + ", differential " + fmt(diff));
    return out;
}

// --------------------------------------------------------------------------
// 10. I/O determinism.
// --------------------------------------------------------------------------
Outcome criterion10() {
    Outcome out;
    const auto dir = std::filesystem::temp_directory_path() / "spinflow_acceptance";
    std::filesystem::create_directories(dir);
    const auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    };

    const Lattice lat({16, 16, 16});
    const PhysicalVectorField u = random_spin_field(lat, 1234, SpinSign::mixed);
    write_field(dir / "a.spnf", FieldFile{0.5, u});
    const FieldFile back = read_field(dir / "a.spnf");
    write_field(dir / "b.spnf", back);
    out.require(slurp(dir / "a.spnf") == slurp(dir / "b.spnf"),
                "SPNF round trip not bit-exact");

    DiagOptions opts;
    opts.theta_list = {0.5, 1.0};
    SolverConfig cfg;
    cfg.nu = 0.05;
    cfg.dt = 1e-2;
    cfg.t_end = 0.05;
    const auto run_csv = [&](const std::filesystem::path& path) {
        std::vector<DiagRecord> records;
        EvolveSinks sinks;
        sinks.on_diag = [&](const DiagRecord& r) { records.push_back(r); };
        evolve(random_spin_field(lat, 77, SpinSign::mixed), cfg, opts, sinks);
        emit_csv(records, opts, path);
    };
    run_csv(dir / "run_a.csv");
    run_csv(dir / "run_b.csv");
    out.require(slurp(dir / "run_a.csv") == slurp(dir / "run_b.csv"),
                "CSV outputs differ between identical runs");
    out.note("SPNF and CSV byte-identical");
    return out;
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "operator algebra", 10.0, criterion1},
        {2, "spin-definite reference fields", 5.0, criterion2},
        {3, "exact-solution regression + RK order", 60.0, criterion3},
        {4, "conservation audit (u2 run)", 900.0, criterion4},
        {5, "2D cancellation + embedded run", 120.0, criterion5},
        {6, "determinant identities", 120.0, criterion6},
        {7, "orthogonality + helicity bound", 120.0, criterion7},
        {8, "weak-strong stability", 300.0, criterion8},
        {9, "appendix identity suite", 30.0, criterion9},
        {10, "I/O determinism", 60.0, criterion10},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (only != 0 && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_seconds) {
            out.pass = false;
            out.detail += (out.detail.empty() ? "" : "; ") + std::string("over budget ") +
                          fmt(secs) + "s > " + fmt(c.budget_seconds) + "s";
        }
        std::printf("[%s] criterion %2d (%s): %s  [%.1fs]\n", out.pass ? "PASS" : "FAIL",
                    c.id, c.name, out.detail.c_str(), secs);
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    return failures;
}
