// Command-line front end: generate fields, split them by spin, run the
// solver, re-derive diagnostics from checkpoints, and run the identity suite.
//
//   spinflow gen       --kind beltrami --k 1,0,0 --sign + --out w.spnf
//   spinflow decompose w.spnf
//   spinflow evolve    run.cfg
//   spinflow analyze   run.cfg
//   spinflow check

#include <cinttypes>
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "spinflow/spinflow.hpp"

namespace {

using namespace spinflow;

std::string checkpoint_name(std::int64_t step) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "checkpoint_%08" PRId64 ".spnf", step);
    return buf;
}

PhysicalVectorField load_physical(const std::string& path) {
    FieldFile f = read_field(path);
    if (auto* p = std::get_if<PhysicalVectorField>(&f.field)) return std::move(*p);
    return inverse_transform(std::get<SpectralVectorField>(f.field));
}

int run_gen(const std::string& kind, const std::string& k_str, const std::string& sign,
            double amplitude, double phase, std::uint64_t seed, const std::string& n_str,
            const std::string& l_str, const std::string& layout, const std::string& out) {
    RunConfig cfg;
    cfg.n = detail::parse_int3(n_str);
    cfg.l = detail::parse_vec3(l_str);
    cfg.initial = kind;
    cfg.initial_k = detail::parse_int3(k_str);
    cfg.initial_sign = sign;
    cfg.initial_amplitude = amplitude;
    cfg.initial_phase = phase;
    cfg.seed = seed;
    const PhysicalVectorField u = cfg.make_initial();

    if (layout == "spectral")
        write_field(out, FieldFile{0.0, forward_transform(u)});
    else
        write_field(out, FieldFile{0.0, u});
    std::printf("wrote %s (%s layout, n = %d,%d,%d)\n", out.c_str(), layout.c_str(),
                cfg.n[0], cfg.n[1], cfg.n[2]);
    return 0;
}

int run_decompose(const std::string& in, std::string out_plus, std::string out_minus) {
    const PhysicalVectorField u = load_physical(in);
    const SpectralVectorField uh = forward_transform(u);
    const SpinPair sp = spin_split(uh);
    if (out_plus.empty()) out_plus = in + ".plus.spnf";
    if (out_minus.empty()) out_minus = in + ".minus.spnf";
    write_field(out_plus, FieldFile{0.0, inverse_transform(sp.plus)});
    write_field(out_minus, FieldFile{0.0, inverse_transform(sp.minus)});
    const double ep = sp.plus.l2_norm_sq();
    const double em = sp.minus.l2_norm_sq();
    const auto [h1p, h1m] = spin_sobolev(uh, 1);
    std::printf("plus_energy %.17g minus_energy %.17g helicity %.17g\n", ep, em,
                h1p - h1m);
    return 0;
}

int run_evolve(const std::string& cfg_path) {
    const RunConfig cfg = parse_run_config_file(cfg_path);
    std::filesystem::create_directories(cfg.output_dir);
    const PhysicalVectorField u0 = cfg.make_initial();

    std::vector<DiagRecord> records;
    EvolveSinks sinks;
    sinks.on_diag = [&records](const DiagRecord& r) { records.push_back(r); };
    sinks.on_checkpoint = [&cfg](const SolverState& s) {
        FieldFile file{s.t, s.u_hat};
        write_field(std::filesystem::path(cfg.output_dir) / checkpoint_name(s.step_index),
                    file);
    };

    const SolverState final = evolve(u0, cfg.solver, cfg.diag, sinks);
    emit_csv(records, cfg.diag, std::filesystem::path(cfg.output_dir) / "diagnostics.csv");

    const BalanceAudit audit = balance_audit(records, cfg.solver.nu, cfg.gauge_lambdas);
    double max_e = 0.0, max_d = 0.0;
    for (double r : audit.energy_residual) max_e = std::max(max_e, std::fabs(r));
    for (double r : audit.np_minus_nm_residual) max_d = std::max(max_d, std::fabs(r));
    std::printf("evolved to t = %.6f (%" PRId64 " steps)\n", final.t, final.step_index);
    std::printf("energy_residual_max %.3e  np_minus_nm_residual_max %.3e\n", max_e, max_d);
    return 0;
}

int run_analyze(const std::string& cfg_path) {
    const RunConfig cfg = parse_run_config_file(cfg_path);
    const std::filesystem::path dir(cfg.output_dir);

    std::vector<std::filesystem::path> checkpoints;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("checkpoint_", 0) == 0 && entry.path().extension() == ".spnf")
            checkpoints.push_back(entry.path());
    }
    std::sort(checkpoints.begin(), checkpoints.end());
    if (checkpoints.empty()) {
        std::fprintf(stderr, "analyze: no checkpoints in %s\n", dir.string().c_str());
        return 1;
    }

    std::vector<DiagRecord> records;
    for (const auto& path : checkpoints) {
        FieldFile f = read_field(path);
        const SpectralVectorField* uh = std::get_if<SpectralVectorField>(&f.field);
        SpectralVectorField tmp = uh ? *uh
                                     : forward_transform(
                                           std::get<PhysicalVectorField>(f.field));
        records.push_back(compute_record(tmp, f.time, cfg.solver.nu, cfg.diag));
    }
    emit_csv(records, cfg.diag, dir / "analyze.csv");

    if (records.size() >= 2) {
        const BalanceAudit audit = balance_audit(records, cfg.solver.nu, cfg.gauge_lambdas);
        double max_e = 0.0, max_d = 0.0, max_h = 0.0;
        for (double r : audit.energy_residual) max_e = std::max(max_e, std::fabs(r));
        for (double r : audit.np_minus_nm_residual) max_d = std::max(max_d, std::fabs(r));
        for (double r : audit.helicity_balance_residual)
            max_h = std::max(max_h, std::fabs(r));
        std::printf("records %zu\n", records.size());
        std::printf("energy_residual_max %.3e\n", max_e);
        std::printf("np_minus_nm_residual_max %.3e\n", max_d);
        std::printf("helicity_balance_residual_max %.3e\n", max_h);
        std::printf("bkm_omega_integral %.17g\n", audit.bkm_omega_integral);
        std::printf("ns_bkm_u2_integral %.17g\n", audit.ns_bkm_u2_integral);
        std::printf("cauchy_schwarz_margin %.3e\n", audit.cauchy_schwarz_margin);
    }
    return 0;
}

int run_check() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<AlgebraicSample> samples(100);
    for (AlgebraicSample& s : samples) {
        for (Vec3* v : {&s.a, &s.b, &s.c, &s.x, &s.y})
            *v = {d(rng), d(rng), d(rng)};
        for (Vec3& row : s.r) row = {d(rng), d(rng), d(rng)};
    }
    std::vector<IdentityReport> reports = algebraic_identities(samples);

    const Lattice lat({32, 32, 32});
    // Inputs live in half the dealiased band so products are exact.
    const SpectrumProfile half_band{1.0, double(lat.dealias_limit(0)) / 2.0, -1.0};
    const PhysicalVectorField u =
        random_spin_field(lat, 5, SpinSign::mixed, half_band);
    const PhysicalVectorField v =
        random_spin_field(lat, 6, SpinSign::mixed, half_band);
    PhysicalScalarField alpha(lat);
    for (int iz = 0; iz < 32; ++iz)
        for (int iy = 0; iy < 32; ++iy)
            for (int ix = 0; ix < 32; ++ix) {
                const Vec3 x = lat.site(ix, iy, iz);
                alpha.at(ix, iy, iz) =
                    1.0 + 0.5 * std::cos(x[0]) * std::sin(x[1]) + 0.25 * std::cos(x[2]);
            }
    for (const IdentityReport& r : curl_product_rules(alpha, u, v)) reports.push_back(r);
    reports.push_back(advection_curl_identity(u, v));

    // A non-solenoidal u exercises the full five-term advection-curl rule.
    PhysicalVectorField grad_field(lat);
    for (int iz = 0; iz < 32; ++iz)
        for (int iy = 0; iy < 32; ++iy)
            for (int ix = 0; ix < 32; ++ix) {
                const Vec3 x = lat.site(ix, iy, iz);
                grad_field.at(0, ix, iy, iz) = std::cos(x[0]);
                grad_field.at(1, ix, iy, iz) = 0.5 * std::cos(x[1]);
                grad_field.at(2, ix, iy, iz) = -0.25 * std::sin(x[2]);
            }
    IdentityReport div_case = advection_curl_identity(grad_field, v);
    div_case.name += " (div u != 0)";
    reports.push_back(div_case);

    bool all_pass = true;
    std::printf("%-28s %-12s %-12s %s\n", "identity", "residual", "tolerance", "status");
    for (const IdentityReport& r : reports) {
        all_pass = all_pass && r.pass;
        std::printf("%-28s %-12.3e %-12.3e %s\n", r.name.c_str(),
                    r.max_residual / r.scale, r.tolerance, r.pass ? "pass" : "FAIL");
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral Navier-Stokes toolkit with helical decomposition"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate a field and write it to SPNF");
    std::string kind = "beltrami", k_str = "1,0,0", sign = "+", n_str = "32,32,32";
    std::string l_str = "6.283185307179586,6.283185307179586,6.283185307179586";
    std::string layout = "physical", out = "field.spnf";
    double amplitude = 1.0, phase = 0.0;
    std::uint64_t seed = 1;
    gen->add_option("--kind", kind, "beltrami | u1 | u2 | three_wave | random");
    gen->add_option("--k", k_str, "integer wavevector kx,ky,kz");
    gen->add_option("--sign", sign, "+ | - | mixed");
    gen->add_option("--amplitude", amplitude);
    gen->add_option("--phase", phase);
    gen->add_option("--seed", seed);
    gen->add_option("--n", n_str, "grid points per axis");
    gen->add_option("--l", l_str, "box lengths");
    gen->add_option("--layout", layout, "physical | spectral");
    gen->add_option("--out", out)->required();

    auto* dec = app.add_subcommand("decompose", "split a field into u+ and u-");
    std::string dec_in, dec_plus, dec_minus;
    dec->add_option("input", dec_in)->required();
    dec->add_option("--out-plus", dec_plus);
    dec->add_option("--out-minus", dec_minus);

    auto* evo = app.add_subcommand("evolve", "run the solver from a config file");
    std::string evo_cfg;
    evo->add_option("config", evo_cfg)->required();

    auto* ana = app.add_subcommand("analyze", "recompute diagnostics from checkpoints");
    std::string ana_cfg;
    ana->add_option("config", ana_cfg)->required();

    auto* chk = app.add_subcommand("check", "run the vector-identity suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed())
            return run_gen(kind, k_str, sign, amplitude, phase, seed, n_str, l_str,
                           layout, out);
        if (dec->parsed()) return run_decompose(dec_in, dec_plus, dec_minus);
        if (evo->parsed()) return run_evolve(evo_cfg);
        if (ana->parsed()) return run_analyze(ana_cfg);
        if (chk->parsed()) return run_check();
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 2;
    }
    return 1;
}
