#include "catch_amalgamated.hpp"
#include "test_helpers.hpp"

using namespace spinflow;

TEST_CASE("beltrami wave: worked example k = (1,0,0)") {
    const Lattice lat({16, 16, 16});
    const PhysicalVectorField w =
        beltrami_wave(lat, BeltramiWaveSpec{{1, 0, 0}, 0.0, +1, 1.0});
    double r = 0.0;
    for (int iz = 0; iz < 16; ++iz)
        for (int iy = 0; iy < 16; ++iy)
            for (int ix = 0; ix < 16; ++ix) {
                const double x1 = lat.site(ix, iy, iz)[0];
                r = std::max(r, std::fabs(w.at(0, ix, iy, iz)));
                r = std::max(r, std::fabs(w.at(1, ix, iy, iz) - std::cos(x1)));
                r = std::max(r, std::fabs(w.at(2, ix, iy, iz) + std::sin(x1)));
            }
    CHECK(r < 1e-14);

    // curl W = +1 * W.
    const SpectralVectorField wh = forward_transform(w);
    CHECK(test::rel_diff(curl(wh), wh) < 1e-13);
}

TEST_CASE("beltrami wave: contract across specs") {
    const Lattice lat({16, 16, 16});
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> ki(-4, 4);
    std::uniform_real_distribution<double> ph(0.0, two_pi);
    for (int trial = 0; trial < 20; ++trial) {
        Int3 k{ki(rng), ki(rng), ki(rng)};
        if (k == Int3{0, 0, 0}) k[0] = 1;
        const int sign = trial % 2 == 0 ? +1 : -1;
        const double amp = 0.5 + 0.1 * trial;
        const BeltramiWaveSpec spec{k, ph(rng), sign, amp};
        const PhysicalVectorField w = beltrami_wave(lat, spec);
        const SpectralVectorField wh = forward_transform(w);
        const double lam = norm3({double(k[0]), double(k[1]), double(k[2])});

        CHECK(test::divergence_residual(wh) < 1e-13);
        CHECK(test::rel_diff(curl(wh), fieldops::scale(wh, sign * lam)) < 1e-12);

        // Spin-definiteness with the matching sign.
        const SpinPair sp = spin_split(wh);
        const SpectralVectorField& same = sign > 0 ? sp.plus : sp.minus;
        const SpectralVectorField& opp = sign > 0 ? sp.minus : sp.plus;
        CHECK(test::rel_diff(same, wh) < 1e-12);
        CHECK(opp.max_abs() < 1e-13 * wh.max_abs());

        // Energy: ||W||^2 = amplitude^2 * volume; helicity = sign * lam * ||W||^2.
        CHECK(wh.l2_norm_sq() ==
              Catch::Approx(amp * amp * lat.volume()).epsilon(1e-12));
        const auto [hp, hm] = spin_sobolev(wh, 1);
        CHECK(hp - hm ==
              Catch::Approx(sign * lam * amp * amp * lat.volume()).epsilon(1e-12));
    }
}

TEST_CASE("beltrami wave: unrepresentable wavevectors are rejected") {
    const Lattice lat({16, 16, 16});
    CHECK_THROWS_AS(beltrami_wave(lat, BeltramiWaveSpec{{6, 0, 0}, 0.0, +1, 1.0}),
                    UnrepresentableWavevector);
    CHECK_THROWS_AS(beltrami_wave(lat, BeltramiWaveSpec{{0, -8, 0}, 0.0, +1, 1.0}),
                    UnrepresentableWavevector);
    CHECK_NOTHROW(beltrami_wave(lat, BeltramiWaveSpec{{5, 0, 0}, 0.0, +1, 1.0}));
}

TEST_CASE("beltrami wave: sign flip is the mirror image") {
    const Lattice lat({16, 16, 16});
    // Mirror of a positive wave is a negative-spin field.
    const PhysicalVectorField wp =
        beltrami_wave(lat, BeltramiWaveSpec{{2, 1, -1}, 0.9, +1, 1.0});
    const SpinPair sp = spin_split(forward_transform(fieldops::mirror(wp)));
    CHECK(sp.plus.max_abs() <= 1e-13 * sp.minus.max_abs());
}

TEST_CASE("paper field u1: Beltrami with frequency sqrt(2)") {
    const Lattice lat({16, 16, 16});
    const SpectralVectorField u1 = forward_transform(paper_field(lat, PaperField::u1));
    const SpectralVectorField cu = curl(u1);
    const SpectralVectorField lu = fieldops::scale(u1, std::sqrt(2.0));
    const double rel =
        std::sqrt(fieldops::sub(cu, lu).l2_norm_sq() / u1.l2_norm_sq());
    CHECK(rel <= 1e-10);

    // Positive spin.
    const SpinPair sp = spin_split(u1);
    CHECK(sp.minus.l2_norm_sq() <= 1e-20 * sp.plus.l2_norm_sq());
    CHECK(test::divergence_residual(u1) < 1e-13);
}

TEST_CASE("paper field u2: two spectral radii, not generalized Beltrami") {
    const Lattice lat({16, 16, 16});
    const SpectralVectorField u2 = forward_transform(paper_field(lat, PaperField::u2));
    const auto& n = lat.n();

    // Support exactly on |xi|^2 in {2, 5}.
    bool has_r2 = false, has_r5 = false;
    const double scale = u2.max_abs();
    for (int mz = 0; mz < n[2]; ++mz)
        for (int my = 0; my < n[1]; ++my)
            for (int mx = 0; mx < n[0]; ++mx) {
                double mag = 0.0;
                for (int c = 0; c < 3; ++c) mag += std::abs(u2.at(c, mx, my, mz));
                if (mag <= 1e-13 * scale) continue;
                const Int3 k = lat.kvec(mx, my, mz);
                const int k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                CHECK((k2 == 2 || k2 == 5));
                if (k2 == 2) has_r2 = true;
                if (k2 == 5) has_r5 = true;
            }
    CHECK(has_r2);
    CHECK(has_r5);

    // Positive spin but curl(curl u2 x u2) != 0.
    const SpinPair sp = spin_split(u2);
    CHECK(sp.minus.l2_norm_sq() <= 1e-20 * sp.plus.l2_norm_sq());
    const PhysicalVectorField w = inverse_transform(curl(u2));
    const PhysicalVectorField up = inverse_transform(u2);
    const SpectralVectorField cxu = forward_transform(cross_product(w, up));
    CHECK(curl(cxu).max_abs() > 1e-3);
}

TEST_CASE("paper field three_wave: positive spin, independent directions") {
    const Lattice lat({16, 16, 16});
    const SpectralVectorField u =
        forward_transform(paper_field(lat, PaperField::three_wave));
    const SpinPair sp = spin_split(u);
    CHECK(sp.minus.l2_norm_sq() <= 1e-20 * sp.plus.l2_norm_sq());
    CHECK(test::divergence_residual(u) < 1e-13);
}

TEST_CASE("paper fields require the 2*pi box") {
    const Lattice lat({16, 16, 16}, {1.0, two_pi, two_pi});
    CHECK_THROWS_AS(paper_field(lat, PaperField::u1), std::invalid_argument);
}

TEST_CASE("embed_2d: the worked stream function") {
    const Lattice lat({16, 16, 8});
    const StreamFunction2D psi(lat, [](double x1, double x2) {
        return std::cos(x1) * std::cos(x2);
    });
    const PhysicalVectorField v = embed_2d(psi);
    double r = 0.0;
    for (int iz = 0; iz < 8; ++iz)
        for (int iy = 0; iy < 16; ++iy)
            for (int ix = 0; ix < 16; ++ix) {
                const Vec3 x = lat.site(ix, iy, iz);
                r = std::max(r, std::fabs(v.at(0, ix, iy, iz) +
                                          std::cos(x[0]) * std::sin(x[1])));
                r = std::max(r, std::fabs(v.at(1, ix, iy, iz) -
                                          std::sin(x[0]) * std::cos(x[1])));
                r = std::max(r, std::fabs(v.at(2, ix, iy, iz)));
            }
    CHECK(r < 1e-13);

    // Structure: v3 = 0 and the vorticity has only a third component.
    const SpectralVectorField vh = forward_transform(v);
    CHECK(test::divergence_residual(vh) < 1e-14);
    const PhysicalVectorField w = inverse_transform(curl(vh));
    double planar = 0.0;
    for (std::int64_t i = 0; i < lat.size(); ++i) {
        planar = std::max(planar, std::fabs(w.at(0, i)));
        planar = std::max(planar, std::fabs(w.at(1, i)));
    }
    CHECK(planar < 1e-13);
}

TEST_CASE("embed_2d: pointwise determinant is nonzero but integrates to zero") {
    const Lattice lat({32, 32, 8});
    const StreamFunction2D psi(lat, [](double x1, double x2) {
        return std::cos(x1) * std::cos(x2) + std::cos(2.0 * x1);
    });
    const SpectralVectorField vh = forward_transform(embed_2d(psi));
    const DetResult det = critical_determinant_full(vh, 1.0);
    CHECK(det.l1_mass > 1e-2);
    CHECK(std::fabs(det.integral) <= 1e-11 * det.l1_mass);
}

TEST_CASE("random spin fields") {
    const Lattice lat({16, 16, 16});

    // Determinism: identical seeds, identical bits.
    const PhysicalVectorField a = random_spin_field(lat, 42, SpinSign::positive);
    const PhysicalVectorField b = random_spin_field(lat, 42, SpinSign::positive);
    CHECK(a.data() == b.data());
    const PhysicalVectorField c = random_spin_field(lat, 43, SpinSign::positive);
    CHECK(fieldops::max_abs_diff(a, c) > 1e-3);

    // A positive field splits as (u, 0).
    const SpectralVectorField ah = forward_transform(a);
    const SpinPair sp = spin_split(ah);
    CHECK(test::rel_diff(sp.plus, ah) < 1e-12);
    CHECK(sp.minus.max_abs() <= 1e-13 * ah.max_abs());

    // Generator invariants: divergence-free, Hermitian, dealiased support
    // (up to the round-off of the re-analysis).
    CHECK(test::divergence_residual(ah) < 1e-13);
    CHECK(hermitian_residual(ah) <= 1e-15 * ah.max_abs());
    CHECK(fieldops::max_abs_diff(dealias(ah), ah) <= 1e-15 * ah.max_abs());

    // Mixed sign with equal spectra: helicity vanishes against the
    // Hdot^{1/2} scale.
    const SpectralVectorField m =
        forward_transform(random_spin_field(lat, 7, SpinSign::mixed));
    const auto [hp, hm] = spin_sobolev(m, 1);
    CHECK(std::fabs(hp - hm) <= 1e-10 * (hp + hm));

    // Negative sign mirrors the construction.
    const SpectralVectorField neg =
        forward_transform(random_spin_field(lat, 9, SpinSign::negative));
    const SpinPair nsp = spin_split(neg);
    CHECK(nsp.plus.max_abs() <= 1e-13 * neg.max_abs());
}
