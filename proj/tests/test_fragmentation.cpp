#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "condfrag/fragmentation.hpp"

using namespace condfrag;

namespace {

Grid frag_grid(int n = 512) { return Grid::symmetric(n, 10.0); }

CondensateConfig cfg_for(long long N, double g) {
    return CondensateConfig::symmetric_split(N, g);
}

} // namespace

TEST_CASE("construct_left_right from a hard-wall solve") {
    const Grid g = frag_grid(1024);
    const Potential u = build_potential({PotentialKind::hard_wall, 0.0, 0.5}, g);
    CondensateConfig cfg = cfg_for(40, 0.3);
    cfg.n1 = 40;
    cfg.n2 = 0;
    const auto [phi_s, rep] = solve_single_ground(cfg, u);
    REQUIRE(rep.converged);
    RealWavefunction phi_a = antisymmetric_partner(phi_s);
    phi_a.normalize();
    const auto [phi_l, phi_r] = construct_left_right(phi_s, phi_a);

    SUBCASE("orthogonal and normalized") {
        CHECK(std::abs(inner(phi_l, phi_r)) < 1e-12);
        CHECK(phi_l.is_normalized(1e-12));
        CHECK(phi_r.is_normalized(1e-12));
    }
    SUBCASE("exact mirror images grid-point-wise") {
        for (int i = 0; i < g.n(); ++i)
            CHECK(phi_l.values[static_cast<size_t>(g.n() - 1 - i)] ==
                  phi_r.values[static_cast<size_t>(i)]);
    }
    SUBCASE("localized lobes interact twice as intensely") {
        CHECK(quartic_integral(phi_l) ==
              doctest::Approx(2.0 * quartic_integral(phi_s)).epsilon(1e-8));
        CHECK(quartic_integral(phi_r) ==
              doctest::Approx(2.0 * quartic_integral(phi_s)).epsilon(1e-8));
    }
    SUBCASE("zero density overlap") {
        CHECK(density_overlap(phi_l, phi_r) < 1e-14);
    }
    SUBCASE("single-particle energies equal across the construction") {
        const double eps_s = single_particle_energy(phi_s, u);
        CHECK(single_particle_energy(phi_a, u) == doctest::Approx(eps_s).epsilon(1e-10));
        CHECK(single_particle_energy(phi_l, u) == doctest::Approx(eps_s).epsilon(1e-10));
    }
}

TEST_CASE("construct_left_right validates parity") {
    const Grid g = frag_grid(128);
    const RealWavefunction even = gaussian_orbital(g);
    const RealWavefunction shifted = gaussian_orbital(g, 1.0);
    CHECK_THROWS_AS(construct_left_right(shifted, even), std::invalid_argument);
    CHECK_THROWS_AS(construct_left_right(even, even), std::invalid_argument);
}

TEST_CASE("infinite_barrier_report identities") {
    const Grid g = frag_grid(1024);
    for (long long N : {2LL, 4LL, 100LL}) {
        for (double gg : {0.01, 0.5}) {
            CAPTURE(N);
            CAPTURE(gg);
            const auto rep = infinite_barrier_report(cfg_for(N, gg), g);
            REQUIRE(rep.single_report.converged);
            REQUIRE(rep.dual_report.converged);
            const double Nf = static_cast<double>(N);
            CHECK(rep.quartic_l == doctest::Approx(2.0 * rep.quartic_s).epsilon(1e-8));
            CHECK(rep.eps_l == doctest::Approx(rep.eps_s).epsilon(1e-8));
            CHECK(rep.dual_interaction ==
                  doctest::Approx(0.5 * gg * Nf * (Nf - 2.0) * rep.quartic_s).epsilon(1e-8));
            CHECK(rep.single_interaction ==
                  doctest::Approx(0.5 * gg * Nf * (Nf - 1.0) * rep.quartic_s).epsilon(1e-12));
            CHECK(rep.e_dual_solver <= rep.e_dual_construction + 1e-9 * std::abs(rep.e_single));
            if (N >= 4) CHECK(rep.dual_favored);
            if (N == 2) CHECK(std::abs(rep.dual_interaction) < 1e-12);
        }
    }
}

TEST_CASE("interaction totals differ by exactly half g N quartic_s at the wall") {
    const Grid g = frag_grid(1024);
    const auto rep = infinite_barrier_report(cfg_for(30, 0.4), g);
    const double diff = rep.e_dual_construction - rep.e_single;
    CHECK(diff == doctest::Approx(-0.5 * 0.4 * 30.0 * rep.quartic_s).epsilon(1e-8));
}

TEST_CASE("barrier_sweep") {
    const Grid g = frag_grid();
    const double inf = std::numeric_limits<double>::infinity();
    SUBCASE("interacting sweep brackets the preference flip") {
        const std::vector<double> bs{0.0, 6.0, 12.0, 18.0, inf};
        const auto rows = barrier_sweep(cfg_for(100, 0.5), g, 0.5, bs);
        REQUIRE(rows.size() == 5);
        for (size_t i = 0; i < rows.size(); ++i) {
            CHECK(rows[i].converged_s);
            CHECK(rows[i].converged_d);
            CHECK(rows[i].delta == rows[i].e_s - rows[i].e_d);
            if (i) CHECK(rows[i].b > rows[i - 1].b);
        }
        CHECK(rows.front().delta < 0.0);     // single preferred without a barrier
        CHECK(rows.back().delta > 0.0);      // dual preferred at the hard wall
        CHECK(rows.back().overlap < 1e-12);  // disjoint lobes
    }
    SUBCASE("g = 0 never prefers the dual state") {
        const auto rows = barrier_sweep(cfg_for(10, 0.0), g, 0.5, {0.0, 2.0, 8.0, inf});
        for (const auto& r : rows) CHECK(r.delta <= 1e-9);
    }
    SUBCASE("warm-started sweep is bit-for-bit reproducible") {
        const std::vector<double> bs{0.0, 3.0, 9.0};
        const auto a = barrier_sweep(cfg_for(20, 0.3), g, 0.5, bs);
        const auto b = barrier_sweep(cfg_for(20, 0.3), g, 0.5, bs);
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].e_s == b[i].e_s);
            CHECK(a[i].e_d == b[i].e_d);
            CHECK(a[i].delta == b[i].delta);
            CHECK(a[i].overlap == b[i].overlap);
        }
    }
    SUBCASE("cold-start rows are independent of the thread count") {
        const std::vector<double> bs{0.0, 4.0, 10.0};
        const auto a = barrier_sweep(cfg_for(20, 0.3), g, 0.5, bs, false, 1);
        const auto b = barrier_sweep(cfg_for(20, 0.3), g, 0.5, bs, false, 3);
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].e_s == b[i].e_s);
            CHECK(a[i].e_d == b[i].e_d);
        }
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(barrier_sweep(cfg_for(10, 0.1), g, 0.5, {}), std::invalid_argument);
        CHECK_THROWS_AS(barrier_sweep(cfg_for(10, 0.1), g, 0.5, {2.0, 1.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("find_crossover") {
    const Grid g = frag_grid();
    const CondensateConfig cfg = cfg_for(100, 0.5);
    SUBCASE("bisection lands inside a sign-changing bracket") {
        const auto res = find_crossover(cfg, g, 0.5, 0.0, 20.0, 0.05);
        CHECK(res.delta_lo < 0.0);
        CHECK(res.delta_hi > 0.0);
        CHECK(res.b_lo <= res.b_star);
        CHECK(res.b_star <= res.b_hi);
        CHECK(res.achieved_tolerance <= 0.05);
        // the bracket endpoints straddle zero by construction; spot-check wider offsets
        const auto rows = barrier_sweep(cfg, g, 0.5, {res.b_star - 0.5, res.b_star + 0.5});
        CHECK(rows.front().delta < 0.0);
        CHECK(rows.back().delta > 0.0);
    }
    SUBCASE("missing sign change is an explicit error") {
        CHECK_THROWS_AS(find_crossover(cfg_for(10, 0.0), g, 0.5, 0.0, 10.0, 0.1),
                        NoCrossoverInBracket);
    }
}

TEST_CASE("decompose_comparison") {
    const Grid g = frag_grid(1024);
    SUBCASE("hard-wall solutions: zero exchange and the exact linear-piece gap") {
        const CondensateConfig cfg = cfg_for(40, 0.3);
        const auto rep = infinite_barrier_report(cfg, g);
        CondensateConfig single_cfg = cfg;
        single_cfg.n1 = cfg.n_particles;
        single_cfg.n2 = 0;
        const DualPair pair{rep.phi_l, rep.phi_r};
        const auto d = decompose_comparison(cfg, rep.phi_s, pair);
        CHECK(d.exchange >= 0.0);
        CHECK(d.exchange < 1e-12);
        // quartic_l = 2 quartic_s makes the linear pieces differ by exactly
        // -1/2 g N quartic_s
        CHECK(d.e_d_lin - d.e_s_lin ==
              doctest::Approx(-0.5 * 0.3 * 40.0 * d.quartic_0).epsilon(1e-10));
        // the hard-wall lobes tile the single density exactly
        CHECK(d.density_similarity < 1e-10);
    }
    SUBCASE("strongly localized lobes push the linear piece below the bound") {
        const CondensateConfig cfg = cfg_for(20, 0.4);
        const RealWavefunction phi0 = gaussian_orbital(g, 0.0, 2.0);
        const RealWavefunction narrow_l = gaussian_orbital(g, -3.0, 0.3);
        const RealWavefunction narrow_r = gaussian_orbital(g, 3.0, 0.3);
        const DualPair pair{narrow_l, narrow_r};
        const auto d = decompose_comparison(cfg, phi0, pair);
        REQUIRE(d.quartic_1 > 2.0 * d.quartic_0); // sufficient localization
        REQUIRE(d.quartic_2 > 2.0 * d.quartic_0);
        CHECK(d.e_d_lin - d.e_s_lin < -0.5 * 0.4 * 20.0 * d.quartic_0);
        CHECK(d.exchange >= 0.0);
    }
}
