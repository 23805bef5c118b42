#include "condfrag/fragmentation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace condfrag {

namespace {

void require_parity(const RealWavefunction& phi, bool even, const char* what) {
    require_symmetric(phi.grid, what);
    const int n = phi.grid.n();
    double scale = 0.0, err = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = phi.values[static_cast<size_t>(i)];
        const double b = phi.values[static_cast<size_t>(n - 1 - i)];
        scale = std::max(scale, std::abs(a));
        err = std::max(err, std::abs(even ? a - b : a + b));
    }
    if (err > 1e-8 * std::max(1.0, scale))
        throw std::invalid_argument(std::string(what) +
                                    (even ? ": input is not symmetric" : ": input is not antisymmetric"));
}

void require_normalized(const RealWavefunction& phi, const char* what) {
    if (!phi.is_normalized(1e-6))
        throw std::invalid_argument(std::string(what) + ": input not normalized");
}

} // namespace

std::pair<RealWavefunction, RealWavefunction> construct_left_right(
    const RealWavefunction& phi_s, const RealWavefunction& phi_a) {
    require_same_grid(phi_s.grid, phi_a.grid, "construct_left_right");
    require_parity(phi_s, true, "construct_left_right");
    require_parity(phi_a, false, "construct_left_right");
    require_normalized(phi_s, "construct_left_right");
    require_normalized(phi_a, "construct_left_right");
    const double c = 1.0 / std::sqrt(2.0);
    std::vector<double> vl(phi_s.values.size()), vr(phi_s.values.size());
    for (size_t i = 0; i < vl.size(); ++i) {
        vl[i] = c * (phi_s.values[i] + phi_a.values[i]);
        vr[i] = c * (phi_s.values[i] - phi_a.values[i]);
    }
    RealWavefunction phi_l(phi_s.grid, std::move(vl));
    RealWavefunction phi_r(phi_s.grid, std::move(vr));
    // one common factor: the norms are equal, and independent rescaling
    // would break the exact grid-point-wise mirror relation
    const double inv = 1.0 / phi_l.norm();
    for (size_t i = 0; i < phi_l.values.size(); ++i) {
        phi_l.values[i] *= inv;
        phi_r.values[i] *= inv;
    }
    return {std::move(phi_l), std::move(phi_r)};
}

RealWavefunction antisymmetric_partner(const RealWavefunction& phi_s) {
    require_parity(phi_s, true, "antisymmetric_partner");
    const Grid& g = phi_s.grid;
    std::vector<double> v(phi_s.values.size());
    for (int i = 0; i < g.n(); ++i) {
        const double x = g.x(i);
        const double q = phi_s.values[static_cast<size_t>(i)];
        v[static_cast<size_t>(i)] = x < 0.0 ? q : (x > 0.0 ? -q : 0.0);
    }
    return RealWavefunction(g, std::move(v));
}

InfiniteBarrierReport infinite_barrier_report(const CondensateConfig& config, const Grid& grid) {
    if (config.n_particles % 2 != 0)
        throw std::invalid_argument("infinite_barrier_report: N must be even");
    PotentialSpec spec;
    spec.kind = PotentialKind::hard_wall;
    const Potential pot = build_potential(spec, grid);

    CondensateConfig single_cfg = config;
    single_cfg.n1 = config.n_particles;
    single_cfg.n2 = 0;
    auto [phi_s, srep] = solve_single_ground(single_cfg, pot, nullptr, false);

    InfiniteBarrierReport rep{phi_s, phi_s, phi_s, srep, SolverReport{}};

    RealWavefunction phi_a = antisymmetric_partner(phi_s);
    phi_a.normalize();
    auto [phi_l, phi_r] = construct_left_right(phi_s, phi_a);
    rep.phi_l = phi_l;
    rep.phi_r = phi_r;

    const double N = static_cast<double>(config.n_particles);
    const double g = config.g;
    rep.eps_s = single_particle_energy(phi_s, pot);
    rep.eps_l = single_particle_energy(phi_l, pot);
    rep.quartic_s = quartic_integral(phi_s);
    rep.quartic_l = quartic_integral(phi_l);
    rep.overlap_lr = density_overlap(phi_l, phi_r);
    rep.single_interaction = 0.5 * g * N * (N - 1.0) * rep.quartic_s;
    rep.dual_interaction_identity = 0.5 * g * N * (N - 2.0) * rep.quartic_s;

    CondensateConfig dual_cfg = CondensateConfig::symmetric_split(config.n_particles, config.g);
    dual_cfg.tol_energy = config.tol_energy;
    dual_cfg.tol_gradient = config.tol_gradient;
    dual_cfg.max_iters = config.max_iters;
    dual_cfg.dt_imag = config.dt_imag;
    const EnergyBreakdown bd = energy_dual(dual_cfg, phi_l, phi_r, pot);
    rep.dual_interaction = bd.hartree_quad + bd.exchange + bd.self_correction;
    rep.e_dual_construction = bd.total;
    rep.e_single = energy_single(single_cfg, phi_s, pot).total;

    auto [pair, drep] = solve_dual_ground(dual_cfg, pot, nullptr, false);
    rep.dual_report = drep;
    rep.e_dual_solver = drep.final_energy;
    rep.dual_favored = rep.e_dual_construction < rep.e_single;
    return rep;
}

namespace {

SweepRow sweep_row_for(const CondensateConfig& single_cfg, const CondensateConfig& dual_cfg,
                       const Grid& grid, double sigma, double b,
                       const RealWavefunction* warm_s, const DualPair* warm_d,
                       RealWavefunction* out_s, DualPair* out_d) {
    PotentialSpec spec;
    if (std::isinf(b)) {
        spec.kind = PotentialKind::hard_wall;
    } else {
        spec.kind = PotentialKind::gaussian_barrier;
        spec.barrier_height = b;
        spec.barrier_width = sigma;
    }
    const Potential pot = build_potential(spec, grid);
    auto [phi, srep] = solve_single_ground(single_cfg, pot, warm_s, false);
    auto [pair, drep] = solve_dual_ground(dual_cfg, pot, warm_d, false);
    SweepRow row;
    row.b = b;
    row.e_s = srep.final_energy;
    row.e_d = drep.final_energy;
    row.delta = srep.final_energy - drep.final_energy;
    row.overlap = density_overlap(pair.phi1, pair.phi2);
    row.converged_s = srep.converged;
    row.converged_d = drep.converged;
    if (out_s) *out_s = std::move(phi);
    if (out_d) *out_d = std::move(pair);
    return row;
}

} // namespace

std::vector<SweepRow> barrier_sweep(const CondensateConfig& config, const Grid& grid,
                                    double sigma, const std::vector<double>& b_values,
                                    bool warm_start, int threads) {
    if (b_values.empty())
        throw std::invalid_argument("barrier_sweep: b_values must be non-empty");
    for (size_t i = 1; i < b_values.size(); ++i)
        if (!(b_values[i] > b_values[i - 1]))
            throw std::invalid_argument("barrier_sweep: b_values must be ascending");
    if (!(sigma > 0.0)) throw std::invalid_argument("barrier_sweep: sigma must be > 0");

    CondensateConfig single_cfg = config;
    single_cfg.n1 = config.n_particles;
    single_cfg.n2 = 0;
    CondensateConfig dual_cfg = CondensateConfig::symmetric_split(config.n_particles, config.g);
    dual_cfg.tol_energy = config.tol_energy;
    dual_cfg.tol_gradient = config.tol_gradient;
    dual_cfg.max_iters = config.max_iters;
    dual_cfg.dt_imag = config.dt_imag;

    std::vector<SweepRow> rows(b_values.size());
    if (warm_start || threads <= 1) {
        RealWavefunction warm_s = default_single_guess(
            build_potential({PotentialKind::gaussian_barrier, std::isinf(b_values.front()) ? 0.0 : b_values.front(), sigma}, grid));
        DualPair warm_d = default_dual_guess(
            build_potential({PotentialKind::gaussian_barrier, std::isinf(b_values.front()) ? 0.0 : b_values.front(), sigma}, grid));
        bool have_warm = false;
        for (size_t i = 0; i < b_values.size(); ++i) {
            rows[i] = sweep_row_for(single_cfg, dual_cfg, grid, sigma, b_values[i],
                                    warm_start && have_warm ? &warm_s : nullptr,
                                    warm_start && have_warm ? &warm_d : nullptr,
                                    warm_start ? &warm_s : nullptr,
                                    warm_start ? &warm_d : nullptr);
            have_warm = true;
        }
        return rows;
    }

    // cold-start rows are independent; block-partition them across workers
    std::vector<std::thread> pool;
    const int nt = std::min<int>(threads, static_cast<int>(b_values.size()));
    std::atomic<size_t> next{0};
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= b_values.size()) return;
                rows[i] = sweep_row_for(single_cfg, dual_cfg, grid, sigma, b_values[i],
                                        nullptr, nullptr, nullptr, nullptr);
            }
        });
    }
    for (auto& th : pool) th.join();
    return rows;
}

CrossoverResult find_crossover(const CondensateConfig& config, const Grid& grid, double sigma,
                               double b_lo, double b_hi, double tol) {
    if (!(b_lo < b_hi) || std::isinf(b_lo) || std::isinf(b_hi))
        throw std::invalid_argument("find_crossover: need finite b_lo < b_hi");
    if (!(tol > 0.0)) throw std::invalid_argument("find_crossover: tol must be > 0");

    auto delta_at = [&](double b) {
        const std::vector<double> one{b};
        return barrier_sweep(config, grid, sigma, one, false, 1).front().delta;
    };
    double d_lo = delta_at(b_lo);
    double d_hi = delta_at(b_hi);
    CrossoverResult res;
    res.delta_lo = d_lo;
    res.delta_hi = d_hi;
    if (!(d_lo < 0.0 && d_hi > 0.0))
        throw NoCrossoverInBracket("find_crossover: delta does not change sign on [" +
                                   std::to_string(b_lo) + ", " + std::to_string(b_hi) + "]");
    while (b_hi - b_lo > tol) {
        const double mid = 0.5 * (b_lo + b_hi);
        const double d_mid = delta_at(mid);
        if (d_mid < 0.0) {
            b_lo = mid;
            d_lo = d_mid;
        } else {
            b_hi = mid;
            d_hi = d_mid;
        }
    }
    res.b_lo = b_lo;
    res.b_hi = b_hi;
    res.delta_lo = d_lo;
    res.delta_hi = d_hi;
    res.b_star = 0.5 * (b_lo + b_hi);
    res.achieved_tolerance = b_hi - b_lo;
    return res;
}

DecompositionReport decompose_comparison(const CondensateConfig& config,
                                         const RealWavefunction& phi0, const DualPair& pair) {
    require_same_grid(phi0.grid, pair.phi1.grid, "decompose_comparison");
    const double N = static_cast<double>(config.n_particles);
    const double N1 = static_cast<double>(config.n1);
    const double N2 = static_cast<double>(config.n2);
    const double g = config.g;
    DecompositionReport r;
    r.quartic_0 = quartic_integral(phi0);
    r.quartic_1 = quartic_integral(pair.phi1);
    r.quartic_2 = quartic_integral(pair.phi2);
    r.exchange = 2.0 * g * N1 * N2 * density_overlap(pair.phi1, pair.phi2);
    r.e_s_quad = 0.5 * g * N * N * r.quartic_0;
    r.e_d_quad = 0.5 * g * (N1 * N1 * r.quartic_1 + N2 * N2 * r.quartic_2) + r.exchange;
    r.e_s_lin = -0.5 * g * N * r.quartic_0;
    r.e_d_lin = -0.5 * g * (N1 * r.quartic_1 + N2 * r.quartic_2);
    double worst = 0.0;
    for (size_t i = 0; i < phi0.values.size(); ++i) {
        const double dual_density = N1 * pair.phi1.values[i] * pair.phi1.values[i] +
                                    N2 * pair.phi2.values[i] * pair.phi2.values[i];
        const double single_density = N * phi0.values[i] * phi0.values[i];
        worst = std::max(worst, std::abs(dual_density - single_density));
    }
    r.density_similarity = worst;
    return r;
}

} // namespace condfrag
