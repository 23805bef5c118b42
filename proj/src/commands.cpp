#include "condfrag/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <thread>
#include <vector>

#include "condfrag/fragmentation.hpp"
#include "condfrag/io.hpp"
#include "condfrag/rng.hpp"
#include "condfrag/solver.hpp"

namespace condfrag {

namespace {

namespace fs = std::filesystem;

std::ofstream open_report(const fs::path& path, std::uint64_t hash) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << provenance_line(hash) << "\n";
    return out;
}

void write_solver_report(const fs::path& path, std::uint64_t hash, const SolverReport& rep,
                         const std::string& mode, double n_particles) {
    std::ofstream out = open_report(path, hash);
    out << "mode=" << mode << "\n";
    out << "converged=" << (rep.converged ? "true" : "false") << "\n";
    out << "iterations=" << rep.iterations << "\n";
    out << "final_energy=" << fmt_full(rep.final_energy) << "\n";
    out << "energy_per_particle=" << fmt_full(rep.final_energy / n_particles) << "\n";
    out << "residual=" << fmt_full(rep.residual) << "\n";
    out << "chemical_potential=" << fmt_full(rep.chemical_potential) << "\n";
}

void write_history(const fs::path& path, std::uint64_t hash, const SolverReport& rep) {
    std::ofstream out = open_report(path, hash);
    out << "iter,energy,residual\n";
    for (const auto& row : rep.energy_history)
        out << row.iter << "," << fmt_full(row.energy) << "," << fmt_full(row.residual) << "\n";
}

void write_breakdown(const fs::path& path, std::uint64_t hash, const EnergyBreakdown& b) {
    std::ofstream out = open_report(path, hash);
    out << "single_particle,hartree_quad,exchange,self_correction,total\n";
    out << fmt_full(b.single_particle) << "," << fmt_full(b.hartree_quad) << ","
        << fmt_full(b.exchange) << "," << fmt_full(b.self_correction) << ","
        << fmt_full(b.total) << "\n";
}

std::string b_column(double b) { return std::isinf(b) ? "inf" : fmt_full(b); }

} // namespace

int cmd_groundstate(const RunConfig& cfg, const std::string& out_dir, int threads) {
    (void)threads; // a single solve is sequential by construction
    const Grid grid = cfg.make_grid();
    const Potential pot = build_potential(cfg.make_potential_spec(), grid);
    const CondensateConfig cond = cfg.make_condensate();
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    const std::string comment = provenance_line(cfg.config_hash);

    if (cfg.mode == DetectionMode::single) {
        auto [phi, rep] = solve_single_ground(cond, pot);
        write_wavefunction((dir / "phi0.wf").string(), phi, comment);
        write_solver_report(dir / "solver_report.txt", cfg.config_hash, rep, "single",
                            static_cast<double>(cond.n_particles));
        write_history(dir / "energy_history.csv", cfg.config_hash, rep);
        write_breakdown(dir / "breakdown.csv", cfg.config_hash, energy_single(cond, phi, pot));
        return rep.converged ? kExitOk : kExitNonConverged;
    }

    auto [pair, rep] = solve_dual_ground(cond, pot);
    write_wavefunction((dir / "phi1.wf").string(), pair.phi1, comment);
    write_wavefunction((dir / "phi2.wf").string(), pair.phi2, comment);
    write_solver_report(dir / "solver_report.txt", cfg.config_hash, rep, "dual",
                        static_cast<double>(cond.n_particles));
    write_history(dir / "energy_history.csv", cfg.config_hash, rep);
    write_breakdown(dir / "breakdown.csv", cfg.config_hash,
                    energy_dual(cond, pair.phi1, pair.phi2, pot));
    return rep.converged ? kExitOk : kExitNonConverged;
}

namespace {

void write_crossover(const fs::path& path, std::uint64_t hash, const CrossoverResult& res) {
    std::ofstream out = open_report(path, hash);
    out << "b_star=" << fmt_full(res.b_star) << "\n";
    out << "bracket_lo=" << fmt_full(res.b_lo) << "\n";
    out << "bracket_hi=" << fmt_full(res.b_hi) << "\n";
    out << "achieved_tolerance=" << fmt_full(res.achieved_tolerance) << "\n";
    out << "delta_lo=" << fmt_full(res.delta_lo) << "\n";
    out << "delta_hi=" << fmt_full(res.delta_hi) << "\n";
}

} // namespace

int cmd_sweep(const RunConfig& cfg, const std::string& out_dir, int threads) {
    const Grid grid = cfg.make_grid();
    CondensateConfig cond = cfg.make_condensate();
    if (cfg.n_particles % 2 != 0)
        throw ConfigError("[condensate]: sweep compares against the dual state and requires an "
                          "even n_particles");
    if (!(cfg.b_step > 0.0) || !(cfg.b_max >= cfg.b_min))
        throw ConfigError("[sweep]: need b_step > 0 and b_max >= b_min");

    std::vector<double> b_values;
    for (double b = cfg.b_min; b <= cfg.b_max + 1e-12; b += cfg.b_step) b_values.push_back(b);
    if (cfg.include_hard_wall)
        b_values.push_back(std::numeric_limits<double>::infinity());

    const auto rows =
        barrier_sweep(cond, grid, cfg.barrier_width, b_values, cfg.warm_start, threads);

    const fs::path dir(out_dir);
    fs::create_directories(dir);
    {
        std::ofstream out = open_report(dir / "sweep.csv", cfg.config_hash);
        out << "b,E_s,E_d,delta,overlap,converged_s,converged_d\n";
        for (const auto& r : rows)
            out << b_column(r.b) << "," << fmt_full(r.e_s) << "," << fmt_full(r.e_d) << ","
                << fmt_full(r.delta) << "," << fmt_full(r.overlap) << ","
                << (r.converged_s ? "true" : "false") << ","
                << (r.converged_d ? "true" : "false") << "\n";
    }
    {
        std::ofstream out = open_report(dir / "delta.csv", cfg.config_hash);
        out << "b,delta\n";
        for (const auto& r : rows)
            out << b_column(r.b) << "," << fmt_full(r.delta) << "\n";
    }

    // bisect the first sign change among consecutive finite-b rows
    bool found = false;
    for (size_t i = 1; i < rows.size(); ++i) {
        if (std::isinf(rows[i].b)) break;
        if (rows[i - 1].delta < 0.0 && rows[i].delta > 0.0) {
            const CrossoverResult res =
                find_crossover(cond, grid, cfg.barrier_width, rows[i - 1].b, rows[i].b,
                               cfg.crossover_tolerance);
            write_crossover(dir / "crossover.txt", cfg.config_hash, res);
            found = true;
            break;
        }
    }
    if (!found) std::cout << "sweep: no sign change of delta among finite barrier heights; "
                             "crossover record not written\n";

    bool all_converged = true;
    for (const auto& r : rows) all_converged = all_converged && r.converged_s && r.converged_d;
    return all_converged ? kExitOk : kExitNonConverged;
}

int cmd_crossover(const RunConfig& cfg, const std::string& out_dir, int threads) {
    (void)threads;
    const Grid grid = cfg.make_grid();
    const CondensateConfig cond = cfg.make_condensate();
    if (cfg.n_particles % 2 != 0)
        throw ConfigError("[condensate]: crossover requires an even n_particles");
    const CrossoverResult res = find_crossover(cond, grid, cfg.barrier_width, cfg.bracket_lo,
                                               cfg.bracket_hi, cfg.crossover_tolerance);
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    write_crossover(dir / "crossover.txt", cfg.config_hash, res);
    return kExitOk;
}

int cmd_interfere(const RunConfig& cfg, const std::string& out_dir, int threads) {
    const Grid grid = cfg.make_grid();
    const Potential pot = build_potential(cfg.make_potential_spec(), grid);
    const CondensateConfig cond = cfg.make_condensate();
    if (cfg.detections > cfg.n_particles)
        throw ConfigError("[interference]: detections must not exceed n_particles");
    if (cfg.n_runs < 1) throw ConfigError("[interference]: n_runs must be >= 1");

    // release state: converged NLSE ground state(s) computed inline
    std::vector<RealWavefunction> release;
    bool converged = true;
    if (cfg.mode == DetectionMode::single) {
        auto [phi, rep] = solve_single_ground(cond, pot, nullptr, false);
        converged = rep.converged;
        release.push_back(std::move(phi));
    } else {
        auto [pair, rep] = solve_dual_ground(cond, pot, nullptr, false);
        converged = rep.converged;
        release.push_back(pair.left());
        release.push_back(pair.right());
    }

    ExpansionConfig expansion;
    expansion.pad_factor = cfg.pad_factor;
    const double t_exp = cfg.expansion_time > 0.0
                             ? cfg.expansion_time
                             : choose_expansion_time(cfg.mode, release, cfg.overlap_target,
                                                     expansion);
    ExpansionSnapshot snap = free_expand(cfg.mode, release, t_exp, expansion);
    if (cfg.fringe_k > 0.0) snap.fringe_k = cfg.fringe_k;

    std::vector<DetectionRun> runs(static_cast<size_t>(cfg.n_runs));
    auto run_one = [&](int id) {
        runs[static_cast<size_t>(id)] = sample_run_symmetric(
            snap, cfg.n_particles, cfg.detections,
            derive_run_seed(cfg.seed, static_cast<std::uint64_t>(id)));
    };
    if (threads > 1) {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < std::min(threads, cfg.n_runs); ++t)
            pool.emplace_back([&]() {
                for (;;) {
                    const int id = next.fetch_add(1);
                    if (id >= cfg.n_runs) return;
                    run_one(id);
                }
            });
        for (auto& th : pool) th.join();
    } else {
        for (int id = 0; id < cfg.n_runs; ++id) run_one(id);
    }

    const fs::path dir(out_dir);
    fs::create_directories(dir);
    {
        std::ofstream out = open_report(dir / "runs.csv", cfg.config_hash);
        out << "run_id,seed,mode,M,theta,R_contrib\n";
        for (int id = 0; id < cfg.n_runs; ++id) {
            const auto& r = runs[static_cast<size_t>(id)];
            out << id << "," << r.seed << "," << to_string(r.mode) << "," << r.positions.size()
                << "," << fmt_full(r.theta) << "," << fmt_full(r.order_magnitude) << "\n";
        }
    }
    if (cfg.write_positions) {
        for (int id = 0; id < cfg.n_runs; ++id) {
            std::ofstream out =
                open_report(dir / ("run_" + std::to_string(id) + ".csv"), cfg.config_hash);
            for (double x : runs[static_cast<size_t>(id)].positions) out << fmt_full(x) << "\n";
        }
    }

    EnsembleOptions opts;
    opts.rayleigh_alpha = cfg.rayleigh_alpha;
    opts.concentration_threshold = cfg.concentration_threshold;
    const EnsembleStats st = ensemble_stats(runs, opts);
    {
        std::ofstream out = open_report(dir / "ensemble.txt", cfg.config_hash);
        out << "mode=" << to_string(cfg.mode) << "\n";
        out << "n_runs=" << st.n_runs << "\n";
        out << "detections_per_run=" << cfg.detections << "\n";
        out << "expansion_time=" << fmt_full(t_exp) << "\n";
        out << "fringe_k=" << fmt_full(snap.fringe_k) << "\n";
        out << "separation=" << fmt_full(snap.separation_d) << "\n";
        out << "overlap=" << fmt_full(snap.overlap) << "\n";
        out << "single_release=nlse_ground\n";
        out << "circular_mean=" << fmt_full(st.circular_mean) << "\n";
        out << "resultant_length=" << fmt_full(st.resultant_length) << "\n";
        out << "rayleigh_p=" << fmt_full(st.rayleigh_p) << "\n";
        out << "uniform_threshold=" << fmt_full(st.uniform_threshold) << "\n";
        out << "concentration_threshold=" << fmt_full(st.concentration_threshold) << "\n";
        out << "verdict=" << to_string(st.verdict) << "\n";
    }
    return converged ? kExitOk : kExitNonConverged;
}

} // namespace condfrag
