#pragma once

#include <string>

#include "condfrag/run_config.hpp"

namespace condfrag {

/// Exit codes shared by all commands:
///   0 success, 1 usage/config error, 2 numerical non-convergence.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNonConverged = 2;

/// Solve the configured ground-state problem and write wavefunction files,
/// the solver report, the energy history and the energy breakdown.
int cmd_groundstate(const RunConfig& cfg, const std::string& out_dir, int threads = 1);

/// Barrier sweep comparing E_s and E_d; writes sweep.csv, delta.csv and,
/// when a sign change exists among the finite-b rows, crossover.txt.
int cmd_sweep(const RunConfig& cfg, const std::string& out_dir, int threads = 1);

/// Standalone bisection between the configured bracket endpoints.
int cmd_crossover(const RunConfig& cfg, const std::string& out_dir, int threads = 1);

/// Detection-run Monte Carlo: per-run phases plus the ensemble verdict.
int cmd_interfere(const RunConfig& cfg, const std::string& out_dir, int threads = 1);

} // namespace condfrag
