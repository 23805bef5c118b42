#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "condfrag/condensate.hpp"
#include "condfrag/grid.hpp"
#include "condfrag/interference.hpp"
#include "condfrag/potential.hpp"

namespace condfrag {

/// Config problem with file/line context; the CLI maps it to exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parsed `key = value` config with [section] headers. Parsing is strict:
/// unknown sections or keys are errors, diagnostics carry line numbers.
struct RunConfig {
    // [run]
    std::uint64_t seed = 12345;

    // [grid]
    int n_points = 1024;
    double x_max = 10.0;

    // [trap]
    PotentialKind trap_kind = PotentialKind::gaussian_barrier;
    double barrier_height = 0.0;
    double barrier_width = 0.5;

    // [condensate]
    long long n_particles = 100;
    double g = 0.0;
    DetectionMode mode = DetectionMode::single;

    // [solver]
    double tol_energy = 1e-10;
    double tol_gradient = 1e-8;
    long long max_iters = 200000;
    double dt_imag = 1e-3;

    // [sweep]
    double b_min = 0.0;
    double b_max = 20.0;
    double b_step = 0.5;
    bool include_hard_wall = true;
    bool warm_start = true;
    double crossover_tolerance = 1e-2;
    double bracket_lo = 0.0; // for the standalone crossover command
    double bracket_hi = 20.0;

    // [interference]
    int n_runs = 200;
    long long detections = 500;
    double expansion_time = 0.0; // <= 0 selects automatically
    double overlap_target = 0.5;
    double fringe_k = 0.0; // <= 0 selects d/t
    int pad_factor = 4;
    double rayleigh_alpha = 0.05;
    double concentration_threshold = 0.9;
    bool write_positions = false;

    std::uint64_t config_hash = 0; // FNV-1a64 of the raw config bytes

    static RunConfig parse_file(const std::string& path);
    static RunConfig parse_text(const std::string& text, const std::string& path_for_errors);

    /// Canonical re-emission; parse(emit()) is semantically identical.
    std::string emit() const;

    Grid make_grid() const;
    PotentialSpec make_potential_spec() const;
    CondensateConfig make_condensate() const; // honors mode (split for dual)

    /// Command-specific validation (e.g. dual modes need even N).
    void validate_common() const;
};

bool semantically_equal(const RunConfig& a, const RunConfig& b);

} // namespace condfrag
