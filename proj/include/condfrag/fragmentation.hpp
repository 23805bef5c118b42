#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "condfrag/condensate.hpp"
#include "condfrag/energy.hpp"
#include "condfrag/potential.hpp"
#include "condfrag/solver.hpp"

namespace condfrag {

/// Left/right-localized combinations of degenerate symmetric/antisymmetric
/// nodal solutions: phi_l = (phi_s + phi_a)/sqrt2, phi_r = (phi_s - phi_a)/sqrt2.
/// Inputs must be normalized, even resp. odd (checked).
std::pair<RealWavefunction, RealWavefunction> construct_left_right(
    const RealWavefunction& phi_s, const RealWavefunction& phi_a);

/// Antisymmetric degenerate partner of a hard-wall symmetric solution:
/// sign-flipped left half (exact at infinite barrier, where the two
/// symmetry sectors are degenerate).
RealWavefunction antisymmetric_partner(const RealWavefunction& phi_s);

/// Everything the infinite-barrier analysis produces: the hard-wall NLSE
/// solution, its left/right construction, and the interaction-energy
/// identities against which it is checked.
struct InfiniteBarrierReport {
    RealWavefunction phi_s;
    RealWavefunction phi_l;
    RealWavefunction phi_r;
    SolverReport single_report;
    SolverReport dual_report;
    double eps_s = 0.0; // single-particle energies, equal by degeneracy
    double eps_l = 0.0;
    double quartic_s = 0.0;
    double quartic_l = 0.0; // = 2 quartic_s
    double overlap_lr = 0.0; // density overlap of phi_l, phi_r (= 0)
    double single_interaction = 0.0;        // 1/2 g N (N-1) quartic_s
    double dual_interaction = 0.0;          // computed from the construction
    double dual_interaction_identity = 0.0; // 1/2 g N (N-2) quartic_s
    double e_single = 0.0;             // E_s of the hard-wall single solution
    double e_dual_construction = 0.0;  // E_d of |N/2,phi_l;N/2,phi_r>
    double e_dual_solver = 0.0;        // E_d from solve_dual_ground
    bool dual_favored = false;         // e_dual_construction < e_single
};

InfiniteBarrierReport infinite_barrier_report(const CondensateConfig& config, const Grid& grid);

/// One row of the barrier-strength comparison. b may be +infinity for the
/// hard-wall sentinel row.
struct SweepRow {
    double b = 0.0;
    double e_s = 0.0;
    double e_d = 0.0;
    double delta = 0.0;   // e_s - e_d; > 0 means the dual condensate wins
    double overlap = 0.0; // density_overlap(phi1, phi2)
    bool converged_s = false;
    bool converged_d = false;
};

/// Runs both variational problems for each barrier height. b_values must be
/// ascending; +infinity (hard wall) is allowed as the final entry. With
/// warm_start each row starts from the previous row's solutions; without it
/// rows are independent and may be computed in parallel (threads > 1).
std::vector<SweepRow> barrier_sweep(const CondensateConfig& config, const Grid& grid,
                                    double sigma, const std::vector<double>& b_values,
                                    bool warm_start = true, int threads = 1);

struct CrossoverResult {
    double b_star = 0.0;
    double b_lo = 0.0;
    double b_hi = 0.0;
    double achieved_tolerance = 0.0;
    double delta_lo = 0.0;
    double delta_hi = 0.0;
};

struct NoCrossoverInBracket : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bisection on delta(b) = E_s(b) - E_d(b) down to bracket width <= tol.
/// Throws NoCrossoverInBracket when delta does not change sign on [b_lo, b_hi].
CrossoverResult find_crossover(const CondensateConfig& config, const Grid& grid, double sigma,
                               double b_lo, double b_hi, double tol = 1e-2);

/// Quadratic (N^2) and linear (N) interaction pieces of both states, the
/// exchange term, and the density-similarity diagnostic.
struct DecompositionReport {
    double e_s_quad = 0.0; // 1/2 g N^2 quartic(phi0)
    double e_d_quad = 0.0; // 1/2 g (N1^2 quartic1 + N2^2 quartic2) + exchange
    double exchange = 0.0; // 2 g N1 N2 density_overlap(phi1, phi2)
    double e_s_lin = 0.0;  // -1/2 g N quartic(phi0)
    double e_d_lin = 0.0;  // -1/2 g (N1 quartic1 + N2 quartic2)
    double density_similarity = 0.0; // max |N1 phi1^2 + N2 phi2^2 - N phi0^2|
    double quartic_0 = 0.0;
    double quartic_1 = 0.0;
    double quartic_2 = 0.0;
};

DecompositionReport decompose_comparison(const CondensateConfig& config,
                                         const RealWavefunction& phi0, const DualPair& pair);

} // namespace condfrag
