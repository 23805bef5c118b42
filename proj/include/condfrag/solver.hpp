#pragma once

#include <utility>
#include <vector>

#include "condfrag/condensate.hpp"
#include "condfrag/energy.hpp"
#include "condfrag/potential.hpp"
#include "condfrag/wavefunction.hpp"

namespace condfrag {

struct HistoryRow {
    long long iter = 0;
    double energy = 0.0;
    double residual = 0.0;
};

struct SolverReport {
    bool converged = false;
    long long iterations = 0;
    double final_energy = 0.0;
    std::vector<HistoryRow> energy_history; // accepted steps only
    double residual = 0.0;                  // per-particle NLSE residual norm
    double chemical_potential = 0.0;
};

/// Mirror-constrained orbital pair phi1(-x) = phi2(x), represented through
/// equal-norm symmetric/antisymmetric components so that <phi1, phi2> = 0
/// holds by construction:
///   phi1 = (S + A)/sqrt2,  phi2 = (S - A)/sqrt2,  ||S|| = ||A|| = 1.
struct DualPair {
    RealWavefunction phi1;
    RealWavefunction phi2;

    /// Build from components; S must be even and A odd (checked), both are
    /// renormalized.
    static DualPair from_components(RealWavefunction sym, RealWavefunction asym);

    RealWavefunction symmetric_component() const;     // (phi1 + phi2)/sqrt2
    RealWavefunction antisymmetric_component() const; // (phi1 - phi2)/sqrt2

    /// Orbitals relabeled by centroid sign.
    const RealWavefunction& left() const;
    const RealWavefunction& right() const;
};

/// Unprojected energy gradient of E_s as a grid function:
/// dE_s/dphi0 = 2N [ -1/2 d2/dx2 + U + g(N-1) phi0^2 ] phi0.
std::vector<double> grad_single(const CondensateConfig& config, const RealWavefunction& phi0,
                                const Potential& pot);

/// grad - <grad, phi> phi (dx-weighted), the tangent component on the
/// normalization sphere at a normalized phi.
std::vector<double> project_tangent(const Grid& grid, const std::vector<double>& grad,
                                    const RealWavefunction& phi);

/// Gradient of E_d with respect to the symmetric/antisymmetric components.
struct DualGradient {
    std::vector<double> g_sym;  // dE_d/dS (unprojected chain rule)
    std::vector<double> g_asym; // dE_d/dA
};

DualGradient grad_dual(const CondensateConfig& config, const DualPair& pair,
                       const Potential& pot);

/// Constraint-honoring version: parity-projected and tangent-projected
/// against S and A respectively.
DualGradient grad_dual_projected(const CondensateConfig& config, const DualPair& pair,
                                 const Potential& pot);

/// Default initial guesses (spec'd: oscillator Gaussian for the single
/// problem; mirror Gaussians at the well minima, symmetrized and
/// antisymmetrized, for the dual problem).
RealWavefunction default_single_guess(const Potential& pot);
DualPair default_dual_guess(const Potential& pot);

/// Imaginary-time / preconditioned projected-gradient minimization of E_s
/// over normalized phi0. Hard-wall potentials keep the forced node every
/// iteration. Returns the converged orbital and a report; non-convergence
/// is reported, not thrown.
std::pair<RealWavefunction, SolverReport> solve_single_ground(
    const CondensateConfig& config, const Potential& pot,
    const RealWavefunction* warm_start = nullptr, bool record_history = true);

/// Same scheme for E_d over mirror-constrained pairs with N1 = N2 = N/2.
/// Throws on odd N.
std::pair<DualPair, SolverReport> solve_dual_ground(
    const CondensateConfig& config, const Potential& pot,
    const DualPair* warm_start = nullptr, bool record_history = true);

} // namespace condfrag
