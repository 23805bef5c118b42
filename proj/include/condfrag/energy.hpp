#pragma once

#include "condfrag/condensate.hpp"
#include "condfrag/operators.hpp"
#include "condfrag/potential.hpp"
#include "condfrag/wavefunction.hpp"

namespace condfrag {

/// Decomposition of a condensate energy into the single-particle piece, the
/// N^2 Hartree piece, the exchange overlap term (zero for a single
/// condensate) and the negative linear-in-N self-interaction correction.
/// total = single_particle + hartree_quad + exchange + self_correction.
struct EnergyBreakdown {
    double single_particle = 0.0;
    double hartree_quad = 0.0;
    double exchange = 0.0;
    double self_correction = 0.0;
    double total = 0.0;

    double component_sum() const {
        return single_particle + hartree_quad + exchange + self_correction;
    }
};

/// Single-particle energy eps(phi) = <phi| -1/2 d2/dx2 + U |phi>.
/// Honors the hard-wall node flag on the potential.
double single_particle_energy(const RealWavefunction& phi, const Potential& pot);

/// Same, with a prebuilt kinetic operator (solver hot path).
double single_particle_energy(const RealWavefunction& phi, const Potential& pot,
                              const SymPentaBands& kinetic);

/// dx * sum(phi^4).
double quartic_integral(const RealWavefunction& phi);

/// dx * sum(phi1^2 phi2^2); symmetric in its arguments.
double density_overlap(const RealWavefunction& phi1, const RealWavefunction& phi2);

/// (<phi1,phi1>, <phi2,phi2>, <phi1,phi2>) for callers to compare against
/// their own tolerances.
struct Orthonormality {
    double norm1 = 0.0;
    double norm2 = 0.0;
    double overlap = 0.0;
};
Orthonormality orthonormality_check(const RealWavefunction& phi1, const RealWavefunction& phi2);

/// Tolerance on |<phi1,phi2>| accepted by energy_dual.
inline constexpr double kOrthogonalityTol = 1e-6;

/// E_s = N eps(phi0) + 1/2 g N (N-1) * quartic_integral(phi0), with the
/// quadratic/linear decomposition of the interaction part.
EnergyBreakdown energy_single(const CondensateConfig& config, const RealWavefunction& phi0,
                              const Potential& pot);

/// E_d = N1 eps(phi1) + N2 eps(phi2)
///     + 1/2 g N1 (N1-1) quartic(phi1) + 1/2 g N2 (N2-1) quartic(phi2)
///     + 2 g N1 N2 density_overlap(phi1, phi2).
/// Requires |<phi1,phi2>| <= kOrthogonalityTol and N1 + N2 = N.
EnergyBreakdown energy_dual(const CondensateConfig& config, const RealWavefunction& phi1,
                            const RealWavefunction& phi2, const Potential& pot);

} // namespace condfrag
