#include "condfrag/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace condfrag {

double single_particle_energy(const RealWavefunction& phi, const Potential& pot,
                              const SymPentaBands& kinetic) {
    require_same_grid(phi.grid, pot.grid, "single_particle_energy");
    const double h = phi.grid.dx();
    double e = kinetic.quad_form(phi.values);
    const size_t n = phi.values.size();
    for (size_t i = 0; i < n; ++i) e += pot.values[i] * phi.values[i] * phi.values[i];
    return e * h;
}

double single_particle_energy(const RealWavefunction& phi, const Potential& pot) {
    const SymPentaBands k = kinetic_bands(pot.grid, pot.hard_wall);
    return single_particle_energy(phi, pot, k);
}

double quartic_integral(const RealWavefunction& phi) {
    double s = 0.0;
    for (double q : phi.values) {
        const double d = q * q;
        s += d * d;
    }
    return s * phi.grid.dx();
}

double density_overlap(const RealWavefunction& phi1, const RealWavefunction& phi2) {
    require_same_grid(phi1.grid, phi2.grid, "density_overlap");
    double s = 0.0;
    for (size_t i = 0; i < phi1.values.size(); ++i) {
        const double d1 = phi1.values[i] * phi1.values[i];
        const double d2 = phi2.values[i] * phi2.values[i];
        s += d1 * d2;
    }
    return s * phi1.grid.dx();
}

Orthonormality orthonormality_check(const RealWavefunction& phi1, const RealWavefunction& phi2) {
    require_same_grid(phi1.grid, phi2.grid, "orthonormality_check");
    Orthonormality r;
    r.norm1 = inner(phi1, phi1);
    r.norm2 = inner(phi2, phi2);
    r.overlap = inner(phi1, phi2);
    return r;
}

EnergyBreakdown energy_single(const CondensateConfig& config, const RealWavefunction& phi0,
                              const Potential& pot) {
    if (config.n_particles < 1) throw std::invalid_argument("energy_single: N must be >= 1");
    if (config.g < 0.0) throw std::invalid_argument("energy_single: g must be >= 0");
    const double N = static_cast<double>(config.n_particles);
    const double g = config.g;
    const double eps = single_particle_energy(phi0, pot);
    const double q = quartic_integral(phi0);
    EnergyBreakdown b;
    b.single_particle = N * eps;
    b.hartree_quad = 0.5 * g * N * N * q;
    b.exchange = 0.0;
    b.self_correction = -0.5 * g * N * q;
    b.total = N * eps + 0.5 * g * N * (N - 1.0) * q;
    return b;
}

EnergyBreakdown energy_dual(const CondensateConfig& config, const RealWavefunction& phi1,
                            const RealWavefunction& phi2, const Potential& pot) {
    config.validate();
    require_same_grid(phi1.grid, phi2.grid, "energy_dual");
    const double ov = inner(phi1, phi2);
    if (std::abs(ov) > kOrthogonalityTol)
        throw std::invalid_argument("energy_dual: orbitals not orthogonal (|<phi1,phi2>| = " +
                                    std::to_string(std::abs(ov)) + ")");
    const double N1 = static_cast<double>(config.n1);
    const double N2 = static_cast<double>(config.n2);
    const double g = config.g;
    const SymPentaBands k = kinetic_bands(pot.grid, pot.hard_wall);
    const double eps1 = single_particle_energy(phi1, pot, k);
    const double eps2 = single_particle_energy(phi2, pot, k);
    const double q1 = quartic_integral(phi1);
    const double q2 = quartic_integral(phi2);
    const double ovd = density_overlap(phi1, phi2);
    EnergyBreakdown b;
    b.single_particle = N1 * eps1 + N2 * eps2;
    b.hartree_quad = 0.5 * g * (N1 * N1 * q1 + N2 * N2 * q2);
    b.exchange = 2.0 * g * N1 * N2 * ovd;
    b.self_correction = -0.5 * g * (N1 * q1 + N2 * q2);
    b.total = N1 * eps1 + N2 * eps2 + 0.5 * g * N1 * (N1 - 1.0) * q1 +
              0.5 * g * N2 * (N2 - 1.0) * q2 + b.exchange;
    return b;
}

} // namespace condfrag
