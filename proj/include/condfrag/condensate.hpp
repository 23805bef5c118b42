#pragma once

#include <stdexcept>

namespace condfrag {

/// Particle numbers, interaction strength and solver knobs for one problem.
/// g is the effective dimensionless 1D coupling (repulsive only).
struct CondensateConfig {
    long long n_particles = 100; // N
    double g = 0.0;
    long long n1 = 50; // dual occupations, n1 + n2 = N
    long long n2 = 50;
    double tol_energy = 1e-10;
    double tol_gradient = 1e-8;
    long long max_iters = 200000;
    double dt_imag = 1e-3;

    void validate() const {
        if (n_particles < 1) throw std::invalid_argument("condensate: N must be >= 1");
        if (g < 0.0) throw std::invalid_argument("condensate: g must be >= 0 (repulsive)");
        if (n1 < 0 || n2 < 0) throw std::invalid_argument("condensate: N1, N2 must be >= 0");
        if (n1 + n2 != n_particles)
            throw std::invalid_argument("condensate: N1 + N2 must equal N");
        if (!(tol_energy > 0.0) || !(tol_gradient > 0.0))
            throw std::invalid_argument("condensate: tolerances must be > 0");
        if (max_iters < 1) throw std::invalid_argument("condensate: max_iters must be >= 1");
        if (!(dt_imag > 0.0)) throw std::invalid_argument("condensate: dt_imag must be > 0");
    }

    /// Config with the symmetric split N1 = N2 = N/2 (throws on odd N).
    static CondensateConfig symmetric_split(long long N, double g) {
        if (N % 2 != 0)
            throw std::invalid_argument("dual condensate requires an even particle number N");
        CondensateConfig c;
        c.n_particles = N;
        c.g = g;
        c.n1 = N / 2;
        c.n2 = N / 2;
        return c;
    }
};

} // namespace condfrag
