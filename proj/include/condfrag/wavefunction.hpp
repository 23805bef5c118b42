#pragma once

#include <complex>
#include <vector>

#include "condfrag/grid.hpp"

namespace condfrag {

/// Real-valued orbital on a Grid. Amplitudes carry units length^(-1/2);
/// a normalized orbital satisfies dx * sum(values^2) = 1.
struct RealWavefunction {
    Grid grid;
    std::vector<double> values;

    RealWavefunction(Grid g, std::vector<double> v);

    /// Rescale so dx * sum(values^2) = 1. Throws on zero or non-finite norm.
    void normalize();

    /// dx-weighted L2 norm.
    double norm() const;

    bool is_normalized(double tol = 1e-9) const;

    /// phi(-x): values reversed (grid must be symmetric about 0).
    RealWavefunction mirrored() const;
};

struct ComplexWavefunction {
    Grid grid;
    std::vector<std::complex<double>> values;

    ComplexWavefunction(Grid g, std::vector<std::complex<double>> v);

    void normalize();
    double norm() const;
    bool is_normalized(double tol = 1e-9) const;
};

/// dx-weighted inner product <a, b> = dx * sum(a_i b_i).
double inner(const RealWavefunction& a, const RealWavefunction& b);

/// Even/odd parity projections on a symmetric grid, renormalized by the caller.
std::vector<double> even_part(const Grid& g, const std::vector<double>& v);
std::vector<double> odd_part(const Grid& g, const std::vector<double>& v);

/// Sampled Gaussian pi^(-1/4) exp(-(x-center)^2 / (2 width^2)) / sqrt(width),
/// normalized on the grid. The oscillator ground state is width = 1, center = 0.
RealWavefunction gaussian_orbital(const Grid& g, double center = 0.0, double width = 1.0);

/// Promote a real orbital to complex amplitudes.
ComplexWavefunction to_complex(const RealWavefunction& re);

} // namespace condfrag
