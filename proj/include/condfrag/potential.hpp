#pragma once

#include <string>
#include <vector>

#include "condfrag/grid.hpp"

namespace condfrag {

enum class PotentialKind { gaussian_barrier, hard_wall };

std::string to_string(PotentialKind k);
PotentialKind potential_kind_from_string(const std::string& s);

/// Double-minimum trap: harmonic confinement x^2/2 plus a central Gaussian
/// barrier b*exp(-x^2/(2 sigma^2)), or the hard-wall limit (x^2/2 with a
/// forced node at x = 0).
struct PotentialSpec {
    PotentialKind kind = PotentialKind::gaussian_barrier;
    double barrier_height = 0.0; // b, ignored for hard_wall
    double barrier_width = 0.5;  // sigma, ignored for hard_wall

    void validate() const;

    /// x-position of the right-hand potential minimum (0 when the wells
    /// have merged, i.e. b <= sigma^2). For hard_wall the harmonic minimum
    /// sits at the wall, so this also returns 0.
    double well_position() const;
};

/// Tabulated U(x) plus the node flag consumed by the energy functionals
/// and solvers.
struct Potential {
    Grid grid;
    std::vector<double> values;
    bool hard_wall = false;
};

Potential build_potential(const PotentialSpec& spec, const Grid& grid);

} // namespace condfrag
