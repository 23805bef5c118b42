#include "condfrag/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace condfrag {

std::string to_string(PotentialKind k) {
    return k == PotentialKind::gaussian_barrier ? "gaussian_barrier" : "hard_wall";
}

PotentialKind potential_kind_from_string(const std::string& s) {
    if (s == "gaussian_barrier") return PotentialKind::gaussian_barrier;
    if (s == "hard_wall") return PotentialKind::hard_wall;
    throw std::invalid_argument("unknown potential kind '" + s + "'");
}

void PotentialSpec::validate() const {
    if (kind == PotentialKind::hard_wall) return; // b, sigma ignored
    if (barrier_height < 0.0)
        throw std::invalid_argument("potential: barrier_height must be >= 0");
    if (!(barrier_width > 0.0))
        throw std::invalid_argument("potential: barrier_width must be > 0");
}

double PotentialSpec::well_position() const {
    if (kind == PotentialKind::hard_wall) return 0.0;
    const double s2 = barrier_width * barrier_width;
    // minimum of x^2/2 + b exp(-x^2/2s^2): off-center once b > sigma^2
    if (barrier_height <= s2) return 0.0;
    return barrier_width * std::sqrt(2.0 * std::log(barrier_height / s2));
}

Potential build_potential(const PotentialSpec& spec, const Grid& grid) {
    spec.validate();
    std::vector<double> u(static_cast<size_t>(grid.n()));
    if (spec.kind == PotentialKind::hard_wall) {
        for (int i = 0; i < grid.n(); ++i) {
            const double x = grid.x(i);
            u[static_cast<size_t>(i)] = 0.5 * x * x;
        }
        return Potential{grid, std::move(u), true};
    }
    const double b = spec.barrier_height;
    const double inv2s2 = 1.0 / (2.0 * spec.barrier_width * spec.barrier_width);
    for (int i = 0; i < grid.n(); ++i) {
        const double x = grid.x(i);
        u[static_cast<size_t>(i)] = 0.5 * x * x + b * std::exp(-x * x * inv2s2);
    }
    return Potential{grid, std::move(u), false};
}

} // namespace condfrag
