#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace condfrag {

/// Uniform 1D spatial grid in oscillator units (hbar = m = omega = 1).
/// Endpoint-inclusive: dx = (x_max - x_min) / (n_points - 1).
class Grid {
public:
    Grid(int n_points, double x_min, double x_max)
        : n_(n_points), x_min_(x_min), x_max_(x_max) {
        if (n_points < 16)
            throw std::invalid_argument("Grid: n_points must be >= 16");
        if (!(x_min < x_max))
            throw std::invalid_argument("Grid: require x_min < x_max");
        dx_ = (x_max - x_min) / static_cast<double>(n_points - 1);
        if (!(dx_ > 0.0) || !std::isfinite(dx_))
            throw std::invalid_argument("Grid: non-finite spacing");
    }

    /// Grid symmetric about x = 0, spanning [-extent, extent].
    static Grid symmetric(int n_points, double extent) {
        return Grid(n_points, -extent, extent);
    }

    int n() const { return n_; }
    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    double dx() const { return dx_; }

    double x(int i) const { return x_min_ + dx_ * static_cast<double>(i); }

    std::vector<double> points() const {
        std::vector<double> xs(static_cast<size_t>(n_));
        for (int i = 0; i < n_; ++i) xs[static_cast<size_t>(i)] = x(i);
        return xs;
    }

    /// Index of the mirror point of i across x = 0 (exact on symmetric grids).
    int mirror_index(int i) const { return n_ - 1 - i; }

    /// True when x_min = -x_max (required wherever mirror symmetry is used).
    bool is_symmetric() const {
        return std::abs(x_min_ + x_max_) <= 1e-12 * std::max(1.0, std::abs(x_max_));
    }

    bool same_as(const Grid& other) const {
        return n_ == other.n_ && x_min_ == other.x_min_ && x_max_ == other.x_max_;
    }

private:
    int n_;
    double x_min_;
    double x_max_;
    double dx_;
};

/// Throws unless both objects live on the same grid.
inline void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!a.same_as(b))
        throw std::invalid_argument(std::string("grid mismatch in ") + what);
}

/// Throws unless the grid is symmetric about 0 (mirror operations need it).
inline void require_symmetric(const Grid& g, const char* what) {
    if (!g.is_symmetric())
        throw std::invalid_argument(std::string(what) + ": grid must be symmetric about x = 0");
}

} // namespace condfrag
