#include "condfrag/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace condfrag {

void SymPentaBands::apply(const std::vector<double>& v, std::vector<double>& out) const {
    const int nn = n();
    out.assign(static_cast<size_t>(nn), 0.0);
    for (int i = 0; i < nn; ++i) {
        double s = d0[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
        if (i + 1 < nn) s += d1[static_cast<size_t>(i)] * v[static_cast<size_t>(i + 1)];
        if (i >= 1) s += d1[static_cast<size_t>(i - 1)] * v[static_cast<size_t>(i - 1)];
        if (i + 2 < nn) s += d2[static_cast<size_t>(i)] * v[static_cast<size_t>(i + 2)];
        if (i >= 2) s += d2[static_cast<size_t>(i - 2)] * v[static_cast<size_t>(i - 2)];
        out[static_cast<size_t>(i)] = s;
    }
}

double SymPentaBands::quad_form(const std::vector<double>& v) const {
    // compensated: downstream energy comparisons resolve differences near
    // machine precision
    const int nn = n();
    double s = 0.0, comp = 0.0;
    auto add = [&](double x) {
        const double y = x - comp;
        const double t = s + y;
        comp = (t - s) - y;
        s = t;
    };
    for (int i = 0; i < nn; ++i) {
        add(d0[static_cast<size_t>(i)] * v[static_cast<size_t>(i)] * v[static_cast<size_t>(i)]);
        if (i + 1 < nn)
            add(2.0 * d1[static_cast<size_t>(i)] * v[static_cast<size_t>(i)] * v[static_cast<size_t>(i + 1)]);
        if (i + 2 < nn)
            add(2.0 * d2[static_cast<size_t>(i)] * v[static_cast<size_t>(i)] * v[static_cast<size_t>(i + 2)]);
    }
    return s;
}

int hard_wall_node_index(const Grid& grid, bool hard_wall) {
    if (!hard_wall || grid.n() % 2 == 0) return -1;
    return grid.n() / 2;
}

SymPentaBands kinetic_bands(const Grid& grid, bool hard_wall) {
    const int n = grid.n();
    const double h = grid.dx();
    const double c = 1.0 / (12.0 * h * h);
    SymPentaBands k(n);
    // -1/2 * five-point d2: diag 15c, first off -8c, second off c/2
    for (int i = 0; i < n; ++i) k.d0[static_cast<size_t>(i)] = 15.0 * c;
    for (int i = 0; i + 1 < n; ++i) k.d1[static_cast<size_t>(i)] = -8.0 * c;
    for (int i = 0; i + 2 < n; ++i) k.d2[static_cast<size_t>(i)] = 0.5 * c;
    if (!hard_wall) return k;

    if (n % 2 == 0) {
        // wall between m-1 (x=-h/2) and m (x=+h/2)
        const int m = n / 2;
        k.d1[static_cast<size_t>(m - 1)] = 0.0; // (m-1, m)
        k.d2[static_cast<size_t>(m - 2)] = 0.0; // (m-2, m)
        k.d2[static_cast<size_t>(m - 1)] = 0.0; // (m-1, m+1)
        // odd-extension ghosts fold back onto the wall-adjacent rows
        k.d0[static_cast<size_t>(m)] = 23.0 * c;
        k.d0[static_cast<size_t>(m - 1)] = 23.0 * c;
        k.d1[static_cast<size_t>(m)] = -8.5 * c;     // (m, m+1)
        k.d1[static_cast<size_t>(m - 2)] = -8.5 * c; // (m-2, m-1)
    } else {
        // node pinned at the center point
        const int c0 = n / 2;
        k.d0[static_cast<size_t>(c0)] = 0.0;
        k.d1[static_cast<size_t>(c0)] = 0.0;     // (c0, c0+1)
        k.d1[static_cast<size_t>(c0 - 1)] = 0.0; // (c0-1, c0)
        k.d2[static_cast<size_t>(c0)] = 0.0;     // (c0, c0+2)
        k.d2[static_cast<size_t>(c0 - 2)] = 0.0; // (c0-2, c0)
        k.d2[static_cast<size_t>(c0 - 1)] = 0.0; // (c0-1, c0+1) crosses the node
        k.d0[static_cast<size_t>(c0 + 1)] = 14.5 * c;
        k.d0[static_cast<size_t>(c0 - 1)] = 14.5 * c;
    }
    return k;
}

void apply_hamiltonian(const SymPentaBands& kinetic, const std::vector<double>& U,
                       const std::vector<double>* nl, const std::vector<double>& v,
                       std::vector<double>& out) {
    kinetic.apply(v, out);
    const size_t n = v.size();
    if (nl) {
        for (size_t i = 0; i < n; ++i) out[i] += (U[i] + (*nl)[i]) * v[i];
    } else {
        for (size_t i = 0; i < n; ++i) out[i] += U[i] * v[i];
    }
}

PentaLDLT::PentaLDLT(const SymPentaBands& a) {
    const int n = a.n();
    d_.assign(static_cast<size_t>(n), 0.0);
    l1_.assign(static_cast<size_t>(n > 0 ? n - 1 : 0), 0.0);
    l2_.assign(static_cast<size_t>(n > 1 ? n - 2 : 0), 0.0);
    for (int i = 0; i < n; ++i) {
        double di = a.d0[static_cast<size_t>(i)];
        if (i >= 1) di -= l1_[static_cast<size_t>(i - 1)] * l1_[static_cast<size_t>(i - 1)] * d_[static_cast<size_t>(i - 1)];
        if (i >= 2) di -= l2_[static_cast<size_t>(i - 2)] * l2_[static_cast<size_t>(i - 2)] * d_[static_cast<size_t>(i - 2)];
        if (!(di > 0.0) || !std::isfinite(di))
            throw std::runtime_error("PentaLDLT: matrix not positive definite");
        d_[static_cast<size_t>(i)] = di;
        if (i + 1 < n) {
            double num = a.d1[static_cast<size_t>(i)];
            if (i >= 1)
                num -= l2_[static_cast<size_t>(i - 1)] * l1_[static_cast<size_t>(i - 1)] * d_[static_cast<size_t>(i - 1)];
            l1_[static_cast<size_t>(i)] = num / di;
        }
        if (i + 2 < n) l2_[static_cast<size_t>(i)] = a.d2[static_cast<size_t>(i)] / di;
    }
}

void PentaLDLT::solve(const std::vector<double>& rhs, std::vector<double>& w) const {
    const int n = static_cast<int>(d_.size());
    w = rhs;
    for (int i = 1; i < n; ++i) {
        double s = w[static_cast<size_t>(i)] - l1_[static_cast<size_t>(i - 1)] * w[static_cast<size_t>(i - 1)];
        if (i >= 2) s -= l2_[static_cast<size_t>(i - 2)] * w[static_cast<size_t>(i - 2)];
        w[static_cast<size_t>(i)] = s;
    }
    for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] /= d_[static_cast<size_t>(i)];
    for (int i = n - 2; i >= 0; --i) {
        double s = w[static_cast<size_t>(i)] - l1_[static_cast<size_t>(i)] * w[static_cast<size_t>(i + 1)];
        if (i + 2 < n) s -= l2_[static_cast<size_t>(i)] * w[static_cast<size_t>(i + 2)];
        w[static_cast<size_t>(i)] = s;
    }
}

} // namespace condfrag
