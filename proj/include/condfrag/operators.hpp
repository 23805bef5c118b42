#pragma once

#include <vector>

#include "condfrag/grid.hpp"
#include "condfrag/potential.hpp"

namespace condfrag {

/// Symmetric pentadiagonal matrix in band storage.
/// d0[i] = A(i,i), d1[i] = A(i,i+1), d2[i] = A(i,i+2).
struct SymPentaBands {
    std::vector<double> d0, d1, d2;

    explicit SymPentaBands(int n)
        : d0(static_cast<size_t>(n), 0.0),
          d1(static_cast<size_t>(n > 0 ? n - 1 : 0), 0.0),
          d2(static_cast<size_t>(n > 1 ? n - 2 : 0), 0.0) {}

    int n() const { return static_cast<int>(d0.size()); }

    /// out = A v
    void apply(const std::vector<double>& v, std::vector<double>& out) const;

    /// v^T A v
    double quad_form(const std::vector<double>& v) const;
};

/// Kinetic energy operator -1/2 d^2/dx^2, fourth-order five-point stencil,
/// zero boundary values outside [x_min, x_max].
///
/// With `hard_wall` the two half-lines are decoupled: stencil legs that
/// would cross x = 0 are closed with odd-extension (Dirichlet) ghost values
/// from the same side. This keeps the symmetric and antisymmetric nodal
/// solutions exactly degenerate and keeps one-sided states exactly
/// one-sided, for either grid parity. When the grid has a point at x = 0
/// its amplitude is pinned to zero (node_index() reports it).
SymPentaBands kinetic_bands(const Grid& grid, bool hard_wall);

/// Grid index of the forced node, or -1 when none (even point count or no wall).
int hard_wall_node_index(const Grid& grid, bool hard_wall);

/// Effective single-particle Hamiltonian application:
/// out = (K + diag(U) + diag(nl)) v, where nl is an optional nonlinear
/// diagonal (pass nullptr for the bare single-particle operator).
void apply_hamiltonian(const SymPentaBands& kinetic, const std::vector<double>& U,
                       const std::vector<double>* nl, const std::vector<double>& v,
                       std::vector<double>& out);

/// LDL^T factorization of an SPD symmetric pentadiagonal matrix.
class PentaLDLT {
public:
    explicit PentaLDLT(const SymPentaBands& a);

    /// Solve A w = rhs.
    void solve(const std::vector<double>& rhs, std::vector<double>& w) const;

private:
    std::vector<double> d_, l1_, l2_;
};

} // namespace condfrag
