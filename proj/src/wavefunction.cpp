#include "condfrag/wavefunction.hpp"

#include <cmath>
#include <stdexcept>

namespace condfrag {

namespace {

void check_finite(const std::vector<double>& v) {
    for (double q : v)
        if (!std::isfinite(q))
            throw std::invalid_argument("wavefunction: non-finite amplitude");
}

} // namespace

RealWavefunction::RealWavefunction(Grid g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.n())
        throw std::invalid_argument("wavefunction: value count does not match grid");
    check_finite(values);
}

double RealWavefunction::norm() const {
    double s = 0.0;
    for (double q : values) s += q * q;
    return std::sqrt(s * grid.dx());
}

void RealWavefunction::normalize() {
    const double nrm = norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw std::invalid_argument("normalize: zero or non-finite norm");
    const double inv = 1.0 / nrm;
    for (double& q : values) q *= inv;
}

bool RealWavefunction::is_normalized(double tol) const {
    double s = 0.0;
    for (double q : values) s += q * q;
    return std::abs(s * grid.dx() - 1.0) <= tol;
}

RealWavefunction RealWavefunction::mirrored() const {
    require_symmetric(grid, "mirrored");
    std::vector<double> m(values.size());
    const int n = grid.n();
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)] = values[static_cast<size_t>(n - 1 - i)];
    return RealWavefunction(grid, std::move(m));
}

ComplexWavefunction::ComplexWavefunction(Grid g, std::vector<std::complex<double>> v)
    : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.n())
        throw std::invalid_argument("wavefunction: value count does not match grid");
    for (const auto& q : values)
        if (!std::isfinite(q.real()) || !std::isfinite(q.imag()))
            throw std::invalid_argument("wavefunction: non-finite amplitude");
}

double ComplexWavefunction::norm() const {
    double s = 0.0;
    for (const auto& q : values) s += std::norm(q);
    return std::sqrt(s * grid.dx());
}

void ComplexWavefunction::normalize() {
    const double nrm = norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw std::invalid_argument("normalize: zero or non-finite norm");
    const double inv = 1.0 / nrm;
    for (auto& q : values) q *= inv;
}

bool ComplexWavefunction::is_normalized(double tol) const {
    double s = 0.0;
    for (const auto& q : values) s += std::norm(q);
    return std::abs(s * grid.dx() - 1.0) <= tol;
}

double inner(const RealWavefunction& a, const RealWavefunction& b) {
    require_same_grid(a.grid, b.grid, "inner");
    double s = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i];
    return s * a.grid.dx();
}

std::vector<double> even_part(const Grid& g, const std::vector<double>& v) {
    require_symmetric(g, "even_part");
    const int n = g.n();
    std::vector<double> out(v.size());
    for (int i = 0; i < n; ++i)
        out[static_cast<size_t>(i)] =
            0.5 * (v[static_cast<size_t>(i)] + v[static_cast<size_t>(n - 1 - i)]);
    return out;
}

std::vector<double> odd_part(const Grid& g, const std::vector<double>& v) {
    require_symmetric(g, "odd_part");
    const int n = g.n();
    std::vector<double> out(v.size());
    for (int i = 0; i < n; ++i)
        out[static_cast<size_t>(i)] =
            0.5 * (v[static_cast<size_t>(i)] - v[static_cast<size_t>(n - 1 - i)]);
    return out;
}

RealWavefunction gaussian_orbital(const Grid& g, double center, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("gaussian_orbital: width must be > 0");
    std::vector<double> v(static_cast<size_t>(g.n()));
    for (int i = 0; i < g.n(); ++i) {
        const double u = (g.x(i) - center) / width;
        v[static_cast<size_t>(i)] = std::exp(-0.5 * u * u);
    }
    RealWavefunction phi(g, std::move(v));
    phi.normalize();
    return phi;
}

ComplexWavefunction to_complex(const RealWavefunction& re) {
    std::vector<std::complex<double>> v(re.values.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = {re.values[i], 0.0};
    return ComplexWavefunction(re.grid, std::move(v));
}

} // namespace condfrag
