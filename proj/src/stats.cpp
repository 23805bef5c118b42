#include "condfrag/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace condfrag {

namespace {

/// Lower regularized gamma P(a, x) by power series; valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

/// Upper regularized gamma Q(a, x) by Lentz continued fraction; x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double hval = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        hval *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return hval * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0)
        throw std::invalid_argument("regularized_gamma_q: need a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_pvalue(double chi2, double dof) {
    if (chi2 < 0.0 || !(dof > 0.0))
        throw std::invalid_argument("chi_square_pvalue: need chi2 >= 0, dof > 0");
    return regularized_gamma_q(0.5 * dof, 0.5 * chi2);
}

ChiSquareResult chi_square_test(const std::vector<double>& observed,
                                const std::vector<double>& expected,
                                double min_expected) {
    if (observed.size() != expected.size() || observed.empty())
        throw std::invalid_argument("chi_square_test: bin count mismatch");
    double chi2 = 0.0;
    long long bins_used = 0;
    double pooled_obs = 0.0, pooled_exp = 0.0;
    for (size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] < min_expected) {
            pooled_obs += observed[i];
            pooled_exp += expected[i];
            continue;
        }
        const double d = observed[i] - expected[i];
        chi2 += d * d / expected[i];
        ++bins_used;
    }
    if (pooled_exp >= min_expected) {
        const double d = pooled_obs - pooled_exp;
        chi2 += d * d / pooled_exp;
        ++bins_used;
    }
    if (bins_used < 2)
        throw std::invalid_argument("chi_square_test: too few bins with sufficient expectation");
    ChiSquareResult r;
    r.statistic = chi2;
    r.dof = static_cast<double>(bins_used - 1);
    r.p_value = chi_square_pvalue(chi2, r.dof);
    return r;
}

} // namespace condfrag
