#pragma once

#include <vector>

namespace condfrag {

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double regularized_gamma_q(double a, double x);

/// Survival function of a chi-square variable: P(X >= chi2 | dof).
double chi_square_pvalue(double chi2, double dof);

struct ChiSquareResult {
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
};

/// Pearson chi-square of observed counts against expected counts (same total);
/// bins with expected < min_expected are pooled into one bucket.
ChiSquareResult chi_square_test(const std::vector<double>& observed,
                                const std::vector<double>& expected,
                                double min_expected = 5.0);

} // namespace condfrag
