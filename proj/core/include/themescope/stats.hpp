#pragma once

#include <span>
#include <string>
#include <vector>

namespace themescope {

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0; // two-sided
};

/// Welch's unequal-variance t-test with Satterthwaite degrees of freedom.
/// Throws InsufficientSample (n < 2) or ZeroVariance (a sample with zero
/// variance, which leaves the test statistic undefined here).
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

/// CDF of Student's t with `df` degrees of freedom, via the regularized
/// incomplete beta function (continued fraction, ~1e-10 accurate).
double student_t_cdf(double t, double df);

/// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// Vovk-Sellke Maximum p-Ratio: 1 / (-e * p * ln p) for p < 1/e, else 1.
/// Throws OutOfRange unless 0 < p <= 1.
double vs_mpr(double p);

struct FeatureRanking {
    std::string feature_name;
    double t_statistic = 0.0;
    double df = 0.0;
    double p_value = 1.0;
    double vs_mpr = 1.0;
};

/// Welch t per feature column between positive (label 1) and negative rows,
/// ranked by vs_mpr descending (ties: p ascending, then name). A feature
/// whose groups have zero variance is reported as uninformative (p = 1).
std::vector<FeatureRanking> rank_features(const std::vector<std::vector<double>>& features,
                                          std::span<const int> labels,
                                          std::span<const std::string> feature_names);

} // namespace themescope
