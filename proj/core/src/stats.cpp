#include "themescope/stats.hpp"

#include "themescope/errors.hpp"

#include <algorithm>
#include <cmath>

namespace themescope {

namespace {

struct Moments {
    double mean = 0.0;
    double var = 0.0; // sample variance (n-1)
    std::size_t n = 0;
};

Moments moments(std::span<const double> xs) {
    Moments m;
    m.n = xs.size();
    for (double x : xs) m.mean += x;
    m.mean /= static_cast<double>(m.n);
    for (double x : xs) m.var += (x - m.mean) * (x - m.mean);
    m.var /= static_cast<double>(m.n - 1);
    return m;
}

// Lentz's continued fraction for the regularized incomplete beta.
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

} // namespace

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    // use the symmetry transform where the continued fraction converges fast
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(a, b, x) / a;
    }
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    const double x = df / (df + t * t);
    const double tail = 0.5 * incomplete_beta(df / 2.0, 0.5, x); // P(T > |t|)
    return t >= 0.0 ? 1.0 - tail : tail;
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) {
        throw InsufficientSample("welch_t_test: each sample needs at least 2 values");
    }
    const Moments ma = moments(a), mb = moments(b);
    if (ma.var == 0.0 || mb.var == 0.0) {
        throw ZeroVariance("welch_t_test: a sample has zero variance");
    }
    const double sa = ma.var / static_cast<double>(ma.n);
    const double sb = mb.var / static_cast<double>(mb.n);
    WelchResult result;
    result.t = (ma.mean - mb.mean) / std::sqrt(sa + sb);
    result.df = (sa + sb) * (sa + sb) /
                (sa * sa / static_cast<double>(ma.n - 1) + sb * sb / static_cast<double>(mb.n - 1));
    // two-sided p straight from the incomplete beta, one evaluation
    result.p = incomplete_beta(result.df / 2.0, 0.5, result.df / (result.df + result.t * result.t));
    return result;
}

double vs_mpr(double p) {
    if (!(p > 0.0) || p > 1.0) {
        throw OutOfRange("vs_mpr: p must be in (0, 1]");
    }
    constexpr double kInvE = 0.36787944117144233; // 1/e
    if (p >= kInvE) return 1.0;
    return 1.0 / (-std::exp(1.0) * p * std::log(p));
}

std::vector<FeatureRanking> rank_features(const std::vector<std::vector<double>>& features,
                                          std::span<const int> labels,
                                          std::span<const std::string> feature_names) {
    if (features.size() != labels.size()) {
        throw LengthMismatch("rank_features: " + std::to_string(features.size()) + " rows vs " +
                             std::to_string(labels.size()) + " labels");
    }
    const std::size_t n_features = feature_names.size();
    std::vector<FeatureRanking> rankings;
    rankings.reserve(n_features);
    std::vector<double> pos, neg;
    for (std::size_t f = 0; f < n_features; ++f) {
        pos.clear();
        neg.clear();
        for (std::size_t i = 0; i < features.size(); ++i) {
            (labels[i] == 1 ? pos : neg).push_back(features[i][f]);
        }
        FeatureRanking r;
        r.feature_name = feature_names[f];
        try {
            const WelchResult w = welch_t_test(pos, neg);
            r.t_statistic = w.t;
            r.df = w.df;
            r.p_value = w.p;
        } catch (const ZeroVariance&) {
            // constant in a group: nothing to rank on
        }
        r.vs_mpr = vs_mpr(r.p_value);
        rankings.push_back(std::move(r));
    }
    std::sort(rankings.begin(), rankings.end(), [](const FeatureRanking& a, const FeatureRanking& b) {
        if (a.vs_mpr != b.vs_mpr) return a.vs_mpr > b.vs_mpr;
        if (a.p_value != b.p_value) return a.p_value < b.p_value;
        return a.feature_name < b.feature_name;
    });
    return rankings;
}

} // namespace themescope
