#include "themescope/stats.hpp"

#include "themescope/errors.hpp"
#include "themescope/util.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace themescope;

TEST_CASE("welch_t_test on identical samples") {
    const std::vector<double> a = {1.0, 2.0, 3.0};
    const auto result = welch_t_test(a, a);
    CHECK(result.t == doctest::Approx(0.0));
    CHECK(result.p == doctest::Approx(1.0));
}

TEST_CASE("welch_t_test fixture [1,2,3] vs [2,3,4]") {
    const std::vector<double> a = {1.0, 2.0, 3.0};
    const std::vector<double> b = {2.0, 3.0, 4.0};
    const auto result = welch_t_test(a, b);
    CHECK(result.t == doctest::Approx(-1.2247448713915889).epsilon(1e-9));
    CHECK(result.df == doctest::Approx(4.0).epsilon(1e-12));
    // 0.28786413 from an independent evaluation of the t CDF
    CHECK(result.p == doctest::Approx(0.2878641347266908).epsilon(5e-3 / 0.2878641347266908));
    CHECK(std::fabs(result.p - 0.288) < 0.005);
}

TEST_CASE("welch_t_test separates distant Gaussians decisively") {
    util::Rng rng(99);
    auto gaussian = [&rng] {
        const double u1 = std::max(rng.real(), 1e-12);
        const double u2 = rng.real();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    };
    std::vector<double> a, b;
    for (int i = 0; i < 50; ++i) {
        a.push_back(gaussian());
        b.push_back(gaussian() + 5.0);
    }
    const auto result = welch_t_test(a, b);
    CHECK(result.p < 1e-6);
    CHECK(result.t < 0.0);
}

TEST_CASE("welch_t_test error contracts") {
    CHECK_THROWS_AS(welch_t_test(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}),
                    InsufficientSample);
    CHECK_THROWS_AS(welch_t_test(std::vector<double>{2.0, 2.0}, std::vector<double>{1.0, 3.0}),
                    ZeroVariance);
}

TEST_CASE("welch_t_test antisymmetry and shift invariance") {
    const std::vector<double> a = {0.3, 1.7, 2.9, 0.4, 1.1};
    const std::vector<double> b = {1.0, 2.5, 2.6, 3.9};
    const auto ab = welch_t_test(a, b);
    const auto ba = welch_t_test(b, a);
    CHECK(ab.t == -ba.t);
    CHECK(ab.p == ba.p);

    std::vector<double> a_shift = a, b_shift = b;
    for (auto& x : a_shift) x += 17.5;
    for (auto& x : b_shift) x += 17.5;
    const auto shifted = welch_t_test(a_shift, b_shift);
    CHECK(shifted.t == doctest::Approx(ab.t).epsilon(1e-12));
    CHECK(shifted.p == doctest::Approx(ab.p).epsilon(1e-12));
}

TEST_CASE("student_t_cdf sanity") {
    CHECK(student_t_cdf(0.0, 7.0) == doctest::Approx(0.5).epsilon(1e-12));
    // symmetric tails
    CHECK(student_t_cdf(-1.3, 9.0) ==
          doctest::Approx(1.0 - student_t_cdf(1.3, 9.0)).epsilon(1e-12));
    // df=1 is Cauchy: CDF(1) = 3/4
    CHECK(student_t_cdf(1.0, 1.0) == doctest::Approx(0.75).epsilon(1e-10));
}

TEST_CASE("vs_mpr closed-form fixtures") {
    CHECK(vs_mpr(0.05) == doctest::Approx(2.456).epsilon(0.001 / 2.456));
    CHECK(std::fabs(vs_mpr(0.05) - 2.456) < 0.001);
    CHECK(std::fabs(vs_mpr(0.01) - 7.988) < 0.001);
    CHECK(vs_mpr(0.5) == 1.0);
    CHECK(vs_mpr(1.0) == 1.0);
}

TEST_CASE("vs_mpr domain errors") {
    CHECK_THROWS_AS(vs_mpr(0.0), OutOfRange);
    CHECK_THROWS_AS(vs_mpr(-0.1), OutOfRange);
    CHECK_THROWS_AS(vs_mpr(1.5), OutOfRange);
}

TEST_CASE("vs_mpr is strictly decreasing below 1/e and continuous at it") {
    const double inv_e = std::exp(-1.0);
    double prev = vs_mpr(1e-6);
    for (double p = 1e-5; p < inv_e; p *= 1.9) {
        const double v = vs_mpr(p);
        CHECK(v < prev);
        CHECK(v >= 1.0);
        prev = v;
    }
    CHECK(vs_mpr(inv_e - 1e-9) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(vs_mpr(inv_e + 1e-9) == 1.0);
}

TEST_CASE("ranking by vs_mpr equals ranking by ascending p") {
    // feature columns with varying separation
    util::Rng rng(5);
    const std::size_t n = 40;
    std::vector<std::vector<double>> features(n, std::vector<double>(6));
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = i < n / 2 ? 1 : 0;
        for (std::size_t f = 0; f < 6; ++f) {
            const double shift = labels[i] == 1 ? 0.15 * static_cast<double>(f) : 0.0;
            features[i][f] = rng.real() + shift;
        }
    }
    const std::vector<std::string> names = {"f0", "f1", "f2", "f3", "f4", "f5"};
    const auto rankings = rank_features(features, labels, names);
    REQUIRE(rankings.size() == 6);
    for (std::size_t i = 1; i < rankings.size(); ++i) {
        CHECK(rankings[i - 1].vs_mpr >= rankings[i].vs_mpr);
        if (rankings[i - 1].vs_mpr > 1.0 || rankings[i].vs_mpr > 1.0) {
            CHECK(rankings[i - 1].p_value <= rankings[i].p_value);
        }
        CHECK(rankings[i].vs_mpr >= 1.0);
    }
}
