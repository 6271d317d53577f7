#include "rdslab/geometry.hpp"
#include "rdslab/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace rdslab;

namespace {

constexpr double kZ95 = 1.959963984540054;

State angle(double a) { return Eigen::Matrix<double, 1, 1>(a); }

double brute_energy(StateSpace space, const std::vector<State> &a, const std::vector<State> &b) {
    const auto mean = [&](const std::vector<State> &u, const std::vector<State> &v) {
        double s = 0.0;
        for (const auto &p : u)
            for (const auto &q : v) s += state_distance(space, p, q);
        return s / static_cast<double>(u.size() * v.size());
    };
    return 2.0 * mean(a, b) - mean(a, a) - mean(b, b);
}

} // namespace

TEST(Wilson, MatchesClosedForm) {
    for (auto [k, n] : {std::pair{0, 10}, std::pair{3, 10}, std::pair{50, 100}, std::pair{399, 400}, std::pair{20, 20}}) {
        const auto p = wilson(k, n);
        const double ph = static_cast<double>(k) / n;
        const double denom = 1 + kZ95 * kZ95 / n;
        const double centre = (ph + kZ95 * kZ95 / (2.0 * n)) / denom;
        const double half = kZ95 * std::sqrt(ph * (1 - ph) / n + kZ95 * kZ95 / (4.0 * n * n)) / denom;
        EXPECT_DOUBLE_EQ(p.freq, ph);
        EXPECT_NEAR(p.lo, k == 0 ? 0.0 : centre - half, 1e-12);
        EXPECT_NEAR(p.hi, k == n ? 1.0 : centre + half, 1e-12);
        EXPECT_LE(p.lo, p.freq);
        EXPECT_GE(p.hi, p.freq);
    }
}

TEST(TInterval, KnownSample) {
    const std::vector<double> v{1, 2, 3, 4, 5};
    const auto ci = t_interval(v);
    // t_{0.975, 4} = 2.7764451051977987, s = sqrt(2.5)
    const double half = 2.7764451051977987 * std::sqrt(2.5) / std::sqrt(5.0);
    EXPECT_DOUBLE_EQ(ci.mean, 3.0);
    EXPECT_NEAR(ci.lo, 3.0 - half, 1e-12);
    EXPECT_NEAR(ci.hi, 3.0 + half, 1e-12);
}

TEST(BatchMeans, ConstantSeriesHasZeroWidth) {
    const std::vector<double> v(1000, 0.25);
    const auto ci = batch_means(v, 20);
    EXPECT_DOUBLE_EQ(ci.mean, 0.25);
    EXPECT_DOUBLE_EQ(ci.lo, 0.25);
    EXPECT_DOUBLE_EQ(ci.hi, 0.25);
}

TEST(BatchMeans, CoversTheMeanOfIidNoise) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g(1.5, 2.0);
    std::vector<double> v(20000);
    for (auto &x : v) x = g(rng);
    const auto ci = batch_means(v, 20);
    EXPECT_LT(ci.lo, 1.5);
    EXPECT_GT(ci.hi, 1.5);
    EXPECT_LT(ci.hi - ci.lo, 0.2);
}

TEST(IncrementStats, MomentsOfGeneratedPath) {
    const auto p = NoisePath::sample_wiener(3, 2, 0.0, 10.0, 1e-3);
    const auto s = increment_stats(p);
    ASSERT_EQ(s.cells, 10000);
    for (int j = 0; j < 2; ++j) {
        EXPECT_LT(std::abs(s.z[j]), 4.0);
        EXPECT_NEAR(s.var_ratio[j], 1.0, 0.05);
    }
    EXPECT_LT(s.max_abs_corr, 0.05);
}

TEST(EnergyDistance, IdenticalCloudsGiveZero) {
    std::vector<State> a{Eigen::Vector2d(0, 1), Eigen::Vector2d(2, 3), Eigen::Vector2d(-1, 0)};
    EXPECT_EQ(energy_distance(StateSpace::euclidean, a, a), 0.0);
    std::vector<State> c{angle(0.1), angle(3.0), angle(6.0)};
    EXPECT_EQ(energy_distance(StateSpace::circle, c, c), 0.0);
}

TEST(EnergyDistance, CircleMatchesBruteForce) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<State> a, b;
        for (int i = 0; i < 37; ++i) a.push_back(angle(u(rng)));
        for (int i = 0; i < 23; ++i) b.push_back(angle(rep % 2 ? u(rng) : std::fmod(u(rng) * 0.2 + 1.0, 6.28)));
        a.push_back(a.front());
        EXPECT_NEAR(energy_distance(StateSpace::circle, a, b), brute_energy(StateSpace::circle, a, b), 1e-10);
        double cross = 0.0;
        for (const auto &p : a)
            for (const auto &q : b) cross += state_distance(StateSpace::circle, p, q);
        EXPECT_NEAR(cross_distance_sum(StateSpace::circle, a, b), cross, 1e-9);
    }
}

TEST(EnergyDistance, EuclideanMatchesBruteForceAndTwoPointValue) {
    std::vector<State> a{Eigen::Vector2d(0, 0)}, b{Eigen::Vector2d(3, 4)};
    EXPECT_DOUBLE_EQ(energy_distance(StateSpace::euclidean, a, b), 10.0);
    std::mt19937_64 rng(6);
    std::normal_distribution<double> g;
    std::vector<State> c, e;
    for (int i = 0; i < 30; ++i) c.push_back(Eigen::Vector3d(g(rng), g(rng), g(rng)));
    for (int i = 0; i < 17; ++i) e.push_back(Eigen::Vector3d(g(rng) + 1, g(rng), g(rng)));
    EXPECT_NEAR(energy_distance(StateSpace::euclidean, c, e), brute_energy(StateSpace::euclidean, c, e), 1e-12);
    EXPECT_GT(energy_distance(StateSpace::euclidean, c, e), 0.0);
}

TEST(Linkage, CountsComponents) {
    std::vector<State> pts{Eigen::Vector2d(0, 0), Eigen::Vector2d(0.05, 0), Eigen::Vector2d(0.1, 0),
                           Eigen::Vector2d(5, 5), Eigen::Vector2d(5.01, 5)};
    EXPECT_EQ(single_linkage_count(StateSpace::euclidean, pts, 0.06), 2);
    EXPECT_EQ(single_linkage_count(StateSpace::euclidean, pts, 0.04), 4);
    EXPECT_EQ(single_linkage_labels(StateSpace::euclidean, pts, 0.06), (std::vector<int>{0, 0, 0, 1, 1}));
}

TEST(Linkage, CircleWrapsAround) {
    const double two_pi = 2 * std::numbers::pi;
    std::vector<State> pts{angle(0.01), angle(two_pi - 0.01), angle(std::numbers::pi)};
    EXPECT_EQ(single_linkage_count(StateSpace::circle, pts, 0.05), 2);
    std::vector<State> ring;
    for (int i = 0; i < 100; ++i) ring.push_back(angle(two_pi * i / 100.0));
    EXPECT_EQ(single_linkage_count(StateSpace::circle, ring, 0.07), 1);
    EXPECT_EQ(single_linkage_count(StateSpace::circle, ring, 0.06), 100);
}

TEST(ClosePairs, FractionAndDiameter) {
    std::vector<State> pts{Eigen::Vector2d(0, 0), Eigen::Vector2d(0, 0.001), Eigen::Vector2d(1, 0),
                           Eigen::Vector2d(1, 0.001)};
    EXPECT_DOUBLE_EQ(close_pair_fraction(StateSpace::euclidean, pts, 0.01), 2.0 / 6.0);
    EXPECT_DOUBLE_EQ(close_pair_fraction(StateSpace::euclidean, pts, 10.0), 1.0);
    EXPECT_NEAR(diameter(StateSpace::euclidean, pts), std::sqrt(1.0 + 1e-6), 1e-15);
    EXPECT_DOUBLE_EQ(close_pair_fraction(StateSpace::euclidean, std::vector<State>{pts[0]}, 0.01), 1.0);
}
