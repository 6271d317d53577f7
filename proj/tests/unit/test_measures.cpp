#include "rdslab/error.hpp"
#include "rdslab/geometry.hpp"
#include "rdslab/measures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace rdslab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Sampler, ExactCircleDrawsAreUniform) {
    const CircleMap cm;
    const auto sampler = StationarySampler::exact(cm);
    const auto draws = sampler.draw_many(SeedLineage(1), 20000);
    double sum = 0.0, sc = 0.0;
    for (const auto &x : draws) {
        ASSERT_GE(x[0], 0.0);
        ASSERT_LT(x[0], 2 * kPi);
        sum += x[0];
        sc += std::cos(x[0]);
    }
    const double n = static_cast<double>(draws.size());
    EXPECT_NEAR(sum / n, kPi, 4.0 * kPi / std::sqrt(3.0 * n));
    EXPECT_NEAR(sc / n, 0.0, 4.0 / std::sqrt(2.0 * n));
}

TEST(Sampler, DoubleWellHasNoExactLaw) {
    const DoubleWell dw;
    EXPECT_THROW(StationarySampler::exact(dw), Error);
    EXPECT_EQ(StationarySampler::automatic(dw).mode(), StationarySampler::Mode::burn_in);
    EXPECT_EQ(StationarySampler::automatic(CircleMap()).mode(), StationarySampler::Mode::exact);
}

TEST(Sampler, BurnInDrawsUseIndependentStreams) {
    const DoubleWell dw(2, 1e-3);
    const auto sampler = StationarySampler::burn_in(dw, 5.0);
    const auto draws = sampler.draw_many(SeedLineage(3), 4);
    for (std::size_t i = 0; i < draws.size(); ++i)
        for (std::size_t j = i + 1; j < draws.size(); ++j) EXPECT_GT((draws[i] - draws[j]).norm(), 1e-6);
    EXPECT_EQ(sampler.draw(SeedLineage(3).child(2)), draws[2]);
}

TEST(Pullback, ZeroHorizonReturnsTheDraw) {
    const CircleMap cm;
    const auto sampler = StationarySampler::exact(cm);
    const auto cloud = pullback_sample(cm, SeedLineage(1), 0.0, 1, sampler, SeedLineage(2));
    ASSERT_EQ(cloud.size(), 1u);
    EXPECT_EQ(cloud.atoms[0], sampler.draw(SeedLineage(2).child(0)));
    EXPECT_EQ(cloud.weight(), 1.0);
}

TEST(Pullback, WeightsSumToOne) {
    const CircleMap cm;
    const auto cloud = pullback_sample(cm, SeedLineage(1), 10.0, 37, StationarySampler::exact(cm), SeedLineage(2));
    double total = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) total += cloud.weight();
    EXPECT_NEAR(total, 1.0, 1e-15);
    EXPECT_EQ(cloud.size(), 37u);
}

TEST(Pullback, DeterministicAndSharesTheOmegaWindow) {
    const CircleMap cm;
    const auto sampler = StationarySampler::exact(cm);
    const auto a = pullback_sample(cm, SeedLineage(4), 50.0, 30, sampler, SeedLineage(5));
    const auto b = pullback_sample(cm, SeedLineage(4), 50.0, 30, sampler, SeedLineage(5));
    EXPECT_EQ(a.atoms, b.atoms);
    // The longer horizon runs cells [-80, -50) and then the same cells [-50, 0).
    std::vector<State> atoms = sampler.draw_many(SeedLineage(5), 30);
    advance(cm, cells(shift_cells(cm.sample_noise(SeedLineage(4), -80, -50), -80)), atoms, 0, 30);
    advance(cm, cells(shift_cells(cm.sample_noise(SeedLineage(4), -50, 0), -50)), atoms, 0, 50);
    EXPECT_EQ(pullback_sample(cm, SeedLineage(4), 80.0, 30, sampler, SeedLineage(5)).atoms, atoms);
}

TEST(Pullback, CircleCloudSitsOnTwoAntipodalArcs) {
    const CircleMap cm(0.3);
    const auto sampler = StationarySampler::exact(cm);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto cloud = pullback_sample(cm, SeedLineage(seed), 200.0, 200, sampler, SeedLineage(seed + 100));
        const auto labels = single_linkage_labels(StateSpace::circle, cloud.atoms, 0.05);
        ASSERT_EQ(*std::max_element(labels.begin(), labels.end()), 1);
        std::vector<std::vector<State>> arcs(2);
        for (std::size_t i = 0; i < labels.size(); ++i) arcs[static_cast<std::size_t>(labels[i])].push_back(cloud.atoms[i]);
        EXPECT_LT(diameter(StateSpace::circle, arcs[0]), 0.05);
        EXPECT_LT(diameter(StateSpace::circle, arcs[1]), 0.05);
        EXPECT_NEAR(cm.distance(arcs[0][0], arcs[1][0]), kPi, 0.05);
    }
}

TEST(Pullback, CircleCloudIsInvariantUnderHalfTurn) {
    const CircleMap cm(0.3);
    const auto cloud = pullback_sample(cm, SeedLineage(8), 500.0, 200, StationarySampler::exact(cm), SeedLineage(9));
    for (const auto &x : cloud.atoms) {
        const State turned = cm.canonical(State(x.array() + kPi));
        double nearest = INFINITY;
        for (const auto &y : cloud.atoms) nearest = std::min(nearest, cm.distance(turned, y));
        EXPECT_LT(nearest, 1e-6);
    }
}

TEST(Pullback, DoubleWellCloudCollapses) {
    const DoubleWell dw(2, 1e-3);
    const auto sampler = StationarySampler::burn_in(dw, 10.0);
    int collapsed = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto cloud = pullback_sample(dw, SeedLineage(seed), 50.0, 20, sampler, SeedLineage(seed + 50));
        collapsed += diameter(StateSpace::euclidean, cloud.atoms) < 1e-3;
    }
    EXPECT_GE(collapsed, 9);
}

TEST(Convergence, RepeatedHorizonGivesZero) {
    const CircleMap cm;
    const std::vector<double> horizons{30.0, 30.0};
    const auto rows = pullback_convergence(cm, SeedLineage(1), horizons, 50, StationarySampler::exact(cm), SeedLineage(2));
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].distance, 0.0);
}

TEST(Convergence, RowsMatchSeparatePullbacks) {
    const CircleMap cm;
    const auto sampler = StationarySampler::exact(cm);
    const std::vector<double> horizons{10.0, 20.0, 40.0};
    const auto rows = pullback_convergence(cm, SeedLineage(3), horizons, 40, sampler, SeedLineage(4));
    ASSERT_EQ(rows.size(), 2u);
    const auto a = pullback_sample(cm, SeedLineage(3), 20.0, 40, sampler, SeedLineage(4));
    const auto b = pullback_sample(cm, SeedLineage(3), 40.0, 40, sampler, SeedLineage(4));
    EXPECT_EQ(rows[1].distance, energy_distance(StateSpace::circle, a.atoms, b.atoms));
    EXPECT_THROW(pullback_convergence(cm, SeedLineage(3), std::vector<double>{20.0, 10.0}, 5, sampler, SeedLineage(4)),
                 Error);
}

TEST(Convergence, DoubleWellDistanceDecreases) {
    const DoubleWell dw(2, 1e-3);
    const std::vector<double> horizons{5.0, 10.0, 25.0, 50.0};
    const auto rows =
        pullback_convergence(dw, SeedLineage(2), horizons, 20, StationarySampler::burn_in(dw, 10.0), SeedLineage(3));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_GE(rows[0].distance, rows[2].distance);
    EXPECT_LT(rows[2].distance, 1e-3);
}

TEST(Convergence, CircleDistanceSmallAtLargeM) {
    const CircleMap cm(0.3);
    const std::vector<double> horizons{400.0, 500.0};
    const auto rows =
        pullback_convergence(cm, SeedLineage(5), horizons, 20000, StationarySampler::exact(cm), SeedLineage(6));
    EXPECT_LT(rows[0].distance, 1e-3);
}

TEST(DiagonalMass, HugeThresholdGivesOne) {
    const CircleMap cm;
    const auto p = diagonal_mass(cm, 50, 10.0, 10.0, StationarySampler::exact(cm), SeedLineage(1), 1);
    EXPECT_EQ(p.freq, 1.0);
    EXPECT_EQ(p.hi, 1.0);
}

TEST(DiagonalMass, MonotoneInThreshold) {
    const CircleMap cm;
    const auto sampler = StationarySampler::exact(cm);
    double previous = -1.0;
    for (double eps : {1e-4, 1e-2, 0.05, 0.5, 2.0, 4.0}) {
        const auto p = diagonal_mass(cm, 200, 30.0, eps, sampler, SeedLineage(2), 1);
        EXPECT_GE(p.freq, previous);
        previous = p.freq;
    }
}

TEST(DiagonalMass, CircleIsNearOneHalf) {
    const CircleMap cm(0.3);
    const auto p = diagonal_mass(cm, 400, 500.0, 0.05, StationarySampler::exact(cm), SeedLineage(3));
    EXPECT_GE(p.freq, 0.40);
    EXPECT_LE(p.freq, 0.60);
}

TEST(MajorityVote, StrictMajorityOnly) {
    EXPECT_EQ(majority_vote(std::vector<int>{2, 2, 1}), 2);
    EXPECT_EQ(majority_vote(std::vector<int>{1, 2}), std::nullopt);
    EXPECT_EQ(majority_vote(std::vector<int>{1, 1, 2, 2}), std::nullopt);
    EXPECT_EQ(majority_vote(std::vector<int>{3}), 3);
}

TEST(ClusterCount, RejectsSmallClouds) {
    const CircleMap cm;
    try {
        cluster_count(cm, 5, 10.0, 19, 0.05, StationarySampler::exact(cm), SeedLineage(1));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::precondition);
    }
}

TEST(ClusterCount, CircleFindsTwoClusters) {
    const CircleMap cm(0.3);
    const auto r = cluster_count(cm, 40, 500.0, 50, 0.05, StationarySampler::exact(cm), SeedLineage(7));
    ASSERT_TRUE(r.n_hat_cloud);
    EXPECT_EQ(*r.n_hat_cloud, 2);
    ASSERT_TRUE(r.n_hat_diag);
    EXPECT_EQ(std::lround(*r.n_hat_diag), 2);
    EXPECT_FALSE(r.estimators_disagree);
    EXPECT_EQ(r.per_trial_counts.size(), 40u);
}

TEST(ClusterCount, ReportJsonAndParallelDeterminism) {
    const CircleMap cm(0.3);
    const auto sampler = StationarySampler::exact(cm);
    std::vector<EmpiricalRandomMeasure> clouds;
    const auto a = cluster_count(cm, 8, 100.0, 20, 0.05, sampler, SeedLineage(2), 1, &clouds);
    const auto b = cluster_count(cm, 8, 100.0, 20, 0.05, sampler, SeedLineage(2), 3);
    EXPECT_EQ(nlohmann::json(a).dump(), nlohmann::json(b).dump());
    const nlohmann::json j = a;
    for (const char *key : {"n_hat_cloud", "n_hat_diag", "diag_mass", "ci", "eps", "T", "m", "trials", "per_trial_counts"})
        EXPECT_TRUE(j.contains(key)) << key;
    ASSERT_EQ(clouds.size(), 8u);
    std::ostringstream os;
    write_clouds_csv(os, cm, clouds);
    const std::string csv = os.str();
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 8 * 20);
    EXPECT_EQ(csv.substr(0, 17), "trial,atom,angle\n");
}

TEST(ClusterCount, ZeroMassIsFlaggedNotDivided) {
    ClusterReport r;
    r.diag_mass = 0.0;
    const nlohmann::json j = r;
    EXPECT_TRUE(j["n_hat_diag"].is_null());
    EXPECT_TRUE(j["n_hat_diag_infinite"].get<bool>());
}
