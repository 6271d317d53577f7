#include "rdslab/error.hpp"
#include "rdslab/noise.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace rdslab;

namespace {

void expect_error(ErrorCode code, auto &&fn) {
    try {
        fn();
        ADD_FAILURE() << "expected " << to_string(code);
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

} // namespace

TEST(Wiener, EmptyWindowEvaluatesToZero) {
    const auto p = NoisePath::sample_wiener(1, 2, 0.0, 0.0, 1e-3);
    EXPECT_EQ(p.cell_count(), 0);
    EXPECT_EQ(p.evaluate(0.0), Eigen::Vector2d::Zero());
}

TEST(Wiener, IncrementMomentsOverTenThousandCells) {
    const double dt = 1e-3;
    const auto p = NoisePath::sample_wiener(1, 2, 0.0, 10.0, dt);
    ASSERT_EQ(p.cell_count(), 10000);
    const double n = 10000.0;
    for (int j = 0; j < 2; ++j) {
        double sum = 0.0;
        for (std::int64_t k = 0; k < p.cell_count(); ++k) sum += p.increment(k)[j];
        const double mean = sum / n;
        double ss = 0.0;
        for (std::int64_t k = 0; k < p.cell_count(); ++k) ss += (p.increment(k)[j] - mean) * (p.increment(k)[j] - mean);
        EXPECT_LT(std::abs(mean), 4.0 * std::sqrt(dt / n));
        EXPECT_NEAR(ss / (n - 1.0) / dt, 1.0, 0.05);
    }
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::int64_t k = 0; k < p.cell_count(); ++k) {
        sxy += p.increment(k)[0] * p.increment(k)[1];
        sxx += p.increment(k)[0] * p.increment(k)[0];
        syy += p.increment(k)[1] * p.increment(k)[1];
    }
    EXPECT_LT(std::abs(sxy / std::sqrt(sxx * syy)), 0.05);
}

TEST(Wiener, RegenerationIsBitIdentical) {
    const auto a = NoisePath::sample_wiener(1, 3, -2.0, 5.0, 1e-2);
    const auto b = NoisePath::sample_wiener(1, 3, -2.0, 5.0, 1e-2);
    EXPECT_TRUE(a.identical(b));
    EXPECT_FALSE(a.identical(NoisePath::sample_wiener(2, 3, -2.0, 5.0, 1e-2)));
}

TEST(Wiener, CellsDependOnlyOnAbsoluteIndex) {
    const auto wide = NoisePath::sample_wiener(4, 2, -3.0, 3.0, 0.5);
    const auto narrow = NoisePath::sample_wiener(4, 2, -1.0, 1.0, 0.5);
    for (std::int64_t k = narrow.first_cell(); k < narrow.end_cell(); ++k)
        for (int j = 0; j < 2; ++j) EXPECT_EQ(wide.increment(k)[j], narrow.increment(k)[j]);
    const auto offset = NoisePath::wiener_cells(4, 2, 0.5, 0, 4, 2);
    for (std::int64_t k = 0; k < 4; ++k)
        for (int j = 0; j < 2; ++j) EXPECT_EQ(offset.increment(k)[j], wide.increment(k + 2)[j]);
}

TEST(Wiener, RejectsMisalignedOrUnanchoredWindows) {
    expect_error(ErrorCode::grid_alignment, [] { NoisePath::sample_wiener(1, 2, 0.0, 1.0005, 1e-3); });
    expect_error(ErrorCode::precondition, [] { NoisePath::sample_wiener(1, 2, 0.5, 1.0, 1e-3); });
    expect_error(ErrorCode::precondition, [] { NoisePath::sample_wiener(1, 2, 0.0, 1.0, 0.0); });
}

TEST(Shift, ZeroShiftIsIdentity) {
    const auto p = NoisePath::sample_wiener(3, 2, -1.0, 1.0, 0.25);
    EXPECT_TRUE(p.shift(0.0).identical(p));
}

TEST(Shift, GroupLawOnCells) {
    const auto p = NoisePath::sample_wiener(3, 2, -2.0, 2.0, 0.25);
    for (double a : {-1.0, -0.25, 0.5, 2.0}) {
        for (double b : {-0.5, 0.0, 0.75}) {
            const auto pa = p.shift(a);
            if (b < pa.t_lo() || b > pa.t_hi()) continue;
            EXPECT_TRUE(pa.shift(b).identical(p.shift(a + b))) << a << " " << b;
        }
    }
}

TEST(Shift, HandTracedTwoCellPath) {
    const double g1 = 0.3, g2 = -0.7;
    const auto p = NoisePath::from_increments(1, 0.5, 0, {g1, g2});
    const auto q = p.shift(0.5);
    EXPECT_EQ(q.t_lo(), -0.5);
    EXPECT_EQ(q.t_hi(), 0.5);
    EXPECT_EQ(q.increment(-1)[0], g1);
    EXPECT_EQ(q.increment(0)[0], g2);
    EXPECT_EQ(q.evaluate(0.5)[0], g2);
    EXPECT_EQ(q.evaluate(-0.5)[0], -g1);
    EXPECT_EQ(q.evaluate(0.0)[0], 0.0);
}

TEST(Shift, EvaluateMatchesReindexedSums) {
    const double dt = 0.125;
    const auto p = NoisePath::sample_wiener(8, 2, -4.0, 4.0, dt);
    for (double tau : {-2.0, -0.5, 0.0, 1.375, 3.0}) {
        const auto q = p.shift(tau);
        const auto c = static_cast<std::int64_t>(std::llround(tau / dt));
        for (std::int64_t k = q.first_cell(); k <= q.end_cell(); ++k) {
            const double t = static_cast<double>(k) * dt;
            Eigen::Vector2d direct = Eigen::Vector2d::Zero();
            for (std::int64_t i = 0; i < k; ++i)
                for (int j = 0; j < 2; ++j) direct[j] += p.increment(i + c)[j];
            for (std::int64_t i = -1; i >= k; --i)
                for (int j = 0; j < 2; ++j) direct[j] -= p.increment(i + c)[j];
            EXPECT_EQ(q.evaluate(t), direct) << "tau=" << tau << " t=" << t;
            const Eigen::VectorXd diff = p.evaluate(t + tau) - p.evaluate(tau);
            EXPECT_LT((q.evaluate(t) - diff).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(Shift, RejectsMisalignedOrOutsideTau) {
    const auto p = NoisePath::sample_wiener(3, 1, 0.0, 1.0, 0.25);
    expect_error(ErrorCode::grid_alignment, [&] { (void)p.shift(0.1); });
    expect_error(ErrorCode::out_of_window, [&] { (void)p.shift(1.25); });
}

TEST(Evaluate, AnchorAndInterpolation) {
    const auto one = NoisePath::from_increments(1, 0.2, 0, {0.8});
    EXPECT_EQ(one.evaluate(0.0)[0], 0.0);
    EXPECT_DOUBLE_EQ(one.evaluate(0.1)[0], 0.4);
    EXPECT_EQ(one.evaluate(0.2)[0], 0.8);
    expect_error(ErrorCode::out_of_window, [&] { (void)one.evaluate(0.3); });
    expect_error(ErrorCode::out_of_window, [&] { (void)one.evaluate(-0.1); });
}

TEST(ExtendLeft, NoOpAndTwoStepEqualsOneStep) {
    const auto p = NoisePath::sample_wiener(5, 2, 0.0, 1.0, 0.01);
    EXPECT_TRUE(p.extend_left(0.0).identical(p));
    EXPECT_TRUE(p.extend_left(-1.0).extend_left(-2.0).identical(p.extend_left(-2.0)));
    EXPECT_TRUE(p.extend_left(-2.0).identical(NoisePath::sample_wiener(5, 2, -2.0, 1.0, 0.01)));
}

TEST(ExtendLeft, PreservesOldValues) {
    const auto p = NoisePath::sample_wiener(5, 2, -0.5, 1.0, 0.01);
    const auto q = p.extend_left(-3.0);
    for (int k = -50; k <= 100; ++k) {
        const double t = k * 0.01;
        EXPECT_EQ(p.evaluate(t), q.evaluate(t));
    }
    for (std::int64_t k = p.first_cell(); k < p.end_cell(); ++k) EXPECT_EQ(p.increment(k)[1], q.increment(k)[1]);
}

TEST(ExtendLeft, RequiresLineage) {
    const auto p = NoisePath::from_increments(1, 0.5, 0, {1.0});
    expect_error(ErrorCode::unsupported, [&] { (void)p.extend_left(-0.5); });
}

TEST(NoiseSeq, UniformDrawsInRangeAndReproducible) {
    const double two_pi = 2.0 * std::numbers::pi;
    const auto s = NoiseSeq::sample(3, UniformInterval{0.0, two_pi}, 1, -100, 20000);
    double sum = 0.0;
    double lag = 0.0;
    for (std::int64_t k = s.first(); k < s.end(); ++k) {
        ASSERT_GE(s.draw(k)[0], 0.0);
        ASSERT_LT(s.draw(k)[0], two_pi);
        sum += s.draw(k)[0];
        if (k + 1 < s.end()) lag += (s.draw(k)[0] - std::numbers::pi) * (s.draw(k + 1)[0] - std::numbers::pi);
    }
    const double n = static_cast<double>(s.end() - s.first());
    const double var = two_pi * two_pi / 12.0;
    EXPECT_NEAR(sum / n, std::numbers::pi, 4.0 * std::sqrt(var / n));
    EXPECT_LT(std::abs(lag / (n - 1.0) / var), 0.03);
    EXPECT_TRUE(s.identical(NoiseSeq::sample(3, UniformInterval{0.0, two_pi}, 1, -100, 20000)));
    EXPECT_TRUE(s.shift(7).shift(-3).identical(s.shift(4)));
    EXPECT_TRUE(NoiseSeq::sample(3, UniformInterval{0.0, two_pi}, 1, 0, 100).extend_left(-100).identical(
        NoiseSeq::sample(3, UniformInterval{0.0, two_pi}, 1, -100, 100)));
}

TEST(NoiseSeq, UniformSetLaw) {
    const auto s = NoiseSeq::sample(3, UniformSet{{-1.0, 1.0}}, 2, 0, 1000);
    int plus = 0;
    for (std::int64_t k = 0; k < 1000; ++k)
        for (double v : s.draw(k)) {
            ASSERT_TRUE(v == 1.0 || v == -1.0);
            plus += v > 0;
        }
    EXPECT_NEAR(plus / 2000.0, 0.5, 4.0 * 0.5 / std::sqrt(2000.0));
}

TEST(Steering, TransitPathValues) {
    const auto p = steering_path(TransitSteering{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), 2.0, {}}, 0.25);
    EXPECT_EQ(p.t_hi(), 0.5);
    EXPECT_EQ(p.evaluate(0.25), Eigen::Vector2d(0.5, 0));
    EXPECT_EQ(p.evaluate(0.5), Eigen::Vector2d(1, 0));
}

TEST(Steering, TransitWithEqualEndpointsIsZero) {
    const Eigen::Vector2d x(0.3, -1.0);
    const auto p = steering_path(TransitSteering{x, x, 4.0, {}}, 0.01);
    EXPECT_EQ(p.t_hi(), 0.25);
    for (std::int64_t k = 0; k < p.cell_count(); ++k) EXPECT_EQ(p.increment(k)[0], 0.0);
}

TEST(Steering, ContractPathHoldsAfterRamp) {
    const auto p = steering_path(ContractSteering{3, 1.0, 1.0, 4.0}, 0.125);
    EXPECT_EQ(p.evaluate(1.0), Eigen::Vector3d(1, 0, 0));
    for (double t : {1.0, 1.5, 2.0, 3.875, 4.0}) EXPECT_EQ(p.evaluate(t), Eigen::Vector3d(1, 0, 0));
    EXPECT_DOUBLE_EQ(p.evaluate(0.5)[0], 0.5);
}

TEST(Steering, RejectsNonPositiveRates) {
    expect_error(ErrorCode::precondition,
                 [] { steering_path(TransitSteering{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), 0.0, {}}, 0.01); });
    expect_error(ErrorCode::precondition, [] { steering_path(ContractSteering{2, 1.0, -1.0, 1.0}, 0.01); });
}

TEST(NoisePathCsv, HeaderAndRows) {
    const auto p = NoisePath::from_increments(2, 0.5, 0, {1.0, 2.0, 3.0, 4.0});
    std::ostringstream os;
    p.write_csv(os);
    EXPECT_EQ(os.str(), "t,w_1,w_2\n0,0,0\n0.5,1,2\n1,4,6\n");
}
