#include "rdslab/stats.hpp"

#include "rdslab/error.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <numeric>

namespace rdslab {

namespace {
double two_sided_z(double confidence) {
    return boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + confidence / 2.0);
}
} // namespace

Proportion wilson(std::int64_t hits, std::int64_t trials, double confidence) {
    if (hits < 0 || hits > trials) throw Error(ErrorCode::precondition, "hits must lie in [0, trials]");
    Proportion out{hits, trials, 0.0, 0.0, 1.0};
    if (trials == 0) return out;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(hits) / n;
    const double z = two_sided_z(confidence);
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    out.freq = p;
    out.lo = hits == 0 ? 0.0 : std::max(0.0, center - half);
    out.hi = hits == trials ? 1.0 : std::min(1.0, center + half);
    return out;
}

MeanInterval t_interval(std::span<const double> values, double confidence) {
    MeanInterval out;
    out.n = values.size();
    if (values.empty()) {
        out.mean = out.lo = out.hi = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    const double n = static_cast<double>(values.size());
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() < 2) {
        out.lo = -std::numeric_limits<double>::infinity();
        out.hi = std::numeric_limits<double>::infinity();
        return out;
    }
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    const double se = std::sqrt(ss / (n - 1.0) / n);
    const boost::math::students_t_distribution<double> dist(n - 1.0);
    const double half = boost::math::quantile(dist, 0.5 + confidence / 2.0) * se;
    out.lo = out.mean - half;
    out.hi = out.mean + half;
    return out;
}

MeanInterval batch_means(std::span<const double> series, int batches, double confidence) {
    if (batches < 2) throw Error(ErrorCode::precondition, "batch means need at least 2 batches");
    if (series.size() < static_cast<std::size_t>(batches))
        throw Error(ErrorCode::precondition, "series of length " + std::to_string(series.size()) +
                                                 " is shorter than the batch count " + std::to_string(batches));
    const std::size_t len = series.size() / static_cast<std::size_t>(batches);
    std::vector<double> means(static_cast<std::size_t>(batches));
    for (std::size_t b = 0; b < means.size(); ++b) {
        const auto first = series.begin() + static_cast<std::ptrdiff_t>(b * len);
        means[b] = std::accumulate(first, first + static_cast<std::ptrdiff_t>(len), 0.0) / static_cast<double>(len);
    }
    MeanInterval ci = t_interval(means, confidence);
    const double overall =
        std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(series.size());
    const double half = (ci.hi - ci.lo) / 2.0;
    return {overall, overall - half, overall + half, means.size()};
}

IncrementStats increment_stats(const NoisePath &path) {
    IncrementStats out;
    out.cells = path.cell_count();
    out.dt = path.dt();
    const int d = path.dim();
    if (out.cells < 2) throw Error(ErrorCode::precondition, "increment statistics need at least 2 cells");
    Eigen::MatrixXd inc(out.cells, d);
    for (std::int64_t k = 0; k < out.cells; ++k) {
        const auto cell = path.increment(path.first_cell() + k);
        for (int j = 0; j < d; ++j) inc(k, j) = cell[static_cast<std::size_t>(j)];
    }
    const double n = static_cast<double>(out.cells);
    const Eigen::RowVectorXd mean = inc.colwise().mean();
    const Eigen::MatrixXd centered = inc.rowwise() - mean;
    const Eigen::MatrixXd cov = centered.transpose() * centered / (n - 1.0);
    const double se = std::sqrt(out.dt / n);
    for (int j = 0; j < d; ++j) {
        out.mean.push_back(mean[j]);
        out.z.push_back(mean[j] / se);
        out.var_ratio.push_back(cov(j, j) / out.dt);
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            out.max_abs_corr = std::max(out.max_abs_corr, std::abs(cov(i, j) / std::sqrt(cov(i, i) * cov(j, j))));
    return out;
}

} // namespace rdslab
