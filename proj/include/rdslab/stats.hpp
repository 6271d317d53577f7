#pragma once

#include "rdslab/noise.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace rdslab {

/// A binomial frequency with its Wilson score interval.
struct Proportion {
    std::int64_t hits = 0;
    std::int64_t trials = 0;
    double freq = 0.0;
    double lo = 0.0;
    double hi = 1.0;
};

Proportion wilson(std::int64_t hits, std::int64_t trials, double confidence = 0.95);

struct MeanInterval {
    double mean = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 0;
};

/// Student-t interval for the mean of i.i.d. values.
MeanInterval t_interval(std::span<const double> values, double confidence = 0.95);

/// Mean of `series` with an interval from `batches` consecutive batch means.
/// Trailing values that do not fill a batch count toward the mean only.
MeanInterval batch_means(std::span<const double> series, int batches, double confidence = 0.95);

/// Sample moments of the increments of a Wiener path.
struct IncrementStats {
    std::int64_t cells = 0;
    double dt = 0.0;
    std::vector<double> mean;
    std::vector<double> z;          // mean / sqrt(dt / N)
    std::vector<double> var_ratio;  // sample variance / dt
    double max_abs_corr = 0.0;      // over coordinate pairs
};

IncrementStats increment_stats(const NoisePath &path);

} // namespace rdslab
