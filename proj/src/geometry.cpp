#include "rdslab/geometry.hpp"

#include "rdslab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace rdslab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> wrapped_angles(std::span<const State> points) {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto &p : points) out.push_back(CircleMap::wrap(p[0]));
    return out;
}

// Sum over a x b of arc length. Each b has exactly one lift in (x - pi, x + pi], where
// the arc length is |lift - x|.
double circle_cross_sum(std::span<const State> a, std::span<const State> b) {
    std::vector<double> sorted = wrapped_angles(b);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    std::vector<double> lifts(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
        lifts[i] = sorted[i] - kTwoPi;
        lifts[n + i] = sorted[i];
        lifts[2 * n + i] = sorted[i] + kTwoPi;
    }
    std::vector<double> prefix(3 * n + 1, 0.0);
    for (std::size_t i = 0; i < 3 * n; ++i) prefix[i + 1] = prefix[i] + lifts[i];

    double total = 0.0;
    for (const auto &p : a) {
        const double x = CircleMap::wrap(p[0]);
        const auto idx = [&](double v) {
            return static_cast<std::size_t>(std::upper_bound(lifts.begin(), lifts.end(), v) - lifts.begin());
        };
        const std::size_t lo = idx(x - kPi);
        const std::size_t mid = idx(x);
        const std::size_t hi = idx(x + kPi);
        total += static_cast<double>(mid - lo) * x - (prefix[mid] - prefix[lo]);
        total += (prefix[hi] - prefix[mid]) - static_cast<double>(hi - mid) * x;
    }
    return total;
}

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::vector<int> relabel(const std::vector<std::size_t> &roots) {
    std::vector<int> labels(roots.size());
    std::vector<std::pair<std::size_t, int>> seen;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        auto it = std::find_if(seen.begin(), seen.end(), [&](const auto &s) { return s.first == roots[i]; });
        if (it == seen.end()) {
            seen.emplace_back(roots[i], static_cast<int>(seen.size()));
            labels[i] = seen.back().second;
        } else {
            labels[i] = it->second;
        }
    }
    return labels;
}

} // namespace

double state_distance(StateSpace space, const State &a, const State &b) {
    if (space == StateSpace::circle) return CircleMap::arc_distance(a[0], b[0]);
    return (a - b).norm();
}

double cross_distance_sum(StateSpace space, std::span<const State> a, std::span<const State> b) {
    if (a.empty() || b.empty()) return 0.0;
    if (space == StateSpace::circle) return circle_cross_sum(a, b);
    double total = 0.0;
    for (const auto &x : a)
        for (const auto &y : b) total += (x - y).norm();
    return total;
}

double energy_distance(StateSpace space, std::span<const State> a, std::span<const State> b) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::precondition, "energy distance needs non-empty clouds");
    const double n = static_cast<double>(a.size());
    const double m = static_cast<double>(b.size());
    const double ab = cross_distance_sum(space, a, b) / (n * m);
    const double aa = cross_distance_sum(space, a, a) / (n * n);
    const double bb = cross_distance_sum(space, b, b) / (m * m);
    return std::max(0.0, 2.0 * ab - aa - bb);
}

std::vector<int> single_linkage_labels(StateSpace space, std::span<const State> points, double eps) {
    const std::size_t n = points.size();
    DisjointSets sets(n);
    if (space == StateSpace::circle && n > 1) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        const auto angles = wrapped_angles(points);
        std::sort(order.begin(), order.end(), [&](auto i, auto j) { return angles[i] < angles[j]; });
        for (std::size_t k = 0; k < n; ++k) {
            const auto i = order[k];
            const auto j = order[(k + 1) % n];
            double gap = angles[j] - angles[i];
            if (k + 1 == n) gap += kTwoPi;
            if (gap < eps) sets.unite(i, j);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (state_distance(space, points[i], points[j]) < eps) sets.unite(i, j);
    }
    std::vector<std::size_t> roots(n);
    for (std::size_t i = 0; i < n; ++i) roots[i] = sets.find(i);
    return relabel(roots);
}

int single_linkage_count(StateSpace space, std::span<const State> points, double eps) {
    const auto labels = single_linkage_labels(space, points, eps);
    return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

double close_pair_fraction(StateSpace space, std::span<const State> points, double eps) {
    const std::size_t n = points.size();
    if (n < 2) return 1.0;
    std::size_t close = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (state_distance(space, points[i], points[j]) < eps) ++close;
    return static_cast<double>(close) / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

double diameter(StateSpace space, std::span<const State> points) {
    double out = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            out = std::max(out, state_distance(space, points[i], points[j]));
    return out;
}

} // namespace rdslab
