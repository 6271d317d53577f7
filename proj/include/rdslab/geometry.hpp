#pragma once

#include "rdslab/systems.hpp"

#include <span>
#include <vector>

namespace rdslab {

/// Metric of the state space: Euclidean norm, or arc length on the circle.
double state_distance(StateSpace space, const State &a, const State &b);

/// Energy distance 2E|X-Y| - E|X-X'| - E|Y-Y'| between two uniformly weighted clouds
/// (V-statistic form, so identical clouds give exactly 0). O(n log n) on the circle,
/// O(n m) in R^d.
double energy_distance(StateSpace space, std::span<const State> a, std::span<const State> b);

/// Sum over all (i, j) of the distance between a[i] and b[j].
double cross_distance_sum(StateSpace space, std::span<const State> a, std::span<const State> b);

/// Single-linkage components where points closer than `eps` are linked.
/// Returns a component label per point, labels numbered from 0 in order of first appearance.
std::vector<int> single_linkage_labels(StateSpace space, std::span<const State> points, double eps);
int single_linkage_count(StateSpace space, std::span<const State> points, double eps);

/// Fraction of unordered pairs i < j closer than eps (1 when there is fewer than one pair).
double close_pair_fraction(StateSpace space, std::span<const State> points, double eps);

/// Largest distance between any two points.
double diameter(StateSpace space, std::span<const State> points);

} // namespace rdslab
