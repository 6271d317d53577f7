#pragma once

#include "rdslab/stats.hpp"
#include "rdslab/systems.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rdslab {

/// Seeds, horizon, check grid and thresholds shared by the Monte Carlo diagnostics.
/// Trial i is driven by the noise stream seed.child(stream::trial, i).
struct TrialPlan {
    SeedLineage seed{0};
    int trials = 100;
    double t_max = 100.0;
    /// Spacing of the check times 0, g, 2g, ..., t_max. 0 selects 0.25 for continuous time
    /// and 1 for discrete time.
    double grid_step = 0.0;
    double delta_sync = 1e-3;
    double eps_ball = 0.25;
    double r_stability = 0.5;
    NoiseMode noise = NoiseMode::random;
    int jobs = 0;

    SeedLineage trial_seed(int i) const { return seed.child(stream::trial, static_cast<std::uint64_t>(i)); }
    double resolved_grid_step(const System &sys) const;
    /// Throws unless the plan is consistent with the system's time grid.
    void validate(const System &sys) const;
};

struct PassageStats {
    int reached = 0;
    int censored = 0;
    std::optional<double> mean;
    std::optional<double> median;
    std::optional<double> max;
};

struct PairSync {
    State x;
    State y;
    Proportion freq; // final distance < delta_sync at t_max
    PassageStats first_passage;
    double final_min = 0.0;
    double final_max = 0.0;
};

struct SyncReport {
    std::vector<PairSync> pairs;
    double t_max = 0.0;
    double delta = 0.0;
    double grid_step = 0.0;
    int trials = 0;
};

struct HitReport {
    std::string event;
    Proportion freq;
    double horizon = 0.0;
    double grid_step = 0.0;
    PassageStats first_hit;
    std::string note;
};

struct LyapunovReport {
    double lambda = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    int batches = 0;
    std::int64_t intervals = 0;
    double horizon = 0.0;
    double renorm = 1.0;
    std::vector<double> spectrum; // k leading exponents, largest first
};

struct GronwallReport {
    double worst_ratio = 0.0;
    double bound = 0.0;
    bool holds = true;
    double lipschitz = 0.0;
    std::int64_t checked = 0;
    int skipped_pairs = 0;
    std::optional<double> worst_time;
};

struct CocycleReport {
    double s = 0.0;
    double t = 0.0;
    int trials = 0;
    double max_deviation = 0.0;
    bool bit_exact = true;
};

struct NoiseStatsReport {
    IncrementStats stats;
    bool mean_ok = true;     // every |z| < 4
    bool variance_ok = true; // every var / dt within 5% of 1
    bool correlation_ok = true;
    bool group_law_ok = true;
    bool anchor_ok = true;
};

/// `count` pairs of independent points: uniform in the ball |x| <= radius for Euclidean
/// systems, uniform angles on the circle. Deterministic in `seed`.
std::vector<std::pair<State, State>> random_pairs(const System &sys, const SeedLineage &seed, int count,
                                                  double radius = 3.0);

/// Per-pair frequency that the two trajectories end within delta_sync of each other,
/// with first-passage times measured on the check grid (censored at t_max).
SyncReport sync_probability(const System &sys, const TrialPlan &plan, const std::vector<std::pair<State, State>> &pairs);

/// Frequency that the 2d+1 probes x, x +- r e_i end with diameter < delta_sync.
HitReport stability_test(const System &sys, const TrialPlan &plan, const State &x, double r);

/// Frequency that both trajectories are in B_eps(p) at some check time.
HitReport contractibility_test(const System &sys, const TrialPlan &plan, const State &x, const State &y,
                               const State &p, double eps);

/// Frequency that the trajectory of x enters B_radius(center) at some check time.
HitReport transitivity_test(const System &sys, const TrialPlan &plan, const State &x, const State &center,
                            double radius);

/// Leading Lyapunov exponent along one trajectory driven by trial 0's noise, with the
/// tangent frame renormalized every `renorm` time units and a batch-means interval.
LyapunovReport lyapunov_max(const System &sys, const TrialPlan &plan, const State &x0, int k = 1,
                            double renorm = 1.0, int batches = 20);

/// Worst |du(t)| / (|du(0)| e^{L t}) over trials, pairs and check times.
GronwallReport gronwall_check(const System &sys, const TrialPlan &plan,
                              const std::vector<std::pair<State, State>> &pairs);

/// Composed flow phi(t, theta^s w) phi(s, w) against phi(s + t, w) over `trials` seeds,
/// from start points drawn per seed.
CocycleReport cocycle_check(const System &sys, const SeedLineage &seed, int trials, double s, double t);

NoiseStatsReport noise_stats(const SeedLineage &seed, int d, double t_hi, double dt);

struct SteerTrace {
    std::vector<double> times;
    std::vector<State> x;
    std::vector<State> y; // empty for transit
};

struct SteerResult {
    std::string kind;
    bool verdict = false;
    double final_error = 0.0; // transit: |phi x - y|; contract: max distance to the target on [t_from, t_max]
    double tolerance = 0.0;
    SteerTrace trace;
};

/// Flow of x under the transit path eta0 t (y - x) up to 1/eta0; succeeds when it ends
/// within `tol` of y.
SteerResult steer_transit(const System &sys, const State &x, const State &y, double eta0, double tol = 0.05);
/// Flows x and y under the contract path; succeeds when both stay in B_eps((1, 0, ...))
/// at every grid time in [t_from, t_max].
SteerResult steer_contract(const System &sys, const State &x, const State &y, double eta1, double eta2,
                           double eps = 0.1, double t_from = 5.0, double t_max = 50.0);

void write_steer_csv(std::ostream &os, const System &sys, const SteerResult &result);

void to_json(nlohmann::json &j, const PassageStats &s);
void to_json(nlohmann::json &j, const SyncReport &r);
void to_json(nlohmann::json &j, const HitReport &r);
void to_json(nlohmann::json &j, const LyapunovReport &r);
void to_json(nlohmann::json &j, const GronwallReport &r);
void to_json(nlohmann::json &j, const CocycleReport &r);
void to_json(nlohmann::json &j, const NoiseStatsReport &r);
void to_json(nlohmann::json &j, const SteerResult &r);

} // namespace rdslab
