#pragma once

#include "rdslab/stats.hpp"
#include "rdslab/systems.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace rdslab {

/// Draws from the stationary law rho of a system. `exact` uses a closed-form law;
/// `burn_in` runs the system forward for T_burn from a fixed start, with independent
/// noise for every draw. The sampler refers to the system; the system must outlive it.
class StationarySampler {
  public:
    enum class Mode { exact, burn_in };

    static StationarySampler exact(const System &sys);
    static StationarySampler burn_in(const System &sys, double t_burn = 100.0, std::optional<State> start = {});
    /// Exact when the system offers a closed-form law, burn-in otherwise.
    static StationarySampler automatic(const System &sys, double t_burn = 100.0);

    State draw(const SeedLineage &seed) const;
    /// Draw i uses seed.child(i).
    std::vector<State> draw_many(const SeedLineage &seed, int m) const;

    Mode mode() const noexcept { return mode_; }
    double t_burn() const noexcept { return t_burn_; }
    const System &system() const noexcept { return *sys_; }

  private:
    StationarySampler(const System &sys, Mode mode, double t_burn, State start)
        : sys_(&sys), mode_(mode), t_burn_(t_burn), start_(std::move(start)) {}

    const System *sys_;
    Mode mode_;
    double t_burn_;
    State start_;
};

/// Uniformly weighted point cloud approximating the sample measure mu_omega.
struct EmpiricalRandomMeasure {
    std::vector<State> atoms;
    SeedLineage omega;
    double horizon = 0.0;

    std::size_t size() const noexcept { return atoms.size(); }
    double weight() const noexcept { return atoms.empty() ? 0.0 : 1.0 / static_cast<double>(atoms.size()); }
};

/// Pushes m stationary draws through phi(T, theta^{-T} omega). The noise on [-T, 0]
/// depends only on `omega`, so a larger T reuses the same cells on the overlap.
EmpiricalRandomMeasure pullback_sample(const System &sys, const SeedLineage &omega, double horizon, int m,
                                       const StationarySampler &sampler, const SeedLineage &draws);

struct ConvergenceRow {
    double previous_horizon;
    double horizon;
    double distance; // energy distance between the two clouds
};

/// Energy distance between clouds at consecutive horizons of a non-decreasing list,
/// using one omega-window and one set of stationary draws for every horizon.
std::vector<ConvergenceRow> pullback_convergence(const System &sys, const SeedLineage &omega,
                                                 std::span<const double> horizons, int m,
                                                 const StationarySampler &sampler, const SeedLineage &draws);

/// Monte Carlo estimate of the mass the averaged two-point measure puts on the
/// eps-neighbourhood of the diagonal: per trial, two stationary draws pulled back by the
/// same omega, counted when they end closer than eps.
Proportion diagonal_mass(const System &sys, int trials, double horizon, double eps, const StationarySampler &sampler,
                         const SeedLineage &seed, int jobs = 0);

struct ClusterReport {
    std::optional<int> n_hat_cloud;  // majority vote; empty when inconclusive
    bool inconclusive = false;
    std::optional<double> n_hat_diag; // 1 / diag_mass; empty when diag_mass == 0
    double diag_mass = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 1.0;
    bool estimators_disagree = false;
    double eps = 0.0;
    double horizon = 0.0;
    int m = 0;
    int trials = 0;
    std::vector<int> per_trial_counts;
};

/// The value held by more than half of `counts`, if any.
std::optional<int> majority_vote(std::span<const int> counts);

/// Estimates the number of sample-measure atoms two ways: single-linkage clusters of each
/// pullback cloud (majority vote over trials), and 1 / (mean within-cloud fraction of
/// eps-close pairs).
ClusterReport cluster_count(const System &sys, int trials, double horizon, int m, double eps,
                            const StationarySampler &sampler, const SeedLineage &seed, int jobs = 0,
                            std::vector<EmpiricalRandomMeasure> *clouds = nullptr);

/// Columns trial, atom, x_1..x_d (or angle).
void write_clouds_csv(std::ostream &os, const System &sys, std::span<const EmpiricalRandomMeasure> clouds);

void to_json(nlohmann::json &j, const ClusterReport &r);
void to_json(nlohmann::json &j, const Proportion &p);

} // namespace rdslab
