#include "rdslab/measures.hpp"

#include "rdslab/error.hpp"
#include "rdslab/geometry.hpp"
#include "rdslab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>

namespace rdslab {

StationarySampler StationarySampler::exact(const System &sys) {
    if (!sys.stationary_draw(SeedLineage(0)))
        throw Error(ErrorCode::unsupported, "system '" + sys.name() + "' has no closed-form stationary law");
    return StationarySampler(sys, Mode::exact, 0.0, sys.origin());
}

StationarySampler StationarySampler::burn_in(const System &sys, double t_burn, std::optional<State> start) {
    if (!(t_burn >= 0.0)) throw Error(ErrorCode::precondition, "burn-in time must be >= 0");
    sys.steps(t_burn, "T_burn");
    State s = start ? sys.canonical(*start) : sys.origin();
    if (s.size() != sys.dim()) throw Error(ErrorCode::precondition, "burn-in start has the wrong dimension");
    return StationarySampler(sys, Mode::burn_in, t_burn, std::move(s));
}

StationarySampler StationarySampler::automatic(const System &sys, double t_burn) {
    if (sys.stationary_draw(SeedLineage(0))) return exact(sys);
    return burn_in(sys, t_burn);
}

State StationarySampler::draw(const SeedLineage &seed) const {
    if (mode_ == Mode::exact) return *sys_->stationary_draw(seed);
    State x = start_;
    advance_sampled(*sys_, seed, NoiseMode::random, std::span<State>(&x, 1), 0, sys_->steps(t_burn_));
    return x;
}

std::vector<State> StationarySampler::draw_many(const SeedLineage &seed, int m) const {
    std::vector<State> out;
    out.reserve(static_cast<std::size_t>(std::max(m, 0)));
    for (int i = 0; i < m; ++i) out.push_back(draw(seed.child(static_cast<std::uint64_t>(i))));
    return out;
}

EmpiricalRandomMeasure pullback_sample(const System &sys, const SeedLineage &omega, double horizon, int m,
                                       const StationarySampler &sampler, const SeedLineage &draws) {
    if (m < 1) throw Error(ErrorCode::precondition, "pullback needs m >= 1");
    if (&sampler.system() != &sys) throw Error(ErrorCode::precondition, "sampler belongs to a different system");
    const auto n = sys.steps(horizon, "T");
    if (n < 0) throw Error(ErrorCode::precondition, "pullback horizon must be >= 0");
    EmpiricalRandomMeasure out{sampler.draw_many(draws, m), omega, horizon};
    // Cells [-n, 0) of omega, re-indexed to [0, n) by the shift theta^{-T}.
    const Noise window = shift_cells(sys.sample_noise(omega, -n, 0), -n);
    advance(sys, cells(window), out.atoms, 0, n);
    return out;
}

std::vector<ConvergenceRow> pullback_convergence(const System &sys, const SeedLineage &omega,
                                                 std::span<const double> horizons, int m,
                                                 const StationarySampler &sampler, const SeedLineage &draws) {
    if (m < 1) throw Error(ErrorCode::precondition, "pullback needs m >= 1");
    std::vector<std::int64_t> steps;
    for (double t : horizons) {
        steps.push_back(sys.steps(t, "T"));
        if (steps.back() < 0) throw Error(ErrorCode::precondition, "pullback horizons must be >= 0");
        if (steps.size() > 1 && steps.back() < steps[steps.size() - 2])
            throw Error(ErrorCode::precondition, "pullback horizons must be non-decreasing");
    }
    if (steps.empty()) return {};
    const auto longest = steps.back();
    const Noise noise = sys.sample_noise(omega, -longest, 0);
    const auto start = sampler.draw_many(draws, m);

    std::vector<std::vector<State>> clouds;
    for (auto n : steps) {
        std::vector<State> atoms = start;
        advance(sys, cells(shift_cells(noise, -n)), atoms, 0, n);
        clouds.push_back(std::move(atoms));
    }
    std::vector<ConvergenceRow> rows;
    for (std::size_t i = 1; i < clouds.size(); ++i)
        rows.push_back({horizons[i - 1], horizons[i], energy_distance(sys.state_space(), clouds[i - 1], clouds[i])});
    return rows;
}

Proportion diagonal_mass(const System &sys, int trials, double horizon, double eps, const StationarySampler &sampler,
                         const SeedLineage &seed, int jobs) {
    if (!(eps > 0.0)) throw Error(ErrorCode::precondition, "eps_cluster must be > 0");
    if (trials < 1) throw Error(ErrorCode::precondition, "trials must be >= 1");
    std::vector<char> close(static_cast<std::size_t>(trials), 0);
    parallel_for(close.size(), jobs, [&](std::size_t i) {
        const auto cloud = pullback_sample(sys, seed.child(stream::omega, i), horizon, 2, sampler,
                                           seed.child(stream::rho, i));
        close[i] = sys.distance(cloud.atoms[0], cloud.atoms[1]) < eps ? 1 : 0;
    });
    return wilson(std::count(close.begin(), close.end(), 1), trials);
}

std::optional<int> majority_vote(std::span<const int> counts) {
    std::map<int, std::size_t> votes;
    for (int c : counts) ++votes[c];
    for (const auto &[value, n] : votes)
        if (2 * n > counts.size()) return value;
    return std::nullopt;
}

ClusterReport cluster_count(const System &sys, int trials, double horizon, int m, double eps,
                            const StationarySampler &sampler, const SeedLineage &seed, int jobs,
                            std::vector<EmpiricalRandomMeasure> *clouds) {
    if (m < 20) throw Error(ErrorCode::precondition, "cluster count needs m >= 20, got " + std::to_string(m));
    if (!(eps > 0.0)) throw Error(ErrorCode::precondition, "eps_cluster must be > 0");
    if (trials < 1) throw Error(ErrorCode::precondition, "trials must be >= 1");

    ClusterReport report;
    report.eps = eps;
    report.horizon = horizon;
    report.m = m;
    report.trials = trials;
    report.per_trial_counts.assign(static_cast<std::size_t>(trials), 0);
    std::vector<double> fractions(static_cast<std::size_t>(trials), 0.0);
    if (clouds) clouds->assign(static_cast<std::size_t>(trials), {});

    parallel_for(fractions.size(), jobs, [&](std::size_t i) {
        auto cloud = pullback_sample(sys, seed.child(stream::omega, i), horizon, m, sampler, seed.child(stream::rho, i));
        report.per_trial_counts[i] = single_linkage_count(sys.state_space(), cloud.atoms, eps);
        fractions[i] = close_pair_fraction(sys.state_space(), cloud.atoms, eps);
        if (clouds) (*clouds)[i] = std::move(cloud);
    });

    report.n_hat_cloud = majority_vote(report.per_trial_counts);
    report.inconclusive = !report.n_hat_cloud;

    const MeanInterval ci = t_interval(fractions);
    report.diag_mass = ci.mean;
    report.ci_lo = std::clamp(ci.lo, 0.0, 1.0);
    report.ci_hi = std::clamp(ci.hi, 0.0, 1.0);
    if (trials == 1) {
        report.ci_lo = 0.0;
        report.ci_hi = 1.0;
    }
    if (report.diag_mass > 0.0) report.n_hat_diag = 1.0 / report.diag_mass;
    report.estimators_disagree = report.n_hat_cloud && report.n_hat_diag &&
                                 static_cast<int>(std::lround(*report.n_hat_diag)) != *report.n_hat_cloud;
    return report;
}

void write_clouds_csv(std::ostream &os, const System &sys, std::span<const EmpiricalRandomMeasure> clouds) {
    os << "trial,atom";
    if (sys.state_space() == StateSpace::circle) {
        os << ",angle";
    } else {
        for (int j = 1; j <= sys.dim(); ++j) os << ",x_" << j;
    }
    os << '\n' << std::setprecision(17);
    for (std::size_t t = 0; t < clouds.size(); ++t) {
        for (std::size_t a = 0; a < clouds[t].atoms.size(); ++a) {
            os << t << ',' << a;
            for (Eigen::Index j = 0; j < clouds[t].atoms[a].size(); ++j) os << ',' << clouds[t].atoms[a][j];
            os << '\n';
        }
    }
}

void to_json(nlohmann::json &j, const Proportion &p) {
    j = nlohmann::json{{"hits", p.hits}, {"trials", p.trials}, {"freq", p.freq}, {"ci", {p.lo, p.hi}}};
}

void to_json(nlohmann::json &j, const ClusterReport &r) {
    j = nlohmann::json{
        {"n_hat_cloud", r.n_hat_cloud ? nlohmann::json(*r.n_hat_cloud) : nlohmann::json(nullptr)},
        {"inconclusive", r.inconclusive},
        {"n_hat_diag", r.n_hat_diag ? nlohmann::json(*r.n_hat_diag) : nlohmann::json(nullptr)},
        {"n_hat_diag_infinite", !r.n_hat_diag.has_value()},
        {"diag_mass", r.diag_mass},
        {"ci", {r.ci_lo, r.ci_hi}},
        {"estimators_disagree", r.estimators_disagree},
        {"eps", r.eps},
        {"T", r.horizon},
        {"m", r.m},
        {"trials", r.trials},
        {"per_trial_counts", r.per_trial_counts},
    };
}

} // namespace rdslab
