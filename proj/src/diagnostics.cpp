#include "rdslab/diagnostics.hpp"

#include "rdslab/error.hpp"
#include "rdslab/geometry.hpp"
#include "rdslab/parallel.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <ostream>

namespace rdslab {

namespace {

constexpr std::int64_t kChunkCells = 1 << 14;

State checked_state(const System &sys, const State &x, const char *what) {
    if (x.size() != sys.dim())
        throw Error(ErrorCode::precondition, std::string(what) + " has dimension " + std::to_string(x.size()) +
                                                 ", system expects " + std::to_string(sys.dim()));
    return sys.canonical(x);
}

/// Advances `states` over cells [0, n) under the trial noise, calling visit(cell) at every
/// multiple of `stride` and at n. Stops early when visit returns false.
template <class Visit>
void walk(const System &sys, const SeedLineage &seed, NoiseMode mode, std::span<State> states, std::int64_t n,
          std::int64_t stride, Visit &&visit) {
    if (!visit(std::int64_t{0})) return;
    const std::int64_t chunk = stride * std::max<std::int64_t>(1, kChunkCells / stride);
    std::int64_t at = 0;
    while (at < n) {
        const std::int64_t chunk_end = std::min(n, at + chunk);
        const Noise noise =
            mode == NoiseMode::zero ? sys.zero_noise(0, chunk_end - at) : sys.sample_noise(seed, 0, chunk_end - at, at);
        const CellView view = cells(noise);
        const std::int64_t base = at;
        while (at < chunk_end) {
            const std::int64_t next = std::min(chunk_end, at + stride);
            advance(sys, view, states, at - base, next - base);
            at = next;
            if (!visit(at)) return;
        }
    }
}

PassageStats passage_stats(const std::vector<std::optional<double>> &times) {
    PassageStats out;
    std::vector<double> hit;
    for (const auto &t : times) {
        if (t) {
            hit.push_back(*t);
        } else {
            ++out.censored;
        }
    }
    out.reached = static_cast<int>(hit.size());
    if (hit.empty()) return out;
    std::sort(hit.begin(), hit.end());
    out.mean = std::accumulate(hit.begin(), hit.end(), 0.0) / static_cast<double>(hit.size());
    const auto mid = hit.size() / 2;
    out.median = hit.size() % 2 == 1 ? hit[mid] : 0.5 * (hit[mid - 1] + hit[mid]);
    out.max = hit.back();
    return out;
}

std::vector<double> to_vec(const State &x) { return {x.data(), x.data() + x.size()}; }

nlohmann::json optional_json(const std::optional<double> &v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

constexpr const char *kOneSided =
    "one-sided certificate: a positive lower bound supports the event; a miss within the horizon refutes nothing";

} // namespace

double TrialPlan::resolved_grid_step(const System &sys) const {
    if (grid_step > 0.0) return grid_step;
    return sys.time_kind() == TimeKind::discrete ? 1.0 : 0.25;
}

void TrialPlan::validate(const System &sys) const {
    if (trials < 1) throw Error(ErrorCode::precondition, "trials must be >= 1");
    if (!(t_max >= 0.0)) throw Error(ErrorCode::precondition, "T_max must be >= 0");
    if (grid_step < 0.0) throw Error(ErrorCode::precondition, "grid step must be >= 0");
    if (!(delta_sync > 0.0)) throw Error(ErrorCode::precondition, "delta_sync must be > 0");
    if (!(eps_ball > 0.0)) throw Error(ErrorCode::precondition, "eps_ball must be > 0");
    sys.steps(t_max, "T_max");
    if (sys.steps(resolved_grid_step(sys), "grid step") < 1)
        throw Error(ErrorCode::grid_alignment, "grid step must cover at least one cell");
}

std::vector<std::pair<State, State>> random_pairs(const System &sys, const SeedLineage &seed, int count,
                                                  double radius) {
    if (count < 0) throw Error(ErrorCode::precondition, "pair count must be >= 0");
    if (!(radius > 0.0)) throw Error(ErrorCode::precondition, "pair radius must be > 0");
    const auto point = [&](std::uint64_t index) {
        CounterRng rng(seed.child(stream::probe, index).key(), 0);
        State x(sys.dim());
        if (sys.state_space() == StateSpace::circle) {
            x[0] = 2.0 * std::numbers::pi * rng.uniform();
            return x;
        }
        for (int j = 0; j < sys.dim(); j += 2) {
            const auto [g1, g2] = rng.normal_pair();
            x[j] = g1;
            if (j + 1 < sys.dim()) x[j + 1] = g2;
        }
        const double scale = radius * std::pow(rng.uniform(), 1.0 / sys.dim());
        return State(x * (scale / x.norm()));
    };
    std::vector<std::pair<State, State>> pairs;
    for (int i = 0; i < count; ++i)
        pairs.emplace_back(point(2 * static_cast<std::uint64_t>(i)), point(2 * static_cast<std::uint64_t>(i) + 1));
    return pairs;
}

SyncReport sync_probability(const System &sys, const TrialPlan &plan,
                            const std::vector<std::pair<State, State>> &pairs) {
    plan.validate(sys);
    if (pairs.empty()) throw Error(ErrorCode::precondition, "sync needs at least one pair");
    std::vector<State> start;
    for (const auto &[x, y] : pairs) {
        start.push_back(checked_state(sys, x, "pair point"));
        start.push_back(checked_state(sys, y, "pair point"));
    }
    const auto n = sys.steps(plan.t_max);
    const auto stride = sys.steps(plan.resolved_grid_step(sys));
    const auto np = pairs.size();
    const auto trials = static_cast<std::size_t>(plan.trials);
    std::vector<std::optional<double>> passage(trials * np);
    std::vector<double> final_dist(trials * np);

    parallel_for(trials, plan.jobs, [&](std::size_t i) {
        std::vector<State> states = start;
        walk(sys, plan.trial_seed(static_cast<int>(i)), plan.noise, states, n, stride, [&](std::int64_t cell) {
            for (std::size_t p = 0; p < np; ++p) {
                const double dist = sys.distance(states[2 * p], states[2 * p + 1]);
                auto &first = passage[i * np + p];
                if (!first && dist < plan.delta_sync) first = static_cast<double>(cell) * sys.dt();
                if (cell == n) final_dist[i * np + p] = dist;
            }
            return true;
        });
    });

    SyncReport report{{}, plan.t_max, plan.delta_sync, plan.resolved_grid_step(sys), plan.trials};
    for (std::size_t p = 0; p < np; ++p) {
        std::vector<std::optional<double>> times;
        std::int64_t hits = 0;
        double lo = INFINITY;
        double hi = -INFINITY;
        for (std::size_t i = 0; i < trials; ++i) {
            times.push_back(passage[i * np + p]);
            const double dist = final_dist[i * np + p];
            if (dist < plan.delta_sync) ++hits;
            lo = std::min(lo, dist);
            hi = std::max(hi, dist);
        }
        report.pairs.push_back(
            {start[2 * p], start[2 * p + 1], wilson(hits, plan.trials), passage_stats(times), lo, hi});
    }
    return report;
}

namespace {

/// Shared driver for the "exists a check time with event(states)" diagnostics.
template <class Event>
HitReport hit_frequency(const System &sys, const TrialPlan &plan, std::vector<State> start, std::string event_name,
                        Event &&event) {
    const auto n = sys.steps(plan.t_max);
    const auto stride = sys.steps(plan.resolved_grid_step(sys));
    std::vector<std::optional<double>> first(static_cast<std::size_t>(plan.trials));
    parallel_for(first.size(), plan.jobs, [&](std::size_t i) {
        std::vector<State> states = start;
        walk(sys, plan.trial_seed(static_cast<int>(i)), plan.noise, states, n, stride, [&](std::int64_t cell) {
            if (!event(states)) return true;
            first[i] = static_cast<double>(cell) * sys.dt();
            return false;
        });
    });
    const auto hits = std::count_if(first.begin(), first.end(), [](const auto &t) { return t.has_value(); });
    return {std::move(event_name), wilson(hits, plan.trials), plan.t_max, plan.resolved_grid_step(sys),
            passage_stats(first), kOneSided};
}

} // namespace

HitReport stability_test(const System &sys, const TrialPlan &plan, const State &x, double r) {
    plan.validate(sys);
    if (r < 0.0) throw Error(ErrorCode::precondition, "stability radius must be >= 0");
    const State centre = checked_state(sys, x, "x");
    std::vector<State> probes{centre};
    for (int i = 0; i < sys.dim(); ++i) {
        for (double sign : {1.0, -1.0}) {
            State p = centre;
            p[i] += sign * r;
            probes.push_back(sys.canonical(p));
        }
    }
    const auto n = sys.steps(plan.t_max);
    std::vector<char> stable(static_cast<std::size_t>(plan.trials), 0);
    parallel_for(stable.size(), plan.jobs, [&](std::size_t i) {
        std::vector<State> states = probes;
        walk(sys, plan.trial_seed(static_cast<int>(i)), plan.noise, states, n, std::max<std::int64_t>(n, 1),
             [&](std::int64_t cell) {
                 if (cell == n) stable[i] = diameter(sys.state_space(), states) < plan.delta_sync ? 1 : 0;
                 return true;
             });
    });
    HitReport report;
    report.event = "diameter of " + std::to_string(probes.size()) + " probes (x and x +- r e_i, r = " +
                   std::to_string(r) + ") below delta_sync at T_max";
    report.freq = wilson(std::count(stable.begin(), stable.end(), 1), plan.trials);
    report.horizon = plan.t_max;
    report.grid_step = plan.t_max;
    report.note = "probe diameter is a lower bound for the diameter of the image of the ball";
    return report;
}

HitReport contractibility_test(const System &sys, const TrialPlan &plan, const State &x, const State &y,
                               const State &p, double eps) {
    plan.validate(sys);
    if (!(eps > 0.0)) throw Error(ErrorCode::precondition, "eps_ball must be > 0");
    const State target = checked_state(sys, p, "p");
    return hit_frequency(sys, plan, {checked_state(sys, x, "x"), checked_state(sys, y, "y")},
                         "both trajectories inside B_eps(p) at some check time",
                         [&](const std::vector<State> &s) {
                             return sys.distance(s[0], target) < eps && sys.distance(s[1], target) < eps;
                         });
}

HitReport transitivity_test(const System &sys, const TrialPlan &plan, const State &x, const State &center,
                            double radius) {
    plan.validate(sys);
    if (!(radius > 0.0)) throw Error(ErrorCode::precondition, "target radius must be > 0");
    const State c = checked_state(sys, center, "target centre");
    return hit_frequency(sys, plan, {checked_state(sys, x, "x")}, "trajectory inside the target ball at some check time",
                         [&](const std::vector<State> &s) { return sys.distance(s[0], c) < radius; });
}

LyapunovReport lyapunov_max(const System &sys, const TrialPlan &plan, const State &x0, int k, double renorm,
                            int batches) {
    if (!sys.has_jacobian()) throw Error(ErrorCode::unsupported, "system '" + sys.name() + "' has no Jacobian stepper");
    if (k < 1 || k > sys.dim()) throw Error(ErrorCode::precondition, "k must be in [1, dim]");
    if (batches < 2) throw Error(ErrorCode::precondition, "batch means needs at least 2 batches");
    const auto n = sys.steps(plan.t_max, "T_max");
    const auto per = sys.steps(renorm, "renormalization interval");
    if (per < 1) throw Error(ErrorCode::precondition, "renormalization interval must cover at least one cell");
    const std::int64_t intervals = n / per;
    if (intervals < batches)
        throw Error(ErrorCode::precondition, "T_max too short for " + std::to_string(batches) + " batches");

    State x = checked_state(sys, x0, "x0");
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(sys.dim(), k);
    std::vector<double> leading;
    leading.reserve(static_cast<std::size_t>(intervals));
    std::vector<double> sums(static_cast<std::size_t>(k), 0.0);
    const SeedLineage seed = plan.trial_seed(0);
    const std::int64_t chunk = per * std::max<std::int64_t>(1, kChunkCells / per);

    for (std::int64_t at = 0; at < intervals * per;) {
        const std::int64_t chunk_end = std::min(intervals * per, at + chunk);
        const Noise noise = plan.noise == NoiseMode::zero ? sys.zero_noise(0, chunk_end - at)
                                                          : sys.sample_noise(seed, 0, chunk_end - at, at);
        const CellView view = cells(noise);
        for (std::int64_t c = 0; c < chunk_end - at; ++c) {
            sys.step_tangent(x, v, view.cell(c));
            if ((at + c + 1) % per != 0) continue;
            if (k == 1) {
                const double norm = v.norm();
                leading.push_back(std::log(norm) / renorm);
                sums[0] += std::log(norm);
                v /= norm;
            } else {
                Eigen::HouseholderQR<Eigen::MatrixXd> qr(v);
                const Eigen::MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
                Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(sys.dim(), k);
                for (int j = 0; j < k; ++j) {
                    const double rjj = r(j, j);
                    sums[static_cast<std::size_t>(j)] += std::log(std::abs(rjj));
                    if (rjj < 0.0) q.col(j) *= -1.0;
                }
                leading.push_back(std::log(std::abs(r(0, 0))) / renorm);
                v = std::move(q);
            }
        }
        at = chunk_end;
    }

    const MeanInterval ci = batch_means(leading, batches);
    LyapunovReport report;
    report.lambda = ci.mean;
    report.lo = ci.lo;
    report.hi = ci.hi;
    report.batches = batches;
    report.intervals = intervals;
    report.horizon = static_cast<double>(intervals) * renorm;
    report.renorm = renorm;
    for (double s : sums) report.spectrum.push_back(s / report.horizon);
    return report;
}

GronwallReport gronwall_check(const System &sys, const TrialPlan &plan,
                              const std::vector<std::pair<State, State>> &pairs) {
    plan.validate(sys);
    const auto lip = sys.one_sided_lipschitz();
    if (!lip) throw Error(ErrorCode::unsupported, "system '" + sys.name() + "' has no one-sided Lipschitz constant");

    GronwallReport report;
    report.lipschitz = *lip;
    report.bound = 1.0 + 10.0 * sys.dt();
    std::vector<State> start;
    std::vector<double> initial;
    for (const auto &[x, y] : pairs) {
        State a = checked_state(sys, x, "pair point");
        State b = checked_state(sys, y, "pair point");
        const double d0 = sys.distance(a, b);
        if (d0 == 0.0) {
            ++report.skipped_pairs;
            continue;
        }
        start.push_back(std::move(a));
        start.push_back(std::move(b));
        initial.push_back(d0);
    }
    if (initial.empty()) return report;

    const auto n = sys.steps(plan.t_max);
    const auto stride = sys.steps(plan.resolved_grid_step(sys));
    const auto trials = static_cast<std::size_t>(plan.trials);
    std::vector<double> worst(trials, 0.0);
    std::vector<double> worst_at(trials, 0.0);
    std::vector<std::int64_t> checked(trials, 0);
    parallel_for(trials, plan.jobs, [&](std::size_t i) {
        std::vector<State> states = start;
        walk(sys, plan.trial_seed(static_cast<int>(i)), plan.noise, states, n, stride, [&](std::int64_t cell) {
            const double t = static_cast<double>(cell) * sys.dt();
            const double growth = std::exp(*lip * t);
            for (std::size_t p = 0; p < initial.size(); ++p) {
                const double ratio = sys.distance(states[2 * p], states[2 * p + 1]) / (initial[p] * growth);
                if (ratio > worst[i]) {
                    worst[i] = ratio;
                    worst_at[i] = t;
                }
                ++checked[i];
            }
            return true;
        });
    });
    const auto it = std::max_element(worst.begin(), worst.end());
    report.worst_ratio = *it;
    report.worst_time = worst_at[static_cast<std::size_t>(it - worst.begin())];
    report.checked = std::accumulate(checked.begin(), checked.end(), std::int64_t{0});
    report.holds = report.worst_ratio <= report.bound;
    return report;
}

CocycleReport cocycle_check(const System &sys, const SeedLineage &seed, int trials, double s, double t) {
    if (trials < 1) throw Error(ErrorCode::precondition, "trials must be >= 1");
    const auto ns = sys.steps(s, "s");
    const auto nt = sys.steps(t, "t");
    if (ns < 0 || nt < 0) throw Error(ErrorCode::precondition, "s and t must be >= 0");
    CocycleReport report{s, t, trials, 0.0, true};
    for (int i = 0; i < trials; ++i) {
        const SeedLineage trial = seed.child(stream::trial, static_cast<std::uint64_t>(i));
        CounterRng rng(trial.child(stream::probe).key(), 0);
        State x0(sys.dim());
        for (int j = 0; j < sys.dim(); ++j)
            x0[j] = sys.state_space() == StateSpace::circle ? 2.0 * std::numbers::pi * rng.uniform()
                                                            : 6.0 * rng.uniform() - 3.0;
        const Noise noise = sys.sample_noise(trial, 0, ns + nt);
        const State direct = flow(sys, cells(noise), x0, s + t);
        const State mid = flow(sys, cells(noise), x0, s);
        const State composed = flow(sys, cells(shift_cells(noise, ns)), mid, t);
        report.max_deviation = std::max(report.max_deviation, (direct - composed).cwiseAbs().maxCoeff());
        report.bit_exact = report.bit_exact && direct == composed;
    }
    return report;
}

NoiseStatsReport noise_stats(const SeedLineage &seed, int d, double t_hi, double dt) {
    const NoisePath path = NoisePath::sample_wiener(seed, d, 0.0, t_hi, dt);
    NoiseStatsReport report;
    report.stats = increment_stats(path);
    for (double z : report.stats.z) report.mean_ok = report.mean_ok && std::abs(z) < 4.0;
    for (double v : report.stats.var_ratio) report.variance_ok = report.variance_ok && std::abs(v - 1.0) <= 0.05;
    report.correlation_ok = report.stats.max_abs_corr < 0.05;

    const auto n = path.cell_count();
    for (const auto &[a, b] : {std::pair{n / 4, n / 8}, std::pair{n / 2, -n / 4}, std::pair{n, -n}}) {
        const NoisePath two = path.shift_cells(a).shift_cells(b);
        const NoisePath one = path.shift_cells(a + b);
        report.group_law_ok = report.group_law_ok && two.identical(one);
        report.anchor_ok = report.anchor_ok && two.evaluate(0.0).isZero(0.0) && one.evaluate(0.0).isZero(0.0);
    }
    report.anchor_ok = report.anchor_ok && path.evaluate(0.0).isZero(0.0);
    return report;
}

namespace {
const DoubleWell &require_double_well(const System &sys) {
    const auto *dw = dynamic_cast<const DoubleWell *>(&sys);
    if (!dw) throw Error(ErrorCode::unsupported, "steering demos are defined for the double-well only");
    return *dw;
}
} // namespace

SteerResult steer_transit(const System &sys, const State &x, const State &y, double eta0, double tol) {
    const DoubleWell &dw = require_double_well(sys);
    const NoisePath path = steering_path(TransitSteering{checked_state(sys, x, "x"), checked_state(sys, y, "y"), eta0, {}},
                                         dw.dt());
    SteerResult result{"transit", false, 0.0, tol, {}};
    State s = x;
    const CellView view = path.cells();
    for (std::int64_t k = 0;; ++k) {
        result.trace.times.push_back(static_cast<double>(k) * dw.dt());
        result.trace.x.push_back(s);
        if (k == view.end) break;
        dw.step(s, view.cell(k));
    }
    result.final_error = (s - y).norm();
    result.verdict = result.final_error < tol;
    return result;
}

SteerResult steer_contract(const System &sys, const State &x, const State &y, double eta1, double eta2, double eps,
                           double t_from, double t_max) {
    const DoubleWell &dw = require_double_well(sys);
    if (!(eps > 0.0)) throw Error(ErrorCode::precondition, "eps must be > 0");
    const auto from = dw.steps(t_from, "t_from");
    const auto n = dw.steps(t_max, "T_max");
    if (from < 0 || from > n) throw Error(ErrorCode::precondition, "need 0 <= t_from <= T_max");
    const NoisePath path = steering_path(ContractSteering{dw.dim(), eta1, eta2, t_max}, dw.dt());
    State target = State::Zero(dw.dim());
    target[0] = 1.0;

    SteerResult result{"contract", false, 0.0, eps, {}};
    State a = checked_state(sys, x, "x");
    State b = checked_state(sys, y, "y");
    const auto record_every = std::max<std::int64_t>(1, std::llround(0.01 / dw.dt()));
    const CellView view = path.cells();
    for (std::int64_t k = 0;; ++k) {
        if (k % record_every == 0 || k == n) {
            result.trace.times.push_back(static_cast<double>(k) * dw.dt());
            result.trace.x.push_back(a);
            result.trace.y.push_back(b);
        }
        if (k >= from)
            result.final_error = std::max({result.final_error, (a - target).norm(), (b - target).norm()});
        if (k == n) break;
        dw.step(a, view.cell(k));
        dw.step(b, view.cell(k));
    }
    result.verdict = result.final_error < eps;
    return result;
}

void write_steer_csv(std::ostream &os, const System &sys, const SteerResult &result) {
    os << "t";
    for (int j = 1; j <= sys.dim(); ++j) os << ",x_" << j;
    if (!result.trace.y.empty())
        for (int j = 1; j <= sys.dim(); ++j) os << ",y_" << j;
    os << '\n' << std::setprecision(17);
    for (std::size_t i = 0; i < result.trace.times.size(); ++i) {
        os << result.trace.times[i];
        for (Eigen::Index j = 0; j < result.trace.x[i].size(); ++j) os << ',' << result.trace.x[i][j];
        if (!result.trace.y.empty())
            for (Eigen::Index j = 0; j < result.trace.y[i].size(); ++j) os << ',' << result.trace.y[i][j];
        os << '\n';
    }
}

void to_json(nlohmann::json &j, const PassageStats &s) {
    j = {{"reached", s.reached},
         {"censored", s.censored},
         {"mean", optional_json(s.mean)},
         {"median", optional_json(s.median)},
         {"max", optional_json(s.max)}};
}

void to_json(nlohmann::json &j, const SyncReport &r) {
    auto pairs = nlohmann::json::array();
    for (const auto &p : r.pairs) {
        pairs.push_back({{"x", to_vec(p.x)},
                         {"y", to_vec(p.y)},
                         {"hits", p.freq.hits},
                         {"freq", p.freq.freq},
                         {"ci", {p.freq.lo, p.freq.hi}},
                         {"first_passage", p.first_passage},
                         {"final_distance", {{"min", p.final_min}, {"max", p.final_max}}}});
    }
    j = {{"pairs", pairs}, {"T", r.t_max}, {"delta_sync", r.delta}, {"grid_step", r.grid_step}, {"trials", r.trials}};
}

void to_json(nlohmann::json &j, const HitReport &r) {
    j = {{"event", r.event},
         {"hits", r.freq.hits},
         {"freq", r.freq.freq},
         {"ci", {r.freq.lo, r.freq.hi}},
         {"certified_positive", r.freq.lo > 0.0},
         {"horizon", r.horizon},
         {"grid_step", r.grid_step},
         {"first_hit", r.first_hit},
         {"note", r.note}};
}

void to_json(nlohmann::json &j, const LyapunovReport &r) {
    j = {{"lambda", r.lambda},     {"ci", {r.lo, r.hi}},       {"batches", r.batches}, {"intervals", r.intervals},
         {"horizon", r.horizon},   {"renorm", r.renorm},       {"spectrum", r.spectrum}};
}

void to_json(nlohmann::json &j, const GronwallReport &r) {
    j = {{"worst_ratio", r.worst_ratio}, {"bound", r.bound},        {"holds", r.holds},
         {"L", r.lipschitz},             {"checked", r.checked},    {"skipped_pairs", r.skipped_pairs},
         {"worst_time", optional_json(r.worst_time)}};
}

void to_json(nlohmann::json &j, const CocycleReport &r) {
    j = {{"s", r.s},
         {"t", r.t},
         {"trials", r.trials},
         {"max_deviation", r.max_deviation},
         {"bit_exact", r.bit_exact}};
}

void to_json(nlohmann::json &j, const NoiseStatsReport &r) {
    j = {{"cells", r.stats.cells},
         {"dt", r.stats.dt},
         {"mean", r.stats.mean},
         {"z", r.stats.z},
         {"var_ratio", r.stats.var_ratio},
         {"max_abs_corr", r.stats.max_abs_corr},
         {"mean_ok", r.mean_ok},
         {"variance_ok", r.variance_ok},
         {"correlation_ok", r.correlation_ok},
         {"group_law_ok", r.group_law_ok},
         {"anchor_ok", r.anchor_ok}};
}

void to_json(nlohmann::json &j, const SteerResult &r) {
    j = {{"kind", r.kind},
         {"verdict", r.verdict},
         {"error", r.final_error},
         {"tolerance", r.tolerance},
         {"trace_points", r.trace.times.size()}};
}

} // namespace rdslab
