#pragma once

#include <json.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rdslab {

enum class Command {
    cocycle_check,
    gronwall,
    lyapunov,
    sync,
    stability,
    contract,
    transit,
    steer,
    pullback,
    clusters,
    noise_stats,
};

inline constexpr std::array kCommands{
    Command::cocycle_check, Command::gronwall, Command::lyapunov, Command::sync,     Command::stability,
    Command::contract,      Command::transit,  Command::steer,    Command::pullback, Command::clusters,
    Command::noise_stats,
};

std::string_view command_name(Command c);
std::optional<Command> parse_command(std::string_view name);

/// Fully typed parameters of one CLI run. Coordinates are comma-separated reals; a pair is
/// "x:y"; several pairs in a key=value file are joined with ';'.
struct ExperimentConfig {
    Command command = Command::sync;

    std::string system = "doublewell";
    int d = 2;
    double dt = 1e-3;
    double eps_c = 0.3;
    bool tamed = true;
    std::uint64_t seed = 0;
    std::string epoch;

    int trials = 100;
    double T = 100.0;
    double grid = 0.0;
    double delta = 1e-3;
    double eps_ball = 0.25;
    double r = 0.5;
    std::string noise = "random";
    std::vector<std::string> pairs;
    int random_pairs = 0;
    double pair_radius = 3.0;

    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> p;
    std::vector<double> center;
    double radius = 0.25;

    double s = 0.5;
    double t = 0.5;

    int k = 1;
    double renorm = 1.0;
    int batches = 20;

    std::string kind = "transit";
    double eta0 = 100.0;
    double eta1 = 20.0;
    double eta2 = 20.0;
    double eps = 0.1;
    double t_from = 5.0;
    double tol = 0.05;

    int m = 200;
    double eps_cluster = 0.0;
    std::vector<double> T_list{25.0, 50.0};
    std::string sampler = "auto";
    double t_burn = 100.0;

    std::string out;
    std::string csv;
    int jobs = 0;

    /// Defaults for a subcommand (horizons and trial counts differ per command).
    static ExperimentConfig defaults(Command c);

    /// Applicable parameters only; output paths and --jobs are left out since they do not
    /// affect results.
    nlohmann::json to_json() const;
    /// One "key=value" line per applicable field, reals printed with %.17g.
    std::string to_kv() const;
    /// Parses text written by to_kv (or by hand). A `command` key selects the defaults.
    static ExperimentConfig from_kv(std::string_view text);
    /// Applies key=value lines on top of this config. Keys for which `skip` returns true
    /// are ignored. Unknown or inapplicable keys are usage errors. Returns the keys applied.
    std::vector<std::string> apply_kv(std::string_view text, const std::function<bool(std::string_view)> &skip = {});

    bool operator==(const ExperimentConfig &) const = default;
};

struct FieldInfo {
    std::string_view name; // key and long flag name
    std::string_view help;
    unsigned scope;  // bit per Command
    bool echo = true;
};

namespace scope {
constexpr unsigned bit(Command c) { return 1u << static_cast<unsigned>(c); }
constexpr unsigned all = (1u << kCommands.size()) - 1;
constexpr unsigned systems = all & ~bit(Command::noise_stats);
constexpr unsigned monte_carlo = bit(Command::gronwall) | bit(Command::sync) | bit(Command::stability) |
                                 bit(Command::contract) | bit(Command::transit);
constexpr unsigned measures = bit(Command::pullback) | bit(Command::clusters);
} // namespace scope

/// Calls f(info, member) for every field in a fixed order.
template <class Config, class F>
void for_each_field(Config &c, F &&f) {
    using C = Command;
    using scope::bit;
    f(FieldInfo{"system", "doublewell or circlemap", scope::systems}, c.system);
    f(FieldInfo{"d", "state (noise) dimension", scope::all}, c.d);
    f(FieldInfo{"dt", "time step", scope::all}, c.dt);
    f(FieldInfo{"eps-c", "circle-map contraction strength", scope::systems}, c.eps_c);
    f(FieldInfo{"tamed", "tamed Euler-Maruyama (true/false)", scope::systems}, c.tamed);
    f(FieldInfo{"seed", "master seed (fallback: RDS_SEED)", scope::all}, c.seed);
    f(FieldInfo{"epoch", "fixed label recorded in place of a timestamp", scope::all}, c.epoch);
    f(FieldInfo{"trials", "number of independent noise realizations",
                scope::monte_carlo | bit(C::cocycle_check) | bit(C::clusters)},
      c.trials);
    f(FieldInfo{"T", "horizon", scope::all & ~bit(C::cocycle_check) & ~bit(C::pullback)}, c.T);
    f(FieldInfo{"grid", "spacing of check times (0: 0.25 continuous, 1 discrete)", scope::monte_carlo}, c.grid);
    f(FieldInfo{"delta", "synchronization threshold", bit(C::sync) | bit(C::stability)}, c.delta);
    f(FieldInfo{"eps-ball", "radius of the ball around p", bit(C::contract)}, c.eps_ball);
    f(FieldInfo{"r", "probe radius", bit(C::stability)}, c.r);
    f(FieldInfo{"noise", "random or zero", scope::monte_carlo | bit(C::lyapunov)}, c.noise);
    f(FieldInfo{"pair", "pair of start points x:y (repeatable)", bit(C::gronwall) | bit(C::sync)}, c.pairs);
    f(FieldInfo{"random-pairs", "additional random pairs", bit(C::gronwall) | bit(C::sync)}, c.random_pairs);
    f(FieldInfo{"pair-radius", "random pairs lie in |x| <= radius", bit(C::gronwall) | bit(C::sync)}, c.pair_radius);
    f(FieldInfo{"x", "start point",
                bit(C::lyapunov) | bit(C::stability) | bit(C::contract) | bit(C::transit) | bit(C::steer)},
      c.x);
    f(FieldInfo{"y", "second point or steering target", bit(C::contract) | bit(C::steer)}, c.y);
    f(FieldInfo{"p", "contraction target (default (1,0,...))", bit(C::contract)}, c.p);
    f(FieldInfo{"center", "centre of the target ball", bit(C::transit)}, c.center);
    f(FieldInfo{"radius", "radius of the target ball", bit(C::transit)}, c.radius);
    f(FieldInfo{"s", "first leg of the cocycle", bit(C::cocycle_check)}, c.s);
    f(FieldInfo{"t", "second leg of the cocycle", bit(C::cocycle_check)}, c.t);
    f(FieldInfo{"k", "number of tangent directions", bit(C::lyapunov)}, c.k);
    f(FieldInfo{"renorm", "renormalization interval", bit(C::lyapunov)}, c.renorm);
    f(FieldInfo{"batches", "batches for the batch-means interval", bit(C::lyapunov)}, c.batches);
    f(FieldInfo{"kind", "transit or contract", bit(C::steer)}, c.kind);
    f(FieldInfo{"eta0", "transit speed", bit(C::steer)}, c.eta0);
    f(FieldInfo{"eta1", "contract ramp speed", bit(C::steer)}, c.eta1);
    f(FieldInfo{"eta2", "contract kick size", bit(C::steer)}, c.eta2);
    f(FieldInfo{"eps", "contract ball radius around (1,0,...)", bit(C::steer)}, c.eps);
    f(FieldInfo{"t-from", "contract check start", bit(C::steer)}, c.t_from);
    f(FieldInfo{"tol", "transit landing tolerance", bit(C::steer)}, c.tol);
    f(FieldInfo{"m", "atoms per cloud", scope::measures}, c.m);
    f(FieldInfo{"eps-cluster", "closeness threshold (0: 1e-2 Euclidean, 0.05 circle)", bit(C::clusters)},
      c.eps_cluster);
    f(FieldInfo{"T-list", "non-decreasing pullback horizons", bit(C::pullback)}, c.T_list);
    f(FieldInfo{"sampler", "auto, exact or burn-in", scope::measures}, c.sampler);
    f(FieldInfo{"t-burn", "burn-in time of the stationary sampler", scope::measures}, c.t_burn);
    f(FieldInfo{"out", "JSON report path (default: stdout)", scope::all, false}, c.out);
    f(FieldInfo{"csv", "CSV trace path",
                bit(C::steer) | bit(C::pullback) | bit(C::clusters) | bit(C::noise_stats), false},
      c.csv);
}

/// Value <-> text conversions shared by the flag parser and the key=value format.
std::string format_value(const std::string &v);
std::string format_value(int v);
std::string format_value(std::uint64_t v);
std::string format_value(double v);
std::string format_value(bool v);
std::string format_value(const std::vector<double> &v);
std::string format_value(const std::vector<std::string> &v);

void parse_value(std::string_view text, std::string &v);
void parse_value(std::string_view text, int &v);
void parse_value(std::string_view text, std::uint64_t &v);
void parse_value(std::string_view text, double &v);
void parse_value(std::string_view text, bool &v);
void parse_value(std::string_view text, std::vector<double> &v);
/// Pairs separated by ';'.
void parse_value(std::string_view text, std::vector<std::string> &v);

std::vector<double> parse_point(std::string_view text);
/// "x1,x2:y1,y2" into its two points.
std::pair<std::vector<double>, std::vector<double>> parse_pair(std::string_view text);

} // namespace rdslab
