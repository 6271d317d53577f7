#include "rdslab/cli.hpp"

#include "rdslab/diagnostics.hpp"
#include "rdslab/error.hpp"
#include "rdslab/measures.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

namespace rdslab {

namespace {

std::unique_ptr<System> make_system(const ExperimentConfig &cfg) {
    if (cfg.system == "doublewell") return std::make_unique<DoubleWell>(cfg.d, cfg.dt, cfg.tamed);
    if (cfg.system == "circlemap") return std::make_unique<CircleMap>(cfg.eps_c);
    throw Error(ErrorCode::usage, "unknown system '" + cfg.system + "' (expected doublewell or circlemap)");
}

State to_state(const std::vector<double> &v, const System &sys, const char *what) {
    if (static_cast<int>(v.size()) != sys.dim())
        throw Error(ErrorCode::usage, std::string("--") + what + " needs " + std::to_string(sys.dim()) +
                                          " coordinates, got " + std::to_string(v.size()));
    return Eigen::Map<const State>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> origin_of(const System &sys) { return std::vector<double>(static_cast<std::size_t>(sys.dim()), 0.0); }

void require(const std::vector<double> &v, const char *what) {
    if (v.empty()) throw Error(ErrorCode::usage, std::string("--") + what + " is required");
}

/// Fills in defaults that depend on the system, so the echoed config is fully resolved.
void resolve(ExperimentConfig &cfg, const System &sys) {
    const bool circle = sys.state_space() == StateSpace::circle;
    switch (cfg.command) {
    case Command::clusters:
        if (cfg.eps_cluster == 0.0) cfg.eps_cluster = circle ? 0.05 : 1e-2;
        break;
    case Command::contract:
        if (cfg.p.empty()) {
            cfg.p = origin_of(sys);
            if (!circle) cfg.p[0] = 1.0;
        }
        require(cfg.x, "x");
        require(cfg.y, "y");
        break;
    case Command::lyapunov:
    case Command::stability:
        if (cfg.x.empty()) cfg.x = origin_of(sys);
        break;
    case Command::transit:
        if (cfg.x.empty()) cfg.x = origin_of(sys);
        require(cfg.center, "center");
        break;
    case Command::steer:
        require(cfg.x, "x");
        require(cfg.y, "y");
        if (cfg.kind != "transit" && cfg.kind != "contract")
            throw Error(ErrorCode::usage, "--kind must be transit or contract");
        break;
    case Command::gronwall:
    case Command::sync:
        if (cfg.pairs.empty() && cfg.random_pairs == 0)
            throw Error(ErrorCode::usage, "give at least one --pair or --random-pairs");
        break;
    default: break;
    }
    if (cfg.noise != "random" && cfg.noise != "zero") throw Error(ErrorCode::usage, "--noise must be random or zero");
    if (cfg.sampler != "auto" && cfg.sampler != "exact" && cfg.sampler != "burn-in")
        throw Error(ErrorCode::usage, "--sampler must be auto, exact or burn-in");
}

TrialPlan plan_of(const ExperimentConfig &cfg) {
    TrialPlan plan;
    plan.seed = SeedLineage(cfg.seed);
    plan.trials = cfg.trials;
    plan.t_max = cfg.T;
    plan.grid_step = cfg.grid;
    plan.delta_sync = cfg.delta;
    plan.eps_ball = cfg.eps_ball;
    plan.r_stability = cfg.r;
    plan.noise = cfg.noise == "zero" ? NoiseMode::zero : NoiseMode::random;
    plan.jobs = cfg.jobs;
    return plan;
}

std::vector<std::pair<State, State>> pairs_of(const ExperimentConfig &cfg, const System &sys) {
    std::vector<std::pair<State, State>> pairs;
    for (const auto &text : cfg.pairs) {
        const auto [x, y] = parse_pair(text);
        pairs.emplace_back(to_state(x, sys, "pair"), to_state(y, sys, "pair"));
    }
    const auto extra = random_pairs(sys, SeedLineage(cfg.seed), cfg.random_pairs, cfg.pair_radius);
    pairs.insert(pairs.end(), extra.begin(), extra.end());
    return pairs;
}

StationarySampler sampler_of(const ExperimentConfig &cfg, const System &sys) {
    if (cfg.sampler == "exact") return StationarySampler::exact(sys);
    if (cfg.sampler == "burn-in") return StationarySampler::burn_in(sys, cfg.t_burn);
    return StationarySampler::automatic(sys, cfg.t_burn);
}

std::ofstream open_csv(const std::string &path) {
    std::ofstream os(path);
    if (!os) throw Error(ErrorCode::precondition, "cannot open '" + path + "' for writing");
    return os;
}

nlohmann::json interval(double lo, double hi) { return nlohmann::json::array({lo, hi}); }

} // namespace

nlohmann::json execute(const ExperimentConfig &input) {
    ExperimentConfig cfg = input;
    nlohmann::json report;
    report["schema"] = 1;
    report["op"] = command_name(cfg.command);
    report["seed"] = cfg.seed;
    report["trials"] = nullptr;
    report["freq"] = nullptr;
    report["ci"] = nullptr;
    nlohmann::json extras;

    if (cfg.command == Command::noise_stats) {
        if (cfg.d < 1) throw Error(ErrorCode::usage, "--d must be >= 1");
        const auto stats = noise_stats(SeedLineage(cfg.seed), cfg.d, cfg.T, cfg.dt);
        extras = stats;
        if (!cfg.csv.empty()) {
            auto os = open_csv(cfg.csv);
            NoisePath::sample_wiener(SeedLineage(cfg.seed), cfg.d, 0.0, cfg.T, cfg.dt).write_csv(os);
        }
        report["config"] = cfg.to_json();
        report["extras"] = extras;
        return report;
    }

    const auto sys = make_system(cfg);
    resolve(cfg, *sys);
    nlohmann::json params = nlohmann::json::object();
    for (const auto &[name, value] : sys->params()) params[name] = value;
    report["system"] = {{"name", sys->name()}, {"params", params}};

    const TrialPlan plan = plan_of(cfg);
    const auto set_freq = [&](const Proportion &p) {
        report["trials"] = p.trials;
        report["freq"] = p.freq;
        report["ci"] = interval(p.lo, p.hi);
    };

    switch (cfg.command) {
    case Command::cocycle_check: {
        const auto r = cocycle_check(*sys, SeedLineage(cfg.seed), cfg.trials, cfg.s, cfg.t);
        report["trials"] = r.trials;
        extras = r;
        break;
    }
    case Command::gronwall: {
        const auto r = gronwall_check(*sys, plan, pairs_of(cfg, *sys));
        report["trials"] = plan.trials;
        extras = r;
        break;
    }
    case Command::lyapunov: {
        const auto r = lyapunov_max(*sys, plan, to_state(cfg.x, *sys, "x"), cfg.k, cfg.renorm, cfg.batches);
        report["ci"] = interval(r.lo, r.hi);
        extras = r;
        break;
    }
    case Command::sync: {
        const auto r = sync_probability(*sys, plan, pairs_of(cfg, *sys));
        const auto worst = std::min_element(r.pairs.begin(), r.pairs.end(), [](const auto &a, const auto &b) {
            return a.freq.freq < b.freq.freq;
        });
        set_freq(worst->freq);
        extras = r;
        break;
    }
    case Command::stability: {
        const auto r = stability_test(*sys, plan, to_state(cfg.x, *sys, "x"), cfg.r);
        set_freq(r.freq);
        extras = r;
        break;
    }
    case Command::contract: {
        const auto r = contractibility_test(*sys, plan, to_state(cfg.x, *sys, "x"), to_state(cfg.y, *sys, "y"),
                                            to_state(cfg.p, *sys, "p"), cfg.eps_ball);
        set_freq(r.freq);
        extras = r;
        break;
    }
    case Command::transit: {
        const auto r = transitivity_test(*sys, plan, to_state(cfg.x, *sys, "x"), to_state(cfg.center, *sys, "center"),
                                         cfg.radius);
        set_freq(r.freq);
        extras = r;
        break;
    }
    case Command::steer: {
        const State x = to_state(cfg.x, *sys, "x");
        const State y = to_state(cfg.y, *sys, "y");
        const auto r = cfg.kind == "transit" ? steer_transit(*sys, x, y, cfg.eta0, cfg.tol)
                                             : steer_contract(*sys, x, y, cfg.eta1, cfg.eta2, cfg.eps, cfg.t_from, cfg.T);
        extras = r;
        if (!cfg.csv.empty()) {
            auto os = open_csv(cfg.csv);
            write_steer_csv(os, *sys, r);
        }
        break;
    }
    case Command::pullback: {
        const auto sampler = sampler_of(cfg, *sys);
        const SeedLineage seed(cfg.seed);
        const auto omega = seed.child(stream::omega, 0);
        const auto draws = seed.child(stream::rho, 0);
        const auto rows = pullback_convergence(*sys, omega, cfg.T_list, cfg.m, sampler, draws);
        auto table = nlohmann::json::array();
        for (const auto &row : rows)
            table.push_back({{"T_prev", row.previous_horizon}, {"T", row.horizon}, {"dist", row.distance}});
        extras = {{"rows", table}, {"m", cfg.m}, {"sampler", sampler.mode() == StationarySampler::Mode::exact ? "exact" : "burn-in"}};
        if (!cfg.csv.empty() && !cfg.T_list.empty()) {
            const EmpiricalRandomMeasure cloud = pullback_sample(*sys, omega, cfg.T_list.back(), cfg.m, sampler, draws);
            auto os = open_csv(cfg.csv);
            write_clouds_csv(os, *sys, std::span(&cloud, 1));
        }
        break;
    }
    case Command::clusters: {
        const auto sampler = sampler_of(cfg, *sys);
        std::vector<EmpiricalRandomMeasure> clouds;
        const auto r = cluster_count(*sys, cfg.trials, cfg.T, cfg.m, cfg.eps_cluster, sampler, SeedLineage(cfg.seed),
                                     cfg.jobs, cfg.csv.empty() ? nullptr : &clouds);
        report["trials"] = r.trials;
        report["freq"] = r.diag_mass;
        report["ci"] = interval(r.ci_lo, r.ci_hi);
        extras = r;
        if (!cfg.csv.empty()) {
            auto os = open_csv(cfg.csv);
            write_clouds_csv(os, *sys, clouds);
        }
        break;
    }
    case Command::noise_stats: break;
    }
    report["config"] = cfg.to_json();
    report["extras"] = extras;
    return report;
}

namespace {

template <class T>
void bind(CLI::App &app, const FieldInfo &info, T &field) {
    const std::string flag = "--" + std::string(info.name);
    if constexpr (std::is_same_v<T, std::vector<std::string>>) {
        app.add_option_function<std::vector<std::string>>(
               flag,
               [&field](const std::vector<std::string> &values) {
                   field.clear();
                   for (const auto &v : values) {
                       parse_pair(v);
                       field.push_back(v);
                   }
               },
               std::string(info.help))
            ->allow_extra_args(false);
    } else {
        app.add_option_function<std::string>(
            flag, [&field](const std::string &v) { parse_value(v, field); }, std::string(info.help));
    }
}

std::string read_file(const std::string &path) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorCode::usage, "cannot read config '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string describe(Command c) {
    switch (c) {
    case Command::cocycle_check: return "composed vs direct flow over random seeds";
    case Command::gronwall: return "worst separation ratio against the e^{Lt} bound";
    case Command::lyapunov: return "leading Lyapunov exponents with a batch-means interval";
    case Command::sync: return "frequency that pairs end within delta of each other";
    case Command::stability: return "frequency that a probed ball collapses below delta";
    case Command::contract: return "frequency that x and y visit B_eps(p) together";
    case Command::transit: return "frequency that x visits a target ball";
    case Command::steer: return "flow under a deterministic steering path";
    case Command::pullback: return "energy distance between pullback clouds at several horizons";
    case Command::clusters: return "number of atoms of the sample measure";
    case Command::noise_stats: return "moment and group-law checks of generated Wiener noise";
    }
    return {};
}

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Simulation and diagnostics for random dynamical systems", "rdslab"};
    app.require_subcommand(1, 1);
    std::vector<ExperimentConfig> configs;
    configs.reserve(kCommands.size());
    std::vector<std::string> config_paths(kCommands.size());
    std::vector<CLI::App *> subs;
    for (Command c : kCommands) {
        configs.push_back(ExperimentConfig::defaults(c));
        auto &cfg = configs.back();
        auto *sub = app.add_subcommand(std::string(command_name(c)), describe(c));
        for_each_field(cfg, [&](const FieldInfo &info, auto &field) {
            if (info.scope & scope::bit(c)) bind(*sub, info, field);
        });
        if (scope::systems & scope::bit(c)) sub->add_flag_callback("--no-taming", [&cfg] { cfg.tamed = false; }, "plain Euler-Maruyama");
        sub->add_option("--config", config_paths[static_cast<std::size_t>(c)], "flat key=value file merged under flags");
        sub->add_option("--jobs", cfg.jobs, "worker threads (0: all hardware threads)");
        subs.push_back(sub);
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        err << "error: usage: " << one_line(e.what()) << '\n';
        return 2;
    } catch (const Error &e) {
        err << "error: " << to_string(e.code()) << ": " << one_line(e.what()) << '\n';
        return 2;
    }

    try {
        const auto index = static_cast<std::size_t>(
            std::find_if(subs.begin(), subs.end(), [](const CLI::App *s) { return s->parsed(); }) - subs.begin());
        ExperimentConfig cfg = configs[index];
        CLI::App &sub = *subs[index];
        const auto given = [&](std::string_view key) {
            const auto *opt = sub.get_option_no_throw("--" + std::string(key));
            if (opt && opt->count() > 0) return true;
            return key == "tamed" && sub.get_option_no_throw("--no-taming") &&
                   sub.get_option_no_throw("--no-taming")->count() > 0;
        };
        std::vector<std::string> from_file;
        if (!config_paths[index].empty()) from_file = cfg.apply_kv(read_file(config_paths[index]), given);
        if (!given("seed") && std::find(from_file.begin(), from_file.end(), "seed") == from_file.end()) {
            if (const char *env = std::getenv("RDS_SEED")) parse_value(env, cfg.seed);
        }

        const std::string json = execute(cfg).dump(2) + "\n";
        if (cfg.out.empty()) {
            out << json;
        } else {
            std::ofstream os(cfg.out, std::ios::binary);
            if (!os) throw Error(ErrorCode::precondition, "cannot open '" + cfg.out + "' for writing");
            os << json;
        }
        return 0;
    } catch (const Error &e) {
        err << "error: " << to_string(e.code()) << ": " << one_line(e.what()) << '\n';
        return 1;
    } catch (const std::exception &e) {
        err << "error: internal: " << one_line(e.what()) << '\n';
        return 1;
    }
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

} // namespace rdslab
