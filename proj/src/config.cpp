#include "rdslab/config.hpp"

#include "rdslab/error.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace rdslab {

namespace {

constexpr std::array<std::string_view, kCommands.size()> kNames{
    "cocycle-check", "gronwall", "lyapunov", "sync",     "stability",   "contract",
    "transit",       "steer",    "pullback", "clusters", "noise-stats",
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view text, std::string_view expected) {
    throw Error(ErrorCode::usage, "cannot parse '" + std::string(text) + "' as " + std::string(expected));
}

template <class Int>
void parse_integer(std::string_view text, Int &v) {
    text = trim(text);
    Int out{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size()) bad_value(text, "an integer");
    v = out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

} // namespace

std::string_view command_name(Command c) { return kNames[static_cast<std::size_t>(c)]; }

std::optional<Command> parse_command(std::string_view name) {
    const auto it = std::find(kNames.begin(), kNames.end(), name);
    if (it == kNames.end()) return std::nullopt;
    return kCommands[static_cast<std::size_t>(it - kNames.begin())];
}

std::string format_value(const std::string &v) { return v; }
std::string format_value(int v) { return std::to_string(v); }
std::string format_value(std::uint64_t v) { return std::to_string(v); }
std::string format_value(bool v) { return v ? "true" : "false"; }

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_value(const std::vector<double> &v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_value(v[i]);
    }
    return out;
}

std::string format_value(const std::vector<std::string> &v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ';';
        out += v[i];
    }
    return out;
}

void parse_value(std::string_view text, std::string &v) { v = std::string(trim(text)); }
void parse_value(std::string_view text, int &v) { parse_integer(text, v); }
void parse_value(std::string_view text, std::uint64_t &v) { parse_integer(text, v); }

void parse_value(std::string_view text, double &v) {
    const std::string s(trim(text));
    if (s.empty()) bad_value(text, "a real number");
    char *end = nullptr;
    errno = 0;
    const double out = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE) bad_value(text, "a real number");
    v = out;
}

void parse_value(std::string_view text, bool &v) {
    const auto s = trim(text);
    if (s == "true" || s == "1" || s == "yes" || s == "on") {
        v = true;
    } else if (s == "false" || s == "0" || s == "no" || s == "off") {
        v = false;
    } else {
        bad_value(text, "a boolean");
    }
}

std::vector<double> parse_point(std::string_view text) {
    std::vector<double> out;
    if (trim(text).empty()) return out;
    for (auto part : split(text, ',')) {
        double v = 0.0;
        parse_value(part, v);
        out.push_back(v);
    }
    return out;
}

void parse_value(std::string_view text, std::vector<double> &v) { v = parse_point(text); }

std::pair<std::vector<double>, std::vector<double>> parse_pair(std::string_view text) {
    const auto parts = split(trim(text), ':');
    if (parts.size() != 2) bad_value(text, "a pair x1,..,xd:y1,..,yd");
    auto x = parse_point(parts[0]);
    auto y = parse_point(parts[1]);
    if (x.empty() || x.size() != y.size()) bad_value(text, "a pair of points with equal dimension");
    return {std::move(x), std::move(y)};
}

void parse_value(std::string_view text, std::vector<std::string> &v) {
    v.clear();
    if (trim(text).empty()) return;
    for (auto part : split(text, ';')) {
        parse_pair(part);
        v.emplace_back(trim(part));
    }
}

ExperimentConfig ExperimentConfig::defaults(Command c) {
    ExperimentConfig cfg;
    cfg.command = c;
    switch (c) {
    case Command::cocycle_check: cfg.trials = 50; break;
    case Command::gronwall:
        cfg.trials = 50;
        cfg.T = 20.0;
        cfg.random_pairs = 100;
        break;
    case Command::lyapunov: cfg.T = 2000.0; break;
    case Command::sync: cfg.trials = 200; break;
    case Command::contract:
    case Command::transit:
        cfg.trials = 500;
        cfg.T = 50.0;
        break;
    case Command::steer: cfg.T = 50.0; break;
    case Command::clusters: cfg.T = 50.0; break;
    case Command::noise_stats: cfg.T = 10.0; break;
    default: break;
    }
    return cfg;
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["command"] = command_name(command);
    for_each_field(*this, [&](const FieldInfo &info, const auto &value) {
        if (!info.echo || !(info.scope & scope::bit(command))) return;
        j[std::string(info.name)] = value;
    });
    return j;
}

std::string ExperimentConfig::to_kv() const {
    std::ostringstream os;
    os << "command=" << command_name(command) << '\n';
    for_each_field(*this, [&](const FieldInfo &info, const auto &value) {
        if (!(info.scope & scope::bit(command))) return;
        os << info.name << '=' << format_value(value) << '\n';
    });
    return os.str();
}

std::vector<std::string> ExperimentConfig::apply_kv(std::string_view text,
                                                   const std::function<bool(std::string_view)> &skip) {
    std::vector<std::string> applied;
    int line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorCode::usage, "config line " + std::to_string(line_no) + " has no '='");
        const auto key = trim(line.substr(0, eq));
        const auto value = line.substr(eq + 1);
        if (key == "command") {
            if (trim(value) != command_name(command))
                throw Error(ErrorCode::usage, "config is for '" + std::string(trim(value)) + "', not '" +
                                                  std::string(command_name(command)) + "'");
            continue;
        }
        if (skip && skip(key)) continue;
        bool known = false;
        for_each_field(*this, [&](const FieldInfo &info, auto &field) {
            if (info.name != key || !(info.scope & scope::bit(command))) return;
            known = true;
            parse_value(value, field);
        });
        if (known) applied.emplace_back(key);
        if (!known)
            throw Error(ErrorCode::usage, "config key '" + std::string(key) + "' does not apply to " +
                                              std::string(command_name(command)));
    }
    return applied;
}

ExperimentConfig ExperimentConfig::from_kv(std::string_view text) {
    std::optional<Command> command;
    for (auto line : split(text, '\n')) {
        line = trim(line);
        const auto eq = line.find('=');
        if (eq != std::string_view::npos && trim(line.substr(0, eq)) == "command") command = parse_command(trim(line.substr(eq + 1)));
    }
    if (!command) throw Error(ErrorCode::usage, "config has no valid 'command' key");
    ExperimentConfig cfg = defaults(*command);
    cfg.apply_kv(text);
    return cfg;
}

} // namespace rdslab
