#pragma once

#include "rdslab/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace rdslab {

/// Runs one subcommand. `args` excludes the program name. Writes the JSON report to --out
/// (or `out`) and returns 0 on a completed run, whatever the verdict. Failures print one
/// line "error: <code>: <message>" to `err` and return a nonzero code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// The report for a fully resolved configuration, without touching the file system
/// beyond the optional CSV path.
nlohmann::json execute(const ExperimentConfig &cfg);

} // namespace rdslab
