#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "voisel/bench.hpp"

namespace voisel::cli {

/// One c_V sweep: every (c_V, selector) cell runs on shared seeds; rows come
/// out c_V-major in the selector order given here.
struct SweepSpec {
    std::vector<double> cv_values;
    std::vector<Selector> selectors;
    ExperimentConfig base;
};

std::string csv_header();
std::string csv_row(const ExperimentConfig& cfg, const ExperimentStats& stats);

/// Effective configuration as a key=value file that parses back to the same
/// configuration.
std::string effective_config(const ExperimentConfig& cfg);

int cmd_run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepSpec& spec, std::ostream& out, std::ostream& err);

/// Full command-line entry point (subcommands `run` and `sweep`).
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace voisel::cli
