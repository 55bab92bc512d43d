#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "voisel/policy.hpp"
#include "voisel/problem.hpp"
#include "voisel/rng.hpp"

namespace voisel {

enum class ProblemKind { ackley, table };
enum class Selector { greedy, rational, random };

/// Ackley grid geometry and value transform. True item values are
/// A(x, y) - offset at the grid nodes.
struct AckleySpec {
    double x_min = -2.0, x_max = 2.0;
    double y_min = -2.0, y_max = 2.0;
    double step = 0.2;
    double offset = 0.0;
};

struct ExperimentConfig {
    ProblemKind problem = ProblemKind::ackley;
    std::string table_path;
    AckleySpec ackley;

    double noise_variance = 0.5;      // sigma_m^2
    double measurement_cost = 0.01;   // c_m
    double dependency_variance = 0.5; // sigma_w^2
    double budget = 0.5;              // C
    double anchor_variance = 1.0;     // sigma_0^2
    double anchor_mean = 0.0;         // mu_0
    UtilityFn utility = UtilityFn::tanh_scaled(2.0, 0.0);

    VoiScheme scheme = VoiScheme::myopic;
    Selector selector = Selector::greedy;
    double recompute_cost = 0.0;      // c_V; required > 0 for rational/paired-random
    int replications = 10;
    std::uint64_t base_seed = 1;
    long random_measurements = -1;    // explicit n for the random selector; -1 = pair
    int gh_nodes = kDefaultGhNodes;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    static ExperimentConfig ackley_defaults();
    static ExperimentConfig table_defaults(std::string path);
};

struct MetricStats {
    double mean = 0.0;
    double sd = 0.0;
};

/// The four reported metrics aggregated over replications.
struct ExperimentStats {
    MetricStats reward;
    MetricStats intrinsic;
    MetricStats cost;
    MetricStats recomputes;
    int replications = 0;
};

/// Two-argument Ackley benchmark (the maximization form).
double ackley(double x, double y);

Problem make_ackley_problem(const ExperimentConfig& cfg);

/// Plain-text numeric grid: one row per line, whitespace-separated values,
/// decimal or scientific notation, LF or CRLF. Ragged or non-numeric input
/// fails with the row/column location.
Problem load_table_problem(const std::string& path, const ExperimentConfig& cfg);

Problem make_problem(const ExperimentConfig& cfg);

/// One noisy observation of the candidate's item; consumes exactly one
/// normal draw from the generator.
double simulate_measurement(const Problem& problem, const Candidate& candidate, Rng& rng);

/// One episode of the configured selector at the given seed. The random
/// selector pairs with a rational run on the same seed unless an explicit
/// measurement count is configured.
Trace run_replication(const ExperimentConfig& cfg, const Problem& problem, std::uint64_t seed);

/// Mean/sd of the four metrics over a set of traces.
ExperimentStats aggregate_traces(std::span<const Trace> traces);

/// Replications at seeds base_seed + i, aggregated.
ExperimentStats run_experiment(const ExperimentConfig& cfg);

}  // namespace voisel
