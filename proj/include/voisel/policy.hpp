#pragma once

#include <cstdint>
#include <vector>

#include "voisel/problem.hpp"
#include "voisel/voi.hpp"

namespace voisel {

struct PerformedMeasurement {
    Candidate candidate;
    double observation = 0.0;
    double cost = 0.0;
};

/// Complete record of one selection episode.
struct Trace {
    std::vector<PerformedMeasurement> performed;
    double total_cost = 0.0;
    std::size_t selected = 0;
    double intrinsic_utility = 0.0;  // u(true value of the selected item)
    double reward = 0.0;             // intrinsic_utility - total_cost
    long recompute_count = 0;        // intrinsic-VOI evaluations
    std::uint64_t seed = 0;
};

struct PolicyOptions {
    int gh_nodes = kDefaultGhNodes;
};

/// Baseline greedy loop: every step recomputes the net VOI of every
/// affordable candidate, measures the argmax while its value is positive,
/// then selects the best item by expected utility.
Trace run_greedy(const Problem& problem, VoiScheme scheme, std::uint64_t seed,
                 const PolicyOptions& opts = {});

/// Greedy loop with candidate scoring replaced by selective recomputation:
/// stale VOI estimates are refreshed only when the expected effect on the
/// next decision exceeds the computation cost c_V. c_V is a meta-level cost
/// and does not consume the measurement budget.
Trace run_rational(const Problem& problem, VoiScheme scheme, double recompute_cost,
                   std::uint64_t seed, const PolicyOptions& opts = {});

/// Uniformly random affordable measurements, as a calibration baseline;
/// belief updates and final selection are identical to the other policies.
Trace run_random(const Problem& problem, std::size_t n_measurements, std::uint64_t seed,
                 const PolicyOptions& opts = {});

}  // namespace voisel
