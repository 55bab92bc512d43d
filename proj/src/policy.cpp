#include "voisel/policy.hpp"

#include <cmath>
#include <stdexcept>

#include "voisel/bench.hpp"
#include "voisel/belief.hpp"
#include "voisel/metareasoning.hpp"
#include "voisel/rng.hpp"

namespace voisel {
namespace {

struct Episode {
    const Problem& problem;
    std::vector<Candidate> candidates;
    std::vector<double> costs;
    GaussianBelief belief;
    double budget;
    Rng rng;
    Trace trace;

    Episode(const Problem& p, std::uint64_t seed)
        : problem(p), candidates(p.candidates()), belief(build_grid_prior(
              p.grid_shape, p.grid_step, p.dependency_variance, p.anchor_variance,
              p.anchor_mean)),
          budget(p.budget), rng(seed) {
        p.validate();
        costs.reserve(candidates.size());
        for (const Candidate& c : candidates) costs.push_back(p.measurement_types[c.type_index].cost);
        trace.seed = seed;
    }

    void perform(std::size_t j) {
        const Candidate& c = candidates[j];
        const double y = simulate_measurement(problem, c, rng);
        belief = update(belief, c.item_index, y, problem.measurement_types[c.type_index].noise_variance);
        budget -= costs[j];
        trace.total_cost += costs[j];
        trace.performed.push_back({c, y, costs[j]});
    }

    Trace finish(int gh_nodes) {
        const BestItem alpha = best_item(belief, problem.utility, gh_nodes);
        trace.selected = alpha.index;
        trace.intrinsic_utility = problem.utility(problem.true_value(alpha.index));
        trace.reward = trace.intrinsic_utility - trace.total_cost;
        return std::move(trace);
    }
};

}  // namespace

Trace run_greedy(const Problem& problem, VoiScheme scheme, std::uint64_t seed,
                 const PolicyOptions& opts) {
    Episode ep(problem, seed);
    const VoiOptions voi_opts{opts.gh_nodes};
    std::vector<double> nets(ep.candidates.size());
    while (true) {
        // Item utilities are refreshed every pass as in the baseline loop;
        // only the final selection consumes them.
        (void)expected_utilities(ep.belief, problem.utility, opts.gh_nodes);
        for (std::size_t j = 0; j < ep.candidates.size(); ++j) {
            if (ep.costs[j] <= ep.budget) {
                const VoiEstimate e = estimate_voi(scheme, ep.belief, ep.candidates[j],
                                                   problem.measurement_types, problem.utility,
                                                   ep.budget, voi_opts);
                nets[j] = e.net;
                ++ep.trace.recompute_count;
            } else {
                nets[j] = 0.0;
            }
        }
        const std::size_t j_max = argmax(nets);
        if (!(nets[j_max] > 0.0) || ep.costs[j_max] > ep.budget) break;
        ep.perform(j_max);
    }
    return ep.finish(opts.gh_nodes);
}

Trace run_rational(const Problem& problem, VoiScheme scheme, double recompute_cost,
                   std::uint64_t seed, const PolicyOptions& opts) {
    if (recompute_cost <= 0.0)
        throw std::invalid_argument("run_rational: recompute_cost must be > 0");
    Episode ep(problem, seed);
    const VoiOptions voi_opts{opts.gh_nodes};

    VoiBeliefState state(ep.candidates.size(), recompute_cost);
    auto oracle = [&](std::size_t j) {
        return estimate_voi(scheme, ep.belief, ep.candidates[j], problem.measurement_types,
                            problem.utility, ep.budget, voi_opts);
    };
    state.initialize(ep.budget, ep.costs, oracle);

    while (true) {
        (void)expected_utilities(ep.belief, problem.utility, opts.gh_nodes);
        const RoundResult round = recomputation_round(state, ep.budget, ep.costs, oracle);
        if (!round.any_in_budget || !(round.net > 0.0) || ep.costs[round.j_max] > ep.budget)
            break;
        ep.perform(round.j_max);
        state.on_measurement_performed();
    }
    ep.trace.recompute_count = state.recompute_count();
    return ep.finish(opts.gh_nodes);
}

Trace run_random(const Problem& problem, std::size_t n_measurements, std::uint64_t seed,
                 const PolicyOptions& opts) {
    Episode ep(problem, seed);
    // Affordability of the requested count is checked with a relative nudge
    // so n == budget/cost survives decimal-fraction roundoff.
    double min_cost = ep.costs.empty() ? 0.0 : ep.costs[0];
    for (double c : ep.costs) min_cost = std::min(min_cost, c);
    if (double(n_measurements) * min_cost > ep.budget * (1.0 + 1e-9) + 1e-12)
        throw std::invalid_argument("run_random: n_measurements exceeds the budget");

    const double slack = 1e-9 * std::max(1.0, problem.budget);
    std::vector<std::size_t> affordable;
    for (std::size_t step = 0; step < n_measurements; ++step) {
        affordable.clear();
        for (std::size_t j = 0; j < ep.candidates.size(); ++j)
            if (ep.costs[j] <= ep.budget + slack) affordable.push_back(j);
        if (affordable.empty()) break;
        ep.perform(affordable[ep.rng.below(affordable.size())]);
    }
    return ep.finish(opts.gh_nodes);
}

}  // namespace voisel
