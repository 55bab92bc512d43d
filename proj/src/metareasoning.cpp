#include "voisel/metareasoning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "voisel/math.hpp"

namespace voisel {

VoiBeliefState::VoiBeliefState(std::size_t candidate_count, double recompute_cost)
    : net_(candidate_count, 0.0), intrinsic_(candidate_count, 0.0),
      sigma_(candidate_count, 0.0), last_epoch_(candidate_count, 0),
      recompute_cost_(recompute_cost) {
    if (candidate_count == 0)
        throw std::invalid_argument("metareasoning: empty candidate set");
    if (recompute_cost <= 0.0)
        throw std::invalid_argument("metareasoning: recompute_cost must be > 0");
}

void VoiBeliefState::record(std::size_t j, const VoiEstimate& e) {
    tau_.observe(intrinsic_[j], e.intrinsic, staleness(j));
    net_[j] = e.net;
    intrinsic_[j] = e.intrinsic;
    sigma_[j] = 0.0;
    last_epoch_[j] = epoch_;
    ++recompute_count_;
}

void VoiBeliefState::initialize(double budget, std::span<const double> costs,
                                const Oracle& oracle) {
    for (std::size_t j = 0; j < net_.size(); ++j) {
        if (costs[j] <= budget) {
            // First computation: establishes the estimates. Neither the
            // learner nor the recomputation counter is involved; the counter
            // tracks selective recomputations only.
            const VoiEstimate e = oracle(j);
            net_[j] = e.net;
            intrinsic_[j] = e.intrinsic;
            sigma_[j] = 0.0;
            last_epoch_[j] = epoch_;
        } else {
            net_[j] = 0.0;
            intrinsic_[j] = 0.0;
            sigma_[j] = 0.0;
        }
    }
}

VoiBeliefState inflate_all(VoiBeliefState state) {
    const double tau_sq = state.tau_.tau_sq();
    for (double& s : state.sigma_) s = std::sqrt(s * s + tau_sq);
    return state;
}

double select_gamma(std::span<const double> net_values, std::size_t k) {
    if (net_values.size() < 2)
        throw std::invalid_argument("select_gamma: need at least two candidates");
    const std::size_t top = argmax(net_values);
    if (top != k) return net_values[top];
    double second = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < net_values.size(); ++j)
        if (j != k) second = std::max(second, net_values[j]);
    return second;
}

double recompute_value(double v_k, double sigma_k, double v_gamma, double recompute_cost) {
    if (sigma_k <= 0.0) return -recompute_cost;
    const double gap = std::fabs(v_gamma - v_k);
    const double z = gap / sigma_k;
    return sigma_k * kInvSqrt2Pi * std::exp(-0.5 * z * z) - gap * norm_cdf(-z) - recompute_cost;
}

namespace {

// Pre-first-drift-sample stand-in for sigma: the spread of the stored net
// values (falling back to their magnitude, then to 1).
double bootstrap_sigma(std::span<const double> nets) {
    double mean = 0.0;
    for (double v : nets) mean += v;
    mean /= double(nets.size());
    double var = 0.0, max_abs = 0.0;
    for (double v : nets) {
        var += (v - mean) * (v - mean);
        max_abs = std::max(max_abs, std::fabs(v));
    }
    var /= double(nets.size());
    const double sd = std::sqrt(var);
    if (sd > 0.0) return sd;
    return max_abs > 0.0 ? max_abs : 1.0;
}

}  // namespace

RoundResult recomputation_round(VoiBeliefState& state, double budget,
                                std::span<const double> costs,
                                const VoiBeliefState::Oracle& oracle) {
    const std::size_t n = state.candidate_count();
    if (costs.size() != n) throw std::invalid_argument("recomputation_round: cost size mismatch");
    if (budget < 0.0) budget = 0.0;

    // Phase 1: refresh V from the stored estimates and inflate uncertainty
    // for candidates still in budget; freeze the rest.
    std::vector<char> in_budget(n, 0);
    const double tau_sq = state.tau_sq();
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
        if (costs[j] <= budget) {
            in_budget[j] = 1;
            any = true;
            state.sigma_[j] = std::sqrt(state.sigma_[j] * state.sigma_[j] + tau_sq);
        } else {
            state.net_[j] = 0.0;
            state.intrinsic_[j] = 0.0;
            state.sigma_[j] = 0.0;
        }
    }
    if (!any) {
        // Nothing affordable; the caller's stop test sees net <= 0.
        const std::size_t j = argmax(state.nets());
        return {j, state.net_[j], false};
    }

    const bool seeding = state.tau_learner().sample_count == 0;
    const double boot = seeding ? bootstrap_sigma(state.nets()) : 0.0;

    // Phase 2: recompute while the best recompute-value score is positive. A candidate
    // recomputed in this round has sigma == 0, scores -c_V, and cannot be
    // picked again, so the loop does at most n oracle calls. With a single
    // candidate there is no competing value and recomputation cannot change
    // the choice; only the forced final recomputation runs.
    std::vector<char> fresh_this_round(n, 0);
    std::vector<double> w(n, 0.0);
    while (n >= 2) {
        for (std::size_t k = 0; k < n; ++k) {
            if (!in_budget[k]) {
                w[k] = 0.0;
                continue;
            }
            double sigma = state.sigma_[k];
            if (seeding && sigma == 0.0 && state.staleness(k) > 0) sigma = boot;
            const double gamma = select_gamma(state.nets(), k);
            w[k] = recompute_value(state.net_[k], sigma, gamma, state.recompute_cost());
        }
        const std::size_t k_max = argmax(w);
        if (w[k_max] <= 0.0) break;
        state.record(k_max, oracle(k_max));
        fresh_this_round[k_max] = 1;
    }

    // Phase 3: the chosen candidate's value is recomputed one more time. If
    // the loop above already recomputed it in this round the beliefs have
    // not changed since, so the call would return the identical value; it is
    // served from that computation instead of a duplicate oracle call.
    std::size_t j_max = 0;
    bool found = false;
    for (std::size_t j = 0; j < n; ++j) {
        if (!in_budget[j]) continue;
        if (!found || state.net_[j] > state.net_[j_max]) {
            j_max = j;
            found = true;
        }
    }
    if (!fresh_this_round[j_max]) state.record(j_max, oracle(j_max));
    return {j_max, state.net_[j_max], true};
}

}  // namespace voisel
