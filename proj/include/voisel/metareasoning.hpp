#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "voisel/voi.hpp"

namespace voisel {

/// Online estimator of the per-measurement VOI drift variance tau^2. Each
/// recomputation of a candidate's intrinsic VOI after n >= 1 intervening
/// measurements contributes (new - old)^2 / n as one unbiased sample of the
/// per-step drift variance; the estimate is the running mean.
struct TauLearner {
    double sum_sq_drift = 0.0;
    long sample_count = 0;

    double tau_sq() const { return sample_count > 0 ? sum_sq_drift / sample_count : 0.0; }

    /// n == 0 carries no drift information and is ignored.
    void observe(double old_intrinsic, double new_intrinsic, long measurements_since) {
        if (measurements_since < 1) return;
        const double d = new_intrinsic - old_intrinsic;
        sum_sq_drift += d * d / double(measurements_since);
        ++sample_count;
    }
};

struct RoundResult {
    std::size_t j_max = 0;  // candidate to act on
    double net = 0.0;       // its freshly recomputed net VOI
    bool any_in_budget = false;
};

/// Gaussian beliefs about the stale net VOI of every candidate: the last
/// computed values plus a per-candidate standard deviation that grows by
/// tau^2 (in variance) per performed measurement and resets to zero whenever
/// the candidate's VOI is recomputed.
class VoiBeliefState {
public:
    using Oracle = std::function<VoiEstimate(std::size_t)>;

    VoiBeliefState(std::size_t candidate_count, double recompute_cost);

    /// Compute the initial estimates for in-budget candidates (others are
    /// frozen at V = 0, sigma = 0). Establishing the estimates is not a
    /// recomputation: the counter stays untouched.
    void initialize(double budget, std::span<const double> costs, const Oracle& oracle);

    /// Per-measurement hook: advances the staleness epoch used by the tau
    /// learner. The sigma inflation itself happens inside the next round.
    void on_measurement_performed() { ++epoch_; }

    std::size_t candidate_count() const { return net_.size(); }
    double net(std::size_t j) const { return net_[j]; }
    double intrinsic(std::size_t j) const { return intrinsic_[j]; }
    double sigma(std::size_t j) const { return sigma_[j]; }
    std::span<const double> nets() const { return net_; }
    double recompute_cost() const { return recompute_cost_; }
    double tau_sq() const { return tau_.tau_sq(); }
    const TauLearner& tau_learner() const { return tau_; }

    /// Selective recomputations performed (the forced per-round one
    /// included); the initial estimate computation is not counted.
    long recompute_count() const { return recompute_count_; }

    /// Measurements performed since candidate j's VOI was last computed.
    long staleness(std::size_t j) const { return epoch_ - last_epoch_[j]; }

    /// Record a fresh oracle result for candidate j: store it, zero sigma,
    /// feed the tau learner, bump the recompute counter.
    void record(std::size_t j, const VoiEstimate& e);

    friend VoiBeliefState inflate_all(VoiBeliefState state);
    friend RoundResult recomputation_round(VoiBeliefState& state, double budget,
                                           std::span<const double> costs, const Oracle& oracle);

private:
    std::vector<double> net_;
    std::vector<double> intrinsic_;
    std::vector<double> sigma_;
    std::vector<long> last_epoch_;
    TauLearner tau_;
    double recompute_cost_;
    long epoch_ = 0;
    long recompute_count_ = 0;
};

/// Staleness step: every tracked sigma^2 grows by the current tau^2
/// estimate.
/// Call once per performed measurement (recomputation_round does this for
/// in-budget candidates as its first phase).
VoiBeliefState inflate_all(VoiBeliefState state);

/// V_gamma for candidate k: the best net VOI among the others if k itself
/// holds the top value (lowest index among ties), the global best otherwise.
double select_gamma(std::span<const double> net_values, std::size_t k);

/// Value of recomputing a stale estimate: the expected decision gain from
/// resolving BEL(V_k) = N(V_k, sigma_k^2) against the competing value
/// V_gamma, minus the computation cost. sigma_k == 0 yields -cost.
double recompute_value(double v_k, double sigma_k, double v_gamma, double recompute_cost);

/// One selective-recomputation round: inflate in-budget candidates and
/// freeze the rest, recompute stale estimates in decreasing order of their
/// recompute-value score while it stays positive, then recompute the final argmax
/// once more (served from this round's computation when it is already
/// fresh, since the beliefs cannot have changed within the round). Returns
/// that argmax and its fresh net value.
///
/// Before the tau learner has any drift sample, a stale candidate's score
/// uses a bootstrap sigma (the spread of the stored net values) instead of
/// its tracked zero -- with no drift model yet, stale estimates are treated
/// as uncertain at the scale of the decision values. This preserves both
/// degenerate regimes: c_V -> 0 recomputes everything stale, huge c_V only
/// the forced final one.
RoundResult recomputation_round(VoiBeliefState& state, double budget,
                                std::span<const double> costs,
                                const VoiBeliefState::Oracle& oracle);

}  // namespace voisel
