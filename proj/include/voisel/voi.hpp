#pragma once

#include <span>

#include "voisel/belief.hpp"
#include "voisel/problem.hpp"
#include "voisel/quadrature.hpp"

namespace voisel {

/// A value-of-information estimate for one candidate measurement. For
/// blinkered estimates `cost` is the cost of the best measurement batch
/// (n* repetitions), so net == intrinsic - cost holds for every scheme.
struct VoiEstimate {
    double intrinsic = 0.0;  // expected gain in the selected item's utility
    double cost = 0.0;
    double net = 0.0;
};

inline double net_voi(const VoiEstimate& e) { return e.net; }

enum class VoiScheme { myopic, blinkered };

struct VoiOptions {
    int gh_nodes = kDefaultGhNodes;
};

/// Myopic intrinsic VOI: the expected improvement of max_i E[u(z_i)] from
/// observing the candidate once, minus nothing -- cost handling lives in
/// `net`. The outer expectation over the unknown observation integrates the
/// piecewise-smooth upper envelope of the per-item conditional utilities
/// exactly at its kinks (closed form for identity utilities, breakpoint
/// detection plus Gauss-Legendre panels for tanh); inner expectations use
/// Gauss-Hermite.
VoiEstimate myopic_voi(const GaussianBelief& belief, const Candidate& candidate,
                       std::span<const MeasurementType> types, const UtilityFn& utility,
                       const VoiOptions& opts = {});

/// Blinkered (semi-myopic) VOI: best net value over batches of n identical
/// measurements, n = 1..floor(remaining_budget / cost); a batch of n
/// collapses to a single observation with noise variance sigma_m^2 / n.
/// Batch sizes that provably cannot beat the current best (perfect-
/// information bound minus batch cost) are skipped.
VoiEstimate blinkered_voi(const GaussianBelief& belief, const Candidate& candidate,
                          std::span<const MeasurementType> types, const UtilityFn& utility,
                          double remaining_budget, const VoiOptions& opts = {});

VoiEstimate estimate_voi(VoiScheme scheme, const GaussianBelief& belief,
                         const Candidate& candidate, std::span<const MeasurementType> types,
                         const UtilityFn& utility, double remaining_budget,
                         const VoiOptions& opts = {});

}  // namespace voisel
