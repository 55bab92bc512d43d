#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "voisel/linalg.hpp"
#include "voisel/problem.hpp"
#include "voisel/quadrature.hpp"

namespace voisel {

/// Joint Gaussian belief over all item values: mean vector plus dense
/// symmetric covariance. Immutable by convention -- updates return a new
/// belief.
class GaussianBelief {
public:
    GaussianBelief() = default;
    GaussianBelief(std::vector<double> mean, Matrix covariance);

    std::size_t size() const { return mean_.size(); }
    double mean(std::size_t i) const { return mean_[i]; }
    double variance(std::size_t i) const { return cov_(i, i); }
    double covariance(std::size_t i, std::size_t j) const { return cov_(i, j); }

    std::span<const double> means() const { return mean_; }
    const Matrix& cov() const { return cov_; }

private:
    std::vector<double> mean_;
    Matrix cov_;
};

/// Grid-structured proper prior: a pairwise Gaussian MRF whose precision has
/// 1/anchor_variance + degree(i)/dependency_variance on the diagonal and
/// -1/dependency_variance for 4-neighbors; covariance is its dense inverse.
/// The grid step fixes item coordinates, not the coupling.
GaussianBelief build_grid_prior(GridShape shape, double grid_step, double dependency_variance,
                                double anchor_variance = 1.0, double anchor_mean = 0.0);

/// Scalar Kalman update after observing item j with Gaussian noise.
GaussianBelief update(const GaussianBelief& belief, std::size_t item, double observation,
                      double noise_variance);

/// Predictive view of a not-yet-taken measurement of item j: the observation
/// is N(predictive_mean, predictive_variance) and the post-update mean vector
/// is mean + gain * (y - predictive_mean), affine in y.
struct Preposterior {
    double predictive_mean = 0.0;
    double predictive_variance = 0.0;
    std::vector<double> gain;
};

Preposterior preposterior(const GaussianBelief& belief, std::size_t item, double noise_variance);

/// E[u(z_i)] under the item's marginal; identity utilities are exact, tanh
/// goes through the pole-aware expectation rule (Gauss-Hermite with the
/// given node count where that converges, denser trapezoid otherwise).
double expected_utility(const GaussianBelief& belief, std::size_t item, const UtilityFn& u,
                        int gh_nodes = kDefaultGhNodes);

/// Expected utilities for every item at once (kernel-batched).
std::vector<double> expected_utilities(const GaussianBelief& belief, const UtilityFn& u,
                                       int gh_nodes = kDefaultGhNodes);

struct BestItem {
    std::size_t index = 0;
    double value = 0.0;
};

/// Argmax of expected_utility over items, lowest index on ties.
BestItem best_item(const GaussianBelief& belief, const UtilityFn& u,
                   int gh_nodes = kDefaultGhNodes);

}  // namespace voisel
