#pragma once

// Independent test oracles. Everything here recomputes results from first
// principles (dense conditioning formulas, adaptive Simpson quadrature,
// Monte-Carlo sampling) and must stay decoupled from the library's
// quadrature/envelope code paths it is used to check.

#include <cstdint>
#include <functional>
#include <vector>

#include "voisel/belief.hpp"
#include "voisel/linalg.hpp"
#include "voisel/problem.hpp"

namespace voisel::test {

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Adaptive Simpson integration of f over [a, b] to the given tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10);

/// E[u(Z)], Z ~ N(mean, sd^2), by adaptive Simpson over +-10 sd.
double expected_utility_simpson(const UtilityFn& u, double mean, double sd);

/// Monte-Carlo E[max(X - threshold, 0)], X ~ N(mu, sigma^2).
McEstimate mc_expected_gain(double mu, double sigma, double threshold, std::size_t samples,
                            std::uint64_t seed);

/// Posterior (mean, covariance) after observing item j with Gaussian noise,
/// by conditioning the (items + observation) joint directly.
struct DensePosterior {
    std::vector<double> mean;
    Matrix cov;
};
DensePosterior condition_on_observation(const std::vector<double>& mean, const Matrix& cov,
                                        std::size_t item, double observation,
                                        double noise_variance);

/// Monte-Carlo myopic intrinsic VOI: sample the unknown observation, take
/// the max posterior expected utility per sample. Conditional expected
/// utilities use dense formulas plus (for tanh) a Simpson-built interpolant.
McEstimate mc_myopic_intrinsic(const GaussianBelief& belief, std::size_t item,
                               double noise_variance, const UtilityFn& u, std::size_t samples,
                               std::uint64_t seed);

/// Smallest eigenvalue of a symmetric matrix (cyclic Jacobi).
double smallest_eigenvalue(Matrix a);

}  // namespace voisel::test
