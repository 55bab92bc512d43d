#pragma once

#include <vector>

namespace voisel {

/// Nodes and weights approximating  integral exp(-x^2) f(x) dx  as
/// sum_i w[i] f(x[i]). For E[f(Z)] with Z ~ N(mu, sigma^2) evaluate
/// (1/sqrt(pi)) sum w_i f(mu + sqrt(2) sigma x_i).
struct ExpectationRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Hermite rule in the physicists' convention.
struct GaussHermite : ExpectationRule {
    static GaussHermite compute(int n);

    /// Process-wide cached rule for a given node count (thread-safe).
    static const GaussHermite& cached(int n);

    /// The default 21-node rule.
    static const GaussHermite& standard();
};

inline constexpr int kDefaultGhNodes = 21;
inline constexpr int kMinGhNodes = 3;
inline constexpr int kMaxGhNodes = 150;

/// Rule for E[tanh(scale*(z - shift))] under normals with sd <= sd_max.
/// tanh has poles at +-i pi/(2*scale), so Gauss-Hermite convergence is
/// governed by kappa = scale * sd_max: below 0.65 the configured Hermite
/// rule is already at ~1e-8, above it an equispaced trapezoid rule with a
/// pole-bounded step (geometric convergence for strip-analytic integrands,
/// measured ~4e-12 worst case) takes over. Node count grows like 67*kappa.
const ExpectationRule& tanh_expectation_rule(double scale, double sd_max,
                                             int gh_nodes = kDefaultGhNodes);

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    static GaussLegendre compute(int n);
    static const GaussLegendre& cached(int n);
};

}  // namespace voisel
