#include "voisel/belief.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "voisel/kernels.hpp"
#include "voisel/math.hpp"

namespace voisel {

double UtilityFn::operator()(double z) const {
    return kind == Kind::identity ? z : std::tanh(scale * (z - shift));
}

std::vector<Candidate> Problem::candidates() const {
    std::vector<Candidate> out;
    out.reserve(measurement_types.size() * items.size());
    for (std::size_t t = 0; t < measurement_types.size(); ++t)
        for (std::size_t i = 0; i < items.size(); ++i) out.push_back({t, i});
    return out;
}

void Problem::validate() const {
    if (budget < 0.0) throw std::invalid_argument("budget: must be >= 0");
    if (grid_shape.rows <= 0 || grid_shape.cols <= 0)
        throw std::invalid_argument("grid_shape: rows and cols must be positive");
    if (std::size_t(grid_shape.count()) != items.size())
        throw std::invalid_argument("grid_shape: rows*cols must equal item count");
    if (grid_step <= 0.0) throw std::invalid_argument("grid_step: must be > 0");
    if (dependency_variance <= 0.0)
        throw std::invalid_argument("dependency_variance: must be > 0");
    if (anchor_variance <= 0.0) throw std::invalid_argument("anchor_variance: must be > 0");
    if (true_values.size() != items.size())
        throw std::invalid_argument("true_values: must match item count");
    if (measurement_types.empty())
        throw std::invalid_argument("measurement_types: at least one required");
    for (const auto& mt : measurement_types) {
        if (mt.cost <= 0.0) throw std::invalid_argument("measurement_types.cost: must be > 0");
        if (mt.noise_variance <= 0.0)
            throw std::invalid_argument("measurement_types.noise_variance: must be > 0");
    }
}

GaussianBelief::GaussianBelief(std::vector<double> mean, Matrix covariance)
    : mean_(std::move(mean)), cov_(std::move(covariance)) {
    if (mean_.size() != cov_.size())
        throw std::invalid_argument("belief: mean/covariance size mismatch");
}

GaussianBelief build_grid_prior(GridShape shape, double grid_step, double dependency_variance,
                                double anchor_variance, double anchor_mean) {
    if (shape.rows <= 0 || shape.cols <= 0)
        throw std::invalid_argument("build_grid_prior: grid_shape must be positive");
    if (grid_step <= 0.0) throw std::invalid_argument("build_grid_prior: grid_step must be > 0");
    if (dependency_variance <= 0.0)
        throw std::invalid_argument("build_grid_prior: dependency_variance must be > 0");
    if (anchor_variance <= 0.0)
        throw std::invalid_argument("build_grid_prior: anchor_variance must be > 0");

    const std::size_t n = std::size_t(shape.count());
    const double w = 1.0 / dependency_variance;
    Matrix precision(n);
    auto idx = [&](int r, int c) { return std::size_t(r) * shape.cols + c; };
    for (int r = 0; r < shape.rows; ++r) {
        for (int c = 0; c < shape.cols; ++c) {
            std::size_t i = idx(r, c);
            int degree = 0;
            auto couple = [&](int rr, int cc) {
                if (rr < 0 || rr >= shape.rows || cc < 0 || cc >= shape.cols) return;
                precision(i, idx(rr, cc)) = -w;
                ++degree;
            };
            couple(r - 1, c);
            couple(r + 1, c);
            couple(r, c - 1);
            couple(r, c + 1);
            precision(i, i) = 1.0 / anchor_variance + degree * w;
        }
    }
    return {std::vector<double>(n, anchor_mean), spd_inverse(precision)};
}

namespace {

struct Gain {
    std::vector<double> gain;
    double denom;
};

Gain compute_gain(const GaussianBelief& belief, std::size_t item, double noise_variance) {
    const std::size_t n = belief.size();
    if (item >= n) throw std::invalid_argument("belief: item index out of range");
    if (noise_variance <= 0.0) throw std::invalid_argument("belief: noise_variance must be > 0");
    const double denom = belief.variance(item) + noise_variance;
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = belief.covariance(i, item) / denom;
    return {std::move(g), denom};
}

}  // namespace

GaussianBelief update(const GaussianBelief& belief, std::size_t item, double observation,
                      double noise_variance) {
    auto [gain, denom] = compute_gain(belief, item, noise_variance);
    const std::size_t n = belief.size();
    const auto& k = kernels::active();

    std::vector<double> mean(belief.means().begin(), belief.means().end());
    k.axpy(observation - belief.mean(item), gain.data(), mean.data(), n);

    Matrix cov = belief.cov();
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = belief.covariance(i, item);
    k.rank1_sub(cov.data(), gain.data(), s.data(), n);
    // The rank-1 downdate is symmetric in exact arithmetic; mirror the upper
    // triangle so it stays exactly symmetric in floating point, and clamp
    // the (mathematically nonnegative) diagonal against roundoff.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) cov(j, i) = cov(i, j);
        if (cov(i, i) < 0.0) cov(i, i) = 0.0;
    }
    return {std::move(mean), std::move(cov)};
}

Preposterior preposterior(const GaussianBelief& belief, std::size_t item, double noise_variance) {
    auto [gain, denom] = compute_gain(belief, item, noise_variance);
    return {belief.mean(item), denom, std::move(gain)};
}

std::vector<double> expected_utilities(const GaussianBelief& belief, const UtilityFn& u,
                                       int gh_nodes) {
    const std::size_t n = belief.size();
    std::vector<double> out(n);
    if (u.kind == UtilityFn::Kind::identity) {
        std::copy(belief.means().begin(), belief.means().end(), out.begin());
        return out;
    }
    std::vector<double> sd(n);
    double sd_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sd[i] = std::sqrt(std::max(0.0, belief.variance(i)));
        sd_max = std::max(sd_max, sd[i]);
    }
    const ExpectationRule& rule = tanh_expectation_rule(u.scale, sd_max, gh_nodes);
    kernels::active().gh_tanh_expect(belief.means().data(), sd.data(), n, rule.nodes.data(),
                                     rule.weights.data(), rule.nodes.size(), u.scale,
                                     u.scale * kSqrt2, -u.scale * u.shift, out.data());
    for (double& v : out) v /= kSqrtPi;
    return out;
}

double expected_utility(const GaussianBelief& belief, std::size_t item, const UtilityFn& u,
                        int gh_nodes) {
    if (item >= belief.size()) throw std::invalid_argument("belief: item index out of range");
    if (u.kind == UtilityFn::Kind::identity) return belief.mean(item);
    const double m = belief.mean(item);
    const double sd = std::sqrt(std::max(0.0, belief.variance(item)));
    // Rule selection follows the belief-wide sd so single-item and batched
    // evaluations agree to the last bit.
    double sd_max = 0.0;
    for (std::size_t i = 0; i < belief.size(); ++i)
        sd_max = std::max(sd_max, std::sqrt(std::max(0.0, belief.variance(i))));
    const ExpectationRule& rule = tanh_expectation_rule(u.scale, sd_max, gh_nodes);
    double out = 0.0;
    kernels::active().gh_tanh_expect(&m, &sd, 1, rule.nodes.data(), rule.weights.data(),
                                     rule.nodes.size(), u.scale, u.scale * kSqrt2,
                                     -u.scale * u.shift, &out);
    return out / kSqrtPi;
}

BestItem best_item(const GaussianBelief& belief, const UtilityFn& u, int gh_nodes) {
    if (belief.size() == 0) throw std::invalid_argument("best_item: empty item set");
    std::vector<double> eu = expected_utilities(belief, u, gh_nodes);
    std::size_t i = argmax(eu);
    return {i, eu[i]};
}

}  // namespace voisel
