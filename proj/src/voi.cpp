#include "voisel/voi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "voisel/kernels.hpp"
#include "voisel/math.hpp"

namespace voisel {
namespace {

constexpr double kEnvelopeHalfWidth = 8.0;  // +-8 sd of the predictive observation
constexpr int kScanIntervals = 64;
constexpr double kPanelMaxWidth = 1.0;
constexpr int kPanelGlNodes = 20;
constexpr int kBisectIters = 40;

// Conditional-utility model for one candidate at effective noise sigma^2,
// with the unknown observation standardized to t ~ N(0,1):
//   item mean given t:  base[i] + slope[i] * t
//   item sd given t:    sd[i]  (independent of t)
struct CondModel {
    std::vector<double> base;
    std::vector<double> slope;
    std::vector<double> sd;
};

CondModel cond_model(const GaussianBelief& belief, std::size_t item, double noise_variance) {
    const std::size_t n = belief.size();
    const double denom = belief.variance(item) + noise_variance;
    const double pred_sd = std::sqrt(denom);
    CondModel cm;
    cm.base.assign(belief.means().begin(), belief.means().end());
    cm.slope.resize(n);
    cm.sd.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double cross = belief.covariance(i, item);
        cm.slope[i] = cross / pred_sd;
        cm.sd[i] = std::sqrt(std::max(0.0, belief.variance(i) - cross * cross / denom));
    }
    return cm;
}

// ---- identity utility: exact piecewise integration of the line envelope ----

// E_t[max_i (a_i + b_i t)], t ~ N(0,1). Upper envelope of lines, then exact
// normal partial moments per segment.
double lines_mean_max(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (b[i] != b[j]) return b[i] < b[j];
        return a[i] < a[j];
    });

    // Hull lines plus hx[k], the t where hull line k+1 takes over from k.
    std::vector<double> ha, hb, hx;
    for (std::size_t oi : order) {
        const double ai = a[oi], bi = b[oi];
        if (!hb.empty() && hb.back() == bi) {
            if (ai <= ha.back()) continue;  // parallel, lower or equal
            ha.pop_back();
            hb.pop_back();
            if (!hx.empty()) hx.pop_back();
        }
        while (true) {
            if (ha.empty()) {
                ha.push_back(ai);
                hb.push_back(bi);
                break;
            }
            // t where the new line overtakes the current hull top.
            const double t = (ha.back() - ai) / (bi - hb.back());
            if (!hx.empty() && t <= hx.back()) {
                ha.pop_back();
                hb.pop_back();
                hx.pop_back();
                continue;
            }
            ha.push_back(ai);
            hb.push_back(bi);
            hx.push_back(t);
            break;
        }
    }

    double total = 0.0;
    for (std::size_t k = 0; k < ha.size(); ++k) {
        const double lo = k == 0 ? -std::numeric_limits<double>::infinity() : hx[k - 1];
        const double hi = k + 1 < ha.size() ? hx[k] : std::numeric_limits<double>::infinity();
        total += ha[k] * (norm_cdf(hi) - norm_cdf(lo)) + hb[k] * (norm_pdf(lo) - norm_pdf(hi));
    }
    return total;
}

// ---- tanh utility: envelope breakpoints + Gauss-Legendre panels ----

// Batched conditional expected utility at a common t for the given item
// subset: out[k] = h_{items[k]}(base + slope * t).
class CurveEvaluator {
public:
    CurveEvaluator(const CondModel& cm, const UtilityFn& u, const ExpectationRule& rule,
                   std::vector<std::size_t> items)
        : cm_(cm), rule_(rule), items_(std::move(items)), alpha_(u.scale),
          beta_(u.scale * kSqrt2), delta_(-u.scale * u.shift) {
        sd_.reserve(items_.size());
        for (std::size_t i : items_) sd_.push_back(cm.sd[i]);
        means_.resize(items_.size());
        vals_.resize(items_.size());
    }

    std::size_t count() const { return items_.size(); }
    std::size_t item(std::size_t k) const { return items_[k]; }

    // Values of every tracked curve at t.
    std::span<const double> eval_all(double t) {
        for (std::size_t k = 0; k < items_.size(); ++k)
            means_[k] = cm_.base[items_[k]] + cm_.slope[items_[k]] * t;
        kernels::active().gh_tanh_expect(means_.data(), sd_.data(), items_.size(),
                                         rule_.nodes.data(), rule_.weights.data(),
                                         rule_.nodes.size(), alpha_, beta_, delta_, vals_.data());
        for (double& v : vals_) v /= kSqrtPi;
        return vals_;
    }

    // Single curve k (index into the tracked subset) at many t values.
    void eval_curve(std::size_t k, std::span<const double> ts, std::span<double> out) const {
        const std::size_t i = items_[k];
        std::vector<double> means(ts.size()), sds(ts.size(), cm_.sd[i]);
        for (std::size_t q = 0; q < ts.size(); ++q) means[q] = cm_.base[i] + cm_.slope[i] * ts[q];
        kernels::active().gh_tanh_expect(means.data(), sds.data(), ts.size(), rule_.nodes.data(),
                                         rule_.weights.data(), rule_.nodes.size(), alpha_, beta_,
                                         delta_, out.data());
        for (double& v : out) v /= kSqrtPi;
    }

    double eval_one(std::size_t k, double t) const {
        double out;
        eval_curve(k, {&t, 1}, {&out, 1});
        return out;
    }

private:
    const CondModel& cm_;
    const ExpectationRule& rule_;
    std::vector<std::size_t> items_;
    double alpha_, beta_, delta_;
    std::vector<double> sd_, means_, vals_;
};

// Integral of curve k against the standard normal density over [lo, hi],
// in panels short enough for the Gauss-Legendre order to be spectral.
double integrate_curve(const CurveEvaluator& ev, std::size_t k, double lo, double hi) {
    const GaussLegendre& gl = GaussLegendre::cached(kPanelGlNodes);
    const int panels = std::max(1, int(std::ceil((hi - lo) / kPanelMaxWidth)));
    const double width = (hi - lo) / panels;
    std::vector<double> ts(gl.nodes.size()), vals(gl.nodes.size());
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double c = lo + (p + 0.5) * width;
        const double h = 0.5 * width;
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) ts[q] = c + h * gl.nodes[q];
        ev.eval_curve(k, ts, vals);
        double acc = 0.0;
        for (std::size_t q = 0; q < gl.nodes.size(); ++q)
            acc += gl.weights[q] * vals[q] * norm_pdf(ts[q]);
        total += h * acc;
    }
    return total;
}

double smooth_mean_max(const CondModel& cm, const UtilityFn& u, const ExpectationRule& rule) {
    const std::size_t n = cm.base.size();
    const double T = kEnvelopeHalfWidth;

    // Prune items that sit strictly below some other item's guaranteed floor
    // everywhere in [-T, T]; bounds use monotonicity of the conditional
    // expected utility in its mean.
    std::vector<double> m_lo(n), m_hi(n), sd(cm.sd), lo_vals(n), hi_vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double swing = std::fabs(cm.slope[i]) * T;
        m_lo[i] = cm.base[i] - swing;
        m_hi[i] = cm.base[i] + swing;
    }
    const auto& k = kernels::active();
    const double alpha = u.scale, beta = u.scale * kSqrt2, delta = -u.scale * u.shift;
    k.gh_tanh_expect(m_lo.data(), sd.data(), n, rule.nodes.data(), rule.weights.data(),
                     rule.nodes.size(), alpha, beta, delta, lo_vals.data());
    k.gh_tanh_expect(m_hi.data(), sd.data(), n, rule.nodes.data(), rule.weights.data(),
                     rule.nodes.size(), alpha, beta, delta, hi_vals.data());
    double env_floor = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) env_floor = std::max(env_floor, lo_vals[i]);
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < n; ++i)
        if (hi_vals[i] >= env_floor) live.push_back(i);

    CurveEvaluator ev(cm, u, rule, std::move(live));
    if (ev.count() == 1) return integrate_curve(ev, 0, -T, T);

    // Locate argmax switches on a scan grid, then bisect each switch down to
    // a breakpoint. Segments between breakpoints belong to one curve.
    std::vector<std::size_t> owner(kScanIntervals + 1);
    std::vector<double> ts(kScanIntervals + 1);
    for (int s = 0; s <= kScanIntervals; ++s) {
        ts[s] = -T + (2.0 * T * s) / kScanIntervals;
        owner[s] = argmax(ev.eval_all(ts[s]));
    }

    double total = 0.0;
    double seg_lo = -T;
    std::size_t seg_owner = owner[0];
    for (int s = 0; s < kScanIntervals; ++s) {
        if (owner[s + 1] == seg_owner) continue;
        // f_a - f_b changes sign in [ts[s], ts[s+1]].
        const std::size_t a = seg_owner, b = owner[s + 1];
        double lo = ts[s], hi = ts[s + 1];
        for (int it = 0; it < kBisectIters; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (ev.eval_one(a, mid) >= ev.eval_one(b, mid))
                lo = mid;
            else
                hi = mid;
        }
        const double bp = 0.5 * (lo + hi);
        total += integrate_curve(ev, seg_owner, seg_lo, bp);
        seg_lo = bp;
        seg_owner = b;
    }
    total += integrate_curve(ev, seg_owner, seg_lo, T);
    return total;
}

// Intrinsic myopic VOI at an explicit effective noise variance (0 allowed:
// the perfect-observation bound used by the blinkered batch cutoff).
double myopic_intrinsic(const GaussianBelief& belief, std::size_t item, double noise_variance,
                        const UtilityFn& u, int gh_nodes) {
    if (item >= belief.size()) throw std::invalid_argument("voi: item index out of range");
    if (belief.variance(item) <= 0.0) return 0.0;  // observation teaches nothing

    CondModel cm = cond_model(belief, item, noise_variance);
    if (u.kind == UtilityFn::Kind::identity) {
        const double baseline = *std::max_element(cm.base.begin(), cm.base.end());
        return lines_mean_max(cm.base, cm.slope) - baseline;
    }
    std::vector<double> eu = expected_utilities(belief, u, gh_nodes);
    const double baseline = eu[argmax(eu)];
    const double sd_max = *std::max_element(cm.sd.begin(), cm.sd.end());
    const ExpectationRule& rule = tanh_expectation_rule(u.scale, sd_max, gh_nodes);
    return smooth_mean_max(cm, u, rule) - baseline;
}

const MeasurementType& type_of(const Candidate& c, std::span<const MeasurementType> types) {
    if (c.type_index >= types.size())
        throw std::invalid_argument("voi: candidate type index out of range");
    return types[c.type_index];
}

}  // namespace

VoiEstimate myopic_voi(const GaussianBelief& belief, const Candidate& candidate,
                       std::span<const MeasurementType> types, const UtilityFn& utility,
                       const VoiOptions& opts) {
    const MeasurementType& mt = type_of(candidate, types);
    const double lambda = myopic_intrinsic(belief, candidate.item_index, mt.noise_variance,
                                           utility, opts.gh_nodes);
    return {lambda, mt.cost, lambda - mt.cost};
}

VoiEstimate blinkered_voi(const GaussianBelief& belief, const Candidate& candidate,
                          std::span<const MeasurementType> types, const UtilityFn& utility,
                          double remaining_budget, const VoiOptions& opts) {
    if (remaining_budget < 0.0) throw std::invalid_argument("voi: remaining_budget must be >= 0");
    const MeasurementType& mt = type_of(candidate, types);
    if (remaining_budget < mt.cost) return {0.0, mt.cost, -mt.cost};

    // floor() with a relative nudge so an exactly-affordable batch count is
    // not lost to decimal-fraction roundoff. The cap only guards the integer
    // conversion; the bound-based cutoff below stops the sweep long before.
    const long n_max = long(std::min(remaining_budget / mt.cost + 1e-9, 1e9));
    VoiEstimate best = myopic_voi(belief, candidate, types, utility, opts);
    if (n_max <= 1) return best;

    const double perfect =
        myopic_intrinsic(belief, candidate.item_index, 0.0, utility, opts.gh_nodes);
    for (long n = 2; n <= n_max; ++n) {
        if (perfect - double(n) * mt.cost <= best.net) break;
        const double lambda = myopic_intrinsic(belief, candidate.item_index,
                                               mt.noise_variance / double(n), utility,
                                               opts.gh_nodes);
        const double batch_cost = double(n) * mt.cost;
        if (lambda - batch_cost > best.net) best = {lambda, batch_cost, lambda - batch_cost};
    }
    return best;
}

VoiEstimate estimate_voi(VoiScheme scheme, const GaussianBelief& belief,
                         const Candidate& candidate, std::span<const MeasurementType> types,
                         const UtilityFn& utility, double remaining_budget,
                         const VoiOptions& opts) {
    return scheme == VoiScheme::myopic
               ? myopic_voi(belief, candidate, types, utility, opts)
               : blinkered_voi(belief, candidate, types, utility, remaining_budget, opts);
}

}  // namespace voisel
