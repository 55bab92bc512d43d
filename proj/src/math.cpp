#include "voisel/math.hpp"

#include <algorithm>
#include <limits>

namespace voisel {

double norm_icdf(double p) {
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    if (p >= 1.0) return std::numeric_limits<double>::infinity();
    // Start from the asymptotic tail inverse, then polish with Newton on
    // norm_cdf. The CDF is log-concave so the iteration is tame; six steps
    // reach machine precision everywhere we can represent p.
    double q = std::min(p, 1.0 - p);
    double x = -std::sqrt(-2.0 * std::log(q));
    if (x > -1.0) x = -1.0;
    for (int it = 0; it < 8; ++it) {
        double err = norm_cdf(x) - q;
        double d = norm_pdf(x);
        if (d <= 0.0) break;
        double step = err / d;
        step = std::clamp(step, -1.0, 1.0);
        x -= step;
        if (std::fabs(step) < 1e-15 * std::max(1.0, std::fabs(x))) break;
    }
    return p < 0.5 ? x : -x;
}

std::size_t argmax(std::span<const double> values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;
    return best;
}

}  // namespace voisel
