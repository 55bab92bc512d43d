#include <doctest.h>

#include <cmath>
#include <vector>

#include "voisel/math.hpp"
#include "voisel/quadrature.hpp"

using namespace voisel;

TEST_CASE("norm_icdf round-trips through norm_cdf") {
    for (double p : {1e-12, 1e-6, 0.01, 0.1, 0.25, 0.5, 0.6, 0.9, 0.99, 1.0 - 1e-9}) {
        const double x = norm_icdf(p);
        CHECK(norm_cdf(x) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK(norm_icdf(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(norm_icdf(0.25) == doctest::Approx(-norm_icdf(0.75)).epsilon(1e-13));
    // The quantile behind the unit-uniform granularity used by Rng.
    CHECK(std::isfinite(norm_icdf(0x1.0p-54)));
}

TEST_CASE("norm_cdf / norm_pdf basics") {
    CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(norm_cdf(-1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-13));
    CHECK(norm_pdf(1.0) == doctest::Approx(0.24197072451914337).epsilon(1e-13));
}

TEST_CASE("argmax breaks ties toward the lowest index") {
    std::vector<double> v{1.0, 3.0, 3.0, 2.0};
    CHECK(argmax(v) == 1);
}

TEST_CASE("gauss-hermite rules reproduce normal moments") {
    for (int n : {7, 21, 41}) {
        const GaussHermite& rule = GaussHermite::cached(n);
        double w_sum = 0.0, m2 = 0.0, m4 = 0.0, m3 = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double z = kSqrt2 * rule.nodes[i];  // standard normal variate
            w_sum += rule.weights[i];
            m2 += rule.weights[i] * z * z;
            m3 += rule.weights[i] * z * z * z;
            m4 += rule.weights[i] * z * z * z * z;
        }
        CHECK(w_sum / kSqrtPi == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(m2 / kSqrtPi == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(m3 / kSqrtPi == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(m4 / kSqrtPi == doctest::Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    const GaussLegendre& rule = GaussLegendre::cached(20);
    auto integrate_pow = [&](int k) {
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            s += rule.weights[i] * std::pow(rule.nodes[i], k);
        return s;
    };
    CHECK(integrate_pow(0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(integrate_pow(2) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(integrate_pow(8) == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
    CHECK(integrate_pow(39) == doctest::Approx(0.0).epsilon(1e-13));
}
