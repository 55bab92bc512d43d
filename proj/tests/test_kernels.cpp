#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "voisel/kernels.hpp"
#include "voisel/math.hpp"
#include "voisel/quadrature.hpp"

using namespace voisel;

namespace {

std::vector<double> random_doubles(std::size_t n, double lo, double hi, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> out(n);
    for (double& v : out) v = dist(eng);
    return out;
}

}  // namespace

TEST_CASE("scalar vtanh matches std::tanh") {
    std::vector<double> xs = random_doubles(257, -25.0, 25.0, 7);
    xs.insert(xs.end(), {0.0, -0.0, 1e-18, -1e-18, 19.0, -19.0, 20.0, 50.0, -50.0});
    std::vector<double> out(xs.size());
    kernels::scalar().vtanh(xs.data(), out.data(), xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(out[i] == std::tanh(xs[i]));
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
    const kernels::Kernels* simd = kernels::avx2();
    if (simd == nullptr) {
        MESSAGE("AVX2 unavailable; equivalence suite skipped");
        return;
    }
    const kernels::Kernels& ref = kernels::scalar();

    SUBCASE("vtanh") {
        std::vector<double> xs = random_doubles(1003, -40.0, 40.0, 11);
        xs.insert(xs.end(), {0.0, -0.0, 1e-300, -1e-300, 19.0625, -19.0625, 700.0, -700.0});
        std::vector<double> a(xs.size()), b(xs.size());
        ref.vtanh(xs.data(), a.data(), xs.size());
        simd->vtanh(xs.data(), b.data(), xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i)
            CHECK(std::fabs(a[i] - b[i]) <= 1e-14);
    }

    SUBCASE("gh_tanh_expect") {
        const GaussHermite& rule = GaussHermite::standard();
        for (std::size_t n : {1u, 4u, 21u, 22u, 23u, 24u, 117u}) {
            std::vector<double> m = random_doubles(n, -5.0, 5.0, 100 + n);
            std::vector<double> sd = random_doubles(n, 0.0, 3.0, 200 + n);
            std::vector<double> a(n), b(n);
            ref.gh_tanh_expect(m.data(), sd.data(), n, rule.nodes.data(), rule.weights.data(),
                               rule.nodes.size(), 2.0, 2.0 * kSqrt2, -0.4, a.data());
            simd->gh_tanh_expect(m.data(), sd.data(), n, rule.nodes.data(), rule.weights.data(),
                                 rule.nodes.size(), 2.0, 2.0 * kSqrt2, -0.4, b.data());
            for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(a[i] - b[i]) <= 1e-13);
        }
    }

    SUBCASE("axpy") {
        for (std::size_t n : {1u, 7u, 64u, 501u}) {
            std::vector<double> x = random_doubles(n, -2.0, 2.0, 300 + n);
            std::vector<double> y0 = random_doubles(n, -2.0, 2.0, 400 + n);
            std::vector<double> ya = y0, yb = y0;
            ref.axpy(0.731, x.data(), ya.data(), n);
            simd->axpy(0.731, x.data(), yb.data(), n);
            for (std::size_t i = 0; i < n; ++i)
                CHECK(ya[i] == doctest::Approx(yb[i]).epsilon(1e-14));
        }
    }

    SUBCASE("rank1_sub") {
        for (std::size_t n : {1u, 5u, 33u}) {
            std::vector<double> m0 = random_doubles(n * n, -1.0, 1.0, 500 + n);
            std::vector<double> g = random_doubles(n, -1.0, 1.0, 600 + n);
            std::vector<double> s = random_doubles(n, -1.0, 1.0, 700 + n);
            std::vector<double> ma = m0, mb = m0;
            ref.rank1_sub(ma.data(), g.data(), s.data(), n);
            simd->rank1_sub(mb.data(), g.data(), s.data(), n);
            for (std::size_t i = 0; i < n * n; ++i)
                CHECK(std::fabs(ma[i] - mb[i]) <= 1e-15);
        }
    }
}

TEST_CASE("gh_tanh_expect matches a direct reimplementation") {
    const GaussHermite& rule = GaussHermite::standard();
    const double alpha = 2.0, beta = 2.0 * kSqrt2, delta = -1.0;
    std::vector<double> m = random_doubles(37, -4.0, 4.0, 1);
    std::vector<double> sd = random_doubles(37, 0.0, 2.0, 2);
    std::vector<double> out(m.size());
    kernels::active().gh_tanh_expect(m.data(), sd.data(), m.size(), rule.nodes.data(),
                                     rule.weights.data(), rule.nodes.size(), alpha, beta, delta,
                                     out.data());
    for (std::size_t i = 0; i < m.size(); ++i) {
        double expect = 0.0;
        for (std::size_t l = 0; l < rule.nodes.size(); ++l)
            expect += rule.weights[l] * std::tanh(alpha * m[i] + beta * sd[i] * rule.nodes[l] + delta);
        CHECK(out[i] == doctest::Approx(expect).epsilon(1e-12));
    }
}
