#include "voisel/kernels.hpp"

#include <cmath>
#include <cstdlib>

namespace voisel::kernels {
namespace {

void vtanh_scalar(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::tanh(x[i]);
}

void gh_tanh_expect_scalar(const double* m, const double* sd, std::size_t n,
                           const double* nodes, const double* weights, std::size_t nq,
                           double alpha, double beta, double delta, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double base = alpha * m[i] + delta;
        const double spread = beta * sd[i];
        double acc = 0.0;
        for (std::size_t l = 0; l < nq; ++l)
            acc += weights[l] * std::tanh(base + spread * nodes[l]);
        out[i] = acc;
    }
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void rank1_sub_scalar(double* m, const double* g, const double* s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double* row = m + i * n;
        const double gi = g[i];
        for (std::size_t j = 0; j < n; ++j) row[j] -= gi * s[j];
    }
}

constexpr Kernels kScalar{vtanh_scalar, gh_tanh_expect_scalar, axpy_scalar,
                          rank1_sub_scalar, "scalar"};

const Kernels* pick_active() {
    if (std::getenv("VOISEL_FORCE_SCALAR") != nullptr) return &kScalar;
    if (const Kernels* k = avx2()) return k;
    return &kScalar;
}

}  // namespace

const Kernels& scalar() { return kScalar; }

#if !defined(VOISEL_HAVE_AVX2)
const Kernels* avx2() { return nullptr; }
#endif

const Kernels& active() {
    static const Kernels* k = pick_active();
    return *k;
}

}  // namespace voisel::kernels
