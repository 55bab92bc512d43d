// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma in its own TU; only
// reachable after the runtime cpuid check in avx2().
#include "voisel/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace voisel::kernels {
namespace {

// exp(x) for |x| <= ~700, inputs guaranteed finite by callers.
// Cody-Waite reduction, degree-13 Taylor on the reduced argument, 2^n via
// exponent-field assembly. Relative error a couple of ulps.
inline __m256d exp_pd(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.44269504088896340736);
    const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);

    __m128i n_i = _mm256_cvtpd_epi32(_mm256_mul_pd(x, log2e));  // round to nearest
    __m256d n_d = _mm256_cvtepi32_pd(n_i);
    __m256d r = _mm256_fnmadd_pd(n_d, ln2_hi, x);
    r = _mm256_fnmadd_pd(n_d, ln2_lo, r);

    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

    __m256i n64 = _mm256_cvtepi32_epi64(n_i);
    __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
}

// tanh(x) = sign(x) * (1 - 2/(exp(2|x|)+1)), saturated for |x| >= 20.
inline __m256d tanh_pd(__m256d x) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d ax = _mm256_andnot_pd(sign_mask, x);
    __m256d t = _mm256_min_pd(ax, _mm256_set1_pd(20.0));
    __m256d e = exp_pd(_mm256_add_pd(t, t));
    __m256d th = _mm256_sub_pd(one, _mm256_div_pd(_mm256_set1_pd(2.0), _mm256_add_pd(e, one)));
    return _mm256_or_pd(th, _mm256_and_pd(sign_mask, x));
}

inline __m256i tail_mask(std::size_t rem) {
    alignas(32) static const long long kAll[8] = {-1, -1, -1, -1, 0, 0, 0, 0};
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(kAll + (4 - rem)));
}

void vtanh_avx2(const double* x, double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, tanh_pd(_mm256_loadu_pd(x + i)));
    if (std::size_t rem = n - i) {
        __m256i mask = tail_mask(rem);
        __m256d v = _mm256_maskload_pd(x + i, mask);
        _mm256_maskstore_pd(y + i, mask, tanh_pd(v));
    }
}

void gh_tanh_expect_avx2(const double* m, const double* sd, std::size_t n,
                         const double* nodes, const double* weights, std::size_t nq,
                         double alpha, double beta, double delta, double* out) {
    const __m256d va = _mm256_set1_pd(alpha);
    const __m256d vd = _mm256_set1_pd(delta);
    const __m256d vb = _mm256_set1_pd(beta);
    std::size_t i = 0;
    auto block = [&](__m256d m4, __m256d sd4) {
        __m256d base = _mm256_fmadd_pd(va, m4, vd);
        __m256d spread = _mm256_mul_pd(vb, sd4);
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t l = 0; l < nq; ++l) {
            __m256d arg = _mm256_fmadd_pd(spread, _mm256_set1_pd(nodes[l]), base);
            acc = _mm256_fmadd_pd(_mm256_set1_pd(weights[l]), tanh_pd(arg), acc);
        }
        return acc;
    };
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, block(_mm256_loadu_pd(m + i), _mm256_loadu_pd(sd + i)));
    if (std::size_t rem = n - i) {
        __m256i mask = tail_mask(rem);
        __m256d r = block(_mm256_maskload_pd(m + i, mask), _mm256_maskload_pd(sd + i, mask));
        _mm256_maskstore_pd(out + i, mask, r);
    }
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, r);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void rank1_sub_avx2(double* m, const double* g, const double* s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double* row = m + i * n;
        const __m256d gi = _mm256_set1_pd(g[i]);
        std::size_t j = 0;
        for (; j + 4 <= n; j += 4) {
            __m256d r = _mm256_fnmadd_pd(gi, _mm256_loadu_pd(s + j), _mm256_loadu_pd(row + j));
            _mm256_storeu_pd(row + j, r);
        }
        for (; j < n; ++j) row[j] -= g[i] * s[j];
    }
}

constexpr Kernels kAvx2{vtanh_avx2, gh_tanh_expect_avx2, axpy_avx2, rank1_sub_avx2, "avx2"};

}  // namespace

const Kernels* avx2() {
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok ? &kAvx2 : nullptr;
}

}  // namespace voisel::kernels

#endif  // x86_64
