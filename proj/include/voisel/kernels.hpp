#pragma once

#include <cstddef>
#include <string_view>

namespace voisel::kernels {

/// Data-parallel inner loops behind the belief/VOI math. One scalar
/// reference implementation plus an AVX2 variant selected at runtime;
/// the two are equivalence-tested element by element.
struct Kernels {
    /// y[i] = tanh(x[i])
    void (*vtanh)(const double* x, double* y, std::size_t n);

    /// Fused Gauss-Hermite expectation of a scaled tanh:
    ///   out[i] = sum_l w[l] * tanh(alpha*m[i] + beta*sd[i]*x[l] + delta)
    /// (the 1/sqrt(pi) normalization is the caller's business).
    void (*gh_tanh_expect)(const double* m, const double* sd, std::size_t n,
                           const double* nodes, const double* weights, std::size_t nq,
                           double alpha, double beta, double delta, double* out);

    /// y[i] += a * x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);

    /// Rank-1 downdate of a row-major n x n matrix: M -= g s^T.
    void (*rank1_sub)(double* m, const double* g, const double* s, std::size_t n);

    std::string_view name;
};

/// Scalar reference kernels (always available).
const Kernels& scalar();

/// AVX2+FMA kernels, or nullptr when the CPU (or build) lacks them.
const Kernels* avx2();

/// The active table: AVX2 when supported unless VOISEL_FORCE_SCALAR is set
/// in the environment. Resolved once per process.
const Kernels& active();

}  // namespace voisel::kernels
