#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace voisel {

/// Dense square matrix, row-major. Sized for desk-scale belief covariances
/// (a few hundred items); no sparse or blocked paths.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    double* row(std::size_t i) { return a_.data() + i * n_; }
    const double* row(std::size_t i) const { return a_.data() + i * n_; }
    std::span<const double> row_span(std::size_t i) const { return {row(i), n_}; }

    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }

    static Matrix identity(std::size_t n);

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

/// Lower-triangular Cholesky factor of an SPD matrix. Throws
/// std::invalid_argument if the matrix is not positive definite.
Matrix cholesky(const Matrix& a);

/// Inverse of an SPD matrix via its Cholesky factor. Result is exactly
/// symmetric (upper triangle mirrored from the computed lower).
Matrix spd_inverse(const Matrix& a);

/// Solve L y = b then L^T x = y for a lower-triangular L.
std::vector<double> cholesky_solve(const Matrix& chol_lower, std::span<const double> b);

}  // namespace voisel
