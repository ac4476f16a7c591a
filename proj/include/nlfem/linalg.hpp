// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nlfem {

/// Dense symmetric matrix in packed storage. The upper triangle is stored
/// column by column (LAPACK 'U' packing), i.e. row i of the lower triangle is
/// contiguous: entry (i,j) with j <= i lives at i(i+1)/2 + j.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t order);
  SymMatrix(std::size_t order, std::vector<double> packed);

  static SymMatrix identity(std::size_t order);
  static SymMatrix diagonal(std::span<const double> diag);

  std::size_t order() const { return n_; }
  const std::vector<double>& packed() const { return data_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }
  double& at(std::size_t i, std::size_t j) { return data_[index(i, j)]; }
  void add(std::size_t i, std::size_t j, double v) { data_[index(i, j)] += v; }

  /// Row-major packed upper triangle: (0,0),(0,1),...,(0,n-1),(1,1),...
  std::vector<double> row_major_upper() const;
  static SymMatrix from_row_major_upper(std::size_t order, std::span<const double> values);

  std::vector<double> multiply(std::span<const double> x) const;
  /// x^T A y.
  double bilinear(std::span<const double> x, std::span<const double> y) const;

  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& operator*=(double a);

 private:
  static std::size_t index(std::size_t i, std::size_t j) {
    return i >= j ? i * (i + 1) / 2 + j : j * (j + 1) / 2 + i;
  }

  std::size_t n_ = 0;
  std::vector<double> data_;
};

inline std::vector<double> matvec(const SymMatrix& a, std::span<const double> x) {
  return a.multiply(x);
}

double dot(std::span<const double> a, std::span<const double> b);
double norm_inf(std::span<const double> a);

/// A = L L^T. Throws IndefiniteError carrying the failing pivot index.
class Cholesky {
 public:
  explicit Cholesky(const SymMatrix& a);

  std::size_t order() const { return n_; }
  double factor(std::size_t i, std::size_t j) const {
    return j <= i ? l_[i * (i + 1) / 2 + j] : 0.0;
  }
  std::vector<double> solve(std::span<const double> b) const;
  /// Solves L y = b in place.
  void forward(std::span<double> x) const;
  /// Solves L^T x = y in place.
  void backward(std::span<double> x) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> l_;
};

/// Eigen-decomposition of a small dense symmetric matrix (row-major n x n) by
/// cyclic Jacobi rotations. Values ascending; vectors stored column-wise in a
/// row-major n x n array.
struct SmallEigen {
  std::vector<double> values;
  std::vector<double> vectors;
};
SmallEigen jacobi_eigen(std::vector<double> a, std::size_t n);

}  // namespace nlfem
