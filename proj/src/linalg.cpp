// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlfem/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nlfem/error.hpp"

namespace nlfem {

SymMatrix::SymMatrix(std::size_t order) : n_(order), data_(order * (order + 1) / 2, 0.0) {}

SymMatrix::SymMatrix(std::size_t order, std::vector<double> packed)
    : n_(order), data_(std::move(packed)) {
  if (data_.size() != n_ * (n_ + 1) / 2) {
    throw DomainError("packed storage size does not match matrix order");
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw DomainError("non-finite matrix entry");
  }
}

SymMatrix SymMatrix::identity(std::size_t order) {
  SymMatrix m(order);
  for (std::size_t i = 0; i < order; ++i) m.at(i, i) = 1.0;
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  SymMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.at(i, i) = diag[i];
  return m;
}

std::vector<double> SymMatrix::row_major_upper() const {
  std::vector<double> out;
  out.reserve(data_.size());
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j) out.push_back((*this)(i, j));
  return out;
}

SymMatrix SymMatrix::from_row_major_upper(std::size_t order, std::span<const double> values) {
  if (values.size() != order * (order + 1) / 2) {
    throw DomainError("row-major packed size does not match matrix order");
  }
  SymMatrix m(order);
  std::size_t k = 0;
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = i; j < order; ++j) m.at(i, j) = values[k++];
  return m;
}

std::vector<double> SymMatrix::multiply(std::span<const double> x) const {
  if (x.size() != n_) throw DomainError("matvec dimension mismatch");
  std::vector<double> y(n_, 0.0);
  // Row i of the lower triangle is contiguous: use it both as row i and as
  // column i of the strict upper part.
  for (std::size_t i = 0; i < n_; ++i) {
    const double* row = data_.data() + i * (i + 1) / 2;
    double acc = 0.0;
    const double xi = x[i];
    for (std::size_t j = 0; j < i; ++j) {
      acc += row[j] * x[j];
      y[j] += row[j] * xi;
    }
    y[i] += acc + row[i] * xi;
  }
  return y;
}

double SymMatrix::bilinear(std::span<const double> x, std::span<const double> y) const {
  return dot(x, multiply(y));
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  if (other.n_ != n_) throw DomainError("matrix order mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double a) {
  for (double& v : data_) v *= a;
  return *this;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("dot dimension mismatch");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

Cholesky::Cholesky(const SymMatrix& a) : n_(a.order()), l_(a.packed()) {
  for (std::size_t i = 0; i < n_; ++i) {
    double* row_i = l_.data() + i * (i + 1) / 2;
    for (std::size_t j = 0; j <= i; ++j) {
      const double* row_j = l_.data() + j * (j + 1) / 2;
      double sum = row_i[j];
      for (std::size_t k = 0; k < j; ++k) sum -= row_i[k] * row_j[k];
      if (j < i) {
        row_i[j] = sum / row_j[j];
      } else {
        if (!(sum > 0.0)) {
          throw IndefiniteError("matrix is not positive definite", i);
        }
        row_i[i] = std::sqrt(sum);
      }
    }
  }
}

void Cholesky::forward(std::span<double> x) const {
  for (std::size_t i = 0; i < n_; ++i) {
    const double* row = l_.data() + i * (i + 1) / 2;
    double sum = x[i];
    for (std::size_t k = 0; k < i; ++k) sum -= row[k] * x[k];
    x[i] = sum / row[i];
  }
}

void Cholesky::backward(std::span<double> x) const {
  for (std::size_t ii = n_; ii-- > 0;) {
    const double* row = l_.data() + ii * (ii + 1) / 2;
    x[ii] /= row[ii];
    const double xi = x[ii];
    for (std::size_t k = 0; k < ii; ++k) x[k] -= row[k] * xi;
  }
}

std::vector<double> Cholesky::solve(std::span<const double> b) const {
  if (b.size() != n_) throw DomainError("solve dimension mismatch");
  std::vector<double> x(b.begin(), b.end());
  forward(x);
  backward(x);
  return x;
}

SmallEigen jacobi_eigen(std::vector<double> a, std::size_t n) {
  if (a.size() != n * n) throw DomainError("jacobi_eigen: size mismatch");
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
    return s;
  };
  double scale = 0.0;
  for (double x : a) scale += x * x;

  for (int sweep = 0; sweep < 100 && off_norm() > 1e-30 * scale; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });
  SmallEigen out;
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a[order[c] * n + order[c]];
    for (std::size_t r = 0; r < n; ++r) out.vectors[r * n + c] = v[r * n + order[c]];
  }
  return out;
}

}  // namespace nlfem
