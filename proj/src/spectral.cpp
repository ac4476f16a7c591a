// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlfem/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "nlfem/error.hpp"

namespace nlfem {

namespace {

using Block = std::vector<std::vector<double>>;  // columns

// Small dense symmetric generalized problem A c = theta B c; returns values
// ascending and B-orthonormal vectors (column-major in `vecs`).
void reduced_eigen(const std::vector<double>& a, const std::vector<double>& b, std::size_t m,
                   std::vector<double>& vals, std::vector<std::vector<double>>& vecs) {
  SymMatrix bs(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= i; ++j) bs.at(i, j) = 0.5 * (b[i * m + j] + b[j * m + i]);
  const Cholesky chol(bs);
  // C = L^{-1} A L^{-T}.
  std::vector<double> tmp(m * m), c(m * m);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> col(m);
    for (std::size_t i = 0; i < m; ++i) col[i] = 0.5 * (a[i * m + j] + a[j * m + i]);
    chol.forward(col);
    for (std::size_t i = 0; i < m; ++i) tmp[i * m + j] = col[i];
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> row(tmp.begin() + static_cast<long>(i * m), tmp.begin() + static_cast<long>((i + 1) * m));
    chol.forward(row);
    for (std::size_t j = 0; j < m; ++j) c[i * m + j] = row[j];
  }
  const SmallEigen eig = jacobi_eigen(c, m);
  vals = eig.values;
  vecs.assign(m, std::vector<double>(m));
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<double> z(m);
    for (std::size_t i = 0; i < m; ++i) z[i] = eig.vectors[i * m + k];
    chol.backward(z);
    vecs[k] = z;
  }
}

}  // namespace

EigenReport smallest_eigenpairs(const GramPair& gram, std::size_t k, double tol, int max_iter) {
  const std::size_t n = gram.size();
  if (k == 0 || k > n) throw DomainError("requested eigenpair count must be in [1, n]");
  if (!(tol > 0.0)) throw DomainError("eigen tolerance must be positive");
  const std::size_t b = std::min(k + 2, n);
  const Cholesky& sf = gram.stiffness_factor();
  const SymMatrix& S = gram.S();
  const SymMatrix& M = gram.M();

  std::mt19937 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Block X(b, std::vector<double>(n));
  for (auto& col : X)
    for (double& v : col) v = dist(rng);

  std::vector<double> theta;
  std::vector<double> worst(k, 0.0);
  for (int it = 1; it <= max_iter; ++it) {
    Block MX(b), Y(b);
    for (std::size_t j = 0; j < b; ++j) {
      MX[j] = M.multiply(X[j]);
      Y[j] = sf.solve(MX[j]);
    }
    std::vector<double> A(b * b), B(b * b);
    for (std::size_t i = 0; i < b; ++i) {
      const auto MY = M.multiply(Y[i]);
      for (std::size_t j = 0; j < b; ++j) {
        A[i * b + j] = dot(Y[j], MX[i]);
        B[i * b + j] = dot(Y[j], MY);
      }
    }
    std::vector<std::vector<double>> C;
    reduced_eigen(A, B, b, theta, C);
    for (std::size_t j = 0; j < b; ++j) {
      std::vector<double> x(n, 0.0);
      for (std::size_t i = 0; i < b; ++i)
        for (std::size_t r = 0; r < n; ++r) x[r] += C[j][i] * Y[i][r];
      X[j] = std::move(x);
    }
    bool done = true;
    for (std::size_t j = 0; j < k; ++j) {
      const auto sx = S.multiply(X[j]);
      const auto mx = M.multiply(X[j]);
      double r = 0.0;
      for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::abs(sx[i] - theta[j] * mx[i]));
      worst[j] = r;
      if (r > tol * norm_inf(sx)) done = false;
    }
    if (done) {
      EigenReport rep;
      rep.iterations = it;
      for (std::size_t j = 0; j < k; ++j) {
        // Renormalize in M against roundoff.
        const double nrm = std::sqrt(M.bilinear(X[j], X[j]));
        for (double& v : X[j]) v /= nrm;
        rep.pairs.push_back({theta[j], FemFunction(gram.space(), X[j]), worst[j]});
        const bool has_next = j + 1 < b;
        rep.near_degenerate.push_back(has_next &&
                                      (theta[j + 1] - theta[j]) / std::abs(theta[j]) < 1e-6);
      }
      return rep;
    }
  }
  double r = 0.0;
  for (double w : worst) r = std::max(r, w);
  throw ConvergenceError("subspace iteration did not converge in " + std::to_string(max_iter) +
                             " iterations",
                         r, X.front());
}

EigenPair sign_normalize(EigenPair pair) {
  const auto& c = pair.phi.coefficients();
  if (c.empty()) return pair;
  const auto it = std::max_element(c.begin(), c.end(),
                                    [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (*it < 0.0) pair.phi *= -1.0;
  return pair;
}

}  // namespace nlfem
