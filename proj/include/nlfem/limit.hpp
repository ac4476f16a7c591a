// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "nlfem/solver.hpp"
#include "nlfem/spectral.hpp"

namespace nlfem {

/// 1/2 int (u^2 - u^2 ln u^2), with 0 ln 0 = 0.
double reduced_energy(const GramPair& gram, const FemFunction& u);
/// exp(-int v^2 ln|v| / int v^2); both integrals use the same quadrature.
double reduced_nehari_scale(const GramPair& gram, const FemFunction& v);
/// int v^2 ln|v| (the reduced Nehari constraint).
double reduced_constraint(const FemFunction& v);
/// int v^2 with the quadrature of the reduced functional.
double quad_l2_squared(const FemFunction& v);
/// int u ln|u| v.
double log_moment(const FemFunction& u, const FemFunction& v);

/// Principal angle (radians) in the M inner product between u and the span
/// of an M-orthonormal basis.
double subspace_angle(const GramPair& gram, const FemFunction& u, const std::vector<FemFunction>& basis);

/// Limit residual max_v |int u ln|u| v| over a basis.
double limit_residual(const FemFunction& u, const std::vector<FemFunction>& basis);

struct LimitOptions {
  double tol = 1e-6;
  int max_iter = 2000;
  double eigen_tol = 1e-10;
};

struct LimitReport {
  int index = 1;
  double lambda = 0.0;
  std::size_t eigenspace_dim = 1;
  std::vector<double> p_sequence;
  std::vector<double> angles;  // radians
  std::vector<double> energies;
  std::vector<double> limit_residuals;
  std::vector<double> norms;  // H-norms of the solutions
  std::vector<FemFunction> solutions;
  /// Residual of t_v v for the basis vector v when the eigenspace is one
  /// dimensional (the direct reduced minimizer); NaN otherwise.
  double direct_residual = 0.0;
  FemFunction direct_minimizer;
  std::vector<FemFunction> basis;

  std::string csv() const;
};

/// Solves the lambda_i-scaled problems along a decreasing p sequence and
/// records the approach to the eigenspace E_i (i = 1: mountain pass from u0,
/// i = 2: modified mountain pass from u0).
LimitReport limit_study(const GramPair& gram, int index, const std::vector<double>& p_sequence,
                        const FemFunction& u0, const LimitOptions& opts = {});

}  // namespace nlfem
