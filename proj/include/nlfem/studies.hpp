// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "nlfem/solver.hpp"

namespace nlfem {

/// u*(x) = C (R^2 - |x|^2)_+^s solves (-Delta)^s u = 1 on B(0,R), with
/// C = 2^{-2s} Gamma(N/2) / (Gamma(N/2 + s) Gamma(1 + s)).
double explicit_solution_constant(int dim, double s);
double explicit_solution(int dim, double s, double radius, const Point2& x);
/// int_{-R}^{R} u*(x) dx in 1D.
double explicit_solution_integral_1d(double s, double radius);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ConvergenceRow {
  std::size_t nodes = 0;
  double h_error = 0.0;
  double l2_error = 0.0;
  double center_value = 0.0;
};

struct ConvergenceStudy {
  double s = 0.0;
  std::vector<ConvergenceRow> rows;
  double h_slope = 0.0;
  double l2_slope = 0.0;
  std::string csv() const;
};

/// Solves (-Delta)^s u = 1 on (-1,1) for each node count and measures the
/// error against u*: the H error through the Galerkin identity
/// ||u* - u_M||^2 = int u* - b^T u_M, the L2 error by graded quadrature.
ConvergenceStudy convergence_study(double s, const std::vector<std::size_t>& sizes);

/// |u_h - u*|_2 on (-1,1).
double l2_error_1d(const FemFunction& u, double s);

enum class Transform { reflect_x, reflect_y, rotate_90 };

struct SymmetryReport {
  double rho_plus = 0.0;   // ||u o R - u|| / ||u||
  double rho_minus = 0.0;  // ||u o R + u|| / ||u||
  bool symmetric = true;   // rho_plus <= rho_minus
  double residual = 0.0;   // min(rho_plus, rho_minus)
  bool interpolated = false;
};

/// Symmetry diagnostic in the M-norm. The transform must map the mesh onto
/// itself (node permutation within 1e-12) unless `interpolate` is set, in
/// which case u o R is the nodal interpolant of the point evaluations.
/// 1D reflect_x is the reflection about the interval midpoint.
SymmetryReport symmetry_report(const SymMatrix& mass, const FemFunction& u, Transform t,
                               bool interpolate = false);
SymmetryReport symmetry_report(const GramPair& gram, const FemFunction& u, Transform t,
                               bool interpolate = false);

struct TableRow {
  double s = 0.0;
  double p = 0.0;
  double ground_energy = 0.0;
  double ground_max = 0.0;
  double nodal_energy = 0.0;
  double nodal_max = 0.0;
  double nodal_min = 0.0;
  int ground_iterations = 0;
  int nodal_iterations = 0;
};

/// Ground state from cos(pi x / 2) and nodal solution from sin(pi x) on
/// (-1,1), V = 0.
TableRow table_row(double s, double p, std::size_t nodes, double tol = 1e-2, int max_iter = 2000);

}  // namespace nlfem
