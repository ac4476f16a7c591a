// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nlfem/variational.hpp"

namespace nlfem {

struct SolveReport {
  FemFunction solution;
  int iterations = 0;
  double final_gradient_norm = 0.0;  // H-norm
  double energy = 0.0;
  double wall_time = 0.0;  // seconds
};

/// S u = b, b_i = int f phi_i.
FemFunction solve_linear(const GramPair& gram, const Potential& f);
/// Same with a precomputed load vector.
FemFunction solve_linear(const GramPair& gram, const std::vector<double>& load);
std::vector<double> load_vector(const GramPair& gram, const Potential& f);

/// Nehari-projected H-gradient descent with Armijo backtracking; stops when
/// the H-norm of the gradient at the projected iterate is <= tol.
SolveReport mountain_pass(const ProblemSpec& spec, const FemFunction& u0, double tol = 1e-2,
                          int max_iter = 2000);

/// Same loop on the nodal Nehari set; u0 must change sign.
SolveReport modified_mountain_pass(const ProblemSpec& spec, const FemFunction& u0,
                                   double tol = 1e-2, int max_iter = 2000);

}  // namespace nlfem
