// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "nlfem/assembly.hpp"

namespace nlfem {

struct EigenPair {
  double lambda = 0.0;
  FemFunction phi;  // M-normalized
  double residual = 0.0;  // max-norm of S phi - lambda M phi
};

struct EigenReport {
  std::vector<EigenPair> pairs;  // ascending
  /// near_degenerate[i]: relative gap to the next Ritz value below 1e-6.
  std::vector<bool> near_degenerate;
  int iterations = 0;
};

/// k smallest eigenpairs of S x = lambda M x by blocked inverse subspace
/// iteration (block k+2, deterministic start).
EigenReport smallest_eigenpairs(const GramPair& gram, std::size_t k, double tol = 1e-10,
                                int max_iter = 500);

/// Flips the sign so that the coefficient of largest magnitude is positive.
EigenPair sign_normalize(EigenPair pair);

}  // namespace nlfem
