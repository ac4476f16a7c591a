// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>

#include "nlfem/assembly.hpp"

namespace nlfem {

/// 2N/(N-2s) when N > 2s, +inf otherwise.
double critical_exponent(int dim, double s);

/// Energy 1/2 u^T S u - (lambda/p) int |u|^p on a Gram pair.
class ProblemSpec {
 public:
  ProblemSpec(GramPair gram, double p, double lambda = 1.0);

  const GramPair& gram() const { return gram_; }
  double p() const { return p_; }
  double lambda() const { return lambda_; }

 private:
  GramPair gram_;
  double p_;
  double lambda_;
};

double energy(const ProblemSpec& spec, const FemFunction& u);
/// Load vector b_i = lambda int |u|^{p-2} u phi_i.
std::vector<double> nonlinear_load(const ProblemSpec& spec, const FemFunction& u);
/// E'(w)[v].
double derivative(const ProblemSpec& spec, const FemFunction& w, const FemFunction& v);
/// H-gradient u - S^{-1} b(u).
FemFunction gradient(const ProblemSpec& spec, const FemFunction& u);
/// Norm induced by S.
double h_norm(const GramPair& gram, const FemFunction& u);

struct NehariProjection {
  double t = 1.0;
  FemFunction u;
};
NehariProjection nehari_project(const ProblemSpec& spec, const FemFunction& u);

struct NodalProjection {
  double t_plus = 1.0;
  double t_minus = 1.0;
  FemFunction w;
  int iterations = 0;
};
/// Solves E'(t+ u+ + t- u-)[u+-] = 0 for t+- > 0 by damped Newton in
/// log variables. Without `start`, each part's own Nehari scaling is used.
NodalProjection nodal_nehari_project(const ProblemSpec& spec, const FemFunction& u,
                                     std::optional<std::array<double, 2>> start = std::nullopt);

/// lambda^{1/(p-2)} u.
FemFunction rescale_solution(const FemFunction& u, double lambda, double p);

}  // namespace nlfem
