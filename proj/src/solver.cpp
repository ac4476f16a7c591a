// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlfem/solver.hpp"

#include <chrono>
#include <limits>
#include <cmath>
#include <string>

#include "nlfem/error.hpp"
#include "text.hpp"

namespace nlfem {

std::vector<double> load_vector(const GramPair& gram, const Potential& f) {
  if (!f) throw DomainError("empty source function");
  const auto& quad = gram.space()->quadrature();
  std::vector<double> b(gram.size(), 0.0);
  for (const auto& qp : quad) {
    const double fv = f(qp.x) * qp.weight;
    for (int j = 0; j < 3; ++j) {
      if (qp.dof[j] >= 0) b[static_cast<std::size_t>(qp.dof[j])] += fv * qp.value[j];
    }
  }
  return b;
}

FemFunction solve_linear(const GramPair& gram, const std::vector<double>& load) {
  if (load.size() != gram.size()) throw DomainError("load vector size mismatch");
  return FemFunction(gram.space(), gram.stiffness_factor().solve(load));
}

FemFunction solve_linear(const GramPair& gram, const Potential& f) {
  return solve_linear(gram, load_vector(gram, f));
}

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxHalvings = 40;
constexpr double kSlack = 1e-12;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool sign_changing(const FemFunction& u) { return u.max_value() > 0.0 && u.min_value() < 0.0; }

// Shared descent loop; `project` maps a candidate onto the constraint set and
// returns false when the candidate is not admissible.
template <typename Project>
SolveReport descend(const ProblemSpec& spec, FemFunction u, double tol, int max_iter,
                    Project&& project, bool nodal) {
  if (!(tol > 0.0)) throw DomainError("solver tolerance must be positive");
  if (max_iter < 1) throw DomainError("max_iter must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  const GramPair& gram = spec.gram();
  double e = energy(spec, u);
  FemFunction best = u;
  double best_norm = std::numeric_limits<double>::infinity();
  for (int it = 0;; ++it) {
    const FemFunction g = gradient(spec, u);
    const double gn = h_norm(gram, g);
    if (gn < best_norm) {
      best_norm = gn;
      best = u;
    }
    if (gn <= tol) {
      return SolveReport{u, it, gn, e, seconds_since(t0)};
    }
    if (it >= max_iter) {
      throw ConvergenceError("descent did not reach tolerance " + detail::num(tol) + " in " +
                                 std::to_string(max_iter) + " iterations (gradient norm " +
                                 detail::num(gn) + ")",
                             best_norm, best.coefficients());
    }
    double alpha = 1.0;
    bool accepted = false;
    bool any_admissible = false;
    FemFunction fallback;
    double fallback_e = 0.0;
    bool have_fallback = false;
    for (int h = 0; h <= kMaxHalvings; ++h, alpha *= 0.5) {
      FemFunction v = u;
      for (std::size_t i = 0; i < v.size(); ++i) v.coefficients()[i] -= alpha * g[i];
      FemFunction w;
      if (!project(v, w)) continue;
      any_admissible = true;
      const double ew = energy(spec, w);
      if (ew <= e - kArmijo * alpha * gn * gn) {
        u = std::move(w);
        e = ew;
        accepted = true;
        break;
      }
      if (ew <= e + kSlack * std::max(1.0, std::abs(e)) && (!have_fallback || ew < fallback_e)) {
        fallback = std::move(w);
        fallback_e = ew;
        have_fallback = true;
      }
    }
    if (accepted) continue;
    if (nodal && !any_admissible) {
      throw DegenerationError("every step along the gradient lost the sign change");
    }
    if (!have_fallback) {
      throw ConvergenceError("line search failed to decrease the energy", best_norm,
                             best.coefficients());
    }
    u = std::move(fallback);
    e = fallback_e;
  }
}

}  // namespace

SolveReport mountain_pass(const ProblemSpec& spec, const FemFunction& u0, double tol, int max_iter) {
  if (u0.is_zero()) throw DomainError("mountain pass needs a nonzero initial function");
  auto project = [&spec](const FemFunction& v, FemFunction& out) {
    if (v.is_zero()) return false;
    out = nehari_project(spec, v).u;
    return true;
  };
  return descend(spec, nehari_project(spec, u0).u, tol, max_iter, project, false);
}

SolveReport modified_mountain_pass(const ProblemSpec& spec, const FemFunction& u0, double tol,
                                   int max_iter) {
  if (!sign_changing(u0)) throw DomainError("modified mountain pass needs a sign-changing start");
  auto project = [&spec](const FemFunction& v, FemFunction& out) {
    if (!sign_changing(v)) return false;
    try {
      out = nodal_nehari_project(spec, v).w;
    } catch (const ConvergenceError&) {
      return false;
    }
    return true;
  };
  return descend(spec, nodal_nehari_project(spec, u0).w, tol, max_iter, project, true);
}

}  // namespace nlfem
