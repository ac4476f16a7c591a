// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlfem/limit.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "nlfem/error.hpp"
#include "text.hpp"

namespace nlfem {

namespace {

constexpr double kLogCutoff = 1e-14;

double xlogx_sq(double v) {
  const double a = std::abs(v);
  return a < kLogCutoff ? 0.0 : v * v * std::log(a);
}

}  // namespace

double quad_l2_squared(const FemFunction& v) {
  const auto vals = v.quadrature_values();
  const auto& quad = v.space()->quadrature();
  double s = 0.0;
  for (std::size_t k = 0; k < vals.size(); ++k) s += quad[k].weight * vals[k] * vals[k];
  return s;
}

double reduced_constraint(const FemFunction& v) {
  const auto vals = v.quadrature_values();
  const auto& quad = v.space()->quadrature();
  double s = 0.0;
  for (std::size_t k = 0; k < vals.size(); ++k) s += quad[k].weight * xlogx_sq(vals[k]);
  return s;
}

double reduced_energy(const GramPair& gram, const FemFunction& u) {
  if (u.size() != gram.size()) throw DomainError("function does not live on the Gram pair's mesh");
  // u^2 ln u^2 = 2 u^2 ln|u|.
  return 0.5 * (quad_l2_squared(u) - 2.0 * reduced_constraint(u));
}

double reduced_nehari_scale(const GramPair& gram, const FemFunction& v) {
  if (v.size() != gram.size()) throw DomainError("function does not live on the Gram pair's mesh");
  const double n2 = quad_l2_squared(v);
  if (v.is_zero() || !(n2 > 0.0)) throw DomainError("reduced Nehari scale of the zero function");
  return std::exp(-reduced_constraint(v) / n2);
}

double log_moment(const FemFunction& u, const FemFunction& v) {
  const auto uv = u.quadrature_values();
  const auto vv = v.quadrature_values();
  const auto& quad = u.space()->quadrature();
  double s = 0.0;
  for (std::size_t k = 0; k < uv.size(); ++k) {
    const double a = std::abs(uv[k]);
    if (a < kLogCutoff) continue;
    s += quad[k].weight * uv[k] * std::log(a) * vv[k];
  }
  return s;
}

double subspace_angle(const GramPair& gram, const FemFunction& u, const std::vector<FemFunction>& basis) {
  const double nu = std::sqrt(l2_inner(gram, u, u));
  if (!(nu > 0.0)) throw DomainError("angle of the zero function");
  double proj2 = 0.0;
  for (const auto& b : basis) {
    const double c = l2_inner(gram, b, u);
    proj2 += c * c;
  }
  const double cosv = std::min(1.0, std::sqrt(proj2) / nu);
  // acos loses accuracy near 0; use the orthogonal remainder instead.
  const double sinv = std::sqrt(std::max(0.0, nu * nu - proj2)) / nu;
  return std::atan2(sinv, cosv);
}

double limit_residual(const FemFunction& u, const std::vector<FemFunction>& basis) {
  double r = 0.0;
  for (const auto& v : basis) r = std::max(r, std::abs(log_moment(u, v)));
  return r;
}

std::string LimitReport::csv() const {
  std::ostringstream os;
  os << "p,energy,angle_degrees,limit_residual\n";
  os << std::setprecision(12);
  for (std::size_t k = 0; k < p_sequence.size(); ++k) {
    os << p_sequence[k] << ',' << energies[k] << ',' << angles[k] * 180.0 / std::numbers::pi << ','
       << limit_residuals[k] << '\n';
  }
  return os.str();
}

LimitReport limit_study(const GramPair& gram, int index, const std::vector<double>& p_sequence,
                        const FemFunction& u0, const LimitOptions& opts) {
  if (index != 1 && index != 2) throw DomainError("limit study index must be 1 or 2");
  if (p_sequence.empty()) throw DomainError("empty exponent sequence");
  for (std::size_t k = 0; k < p_sequence.size(); ++k) {
    if (!(p_sequence[k] > 2.0)) throw DomainError("exponents must exceed 2");
    if (k > 0 && !(p_sequence[k] < p_sequence[k - 1])) {
      throw DomainError("exponent sequence must be strictly decreasing");
    }
  }
  // Enough pairs to detect a multiple lambda_2.
  const auto eig = smallest_eigenpairs(gram, std::min<std::size_t>(4, gram.size()), opts.eigen_tol);
  LimitReport rep;
  rep.index = index;
  rep.lambda = eig.pairs[index - 1].lambda;
  rep.basis.push_back(sign_normalize(eig.pairs[index - 1]).phi);
  for (std::size_t j = index; j < eig.pairs.size() && eig.near_degenerate[j - 1]; ++j) {
    rep.basis.push_back(eig.pairs[j].phi);
  }
  rep.eigenspace_dim = rep.basis.size();
  rep.p_sequence = p_sequence;

  for (double p : p_sequence) {
    const ProblemSpec spec(gram, p, rep.lambda);
    SolveReport sol;
    try {
      sol = index == 1 ? mountain_pass(spec, u0, opts.tol, opts.max_iter)
                       : modified_mountain_pass(spec, u0, opts.tol, opts.max_iter);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError(std::string(e.what()) + " at p = " + detail::num(p), e.residual(),
                             e.best_iterate());
    } catch (const DegenerationError& e) {
      throw DegenerationError(std::string(e.what()) + " at p = " + detail::num(p));
    }
    rep.angles.push_back(subspace_angle(gram, sol.solution, rep.basis));
    rep.energies.push_back(sol.energy);
    rep.limit_residuals.push_back(limit_residual(sol.solution, rep.basis));
    rep.norms.push_back(h_norm(gram, sol.solution));
    rep.solutions.push_back(std::move(sol.solution));
  }
  if (rep.eigenspace_dim == 1) {
    const FemFunction& v = rep.basis.front();
    rep.direct_minimizer = reduced_nehari_scale(gram, v) * v;
    rep.direct_residual = limit_residual(rep.direct_minimizer, rep.basis);
  } else {
    rep.direct_residual = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

}  // namespace nlfem
