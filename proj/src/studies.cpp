// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlfem/studies.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "nlfem/error.hpp"
#include "nlfem/quadrature.hpp"

namespace nlfem {

double explicit_solution_constant(int dim, double s) {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("order must lie in (0,1]");
  const double n2 = 0.5 * dim;
  return std::pow(2.0, -2.0 * s) * std::tgamma(n2) / (std::tgamma(n2 + s) * std::tgamma(1.0 + s));
}

double explicit_solution(int dim, double s, double radius, const Point2& x) {
  const double r2 = dim == 1 ? x[0] * x[0] : x[0] * x[0] + x[1] * x[1];
  const double d = radius * radius - r2;
  if (d <= 0.0) return 0.0;
  return explicit_solution_constant(dim, s) * std::pow(d, s);
}

double explicit_solution_integral_1d(double s, double radius) {
  return explicit_solution_constant(1, s) * std::pow(radius, 2.0 * s + 1.0) *
         std::sqrt(std::numbers::pi) * std::tgamma(s + 1.0) / std::tgamma(s + 1.5);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope fit needs two or more points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("slope fit needs positive data");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

double l2_error_1d(const FemFunction& u, double s) {
  const auto& mesh = std::get<Mesh1D>(u.space()->mesh());
  const auto& x = mesh.nodes();
  const auto vals = u.vertex_values();
  const double R = 0.5 * (mesh.right() - mesh.left());
  const double mid = 0.5 * (mesh.right() + mesh.left());
  const GaussRule& g = gauss_legendre(10);
  double total = 0.0;
  auto panel = [&](std::size_t e, double a, double b) {
    const double h = x[e + 1] - x[e];
    for (std::size_t k = 0; k < g.x.size(); ++k) {
      const double t = a + (b - a) * g.x[k];
      const double uh = vals[e] + (vals[e + 1] - vals[e]) * (t - x[e]) / h;
      const double d = uh - explicit_solution(1, s, R, {t - mid, 0.0});
      total += (b - a) * g.w[k] * d * d;
    }
  };
  const std::size_t ne = mesh.element_count();
  for (std::size_t e = 0; e < ne; ++e) {
    const double a = x[e], b = x[e + 1];
    if (e == 0 || e + 1 == ne) {
      // Geometric panels toward the boundary point where u* is singular.
      double lo = a, hi = b;
      const bool left = e == 0;
      double len = b - a;
      for (int level = 0; level < 40; ++level) {
        len *= 0.15;
        if (left) {
          panel(e, a + len, hi);
          hi = a + len;
        } else {
          panel(e, lo, b - len);
          lo = b - len;
        }
      }
      if (left) panel(e, a, hi);
      else panel(e, lo, b);
    } else {
      panel(e, a, b);
    }
  }
  return std::sqrt(total);
}

ConvergenceStudy convergence_study(double s, const std::vector<std::size_t>& sizes) {
  if (sizes.size() < 2) throw DomainError("convergence study needs at least two mesh sizes");
  ConvergenceStudy out;
  out.s = s;
  const double total = explicit_solution_integral_1d(s, 1.0);
  const Potential one = [](const Point2&) { return 1.0; };
  std::vector<double> ms, he, le;
  for (std::size_t m : sizes) {
    auto space = make_space(make_interval_mesh(-1.0, 1.0, m));
    const GramPair gram = assemble(space, s);
    const auto b = load_vector(gram, one);
    const FemFunction u = solve_linear(gram, b);
    ConvergenceRow row;
    row.nodes = m;
    row.h_error = std::sqrt(std::max(0.0, total - dot(b, u.coefficients())));
    row.l2_error = l2_error_1d(u, s);
    row.center_value = u.value_at({0.0, 0.0});
    out.rows.push_back(row);
    ms.push_back(static_cast<double>(m));
    he.push_back(row.h_error);
    le.push_back(row.l2_error);
  }
  out.h_slope = loglog_slope(ms, he);
  out.l2_slope = loglog_slope(ms, le);
  return out;
}

std::string ConvergenceStudy::csv() const {
  std::ostringstream os;
  os << "nodes,h_error,l2_error,center_value\n" << std::setprecision(12);
  for (const auto& r : rows) os << r.nodes << ',' << r.h_error << ',' << r.l2_error << ',' << r.center_value << '\n';
  return os.str();
}

namespace {

Point2 apply(Transform t, int dim, double mid, const Point2& x) {
  if (dim == 1) {
    if (t != Transform::reflect_x) throw DomainError("1D meshes only support reflect_x");
    return {2.0 * mid - x[0], 0.0};
  }
  switch (t) {
    case Transform::reflect_x: return {-x[0], x[1]};
    case Transform::reflect_y: return {x[0], -x[1]};
    case Transform::rotate_90: return {-x[1], x[0]};
  }
  return x;
}

}  // namespace

SymmetryReport symmetry_report(const GramPair& gram, const FemFunction& u, Transform t,
                               bool interpolate) {
  return symmetry_report(gram.M(), u, t, interpolate);
}

SymmetryReport symmetry_report(const SymMatrix& mass, const FemFunction& u, Transform t,
                               bool interpolate) {
  if (u.size() != mass.order()) throw DomainError("function does not live on the Gram pair's mesh");
  const FemSpace& space = *u.space();
  const int dim = space.dimension();
  double mid = 0.0, scale = 0.0;
  if (dim == 1) {
    const auto& m = std::get<Mesh1D>(space.mesh());
    mid = 0.5 * (m.left() + m.right());
    scale = m.right() - m.left();
  } else {
    for (const auto& v : std::get<TriMesh>(space.mesh()).vertices())
      scale = std::max({scale, std::abs(v[0]), std::abs(v[1])});
  }
  std::vector<double> ru(u.size());
  SymmetryReport rep;
  rep.interpolated = interpolate;
  if (interpolate) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      ru[i] = u.value_at(apply(t, dim, mid, space.vertex_position(space.vertex_of(i))));
    }
  } else {
    // Sort vertices so the permutation lookup is a binary search.
    std::vector<std::size_t> order(space.vertex_count());
    for (std::size_t v = 0; v < order.size(); ++v) order[v] = v;
    auto pos = [&](std::size_t v) { return space.vertex_position(v); };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pos(a)[0] < pos(b)[0]; });
    const double tol = 1e-12 * std::max(scale, 1.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
      const Point2 y = apply(t, dim, mid, pos(space.vertex_of(i)));
      auto lo = std::lower_bound(order.begin(), order.end(), y[0] - tol,
                                 [&](std::size_t v, double val) { return pos(v)[0] < val; });
      long match = -1;
      for (auto it = lo; it != order.end() && pos(*it)[0] <= y[0] + tol; ++it) {
        if (std::abs(pos(*it)[1] - y[1]) <= tol) {
          match = static_cast<long>(*it);
          break;
        }
      }
      if (match < 0 || space.dof_of(static_cast<std::size_t>(match)) < 0) {
        throw DomainError("mesh is not invariant under the requested transform");
      }
      ru[i] = u[static_cast<std::size_t>(space.dof_of(static_cast<std::size_t>(match)))];
    }
  }
  const double nu = std::sqrt(mass.bilinear(u.coefficients(), u.coefficients()));
  if (!(nu > 0.0)) throw DomainError("symmetry of the zero function");
  std::vector<double> dp(u.size()), dm(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    dp[i] = ru[i] - u[i];
    dm[i] = ru[i] + u[i];
  }
  rep.rho_plus = std::sqrt(std::max(0.0, mass.bilinear(dp, dp))) / nu;
  rep.rho_minus = std::sqrt(std::max(0.0, mass.bilinear(dm, dm))) / nu;
  rep.symmetric = rep.rho_plus <= rep.rho_minus;
  rep.residual = std::min(rep.rho_plus, rep.rho_minus);
  return rep;
}

TableRow table_row(double s, double p, std::size_t nodes, double tol, int max_iter) {
  auto space = make_space(make_interval_mesh(-1.0, 1.0, nodes));
  const ProblemSpec spec(assemble(space, s), p);
  const auto u1 = FemFunction::interpolate(space, [](const Point2& x) { return std::cos(std::numbers::pi * x[0] / 2.0); });
  const auto u2 = FemFunction::interpolate(space, [](const Point2& x) { return std::sin(std::numbers::pi * x[0]); });
  const SolveReport g = mountain_pass(spec, u1, tol, max_iter);
  const SolveReport n = modified_mountain_pass(spec, u2, tol, max_iter);
  TableRow row;
  row.s = s;
  row.p = p;
  row.ground_energy = g.energy;
  row.ground_max = g.solution.max_value();
  row.nodal_energy = n.energy;
  row.nodal_max = n.solution.max_value();
  row.nodal_min = n.solution.min_value();
  row.ground_iterations = g.iterations;
  row.nodal_iterations = n.iterations;
  return row;
}

}  // namespace nlfem
