// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <functional>
#include <limits>
#include <vector>

#include "nlfem/kernel.hpp"
#include "nlfem/mesh.hpp"

namespace nlfem {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Gauss-Legendre nodes and weights on [0,1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
/// Cached; 1 <= n <= 64.
const GaussRule& gauss_legendre(int n);

/// Rule on the reference triangle (0,0),(1,0),(0,1); weights sum to 1/2.
struct TriangleRule {
  std::vector<Point2> xi;
  std::vector<double> w;
};
/// Collapsed (Duffy-Stroud) tensor rule with n x n points, exact for degree 2n-2.
TriangleRule collapsed_triangle_rule(int n);

/// sum_{i,j<=2} q_ij (x - x0)^i (y - y0)^j.
struct BivariatePoly {
  std::array<double, 9> q{};
  double x0 = 0.0;
  double y0 = 0.0;

  double& operator()(int i, int j) { return q[3 * i + j]; }
  double operator()(int i, int j) const { return q[3 * i + j]; }
  double evaluate(double x, double y) const;
  /// q(y, x), with the origin swapped accordingly.
  BivariatePoly swapped() const;
  static BivariatePoly constant(double v);
  /// (alpha x + beta)(gamma y + delta) style products of affine factors:
  /// returns (a0 + a1 x)(b0 + b1 y).
  static BivariatePoly product(double a0, double a1, double b0, double b1);
};

/// Integral over (a,b) x (c,d) of q(x,y) (y - x)^(-gamma), for a < b <= c < d.
/// a = -inf or d = +inf is allowed when q does not depend on the unbounded
/// variable. Touching ranges (b == c) require q to vanish at (b,b) when the
/// constant term would make the integral diverge.
double elem_integral_1d(double a, double b, double c, double d, double gamma,
                        const BivariatePoly& q);

/// Integral over (a,b)^2 of q(x,y) |y - x|^(-gamma); q must vanish on the
/// diagonal to the order the exponent demands.
double self_integral_1d(double a, double b, double gamma, const BivariatePoly& q);

/// Tensor Gauss rule in the (u,v) variables of the generalized Duffy map
/// x = y + u^beta (q - y) + u^beta v (p - q), beta = 1/(2(1-s)).
class DuffyRule {
 public:
  explicit DuffyRule(double s, int order = 8);

  double order_s() const { return s_; }
  double beta() const { return beta_; }
  int order() const { return n_; }
  const GaussRule& rule() const { return rule_; }

 private:
  double s_;
  double beta_;
  int n_;
  GaussRule rule_;
};

/// Integral over the right triangle (y, q, p), right angle at q, of
/// f(e) |x - y|^(-2s), where e = (x - y)/|x - y|.
double duffy_integrate(const Point2& y, const Point2& q, const Point2& p, const DuffyRule& rule,
                       const std::function<double(const Point2&)>& f);

/// Same as duffy_integrate with f(e) = (e_x^2, e_x e_y, e_y^2).
std::array<double, 3> duffy_moments(const Point2& y, const Point2& q, const Point2& p,
                                    const DuffyRule& rule);

struct SignedRightTriangle {
  double sign = 1.0;
  Point2 y;
  Point2 q;  // right-angle vertex
  Point2 p;
};

/// Writes the triangle (a,b,c) as a signed sum of right triangles with a
/// corner at y, which must lie on the boundary of the triangle.
std::vector<SignedRightTriangle> split_right_triangles(const std::array<Point2, 3>& tri,
                                                       const Point2& y);

/// area/3 * sum of g at the edge midpoints.
double edge_midpoint_rule(const std::array<Point2, 3>& tri,
                          const std::function<double(const Point2&)>& g);

/// Integral of K(x - y) over y outside (a,b), for a < x < b.
double exterior_integral_1d(double x, double a, double b, const FractionalKernel& kernel);

/// Integral of K(x - y) over y outside the triangulated region: polar cells
/// over B(x,R) minus the region, plus the analytic tail beyond R. The region
/// must be star-shaped with respect to x.
double exterior_integral_2d(const Point2& x, const TriMesh& mesh, const FractionalKernel& kernel,
                            double radius, int annulus_level = 2);

}  // namespace nlfem
