// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlfem/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nlfem/error.hpp"

namespace nlfem {

namespace {

GaussRule build_gauss(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x[i] = 0.5 * (1.0 - z);
    r.x[n - 1 - i] = 0.5 * (1.0 + z);
    r.w[i] = r.w[n - 1 - i] = 0.5 * w;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.5;
  return r;
}

constexpr int kMaxGauss = 64;

double binom(int n, int k) {
  static constexpr double table[5][5] = {
      {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
  return table[n][k];
}

// Coefficients c[k][l] of sum c_kl X^k Y^l.
using Local = std::array<std::array<double, 3>, 3>;

// (alpha + sign*t)^i expanded in powers of t.
std::array<double, 3> shift_powers(double alpha, double sign, int i) {
  std::array<double, 3> out{};
  for (int k = 0; k <= i; ++k) out[k] = binom(i, k) * std::pow(alpha, i - k) * std::pow(sign, k);
  return out;
}

// q(x,y) with x = b - X, y = c + Y.
Local to_corner(const BivariatePoly& q, double b, double c) {
  Local out{};
  for (int i = 0; i <= 2; ++i) {
    const auto px = shift_powers(b - q.x0, -1.0, i);
    for (int j = 0; j <= 2; ++j) {
      const double qij = q(i, j);
      if (qij == 0.0) continue;
      const auto py = shift_powers(c - q.y0, 1.0, j);
      for (int k = 0; k <= i; ++k)
        for (int l = 0; l <= j; ++l) out[k][l] += qij * px[k] * py[l];
    }
  }
  return out;
}

Local transpose(const Local& c) {
  Local t{};
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) t[k][l] = c[l][k];
  return t;
}

constexpr double kLogTol = 1e-7;

// Antiderivative of w^j G_e(w), G_e(w) = w^{e+1}/(e+1) (ln w when e = -1).
double antiderivative(int j, double e, double w) {
  if (std::abs(e + 1.0) < kLogTol) {
    const double jp = j + 1.0;
    return std::pow(w, jp) * (std::log(w) / jp - 1.0 / (jp * jp));
  }
  const double pw = j + e + 2.0;
  if (std::abs(pw) < kLogTol) return std::log(w) / (e + 1.0);
  return std::pow(w, pw) / ((e + 1.0) * pw);
}

// Same, evaluated at w = 0; only called when the limit is finite.
double antiderivative_at_zero() { return 0.0; }

// Coefficients of (w - alpha)^k (w - beta)^n in powers of w (k, n <= 4).
std::array<double, 9> expand_two(double alpha, int k, double beta, int n) {
  std::array<double, 9> out{};
  const auto a = shift_powers(-alpha, 1.0, std::min(k, 2));
  std::array<double, 5> bb{};
  for (int m = 0; m <= n; ++m) bb[m] = binom(n, m) * std::pow(-beta, n - m);
  for (int i = 0; i <= k; ++i)
    for (int m = 0; m <= n; ++m) out[i + m] += a[i] * bb[m];
  return out;
}

// Closed form of int_0^A int_0^B X^k Y^l (X+Y+delta)^{-gamma} dY dX, delta >= 0.
// Returns false when the integral diverges (delta == 0 and k+l+2 <= gamma).
bool corner_monomial(int k, int l, double A, double B, double delta, double gamma, double& out) {
  if (delta == 0.0 && k + l + 2.0 - gamma <= kLogTol) return false;
  double total = 0.0;
  for (int m = 0; m <= l; ++m) {
    const double e = m - gamma;
    const double coef = binom(l, m) * ((l - m) % 2 == 0 ? 1.0 : -1.0);
    // Upper piece: w = X + delta + B, X^k (X+delta)^{l-m} = (w-(delta+B))^k (w-B)^{l-m}.
    const auto up = expand_two(delta + B, k, B, l - m);
    const double w1a = delta + B, w1b = delta + B + A;
    double upper = 0.0;
    for (int j = 0; j <= k + l - m; ++j) {
      if (up[j] == 0.0) continue;
      upper += up[j] * (antiderivative(j, e, w1b) - antiderivative(j, e, w1a));
    }
    // Lower piece: w = X + delta, X^k (X+delta)^{l-m} = (w-delta)^k w^{l-m}.
    const auto lo = expand_two(delta, k, 0.0, l - m);
    const double w0a = delta, w0b = delta + A;
    double lower = 0.0;
    for (int j = 0; j <= k + l - m; ++j) {
      if (lo[j] == 0.0) continue;
      const double at_a = w0a == 0.0 ? antiderivative_at_zero() : antiderivative(j, e, w0a);
      lower += lo[j] * (antiderivative(j, e, w0b) - at_a);
    }
    total += coef * (upper - lower);
  }
  out = total;
  return true;
}

// Geometric panels on [0, len] for an integrand with a singularity at -dist.
std::vector<double> panels(double len, double dist) {
  std::vector<double> cuts{0.0};
  double x = 0.0;
  while (x < len) {
    const double step = std::max(x + dist, 1e-300);
    x = std::min(len, x + step);
    cuts.push_back(x);
  }
  return cuts;
}

int panel_order(double len, double dist) {
  const double t = 1.0 + 2.0 * dist / len;
  const double rho = t + std::sqrt(t * t - 1.0);
  const int n = static_cast<int>(std::ceil(18.42 / std::log(rho))) + 2;
  return std::clamp(n, 4, 40);
}

double eval_local(const Local& c, double X, double Y) {
  double v = 0.0;
  double xp = 1.0;
  for (int k = 0; k < 3; ++k, xp *= X) {
    v += xp * (c[k][0] + Y * (c[k][1] + Y * c[k][2]));
  }
  return v;
}

double gauss_rect(const Local& c, double A, double B, double delta, double gamma) {
  const auto xc = panels(A, delta);
  const auto yc = panels(B, delta);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < xc.size(); ++i) {
    const double xl = xc[i + 1] - xc[i];
    const GaussRule& gx = gauss_legendre(panel_order(xl, xc[i] + delta));
    for (std::size_t j = 0; j + 1 < yc.size(); ++j) {
      const double yl = yc[j + 1] - yc[j];
      const GaussRule& gy = gauss_legendre(panel_order(yl, yc[j] + delta));
      double sum = 0.0;
      for (std::size_t a = 0; a < gx.x.size(); ++a) {
        const double X = xc[i] + xl * gx.x[a];
        double inner = 0.0;
        for (std::size_t b = 0; b < gy.x.size(); ++b) {
          const double Y = yc[j] + yl * gy.x[b];
          inner += gy.w[b] * eval_local(c, X, Y) * std::pow(X + Y + delta, -gamma);
        }
        sum += gx.w[a] * inner;
      }
      total += sum * xl * yl;
    }
  }
  return total;
}

double poly_scale(const Local& c, double A, double B) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) s = std::max(s, std::abs(c[k][l]) * std::pow(A, k) * std::pow(B, l));
  return s;
}

constexpr double kVanishTol = 1e-10;

double corner_bounded(const Local& c, double A, double B, double delta, double gamma) {
  if (delta > 0.0 && delta >= std::min(A, B)) return gauss_rect(c, A, B, delta, gamma);
  const double scale = poly_scale(c, A, B);
  double total = 0.0;
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      if (c[k][l] == 0.0) continue;
      double v = 0.0;
      if (!corner_monomial(k, l, A, B, delta, gamma, v)) {
        if (std::abs(c[k][l]) * std::pow(A, k) * std::pow(B, l) > kVanishTol * scale) {
          throw SingularityError("elementary integral diverges at the touching corner");
        }
        continue;
      }
      total += c[k][l] * v;
    }
  }
  return total;
}

// int_0^A int_0^inf p(X) (X+Y+delta)^{-gamma} dY dX, p(X) = sum_k c[k][0] X^k.
double corner_strip(const Local& c, double A, double delta, double gamma) {
  const double scale = poly_scale(c, A, 1.0);
  for (int k = 0; k < 3; ++k)
    for (int l = 1; l < 3; ++l)
      if (std::abs(c[k][l]) > kVanishTol * std::max(scale, 1e-300)) {
        throw DomainError("unbounded range requires a factor independent of that variable");
      }
  if (delta > 0.0 && delta >= A) {
    const auto xc = panels(A, delta);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < xc.size(); ++i) {
      const double xl = xc[i + 1] - xc[i];
      const GaussRule& g = gauss_legendre(panel_order(xl, xc[i] + delta));
      for (std::size_t a = 0; a < g.x.size(); ++a) {
        const double X = xc[i] + xl * g.x[a];
        const double p = c[0][0] + X * (c[1][0] + X * c[2][0]);
        total += xl * g.w[a] * p * std::pow(X + delta, 1.0 - gamma);
      }
    }
    return total / (gamma - 1.0);
  }
  double total = 0.0;
  for (int k = 0; k < 3; ++k) {
    if (c[k][0] == 0.0) continue;
    if (delta == 0.0 && k + 2.0 - gamma <= kLogTol) {
      if (std::abs(c[k][0]) * std::pow(A, k) > kVanishTol * scale) {
        throw SingularityError("strip integral diverges at the touching point");
      }
      continue;
    }
    // (w - delta)^k w^{1-gamma}, w in [delta, delta + A].
    const auto a = shift_powers(-delta, 1.0, k);
    double v = 0.0;
    for (int j = 0; j <= k; ++j) {
      const double pw = j + 2.0 - gamma;
      auto F = [&](double w) {
        if (std::abs(pw) < kLogTol) return std::log(w);
        return std::pow(w, pw) / pw;
      };
      const double lo = delta == 0.0 ? 0.0 : F(delta);
      v += a[j] * (F(delta + A) - lo);
    }
    total += c[k][0] * v;
  }
  return total / (gamma - 1.0);
}

// Local coefficients of q(x,y) with X = x - a, Y = y - a.
Local to_origin(const BivariatePoly& q, double a) {
  Local out{};
  for (int i = 0; i <= 2; ++i) {
    const auto px = shift_powers(a - q.x0, 1.0, i);
    for (int j = 0; j <= 2; ++j) {
      const double qij = q(i, j);
      if (qij == 0.0) continue;
      const auto py = shift_powers(a - q.y0, 1.0, j);
      for (int k = 0; k <= i; ++k)
        for (int l = 0; l <= j; ++l) out[k][l] += qij * px[k] * py[l];
    }
  }
  return out;
}

Point2 sub(const Point2& a, const Point2& b) { return {a[0] - b[0], a[1] - b[1]}; }
double cross(const Point2& a, const Point2& b) { return a[0] * b[1] - a[1] * b[0]; }
double dotp(const Point2& a, const Point2& b) { return a[0] * b[0] + a[1] * b[1]; }
double norm(const Point2& a) { return std::hypot(a[0], a[1]); }

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static const std::vector<GaussRule> rules = [] {
    std::vector<GaussRule> r(kMaxGauss + 1);
    for (int k = 1; k <= kMaxGauss; ++k) r[k] = build_gauss(k);
    return r;
  }();
  if (n < 1 || n > kMaxGauss) throw DomainError("Gauss-Legendre order out of range");
  return rules[n];
}

TriangleRule collapsed_triangle_rule(int n) {
  const GaussRule& g = gauss_legendre(n);
  TriangleRule r;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double xi = g.x[i];
      r.xi.push_back({xi, g.x[j] * (1.0 - xi)});
      r.w.push_back(g.w[i] * g.w[j] * (1.0 - xi));
    }
  }
  return r;
}

double BivariatePoly::evaluate(double x, double y) const {
  const double X = x - x0, Y = y - y0;
  double v = 0.0, xp = 1.0;
  for (int i = 0; i < 3; ++i, xp *= X) v += xp * ((*this)(i, 0) + Y * ((*this)(i, 1) + Y * (*this)(i, 2)));
  return v;
}

BivariatePoly BivariatePoly::swapped() const {
  BivariatePoly out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = (*this)(j, i);
  out.x0 = y0;
  out.y0 = x0;
  return out;
}

BivariatePoly BivariatePoly::constant(double v) {
  BivariatePoly p;
  p(0, 0) = v;
  return p;
}

BivariatePoly BivariatePoly::product(double a0, double a1, double b0, double b1) {
  BivariatePoly p;
  p(0, 0) = a0 * b0;
  p(1, 0) = a1 * b0;
  p(0, 1) = a0 * b1;
  p(1, 1) = a1 * b1;
  return p;
}

double elem_integral_1d(double a, double b, double c, double d, double gamma,
                        const BivariatePoly& q) {
  if (std::isnan(a) || std::isnan(b) || std::isnan(c) || std::isnan(d) || std::isnan(gamma)) {
    throw DomainError("NaN in elementary integral arguments");
  }
  if (!(a < b) || !(c < d)) throw DomainError("empty integration range");
  if (b > c) throw DomainError("integration ranges overlap");
  if (!std::isfinite(b) || !std::isfinite(c)) throw DomainError("inner range endpoints must be finite");
  if (std::isinf(a) && std::isinf(d)) throw DomainError("at most one range may be unbounded");
  const double delta = c - b;
  const Local local = to_corner(q, b, c);
  if (std::isinf(d)) return corner_strip(local, b - a, delta, gamma);
  if (std::isinf(a)) return corner_strip(transpose(local), d - c, delta, gamma);
  return corner_bounded(local, b - a, d - c, delta, gamma);
}

double self_integral_1d(double a, double b, double gamma, const BivariatePoly& q) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw DomainError("invalid self range");
  const double L = b - a;
  const Local c = to_origin(q, a);
  // P(X, r) = Q(X, X + r) + Q(X + r, X).
  double P[5][3] = {};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (c[i][j] == 0.0) continue;
      for (int t = 0; t <= j; ++t) P[i + j - t][t] += c[i][j] * binom(j, t);
      for (int t = 0; t <= i; ++t) P[i - t + j][t] += c[i][j] * binom(i, t);
    }
  }
  double scale = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int t = 0; t < 3; ++t) scale = std::max(scale, std::abs(P[i][t]) * std::pow(L, i + t));
  double total = 0.0;
  for (int i = 0; i < 5; ++i) {
    for (int t = 0; t < 3; ++t) {
      if (P[i][t] == 0.0) continue;
      const double e = t - gamma + 1.0;
      if (e <= kLogTol) {
        if (std::abs(P[i][t]) * std::pow(L, i + t) > kVanishTol * scale) {
          throw SingularityError("self integral diverges on the diagonal");
        }
        continue;
      }
      double beta = 1.0;  // B(i+1, e+1) = i! / prod_{m=1}^{i+1} (e+m)
      for (int m = 1; m <= i; ++m) beta *= m;
      for (int m = 1; m <= i + 1; ++m) beta /= (e + m);
      total += P[i][t] * std::pow(L, i + t - gamma + 2.0) * beta / e;
    }
  }
  return total;
}

DuffyRule::DuffyRule(double s, int order) : s_(s), beta_(0.0), n_(order) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("Duffy rule needs s in (0,1)");
  if (order < 1 || order > kMaxGauss) throw DomainError("Duffy rule order out of range");
  beta_ = 1.0 / (2.0 * (1.0 - s));
  rule_ = gauss_legendre(order);
}

namespace {

template <typename Accumulate>
void duffy_loop(const Point2& y, const Point2& q, const Point2& p, const DuffyRule& rule,
                Accumulate&& acc) {
  const Point2 qy = sub(q, y);
  const Point2 pq = sub(p, q);
  const double area2 = std::abs(cross(qy, pq));
  const double lq = norm(qy), lp = norm(pq);
  if (!(lq > 0.0) || !(lp > 0.0) || area2 <= 1e-14 * lq * lp) {
    throw DomainError("degenerate Duffy triangle");
  }
  if (std::abs(dotp(qy, pq)) > 1e-10 * lq * lp) {
    throw DomainError("Duffy triangle has no right angle at the given vertex");
  }
  const double s = rule.order_s();
  const double factor = area2 * rule.beta();
  const GaussRule& g = rule.rule();
  // The u-integrand is identically 1 for beta = 1/(2(1-s)); the u-sum of the
  // tensor rule only reproduces that factor.
  double usum = 0.0;
  for (double w : g.w) usum += w;
  for (std::size_t j = 0; j < g.x.size(); ++j) {
    const double v = g.x[j];
    const Point2 w{qy[0] + v * pq[0], qy[1] + v * pq[1]};
    const double r = norm(w);
    const Point2 e{w[0] / r, w[1] / r};
    acc(e, factor * usum * g.w[j] * std::pow(r, -2.0 * s));
  }
}

}  // namespace

double duffy_integrate(const Point2& y, const Point2& q, const Point2& p, const DuffyRule& rule,
                       const std::function<double(const Point2&)>& f) {
  double total = 0.0;
  duffy_loop(y, q, p, rule, [&](const Point2& e, double w) { total += w * f(e); });
  return total;
}

std::array<double, 3> duffy_moments(const Point2& y, const Point2& q, const Point2& p,
                                    const DuffyRule& rule) {
  std::array<double, 3> m{};
  duffy_loop(y, q, p, rule, [&](const Point2& e, double w) {
    m[0] += w * e[0] * e[0];
    m[1] += w * e[0] * e[1];
    m[2] += w * e[1] * e[1];
  });
  return m;
}

std::vector<SignedRightTriangle> split_right_triangles(const std::array<Point2, 3>& tri,
                                                       const Point2& y) {
  const double area = signed_area(tri[0], tri[1], tri[2]);
  double scale = 0.0;
  for (int k = 0; k < 3; ++k) scale = std::max(scale, norm(sub(tri[(k + 1) % 3], tri[k])));
  if (std::abs(area) <= 1e-14 * scale * scale) throw DomainError("degenerate triangle");
  bool on_boundary = false;
  for (int k = 0; k < 3; ++k) {
    const Point2& a = tri[k];
    const Point2& b = tri[(k + 1) % 3];
    const Point2 ab = sub(b, a);
    const double len = norm(ab);
    const double dist = std::abs(cross(ab, sub(y, a))) / len;
    const double t = dotp(sub(y, a), ab) / (len * len);
    if (dist <= 1e-10 * scale && t >= -1e-10 && t <= 1 + 1e-10) on_boundary = true;
  }
  if (!on_boundary) throw DomainError("split point is not on the triangle boundary");
  const double orient = area > 0 ? 1.0 : -1.0;
  std::vector<SignedRightTriangle> out;
  const double tiny = 1e-12 * scale * scale;
  for (int k = 0; k < 3; ++k) {
    const Point2& a = tri[k];
    const Point2& b = tri[(k + 1) % 3];
    const Point2 ab = sub(b, a);
    const double t = dotp(sub(y, a), ab) / dotp(ab, ab);
    const Point2 foot{a[0] + t * ab[0], a[1] + t * ab[1]};
    if (norm(sub(foot, y)) <= 1e-10 * scale) continue;  // y on this edge's line
    // (y,a,b) = (y,a,foot) + (y,foot,b) as oriented triangles.
    const Point2 corners[2][2] = {{a, foot}, {foot, b}};
    const Point2 thirds[2] = {a, b};
    for (int i = 0; i < 2; ++i) {
      const double sa = signed_area(y, corners[i][0], corners[i][1]);
      if (std::abs(sa) <= tiny) continue;
      out.push_back({orient * (sa > 0 ? 1.0 : -1.0), y, foot, thirds[i]});
    }
  }
  return out;
}

double edge_midpoint_rule(const std::array<Point2, 3>& tri,
                          const std::function<double(const Point2&)>& g) {
  const double area = std::abs(signed_area(tri[0], tri[1], tri[2]));
  double sum = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Point2& a = tri[k];
    const Point2& b = tri[(k + 1) % 3];
    sum += g({0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])});
  }
  return area / 3.0 * sum;
}

double exterior_integral_1d(double x, double a, double b, const FractionalKernel& kernel) {
  if (kernel.dimension() != 1) throw DomainError("1D exterior integral needs a 1D kernel");
  if (!(x > a && x < b)) throw DomainError("point must lie inside the interval");
  const double s = kernel.order();
  return 0.5 * kernel.constant() / (2.0 * s) * (std::pow(x - a, -2.0 * s) + std::pow(b - x, -2.0 * s));
}

double exterior_integral_2d(const Point2& x, const TriMesh& mesh, const FractionalKernel& kernel,
                            double radius, int annulus_level) {
  if (kernel.dimension() != 2) throw DomainError("2D exterior integral needs a 2D kernel");
  if (annulus_level < 0 || annulus_level > 10) throw DomainError("annulus level out of range");
  for (const auto& v : mesh.vertices()) {
    if (norm(sub(v, x)) >= radius) throw DomainError("truncation ball does not contain the domain");
  }
  const double s = kernel.order();
  const double half_c = 0.5 * kernel.constant();
  const int na = 1 << annulus_level;
  const int nr = 1 << (annulus_level + 1);
  const GaussRule& g = gauss_legendre(6);
  double total = 0.0;
  for (const auto& e : mesh.boundary_edges()) {
    const Point2 P = sub(mesh.vertices()[e[0]], x);
    const Point2 Q = sub(mesh.vertices()[e[1]], x);
    const Point2 QP = sub(Q, P);
    const double span = std::atan2(cross(P, Q), dotp(P, Q));
    const double num = cross(P, QP);
    if (!(span > 0.0) || !(num > 0.0)) {
      throw DomainError("domain is not star-shaped with respect to the exterior point");
    }
    const double th0 = std::atan2(P[1], P[0]);
    const double dth = span / na;
    for (int ia = 0; ia < na; ++ia) {
      for (std::size_t ka = 0; ka < g.x.size(); ++ka) {
        const double th = th0 + dth * (ia + g.x[ka]);
        const Point2 dir{std::cos(th), std::sin(th)};
        const double rho = num / cross(dir, QP);
        const double lr = std::log(radius / rho);
        double radial = 0.0;
        for (int ir = 0; ir < nr; ++ir) {
          for (std::size_t kr = 0; kr < g.x.size(); ++kr) {
            const double v = (ir + g.x[kr]) / nr;
            const double r = rho * std::exp(v * lr);
            radial += g.w[kr] / nr * std::pow(r, -2.0 * s) * lr;
          }
        }
        total += dth * g.w[ka] * half_c * radial;
      }
    }
  }
  return total + kernel.tail_integral(radius);
}

}  // namespace nlfem
