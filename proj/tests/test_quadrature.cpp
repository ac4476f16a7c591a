#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nlfem/error.hpp"
#include "nlfem/quadrature.hpp"

using namespace nlfem;
using boost::math::quadrature::gauss_kronrod;
using boost::math::quadrature::tanh_sinh;
using std::numbers::pi;

namespace {

// r^-gamma, with the measure-zero singular point mapped to 0
double kern(double r, double gamma) {
  const double v = r > 0.0 ? std::pow(r, -gamma) : 0.0;
  return std::isfinite(v) ? v : 0.0;
}

double gk(const std::function<double(double)>& f, double a, double b) {
  return gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-13);
}

// Nested tanh-sinh in corner coordinates X = b - x, Y = y - c.
double elem_oracle(double a, double b, double c, double d, double gamma, const BivariatePoly& q) {
  tanh_sinh<double> ts;
  const double delta = c - b;
  return ts.integrate([&](double X) {
    return ts.integrate([&](double Y) { return q.evaluate(b - X, c + Y) * kern(X + Y + delta, gamma); }, 0.0, d - c);
  }, 0.0, b - a);
}

BivariatePoly reflect(const BivariatePoly& q) {
  BivariatePoly r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(j, i) = ((i + j) % 2 ? -1.0 : 1.0) * q(i, j);
  r.x0 = -q.y0;
  r.y0 = -q.x0;
  return r;
}

// (c/2)/(2s) * int rho(theta)^{-2s} dtheta over the polygon boundary seen from x.
double exterior_oracle(const Point2& x, const TriMesh& mesh, const FractionalKernel& k) {
  const double s = k.order();
  double total = 0.0;
  for (const auto& e : mesh.boundary_edges()) {
    const Point2 P = mesh.vertices()[e[0]], Q = mesh.vertices()[e[1]];
    const double t0 = std::atan2(P[1] - x[1], P[0] - x[0]);
    double t1 = std::atan2(Q[1] - x[1], Q[0] - x[0]);
    if (t1 < t0) t1 += 2 * pi;
    const double ex = Q[0] - P[0], ey = Q[1] - P[1];
    const double num = (P[0] - x[0]) * ey - (P[1] - x[1]) * ex;
    total += gk([&](double t) {
      const double rho = num / (std::cos(t) * ey - std::sin(t) * ex);
      return std::pow(rho, -2 * s);
    }, t0, t1);
  }
  return 0.5 * k.constant() / (2 * s) * total;
}

double polar_triangle_oracle(const Point2& y, const Point2& q, const Point2& p, double s) {
  // y is a corner: integrate over the angle of the opposite edge q-p.
  const double t0 = std::atan2(q[1] - y[1], q[0] - y[0]);
  double t1 = std::atan2(p[1] - y[1], p[0] - y[0]);
  if (t1 < t0) t1 += 2 * pi;
  const double ex = p[0] - q[0], ey = p[1] - q[1];
  const double num = (q[0] - y[0]) * ey - (q[1] - y[1]) * ex;
  return gk([&](double t) {
    const double rho = num / (std::cos(t) * ey - std::sin(t) * ex);
    return std::pow(rho, 2 - 2 * s) / (2 - 2 * s);
  }, t0, t1);
}

double tri_area(const std::array<Point2, 3>& t) { return std::abs(signed_area(t[0], t[1], t[2])); }

}  // namespace

TEST_CASE("gauss legendre exactness") {
  for (int n : {1, 2, 5, 12, 40, 64}) {
    const auto& g = gauss_legendre(n);
    REQUIRE(g.x.size() == std::size_t(n));
    for (int k = 0; k <= std::min(2 * n - 1, 40); ++k) {
      double v = 0.0;
      for (int i = 0; i < n; ++i) v += g.w[i] * std::pow(g.x[i], k);
      CHECK(v == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(gauss_legendre(0), DomainError);
  CHECK_THROWS_AS(gauss_legendre(65), DomainError);
}

TEST_CASE("collapsed triangle rule exactness") {
  const auto r = collapsed_triangle_rule(4);
  auto fact = [](int n) { return std::tgamma(n + 1.0); };
  for (int a = 0; a <= 6; ++a) {
    for (int b = 0; a + b <= 6; ++b) {
      double v = 0.0;
      for (std::size_t i = 0; i < r.w.size(); ++i) v += r.w[i] * std::pow(r.xi[i][0], a) * std::pow(r.xi[i][1], b);
      CHECK(v == doctest::Approx(fact(a) * fact(b) / fact(a + b + 2)).epsilon(1e-13));
    }
  }
}

TEST_CASE("elementary integral examples") {
  const auto one = BivariatePoly::constant(1.0);
  CHECK(elem_integral_1d(0, 1, 2, 3, 0.0, one) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(elem_integral_1d(0, 1, 2, 3, 2.0, one) == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-13));
  CHECK(elem_integral_1d(0, 1, 1, 2, 1.5, one) == doctest::Approx(8 - 4 * std::sqrt(2.0)).epsilon(1e-13));
  CHECK(elem_oracle(0, 1, 1, 2, 1.5, one) == doctest::Approx(8 - 4 * std::sqrt(2.0)).epsilon(1e-8));
  CHECK(elem_oracle(0, 1, 2, 3, 2.0, one) == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-10));
}

TEST_CASE("elementary integral against the nested quadrature oracle") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    BivariatePoly q;
    for (auto& c : q.q) c = u(rng);
    q.x0 = u(rng);
    q.y0 = u(rng);
    const double a = u(rng), b = a + 0.2 + 0.5 * (u(rng) + 1);
    const double gap = trial % 3 == 0 ? 0.003 : (trial % 3 == 1 ? 0.05 : 0.8);
    const double c = b + gap, d = c + 0.1 + 0.5 * (u(rng) + 1);
    for (double gamma : {1.2, 1.9, 2.6}) {
      const double ref = elem_oracle(a, b, c, d, gamma, q);
      const double got = elem_integral_1d(a, b, c, d, gamma, q);
      CHECK(std::abs(got - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("touching ranges with a factor vanishing at the corner") {
  // q = (b - x)(y - b) on (0,1)x(1,1.5)
  const auto q = BivariatePoly::product(1.0, -1.0, -1.0, 1.0);
  for (double gamma : {1.1, 1.6, 2.0, 2.5, 2.9}) {
    const double ref = elem_oracle(0, 1, 1, 1.5, gamma, q);
    CHECK(elem_integral_1d(0, 1, 1, 1.5, gamma, q) == doctest::Approx(ref).epsilon(1e-8));
  }
  CHECK_THROWS_AS(elem_integral_1d(0, 1, 1, 2, 2.5, BivariatePoly::constant(1.0)), SingularityError);
}

TEST_CASE("elementary integral reflection symmetry") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    BivariatePoly q;
    for (auto& c : q.q) c = u(rng);
    q.x0 = u(rng);
    q.y0 = u(rng);
    const double a = -1.0, b = -0.2, c = trial % 2 ? -0.2 : 0.3, d = 1.1;
    if (c == b) {
      // keep the touching case integrable
      q = BivariatePoly::product(u(rng), u(rng), 0.0, 1.0);
      q.y0 = c;
      q(0, 0) = 0.0;
      q(1, 0) = 0.0;
    }
    for (double gamma : {1.3, 2.2}) {
      const double v1 = elem_integral_1d(a, b, c, d, gamma, q);
      const double v2 = elem_integral_1d(-d, -c, -b, -a, gamma, reflect(q));
      CHECK(v1 == doctest::Approx(v2).epsilon(1e-12));
    }
  }
}

TEST_CASE("unbounded ranges") {
  const auto one = BivariatePoly::constant(1.0);
  for (double gamma : {1.2, 1.5, 2.7}) {
    const double ref = (std::pow(2.0, 2 - gamma) - 1) / ((gamma - 1) * (2 - gamma));
    CHECK(elem_integral_1d(-kInf, -1, 0, 1, gamma, one) == doctest::Approx(ref).epsilon(1e-12));
    CHECK(elem_integral_1d(-1, 0, 1, kInf, gamma, one) == doctest::Approx(ref).epsilon(1e-12));
  }
  // y-dependent factor with unbounded x range is fine
  auto qy = BivariatePoly::constant(0.0);
  qy(0, 1) = 1.0;
  const double g = 1.6;
  const double ref = gk([&](double y) { return y * std::pow(y + 1, 1 - g) / (g - 1); }, 0.0, 1.0);
  CHECK(elem_integral_1d(-kInf, -1, 0, 1, g, qy) == doctest::Approx(ref).epsilon(1e-11));

  auto qx = BivariatePoly::constant(0.0);
  qx(1, 0) = 1.0;
  CHECK_THROWS_AS(elem_integral_1d(-kInf, -1, 0, 1, g, qx), DomainError);
  CHECK_THROWS_AS(elem_integral_1d(-kInf, -1, 0, kInf, g, one), DomainError);
}

TEST_CASE("elementary integral argument errors") {
  const auto one = BivariatePoly::constant(1.0);
  CHECK_THROWS_AS(elem_integral_1d(0, 2, 1, 3, 1.5, one), DomainError);
  CHECK_THROWS_AS(elem_integral_1d(1, 0, 2, 3, 1.5, one), DomainError);
  CHECK_THROWS_AS(elem_integral_1d(0, 1, 2, 2, 1.5, one), DomainError);
  CHECK_THROWS_AS(elem_integral_1d(0, std::nan(""), 2, 3, 1.5, one), DomainError);
}

TEST_CASE("self integral") {
  // (x - y)^2 |x - y|^-gamma on the unit square: 2 / ((3 - gamma)(4 - gamma))
  BivariatePoly q;
  q(2, 0) = 1.0;
  q(1, 1) = -2.0;
  q(0, 2) = 1.0;
  for (double gamma : {1.2, 2.0, 2.8}) {
    CHECK(self_integral_1d(0, 1, gamma, q) == doctest::Approx(2.0 / ((3 - gamma) * (4 - gamma))).epsilon(1e-12));
  }
  // shifted (x - y)^2, and a factor vanishing to first order only
  tanh_sinh<double> ts;
  // factored integrands: the expanded monomial form cancels near the diagonal
  auto oracle = [&](const std::function<double(double, double)>& h, double gamma) {
    return ts.integrate([&](double x) {
      return ts.integrate([&](double y) { return h(x, y) * kern(std::abs(y - x), gamma); }, 0.3, x) +
             ts.integrate([&](double y) { return h(x, y) * kern(std::abs(y - x), gamma); }, x, 0.9);
    }, 0.3, 0.9);
  };
  BivariatePoly sq = q;
  sq.x0 = sq.y0 = 0.3;
  for (double gamma : {1.4, 2.5}) CHECK(self_integral_1d(0.3, 0.9, gamma, sq) == doctest::Approx(oracle([](double x, double y) { return (x - y) * (x - y); }, gamma)).epsilon(1e-8));
  BivariatePoly h;
  h(2, 0) = 1.0;
  h(1, 1) = -1.0;
  h(1, 0) = -0.2;
  h(0, 1) = 0.2;
  h.x0 = h.y0 = 0.3;
  CHECK(self_integral_1d(0.3, 0.9, 1.4, h) == doctest::Approx(oracle([](double x, double y) { return (x - y) * (x - 0.5); }, 1.4)).epsilon(1e-8));
}

TEST_CASE("duffy rule") {
  const DuffyRule r5(0.5);
  CHECK(r5.beta() == doctest::Approx(1.0));
  for (double s : {0.1, 0.3, 0.75, 0.9}) {
    const DuffyRule r(s);
    CHECK(r.beta() * 2 * (1 - s) == doctest::Approx(1.0).epsilon(1e-15));
    double wsum = 0.0;
    for (double w : r.rule().w) {
      CHECK(w > 0.0);
      wsum += w;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(DuffyRule(0.5).order() == 8);
}

TEST_CASE("duffy integration against the polar oracle") {
  const Point2 y{0, 0}, q{1, 0}, p{1, 1};
  auto one = [](const Point2&) { return 1.0; };
  CHECK(std::abs(duffy_integrate(y, q, p, DuffyRule(0.5), one) - polar_triangle_oracle(y, q, p, 0.5)) <= 1e-8);
  CHECK(std::abs(duffy_integrate(y, q, p, DuffyRule(0.9), one) - polar_triangle_oracle(y, q, p, 0.9)) <= 1e-6);
  for (double s : {0.2, 0.6}) {
    const double ref = polar_triangle_oracle(y, q, p, s);
    CHECK(duffy_integrate(y, q, p, DuffyRule(s, 12), one) == doctest::Approx(ref).epsilon(1e-8));
  }
}

TEST_CASE("duffy moments and rigid motions") {
  const Point2 y{0.2, -0.1}, q{1.0, -0.1}, p{1.0, 0.7};
  for (double s : {0.3, 0.8}) {
    const DuffyRule r(s);
    const auto m = duffy_moments(y, q, p, r);
    CHECK(m[0] == doctest::Approx(duffy_integrate(y, q, p, r, [](const Point2& e) { return e[0] * e[0]; })).epsilon(1e-13));
    CHECK(m[1] == doctest::Approx(duffy_integrate(y, q, p, r, [](const Point2& e) { return e[0] * e[1]; })).epsilon(1e-13));
    CHECK(m[2] == doctest::Approx(duffy_integrate(y, q, p, r, [](const Point2& e) { return e[1] * e[1]; })).epsilon(1e-13));
    // polar oracle for e_x^2: integrate cos^2 over the angle
    const double th = std::atan2(0.8, 0.8);
    const double ref_xx = gk([&](double t) {
      const double rho = 0.8 / std::cos(t);
      return std::cos(t) * std::cos(t) * std::pow(rho, 2 - 2 * s) / (2 - 2 * s);
    }, 0.0, th);
    CHECK(m[0] == doctest::Approx(ref_xx).epsilon(1e-6));

    // rotate by 0.7 rad and translate: f = 1 integral unchanged
    const double c = std::cos(0.7), sn = std::sin(0.7);
    auto mv = [&](const Point2& x) { return Point2{c * x[0] - sn * x[1] + 3.0, sn * x[0] + c * x[1] - 1.0}; };
    auto one = [](const Point2&) { return 1.0; };
    const double v0 = duffy_integrate(y, q, p, r, one);
    const double v1 = duffy_integrate(mv(y), mv(q), mv(p), r, one);
    CHECK(std::abs(v0 - v1) <= 1e-10 * std::abs(v0));
    // trace of the moment tensor is rotation invariant
    const auto m1 = duffy_moments(mv(y), mv(q), mv(p), r);
    CHECK(std::abs((m[0] + m[2]) - (m1[0] + m1[2])) <= 1e-10 * std::abs(v0));
  }
}

TEST_CASE("duffy argument errors") {
  const DuffyRule r(0.5);
  auto one = [](const Point2&) { return 1.0; };
  CHECK_THROWS_AS(duffy_integrate({0, 0}, {1, 0}, {2, 0}, r, one), DomainError);
  CHECK_THROWS_AS(duffy_integrate({0, 0}, {1, 0}, {1.5, 1}, r, one), DomainError);
  CHECK_THROWS_AS(duffy_integrate({0, 0}, {0, 0}, {1, 1}, r, one), DomainError);
}

TEST_CASE("right triangle splitting") {
  auto check_split = [](const std::array<Point2, 3>& t, const Point2& y, bool expect_negative) {
    const auto parts = split_right_triangles(t, y);
    CHECK(parts.size() <= 4);
    double signed_sum = 0.0;
    bool negative = false;
    for (const auto& pc : parts) {
      signed_sum += pc.sign * tri_area({pc.y, pc.q, pc.p});
      negative = negative || pc.sign < 0;
      CHECK(pc.y == y);
      const double dot = (pc.y[0] - pc.q[0]) * (pc.p[0] - pc.q[0]) + (pc.y[1] - pc.q[1]) * (pc.p[1] - pc.q[1]);
      CHECK(std::abs(dot) <= 1e-12);
    }
    CHECK(signed_sum == doctest::Approx(tri_area(t)).epsilon(1e-12));
    if (expect_negative) CHECK(negative);
  };
  // hypotenuse midpoint of a right isosceles triangle
  check_split({Point2{0, 0}, Point2{1, 0}, Point2{0, 1}}, {0.5, 0.5}, false);
  // obtuse: the foot from y onto the long edge's neighbor falls outside
  check_split({Point2{0, 0}, Point2{3, 0}, Point2{-1, 1}}, {1.5, 0.0}, true);
  check_split({Point2{0, 0}, Point2{2, 0.3}, Point2{0.4, 1.7}}, {1.2, 1.0}, false);
  check_split({Point2{0, 0}, Point2{1, 0}, Point2{0.2, 0.9}}, {0, 0}, false);
  CHECK_THROWS_AS(split_right_triangles({Point2{0, 0}, Point2{1, 0}, Point2{0, 1}}, {0.2, 0.2}), DomainError);
  CHECK_THROWS_AS(split_right_triangles({Point2{0, 0}, Point2{1, 0}, Point2{2, 0}}, {0.5, 0}), DomainError);
}

TEST_CASE("split plus duffy reproduces the singular triangle integral") {
  const std::array<Point2, 3> t{Point2{0, 0}, Point2{2, 0.3}, Point2{0.4, 1.7}};
  const Point2 y{1.2, 1.0};  // on edge 1-2
  for (double s : {0.3, 0.7}) {
    const DuffyRule r(s, 12);
    double v = 0.0;
    for (const auto& pc : split_right_triangles(t, y)) {
      v += pc.sign * duffy_integrate(pc.y, pc.q, pc.p, r, [](const Point2&) { return 1.0; });
    }
    // oracle: corner-by-corner polar integrals from y over the two sub-triangles
    const double ref = polar_triangle_oracle(y, t[2], t[0], s) + polar_triangle_oracle(y, t[0], t[1], s);
    CHECK(v == doctest::Approx(ref).epsilon(1e-8));
  }
}

TEST_CASE("edge midpoint rule") {
  const std::array<Point2, 3> ref{Point2{0, 0}, Point2{1, 0}, Point2{0, 1}};
  CHECK(edge_midpoint_rule(ref, [](const Point2&) { return 1.0; }) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(edge_midpoint_rule(ref, [](const Point2& x) { return x[0] * x[0] + x[1] * x[1]; }) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  const std::array<Point2, 3> t{Point2{0.3, -0.2}, Point2{1.7, 0.4}, Point2{0.1, 1.1}};
  const auto hi = collapsed_triangle_rule(6);
  const double j = 2.0 * tri_area(t);
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; a + b <= 2; ++b) {
      auto g = [&](const Point2& x) { return std::pow(x[0], a) * std::pow(x[1], b); };
      double exact = 0.0;
      for (std::size_t i = 0; i < hi.w.size(); ++i) {
        const double l1 = hi.xi[i][0], l2 = hi.xi[i][1];
        const Point2 x{t[0][0] + l1 * (t[1][0] - t[0][0]) + l2 * (t[2][0] - t[0][0]),
                       t[0][1] + l1 * (t[1][1] - t[0][1]) + l2 * (t[2][1] - t[0][1])};
        exact += hi.w[i] * j * g(x);
      }
      CHECK(std::abs(edge_midpoint_rule(t, g) - exact) <= 1e-14);
    }
  }
}

TEST_CASE("1D exterior integral") {
  const FractionalKernel k(1, 0.5);
  CHECK(exterior_integral_1d(0.0, -1.0, 1.0, k) == doctest::Approx(1.0 / pi).epsilon(1e-14));
  CHECK(exterior_integral_1d(0.0, -1.0, 1.0, k) == doctest::Approx(k.tail_integral(1.0)).epsilon(1e-14));
  for (double s : {0.2, 0.8}) {
    const FractionalKernel ks(1, s);
    const double c = ks.constant();
    for (double x : {-0.7, 0.1, 0.95}) {
      const double ref = c / (4 * s) * (std::pow(1 - x, -2 * s) + std::pow(x + 1, -2 * s));
      CHECK(exterior_integral_1d(x, -1.0, 1.0, ks) == doctest::Approx(ref).epsilon(1e-13));
    }
    CHECK(exterior_integral_1d(0.9, -1.0, 1.0, ks) > exterior_integral_1d(0.0, -1.0, 1.0, ks));
  }
}

TEST_CASE("2D exterior integral") {
  const auto disk = make_disk_mesh(1.0, 2);
  for (double s : {0.3, 0.9}) {
    const FractionalKernel k(2, s);
    for (const Point2 x : {Point2{0.0, 0.0}, Point2{0.31, -0.2}, Point2{0.7, 0.55}}) {
      const double v5 = exterior_integral_2d(x, disk, k, 5.0);
      const double v10 = exterior_integral_2d(x, disk, k, 10.0);
      const double v20 = exterior_integral_2d(x, disk, k, 20.0);
      CHECK(std::abs(v5 - v10) <= 1e-4 * v5);
      CHECK(std::abs(v5 - v20) <= 1e-4 * v5);
      CHECK(v5 == doctest::Approx(exterior_oracle(x, disk, k)).epsilon(1e-6));
    }
    CHECK(exterior_integral_2d({0.8, 0.0}, disk, k, 5.0) > exterior_integral_2d({0.0, 0.0}, disk, k, 5.0));
    CHECK_THROWS_AS(exterior_integral_2d({0.0, 0.0}, disk, k, 0.9), DomainError);
  }
  CHECK_THROWS_AS(exterior_integral_2d({0.0, 0.0}, disk, FractionalKernel(1, 0.5), 5.0), DomainError);
}
