#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nlfem/error.hpp"
#include "nlfem/solver.hpp"
#include "nlfem/studies.hpp"

using namespace nlfem;
using std::numbers::pi;

namespace {

struct Problem {
  SpacePtr sp;
  GramPair g;
  FemFunction cosine, sine;
  Problem(double s, std::size_t nodes)
      : sp(make_space(make_interval_mesh(-1.0, 1.0, nodes))),
        g(assemble(sp, s)),
        cosine(FemFunction::interpolate(sp, [](const Point2& x) { return std::cos(pi * x[0] / 2); })),
        sine(FemFunction::interpolate(sp, [](const Point2& x) { return std::sin(pi * x[0]); })) {}
};

double sq_norm(const GramPair& g, const FemFunction& u) { return h_inner(g, u, u); }

}  // namespace

TEST_CASE("linear solve against the explicit solution") {
  Problem pr(0.5, 257);
  const Potential one = [](const Point2&) { return 1.0; };
  const auto u = solve_linear(pr.g, one);
  CHECK(u.value_at({0.0, 0.0}) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(explicit_solution(1, 0.5, 1.0, {0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(explicit_solution(1, 1.0, 1.0, {0.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-14));

  const auto u2 = solve_linear(pr.g, [](const Point2&) { return 2.0; });
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(u2[i] == 2.0 * u[i]);
  CHECK_THROWS_AS(solve_linear(pr.g, Potential{}), DomainError);
  CHECK_THROWS_AS(solve_linear(pr.g, std::vector<double>(3, 1.0)), DomainError);
}

TEST_CASE("linear solve on the disk") {
  auto sp = make_space(make_disk_mesh(1.0, 3));
  const auto g = assemble(sp, 0.9);
  const auto u = solve_linear(g, [](const Point2&) { return 1.0; });
  CHECK(u.value_at({0.0, 0.0}) == doctest::Approx(explicit_solution(2, 0.9, 1.0, {0.0, 0.0})).epsilon(0.05));
}

TEST_CASE("indefinite system is reported") {
  auto sp = make_space(make_interval_mesh(0.0, 1.0, 4));
  SymMatrix S = SymMatrix::identity(2);
  S.at(1, 1) = -1.0;
  const GramPair g(sp, FractionalKernel(1, 0.5), S, SymMatrix::identity(2));
  CHECK_THROWS_AS(solve_linear(g, [](const Point2&) { return 1.0; }), IndefiniteError);
}

TEST_CASE("ground states") {
  for (auto [s, e_ref] : {std::pair{0.3, 0.29}, std::pair{0.9, 1.39}}) {
    Problem pr(s, 257);
    const ProblemSpec spec(pr.g, 4.0);
    const auto r = mountain_pass(spec, pr.cosine);
    CHECK(r.final_gradient_norm <= 1e-2);
    CHECK(r.energy == doctest::Approx(energy(spec, r.solution)).epsilon(1e-14));
    CHECK(std::abs(r.energy - e_ref) <= 0.1 * e_ref);
    CHECK(std::abs(r.solution.max_value() - 1.7) <= 0.17);
    CHECK(r.solution.min_value() == 0.0);
    CHECK(std::abs(derivative(spec, r.solution, r.solution)) <= 1e-8 * sq_norm(pr.g, r.solution));
    CHECK(r.energy <= energy(spec, nehari_project(spec, pr.cosine).u));

    const auto neg = mountain_pass(spec, -1.0 * pr.cosine);
    for (std::size_t i = 0; i < neg.solution.size(); ++i) CHECK(neg.solution[i] == doctest::Approx(-r.solution[i]).epsilon(1e-12));

    // every truncated run stops above the converged energy (monotone descent)
    for (int k = 1; k <= 4; ++k) {
      try {
        (void)mountain_pass(spec, pr.cosine, 1e-2, k);
      } catch (const ConvergenceError& e) {
        const FemFunction best(pr.sp, e.best_iterate());
        CHECK(energy(spec, best) >= r.energy - 1e-12);
      }
    }
  }
}

TEST_CASE("nodal solutions") {
  Problem pr(0.3, 257);
  const ProblemSpec spec(pr.g, 4.0);
  const auto g = mountain_pass(spec, pr.cosine);
  const auto n = modified_mountain_pass(spec, pr.sine);
  CHECK(n.final_gradient_norm <= 1e-2);
  CHECK(std::abs(n.energy - 0.74) <= 0.15 * 0.74);
  CHECK(std::abs(n.solution.max_value() - 2.5) <= 0.25);
  CHECK(std::abs(n.solution.max_value() + n.solution.min_value()) <= 0.05 * n.solution.max_value());
  const double w2 = sq_norm(pr.g, n.solution);
  CHECK(std::abs(derivative(spec, n.solution, positive_part(n.solution))) <= 1e-8 * w2);
  CHECK(std::abs(derivative(spec, n.solution, negative_part(n.solution))) <= 1e-8 * w2);
  CHECK(g.energy < n.energy);
  // odd start on the symmetric mesh stays odd
  const auto& c = n.solution.coefficients();
  double mx = 0.0, odd = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    mx = std::max(mx, std::abs(c[i]));
    odd = std::max(odd, std::abs(c[i] + c[c.size() - 1 - i]));
  }
  CHECK(odd <= 5e-2 * mx);
}

TEST_CASE("solver argument errors") {
  Problem pr(0.5, 33);
  const ProblemSpec spec(pr.g, 3.0);
  CHECK_THROWS_AS(mountain_pass(spec, FemFunction(pr.sp)), DomainError);
  CHECK_THROWS_AS(modified_mountain_pass(spec, pr.cosine), DomainError);
  CHECK_THROWS_AS(mountain_pass(spec, pr.cosine, 0.0), DomainError);
  CHECK_THROWS_AS(mountain_pass(spec, pr.cosine, 1e-2, 0), DomainError);
  try {
    (void)mountain_pass(spec, pr.cosine, 1e-14, 2);
    FAIL("expected a convergence error");
  } catch (const ConvergenceError& e) {
    CHECK(e.best_iterate().size() == pr.sp->size());
    CHECK(e.residual() > 1e-14);
  }
}
