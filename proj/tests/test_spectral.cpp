#include <cmath>

#include "doctest.h"
#include "nlfem/error.hpp"
#include "nlfem/spectral.hpp"

using namespace nlfem;

namespace {

GramPair diagonal_pair(std::vector<double> d) {
  auto sp = make_space(make_interval_mesh(0.0, 1.0, d.size() + 2));
  return GramPair(sp, FractionalKernel(1, 0.5), SymMatrix::diagonal(d), SymMatrix::identity(d.size()));
}

double rayleigh(const GramPair& g, const FemFunction& u) { return h_inner(g, u, u) / l2_inner(g, u, u); }

}  // namespace

TEST_CASE("diagonal problem") {
  const auto g = diagonal_pair({2.0, 5.0, 9.0});
  const auto rep = smallest_eigenpairs(g, 2);
  REQUIRE(rep.pairs.size() == 2);
  CHECK(rep.pairs[0].lambda == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.pairs[1].lambda == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(std::abs(std::abs(rep.pairs[0].phi[0]) - 1.0) <= 1e-10);
  CHECK(std::abs(rep.pairs[0].phi[1]) <= 1e-10);
  CHECK(std::abs(std::abs(rep.pairs[1].phi[1]) - 1.0) <= 1e-10);
  CHECK(std::abs(rep.pairs[1].phi[2]) <= 1e-10);
}

TEST_CASE("argument errors") {
  const auto g = diagonal_pair({2.0, 5.0, 9.0});
  CHECK_THROWS_AS(smallest_eigenpairs(g, 0), DomainError);
  CHECK_THROWS_AS(smallest_eigenpairs(g, 4), DomainError);
  CHECK_THROWS_AS(smallest_eigenpairs(g, 1, 0.0), DomainError);
  const auto bad = diagonal_pair({2.0, -5.0, 9.0});
  CHECK_THROWS_AS(smallest_eigenpairs(bad, 1), IndefiniteError);
}

TEST_CASE("sign normalization") {
  const auto g = diagonal_pair({2.0, 5.0, 9.0});
  EigenPair p{1.0, FemFunction(g.space(), {-0.1, -3.0, -0.5}), 0.0};
  const auto q = sign_normalize(p);
  for (double c : q.phi.coefficients()) CHECK(c > 0.0);
  const auto r = sign_normalize(q);
  CHECK(r.phi.coefficients() == q.phi.coefficients());
  EigenPair mixed{1.0, FemFunction(g.space(), {0.5, -3.0, 1.0}), 0.0};
  CHECK(sign_normalize(mixed).phi[1] == doctest::Approx(3.0));
}

TEST_CASE("1D fractional eigenpairs") {
  for (double s : {0.3, 0.5, 0.9}) {
    auto sp = make_space(make_interval_mesh(-1.0, 1.0, 129));
    const auto g = assemble(sp, s);
    const auto rep = smallest_eigenpairs(g, 3);
    REQUIRE(rep.pairs.size() == 3);
    CHECK(rep.pairs[1].lambda > rep.pairs[0].lambda);
    CHECK(rep.pairs[2].lambda > rep.pairs[1].lambda);
    CHECK_FALSE(rep.near_degenerate[0]);
    for (const auto& pr : rep.pairs) {
      CHECK(l2_inner(g, pr.phi, pr.phi) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(rayleigh(g, pr.phi) == doctest::Approx(pr.lambda).epsilon(1e-9));
      const auto sphi = matvec(g.S(), pr.phi.coefficients());
      CHECK(pr.residual <= 1e-10 * norm_inf(sphi));
    }
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < i; ++j)
        CHECK(std::abs(l2_inner(g, rep.pairs[i].phi, rep.pairs[j].phi)) <= 1e-9);

    const auto phi1 = sign_normalize(rep.pairs[0]).phi;
    CHECK(phi1.min_value() >= -1e-8 * phi1.max_value());
    const auto& c1 = phi1.coefficients();
    const auto& c2 = rep.pairs[1].phi.coefficients();
    double mx = 0.0;
    for (double c : c2) mx = std::max(mx, std::abs(c));
    bool pos = false, neg = false;
    for (double c : c2) {
      pos = pos || c > 1e-3 * mx;
      neg = neg || c < -1e-3 * mx;
    }
    CHECK((pos && neg));
    // even / odd under reflection of the symmetric mesh
    const std::size_t n = c1.size();
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(c1[i] - c1[n - 1 - i]) <= 1e-6);
      CHECK(std::abs(c2[i] + c2[n - 1 - i]) <= 1e-6);
    }
  }
}

TEST_CASE("first eigenvalue is stable under refinement") {
  auto m = make_interval_mesh(-1.0, 1.0, 257);
  const auto g1 = assemble(make_space(m), 0.5);
  const auto g2 = assemble(make_space(refine(m)), 0.5);
  const double l1 = smallest_eigenpairs(g1, 1).pairs[0].lambda;
  const double l2 = smallest_eigenpairs(g2, 1).pairs[0].lambda;
  CHECK(std::abs(l1 - l2) <= 5e-4 * l2);
}

TEST_CASE("2D disk eigenpairs flag the double eigenvalue") {
  auto sp = make_space(make_disk_mesh(1.0, 2));
  const auto g = assemble(sp, 0.9);
  const auto rep = smallest_eigenpairs(g, 3);
  CHECK(rep.pairs[1].lambda > rep.pairs[0].lambda * 1.1);
  CHECK(std::abs(rep.pairs[2].lambda - rep.pairs[1].lambda) <= 1e-6 * rep.pairs[1].lambda);
  CHECK(rep.near_degenerate[1]);
  const auto phi1 = sign_normalize(rep.pairs[0]).phi;
  CHECK(phi1.min_value() >= -1e-8 * phi1.max_value());
}
