#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nlfem/error.hpp"
#include "nlfem/mesh.hpp"

using namespace nlfem;

TEST_CASE("interval meshes") {
  const auto m3 = make_interval_mesh(-1.0, 1.0, 3);
  CHECK(m3.nodes() == std::vector<double>{-1.0, 0.0, 1.0});
  CHECK(m3.interior_count() == 1);

  const auto m5 = make_interval_mesh(-1.0, 1.0, 5);
  CHECK(m5.spacing(0) == doctest::Approx(0.5));
  CHECK(m5.nodes()[1] == doctest::Approx(-0.5));
  CHECK(m5.nodes()[3] == doctest::Approx(0.5));

  const auto m101 = make_interval_mesh(0.0, 1.0, 101);
  CHECK(m101.interior_count() == 99);
  for (std::size_t e = 0; e < m101.element_count(); ++e) CHECK(m101.spacing(e) == doctest::Approx(0.01));

  CHECK_THROWS_AS(make_interval_mesh(1.0, 1.0, 5), DomainError);
  CHECK_THROWS_AS(make_interval_mesh(2.0, 1.0, 5), DomainError);
  CHECK_THROWS_AS(make_interval_mesh(0.0, 1.0, 2), DomainError);
  CHECK_THROWS_AS(Mesh1D({0.0, 0.5, 0.5, 1.0}), DomainError);
  CHECK_THROWS_AS(Mesh1D({0.0, 1.0}), DomainError);
}

TEST_CASE("interval refinement inserts midpoints and keeps old nodes") {
  const auto r = refine(make_interval_mesh(-1.0, 1.0, 3));
  REQUIRE(r.node_count() == 5);
  const std::vector<double> expect{-1.0, -0.5, 0.0, 0.5, 1.0};
  for (std::size_t i = 0; i < 5; ++i) CHECK(r.nodes()[i] == doctest::Approx(expect[i]));

  const Mesh1D g({0.0, 0.1, 0.4, 1.0});
  const auto gr = refine(g);
  CHECK(gr.node_count() == 7);
  for (std::size_t i = 0; i < g.node_count(); ++i) CHECK(gr.nodes()[2 * i] == g.nodes()[i]);
}

TEST_CASE("disk meshes") {
  const auto d0 = make_disk_mesh(1.0, 0);
  CHECK(d0.triangle_count() == 6);
  CHECK(d0.interior_vertices().size() == 1);
  const auto d1 = make_disk_mesh(1.0, 1);
  CHECK(d1.triangle_count() == 24);
  const auto d3 = make_disk_mesh(1.0, 3);
  CHECK(std::abs(d3.total_area() - std::numbers::pi) <= 0.02 * std::numbers::pi);
  // inscribed polygon deficit: area below pi, but above the regular 96-gon area
  const double n = double(d3.boundary_edges().size());
  CHECK(d3.total_area() < std::numbers::pi);
  CHECK(d3.total_area() >= 0.5 * n * std::sin(2.0 * std::numbers::pi / n) - 1e-12);
  for (std::size_t v : d3.boundary_vertices()) {
    const auto& x = d3.vertices()[v];
    CHECK(std::hypot(x[0], x[1]) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(make_disk_mesh(0.0, 1), DomainError);
  CHECK_THROWS_AS(make_disk_mesh(-1.0, 1), DomainError);
}

TEST_CASE("triangulation invariants") {
  const auto d = make_disk_mesh(2.0, 2);
  for (std::size_t t = 0; t < d.triangle_count(); ++t) {
    const auto& tri = d.triangles()[t];
    CHECK(signed_area(d.vertices()[tri[0]], d.vertices()[tri[1]], d.vertices()[tri[2]]) > 0.0);
  }
  const auto b = d.boundary_vertices(), in = d.interior_vertices();
  CHECK(b.size() + in.size() == d.vertex_count());
  for (std::size_t v : in) CHECK(std::find(b.begin(), b.end(), v) == b.end());

  const auto r = refine(d);
  CHECK(r.triangle_count() == 4 * d.triangle_count());
  for (std::size_t v = 0; v < d.vertex_count(); ++v) {
    CHECK(r.vertices()[v][0] == d.vertices()[v][0]);
    CHECK(r.vertices()[v][1] == d.vertices()[v][1]);
  }
}

TEST_CASE("triangulation validation") {
  const std::vector<Point2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  // clockwise input is reoriented
  const TriMesh cw(sq, {{0, 2, 1}, {0, 3, 2}});
  for (const auto& t : cw.triangles()) CHECK(signed_area(sq[t[0]], sq[t[1]], sq[t[2]]) > 0.0);
  CHECK(cw.boundary_vertices().size() == 4);
  CHECK(cw.total_area() == doctest::Approx(1.0));

  CHECK_THROWS_AS(TriMesh(sq, {{0, 1, 4}}), DomainError);
  CHECK_THROWS_AS(TriMesh(sq, {{0, 1, 1}, {0, 2, 3}}), DomainError);
  CHECK_THROWS_AS(TriMesh({{0, 0}, {1, 0}, {2, 0}}, {{0, 1, 2}}), DomainError);
  CHECK_THROWS_AS(TriMesh(sq, {{0, 1, 2}}), DomainError);  // unused vertex
  // hanging node: vertex 4 sits on the edge of triangle (0,1,2)
  const std::vector<Point2> hang{{0, 0}, {2, 0}, {1, 1}, {1, -1}, {1, 0}};
  CHECK_THROWS_AS(TriMesh(hang, {{0, 1, 2}, {0, 3, 4}, {4, 3, 1}}), DomainError);
  // an edge shared by three triangles
  const std::vector<Point2> fan{{0, 0}, {1, 0}, {0.5, 1}, {0.5, -1}, {0.5, 2}};
  CHECK_THROWS_AS(TriMesh(fan, {{0, 1, 2}, {0, 3, 1}, {0, 1, 4}}), DomainError);
}

TEST_CASE("spaces and functions") {
  auto sp = make_space(make_interval_mesh(-1.0, 1.0, 9));
  CHECK(sp->size() == 7);
  CHECK(sp->measure() == doctest::Approx(2.0));
  const auto id = FemFunction::interpolate(sp, [](const Point2& x) { return x[0]; });
  const auto& nodes = std::get<Mesh1D>(sp->mesh()).nodes();
  for (std::size_t i = 0; i < sp->size(); ++i) CHECK(id[i] == nodes[i + 1]);
  CHECK(id.value_at({0.125, 0.0}) == doctest::Approx(0.125));
  CHECK(id.value_at({2.0, 0.0}) == 0.0);
  CHECK(id.value_at({-0.875, 0.0}) == doctest::Approx(-0.75 / 2));
  CHECK(id.max_value() == doctest::Approx(0.75));
  CHECK(id.min_value() == doctest::Approx(-0.75));

  const auto pos = FemFunction(sp, std::vector<double>(7, 1.0));
  CHECK(pos.min_value() == 0.0);
  auto sum = id + pos;
  CHECK(sum[0] == doctest::Approx(0.25));
  sum -= pos;
  CHECK(sum[3] == doctest::Approx(id[3]));
  CHECK((2.0 * id)[6] == doctest::Approx(1.5));
  CHECK(FemFunction(sp).is_zero());
  CHECK_THROWS_AS(FemFunction(sp, std::vector<double>(3, 0.0)), DomainError);

  auto other = make_space(make_interval_mesh(-1.0, 1.0, 11));
  CHECK_THROWS_AS(id + FemFunction(other), DomainError);

  CHECK_THROWS_AS(make_space(Mesh(TriMesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}}))), DomainError);
}

TEST_CASE("2D function evaluation reproduces affine data") {
  auto sp = make_space(make_disk_mesh(1.0, 2));
  CHECK(sp->dimension() == 2);
  const auto f = FemFunction::interpolate(sp, [](const Point2& x) { return 1.0 + 0.0 * x[0]; });
  CHECK(f.value_at({0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(f.value_at({2.0, 0.0}) == 0.0);
  double wsum = 0.0;
  for (const auto& q : sp->quadrature()) wsum += q.weight;
  CHECK(wsum == doctest::Approx(std::get<TriMesh>(sp->mesh()).total_area()).epsilon(1e-12));
}
