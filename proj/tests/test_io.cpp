#include <cmath>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "nlfem/error.hpp"
#include "nlfem/io.hpp"

using namespace nlfem;

TEST_CASE("mesh round trip") {
  const Mesh a = Mesh1D({-1.0, -0.3, 0.1 / 3.0, 0.7, 1.0});
  const Mesh b = mesh_from_json(mesh_to_json(a));
  CHECK(std::get<Mesh1D>(b).nodes() == std::get<Mesh1D>(a).nodes());

  const Mesh d = make_disk_mesh(1.0, 1);
  const Mesh e = mesh_from_json(mesh_to_json(d));
  const auto& td = std::get<TriMesh>(d);
  const auto& te = std::get<TriMesh>(e);
  CHECK(te.vertices() == td.vertices());
  CHECK(te.triangles() == td.triangles());
  CHECK(te.boundary_vertices() == td.boundary_vertices());
  CHECK(mesh_to_json(e) == mesh_to_json(d));
}

TEST_CASE("system round trip") {
  const GramPair g = assemble(make_space(make_interval_mesh(-1.0, 1.0, 12)), 0.35);
  const GramPair h = system_from_json(system_to_json(g));
  CHECK(h.kernel().order() == 0.35);
  REQUIRE(h.size() == g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      CHECK(h.S()(i, j) == g.S()(i, j));
      CHECK(h.M()(i, j) == g.M()(i, j));
    }
  }
  CHECK(system_to_json(h) == system_to_json(g));
}

TEST_CASE("solution round trip and plot data") {
  auto sp = make_space(make_interval_mesh(0.0, 2.0, 6));
  SolutionRecord rec{FemFunction(sp, {0.1, -2.0 / 3.0, 1e-300, 4.0}), 4.0, 0.3, 0.291, 3e-3};
  const auto back = solution_from_json(solution_to_json(rec));
  CHECK(back.u.coefficients() == rec.u.coefficients());
  CHECK(back.p == 4.0);
  CHECK(back.s == 0.3);
  CHECK(back.energy == 0.291);
  CHECK(back.grad_norm == 3e-3);

  std::istringstream in(plot_data(rec.u));
  double x, u, prev = -1.0;
  int lines = 0;
  while (in >> x >> u) {
    CHECK(x > prev);
    prev = x;
    ++lines;
  }
  CHECK(lines == 6);

  auto disk = make_space(make_disk_mesh(1.0, 1));
  const auto p2 = plot_data(FemFunction(disk));
  std::istringstream in2(p2.substr(0, p2.find('\n')));
  double a, b, c, d;
  CHECK(static_cast<bool>(in2 >> a >> b >> c));
  CHECK_FALSE(static_cast<bool>(in2 >> d));
}

TEST_CASE("malformed and invalid documents") {
  CHECK_THROWS_AS(mesh_from_json("{ not json"), IoError);
  CHECK_THROWS_AS(mesh_from_json("{\"dim\": 1}"), IoError);
  CHECK_THROWS_AS(system_from_json("[]"), IoError);
  CHECK_THROWS_AS(solution_from_json("{\"mesh\": 3}"), IoError);
  CHECK_THROWS_AS(mesh_from_json(R"({"dim":3,"nodes":[],"elements":[],"boundary":[]})"), DomainError);
  CHECK_THROWS_AS(mesh_from_json(R"({"dim":1,"nodes":[[0],[1],[2]],"elements":[[0,2],[1,2]],"boundary":[0,2]})"),
                  DomainError);
  CHECK_THROWS_AS(mesh_from_json(R"({"dim":1,"nodes":[[0],[2],[1]],"elements":[[0,1],[1,2]],"boundary":[0,2]})"),
                  DomainError);
  CHECK_THROWS_AS(mesh_from_json(R"({"dim":2,"nodes":[[0,0],[1,0]],"elements":[[0,1]],"boundary":[0,1]})"),
                  DomainError);
}

TEST_CASE("file helpers") {
  const auto dir = std::filesystem::temp_directory_path() / "nlfem_test_io";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "x.txt").string();
  write_file(path, "abc\n");
  CHECK(read_file(path) == "abc\n");
  CHECK_THROWS_AS(read_file((dir / "missing.json").string()), IoError);
  CHECK_THROWS_AS(write_file((dir / "no" / "such" / "f").string(), "x"), IoError);
  std::filesystem::remove_all(dir);
}
