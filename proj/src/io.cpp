// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlfem/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nlfem/error.hpp"

namespace nlfem {

using nlohmann::json;

namespace {

json mesh_json(const Mesh& mesh) {
  json j;
  if (const auto* m = std::get_if<Mesh1D>(&mesh)) {
    j["dim"] = 1;
    json nodes = json::array(), elems = json::array();
    for (double x : m->nodes()) nodes.push_back({x});
    for (std::size_t e = 0; e < m->element_count(); ++e) elems.push_back({e, e + 1});
    j["nodes"] = nodes;
    j["elements"] = elems;
    j["boundary"] = {0, m->node_count() - 1};
  } else {
    const auto& t = std::get<TriMesh>(mesh);
    j["dim"] = 2;
    json nodes = json::array(), elems = json::array();
    for (const auto& v : t.vertices()) nodes.push_back({v[0], v[1]});
    for (const auto& tri : t.triangles()) elems.push_back({tri[0], tri[1], tri[2]});
    j["nodes"] = nodes;
    j["elements"] = elems;
    j["boundary"] = t.boundary_vertices();
  }
  return j;
}

Mesh mesh_parse(const json& j) {
  const int dim = j.at("dim").get<int>();
  const auto& nodes = j.at("nodes");
  const auto& elems = j.at("elements");
  const auto boundary = j.at("boundary").get<std::vector<std::size_t>>();
  if (dim == 1) {
    std::vector<double> x;
    for (const auto& n : nodes) {
      if (n.size() != 1) throw DomainError("1D mesh nodes must have one coordinate");
      x.push_back(n[0].get<double>());
    }
    for (std::size_t e = 0; e < elems.size(); ++e) {
      const auto ij = elems[e].get<std::vector<std::size_t>>();
      if (ij.size() != 2 || ij[0] != e || ij[1] != e + 1) {
        throw DomainError("1D mesh elements must connect consecutive nodes");
      }
    }
    if (elems.size() + 1 != x.size()) throw DomainError("1D mesh element count mismatch");
    if (boundary.size() != 2 || boundary[0] != 0 || boundary[1] != x.size() - 1) {
      throw DomainError("1D mesh boundary must be the first and last node");
    }
    return Mesh1D(std::move(x));
  }
  if (dim != 2) throw DomainError("mesh dimension must be 1 or 2");
  std::vector<Point2> v;
  for (const auto& n : nodes) {
    if (n.size() != 2) throw DomainError("2D mesh nodes must have two coordinates");
    v.push_back({n[0].get<double>(), n[1].get<double>()});
  }
  std::vector<Triangle> t;
  for (const auto& e : elems) {
    const auto ijk = e.get<std::vector<std::size_t>>();
    if (ijk.size() != 3) throw DomainError("2D mesh elements must be triangles");
    t.push_back({ijk[0], ijk[1], ijk[2]});
  }
  return TriMesh(std::move(v), std::move(t), boundary);
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed JSON: ") + e.what());
  }
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw IoError(std::string("invalid document: ") + e.what());
  }
}

}  // namespace

std::string mesh_to_json(const Mesh& mesh) { return mesh_json(mesh).dump(1); }

Mesh mesh_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded([&] { return mesh_parse(j); });
}

std::string system_to_json(const GramPair& gram) {
  json j;
  j["mesh"] = mesh_json(gram.space()->mesh());
  j["s"] = gram.kernel().order();
  j["S"] = gram.S().row_major_upper();
  j["M"] = gram.M().row_major_upper();
  return j.dump();
}

GramPair system_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded([&] {
    auto space = make_space(mesh_parse(j.at("mesh")));
    const double s = j.at("s").get<double>();
    const auto sv = j.at("S").get<std::vector<double>>();
    const auto mv = j.at("M").get<std::vector<double>>();
    const std::size_t n = space->size();
    return GramPair(space, FractionalKernel(space->dimension(), s),
                    SymMatrix::from_row_major_upper(n, sv), SymMatrix::from_row_major_upper(n, mv));
  });
}

std::string solution_to_json(const SolutionRecord& rec) {
  json j;
  j["mesh"] = mesh_json(rec.u.space()->mesh());
  j["coefficients"] = rec.u.coefficients();
  j["p"] = rec.p;
  j["s"] = rec.s;
  j["energy"] = rec.energy;
  j["grad_norm"] = rec.grad_norm;
  return j.dump(1);
}

SolutionRecord solution_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded([&] {
    auto space = make_space(mesh_parse(j.at("mesh")));
    SolutionRecord rec;
    rec.u = FemFunction(space, j.at("coefficients").get<std::vector<double>>());
    rec.p = j.value("p", 0.0);
    rec.s = j.value("s", 0.0);
    rec.energy = j.value("energy", 0.0);
    rec.grad_norm = j.value("grad_norm", 0.0);
    return rec;
  });
}

std::string eigen_to_json(const EigenReport& rep, const std::vector<std::string>& phi_files) {
  json j;
  json lam = json::array(), res = json::array(), deg = json::array();
  for (std::size_t i = 0; i < rep.pairs.size(); ++i) {
    lam.push_back(rep.pairs[i].lambda);
    res.push_back(rep.pairs[i].residual);
    deg.push_back(static_cast<bool>(rep.near_degenerate[i]));
  }
  j["lambdas"] = lam;
  j["residuals"] = res;
  j["near_degenerate"] = deg;
  j["iterations"] = rep.iterations;
  j["phis"] = phi_files;
  return j.dump(1);
}

std::string plot_data(const FemFunction& u) {
  const auto vals = u.vertex_values();
  std::ostringstream os;
  char buf[96];
  const FemSpace& sp = *u.space();
  for (std::size_t v = 0; v < sp.vertex_count(); ++v) {
    const Point2 x = sp.vertex_position(v);
    if (sp.dimension() == 1) {
      std::snprintf(buf, sizeof buf, "%.10g %.10g\n", x[0], vals[v]);
    } else {
      std::snprintf(buf, sizeof buf, "%.10g %.10g %.10g\n", x[0], x[1], vals[v]);
    }
    os << buf;
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace nlfem
