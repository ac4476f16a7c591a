// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "nlfem/error.hpp"
#include "nlfem/quadrature.hpp"

namespace nlfem {

Mesh1D::Mesh1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 3) throw DomainError("a 1D mesh needs at least 3 nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i])) throw DomainError("non-finite mesh node");
    if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
      throw DomainError("mesh nodes must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
}

Mesh1D make_interval_mesh(double a, double b, std::size_t node_count) {
  if (!(a < b)) throw DomainError("interval endpoints must satisfy a < b");
  if (node_count < 3) throw DomainError("a 1D mesh needs at least 3 nodes");
  std::vector<double> x(node_count);
  const double h = (b - a) / static_cast<double>(node_count - 1);
  for (std::size_t i = 0; i < node_count; ++i) x[i] = a + h * static_cast<double>(i);
  x.back() = b;
  return Mesh1D(std::move(x));
}

Mesh1D refine(const Mesh1D& mesh) {
  const auto& x = mesh.nodes();
  std::vector<double> out;
  out.reserve(2 * x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    out.push_back(x[i]);
    out.push_back(0.5 * (x[i] + x[i + 1]));
  }
  out.push_back(x.back());
  return Mesh1D(std::move(out));
}

double signed_area(const Point2& a, const Point2& b, const Point2& c) {
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
}

namespace {

using Edge = std::array<std::size_t, 2>;

Edge edge_key(std::size_t a, std::size_t b) { return a < b ? Edge{a, b} : Edge{b, a}; }

}  // namespace

TriMesh::TriMesh(std::vector<Point2> vertices, std::vector<Triangle> triangles,
                 std::vector<std::size_t> boundary)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  const std::size_t nv = vertices_.size();
  if (nv < 3 || triangles_.empty()) throw DomainError("a triangulation needs vertices and triangles");
  double scale = 0.0;
  for (const auto& v : vertices_) {
    if (!std::isfinite(v[0]) || !std::isfinite(v[1])) throw DomainError("non-finite vertex");
    scale = std::max({scale, std::abs(v[0]), std::abs(v[1])});
  }
  std::map<Edge, std::vector<std::size_t>> owners;
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    auto& tri = triangles_[t];
    for (auto v : tri) {
      if (v >= nv) throw DomainError("triangle " + std::to_string(t) + " references a missing vertex");
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw DomainError("triangle " + std::to_string(t) + " repeats a vertex");
    }
    const double a = signed_area(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
    if (std::abs(a) <= 1e-14 * scale * scale) {
      throw DomainError("triangle " + std::to_string(t) + " is degenerate");
    }
    if (a < 0) std::swap(tri[1], tri[2]);
    for (int k = 0; k < 3; ++k) owners[edge_key(tri[k], tri[(k + 1) % 3])].push_back(t);
  }
  for (const auto& [e, ts] : owners) {
    if (ts.size() > 2) throw DomainError("edge shared by more than two triangles");
  }
  for (const auto& tri : triangles_) {
    for (int k = 0; k < 3; ++k) {
      const std::size_t a = tri[k], b = tri[(k + 1) % 3];
      if (owners[edge_key(a, b)].size() == 1) boundary_edges_.push_back({a, b});
    }
  }
  // A vertex strictly inside a boundary edge is a hanging node.
  for (const auto& e : boundary_edges_) {
    const Point2& p = vertices_[e[0]];
    const Point2& q = vertices_[e[1]];
    const double len2 = (q[0] - p[0]) * (q[0] - p[0]) + (q[1] - p[1]) * (q[1] - p[1]);
    for (std::size_t v = 0; v < nv; ++v) {
      if (v == e[0] || v == e[1]) continue;
      const Point2& x = vertices_[v];
      const double t = ((x[0] - p[0]) * (q[0] - p[0]) + (x[1] - p[1]) * (q[1] - p[1])) / len2;
      if (t <= 1e-12 || t >= 1 - 1e-12) continue;
      const double cr = (q[0] - p[0]) * (x[1] - p[1]) - (q[1] - p[1]) * (x[0] - p[0]);
      if (std::abs(cr) <= 1e-12 * len2) {
        throw DomainError("non-conforming triangulation: vertex " + std::to_string(v) +
                          " lies inside an edge");
      }
    }
  }
  on_boundary_.assign(nv, false);
  if (boundary.empty()) {
    for (const auto& e : boundary_edges_) on_boundary_[e[0]] = on_boundary_[e[1]] = true;
  } else {
    for (auto v : boundary) {
      if (v >= nv) throw DomainError("boundary index out of range");
      on_boundary_[v] = true;
    }
  }
  std::vector<bool> used(nv, false);
  for (const auto& tri : triangles_)
    for (auto v : tri) used[v] = true;
  for (std::size_t v = 0; v < nv; ++v) {
    if (!used[v]) throw DomainError("vertex " + std::to_string(v) + " belongs to no triangle");
  }
}

std::vector<std::size_t> TriMesh::boundary_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < on_boundary_.size(); ++v)
    if (on_boundary_[v]) out.push_back(v);
  return out;
}

std::vector<std::size_t> TriMesh::interior_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < on_boundary_.size(); ++v)
    if (!on_boundary_[v]) out.push_back(v);
  return out;
}

double TriMesh::area(std::size_t t) const {
  const auto& tri = triangles_.at(t);
  return signed_area(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
}

double TriMesh::total_area() const {
  double a = 0.0;
  for (std::size_t t = 0; t < triangles_.size(); ++t) a += area(t);
  return a;
}

double TriMesh::diameter() const {
  std::vector<std::size_t> pts;
  for (const auto& e : boundary_edges_) pts.push_back(e[0]);
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Point2& a = vertices_[pts[i]];
      const Point2& b = vertices_[pts[j]];
      d = std::max(d, std::hypot(a[0] - b[0], a[1] - b[1]));
    }
  }
  return d;
}

TriMesh refine(const TriMesh& mesh, const BoundaryProjection& project) {
  std::vector<Point2> verts = mesh.vertices();
  std::vector<std::size_t> boundary = mesh.boundary_vertices();
  std::map<Edge, bool> is_bnd;
  for (const auto& e : mesh.boundary_edges()) is_bnd[edge_key(e[0], e[1])] = true;
  std::map<Edge, std::size_t> mid;
  auto midpoint = [&](std::size_t a, std::size_t b) {
    const Edge k = edge_key(a, b);
    auto it = mid.find(k);
    if (it != mid.end()) return it->second;
    Point2 m{0.5 * (verts[a][0] + verts[b][0]), 0.5 * (verts[a][1] + verts[b][1])};
    const bool bnd = is_bnd.count(k) > 0;
    if (bnd && project) m = project(m);
    verts.push_back(m);
    const std::size_t idx = verts.size() - 1;
    if (bnd) boundary.push_back(idx);
    mid.emplace(k, idx);
    return idx;
  };
  std::vector<Triangle> tris;
  tris.reserve(4 * mesh.triangle_count());
  for (const auto& t : mesh.triangles()) {
    const std::size_t ab = midpoint(t[0], t[1]);
    const std::size_t bc = midpoint(t[1], t[2]);
    const std::size_t ca = midpoint(t[2], t[0]);
    tris.push_back({t[0], ab, ca});
    tris.push_back({ab, t[1], bc});
    tris.push_back({ca, bc, t[2]});
    tris.push_back({ab, bc, ca});
  }
  return TriMesh(std::move(verts), std::move(tris), std::move(boundary));
}

TriMesh make_disk_mesh(double radius, int level) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("disk radius must be positive");
  if (level < 0) throw DomainError("refinement level must be non-negative");
  std::vector<Point2> verts{{0.0, 0.0}};
  std::vector<Triangle> tris;
  std::vector<std::size_t> boundary;
  for (int k = 0; k < 6; ++k) {
    const double th = k * std::numbers::pi / 3.0;
    verts.push_back({radius * std::cos(th), radius * std::sin(th)});
    boundary.push_back(static_cast<std::size_t>(k + 1));
    tris.push_back({0, static_cast<std::size_t>(k + 1), static_cast<std::size_t>((k + 1) % 6 + 1)});
  }
  TriMesh mesh(std::move(verts), std::move(tris), std::move(boundary));
  const auto onto_circle = [radius](const Point2& p) {
    const double r = std::hypot(p[0], p[1]);
    return Point2{radius * p[0] / r, radius * p[1] / r};
  };
  for (int l = 0; l < level; ++l) mesh = refine(mesh, onto_circle);
  return mesh;
}

int mesh_dimension(const Mesh& mesh) { return std::holds_alternative<Mesh1D>(mesh) ? 1 : 2; }

FemSpace::FemSpace(Mesh mesh) : mesh_(std::move(mesh)), dim_(mesh_dimension(mesh_)) {
  if (dim_ == 1) {
    const auto& m = std::get<Mesh1D>(mesh_);
    const std::size_t n = m.node_count();
    vertex_to_dof_.assign(n, -1);
    for (std::size_t v = 1; v + 1 < n; ++v) {
      vertex_to_dof_[v] = static_cast<long>(dof_to_vertex_.size());
      dof_to_vertex_.push_back(v);
    }
    const GaussRule g = gauss_legendre(6);
    for (std::size_t e = 0; e + 1 < n; ++e) {
      const double x0 = m.nodes()[e], h = m.spacing(e);
      for (std::size_t k = 0; k < g.x.size(); ++k) {
        QuadPoint qp;
        qp.weight = g.w[k] * h;
        qp.x = {x0 + g.x[k] * h, 0.0};
        qp.dof = {vertex_to_dof_[e], vertex_to_dof_[e + 1], -1};
        qp.value = {1.0 - g.x[k], g.x[k], 0.0};
        quad_.push_back(qp);
      }
    }
  } else {
    const auto& m = std::get<TriMesh>(mesh_);
    const std::size_t n = m.vertex_count();
    vertex_to_dof_.assign(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
      if (m.is_boundary(v)) continue;
      vertex_to_dof_[v] = static_cast<long>(dof_to_vertex_.size());
      dof_to_vertex_.push_back(v);
    }
    const TriangleRule r = collapsed_triangle_rule(4);
    for (std::size_t t = 0; t < m.triangle_count(); ++t) {
      const auto& tri = m.triangles()[t];
      const Point2& a = m.vertices()[tri[0]];
      const Point2& b = m.vertices()[tri[1]];
      const Point2& c = m.vertices()[tri[2]];
      const double jac = 2.0 * m.area(t);
      for (std::size_t k = 0; k < r.w.size(); ++k) {
        const double u = r.xi[k][0], v = r.xi[k][1];
        QuadPoint qp;
        qp.weight = r.w[k] * jac;
        qp.x = {a[0] + u * (b[0] - a[0]) + v * (c[0] - a[0]),
                a[1] + u * (b[1] - a[1]) + v * (c[1] - a[1])};
        qp.dof = {vertex_to_dof_[tri[0]], vertex_to_dof_[tri[1]], vertex_to_dof_[tri[2]]};
        qp.value = {1.0 - u - v, u, v};
        quad_.push_back(qp);
      }
    }
  }
  if (dof_to_vertex_.empty()) throw DomainError("mesh has no interior vertices");
}

Point2 FemSpace::vertex_position(std::size_t vertex) const {
  if (dim_ == 1) return {std::get<Mesh1D>(mesh_).nodes().at(vertex), 0.0};
  return std::get<TriMesh>(mesh_).vertices().at(vertex);
}

double FemSpace::measure() const {
  if (dim_ == 1) {
    const auto& m = std::get<Mesh1D>(mesh_);
    return m.right() - m.left();
  }
  return std::get<TriMesh>(mesh_).total_area();
}

SpacePtr make_space(Mesh mesh) { return std::make_shared<const FemSpace>(std::move(mesh)); }

FemFunction::FemFunction(SpacePtr space) : space_(std::move(space)) {
  if (!space_) throw DomainError("null FEM space");
  coef_.assign(space_->size(), 0.0);
}

FemFunction::FemFunction(SpacePtr space, std::vector<double> coefficients)
    : space_(std::move(space)), coef_(std::move(coefficients)) {
  if (!space_) throw DomainError("null FEM space");
  if (coef_.size() != space_->size()) {
    throw DomainError("coefficient count " + std::to_string(coef_.size()) +
                      " does not match interior node count " + std::to_string(space_->size()));
  }
}

FemFunction FemFunction::interpolate(SpacePtr space, const std::function<double(const Point2&)>& f) {
  FemFunction u(std::move(space));
  for (std::size_t i = 0; i < u.size(); ++i) {
    u.coef_[i] = f(u.space_->vertex_position(u.space_->vertex_of(i)));
  }
  return u;
}

std::vector<double> FemFunction::vertex_values() const {
  std::vector<double> out(space_->vertex_count(), 0.0);
  for (std::size_t i = 0; i < coef_.size(); ++i) out[space_->vertex_of(i)] = coef_[i];
  return out;
}

double FemFunction::value_at(const Point2& x) const {
  const auto vals = vertex_values();
  if (space_->dimension() == 1) {
    const auto& nodes = std::get<Mesh1D>(space_->mesh()).nodes();
    if (x[0] <= nodes.front() || x[0] >= nodes.back()) return 0.0;
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), x[0]);
    const std::size_t e = static_cast<std::size_t>(it - nodes.begin()) - 1;
    const double t = (x[0] - nodes[e]) / (nodes[e + 1] - nodes[e]);
    return (1.0 - t) * vals[e] + t * vals[e + 1];
  }
  const auto& m = std::get<TriMesh>(space_->mesh());
  for (std::size_t t = 0; t < m.triangle_count(); ++t) {
    const auto& tri = m.triangles()[t];
    const Point2& a = m.vertices()[tri[0]];
    const Point2& b = m.vertices()[tri[1]];
    const Point2& c = m.vertices()[tri[2]];
    const double area = m.area(t);
    const double l0 = signed_area(x, b, c) / area;
    const double l1 = signed_area(a, x, c) / area;
    const double l2 = 1.0 - l0 - l1;
    const double tol = -1e-12;
    if (l0 >= tol && l1 >= tol && l2 >= tol) {
      return l0 * vals[tri[0]] + l1 * vals[tri[1]] + l2 * vals[tri[2]];
    }
  }
  return 0.0;
}

std::vector<double> FemFunction::quadrature_values() const {
  const auto& quad = space_->quadrature();
  std::vector<double> out(quad.size(), 0.0);
  for (std::size_t k = 0; k < quad.size(); ++k) {
    double v = 0.0;
    for (int j = 0; j < 3; ++j) {
      if (quad[k].dof[j] >= 0) v += quad[k].value[j] * coef_[static_cast<std::size_t>(quad[k].dof[j])];
    }
    out[k] = v;
  }
  return out;
}

// Boundary values are zero, so they take part in max/min.
double FemFunction::max_value() const {
  double m = 0.0;
  for (double c : coef_) m = std::max(m, c);
  return m;
}

double FemFunction::min_value() const {
  double m = 0.0;
  for (double c : coef_) m = std::min(m, c);
  return m;
}

bool FemFunction::is_zero() const {
  return std::all_of(coef_.begin(), coef_.end(), [](double c) { return c == 0.0; });
}

void FemFunction::check_compatible(const FemFunction& o) const {
  if (space_ != o.space_ && (!space_ || !o.space_ || space_->size() != o.space_->size())) {
    throw DomainError("FEM functions live on different meshes");
  }
  if (coef_.size() != o.coef_.size()) throw DomainError("FEM functions live on different meshes");
}

FemFunction& FemFunction::operator+=(const FemFunction& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] += o.coef_[i];
  return *this;
}

FemFunction& FemFunction::operator-=(const FemFunction& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] -= o.coef_[i];
  return *this;
}

FemFunction& FemFunction::operator*=(double a) {
  for (double& c : coef_) c *= a;
  return *this;
}

FemFunction operator+(FemFunction a, const FemFunction& b) { return a += b; }
FemFunction operator-(FemFunction a, const FemFunction& b) { return a -= b; }
FemFunction operator*(double a, FemFunction u) { return u *= a; }

}  // namespace nlfem
