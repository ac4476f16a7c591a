// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <variant>
#include <vector>

namespace nlfem {

using Point2 = std::array<double, 2>;

/// Partition x_1 < ... < x_M of the interval (x_1, x_M). The first and last
/// nodes carry the Dirichlet constraint; interior nodes are the unknowns.
class Mesh1D {
 public:
  explicit Mesh1D(std::vector<double> nodes);

  const std::vector<double>& nodes() const { return nodes_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t element_count() const { return nodes_.size() - 1; }
  std::size_t interior_count() const { return nodes_.size() - 2; }
  double left() const { return nodes_.front(); }
  double right() const { return nodes_.back(); }
  double spacing(std::size_t element) const { return nodes_[element + 1] - nodes_[element]; }

 private:
  std::vector<double> nodes_;
};

Mesh1D make_interval_mesh(double a, double b, std::size_t node_count);
/// Midpoint insertion: M nodes become 2M-1.
Mesh1D refine(const Mesh1D& mesh);

using Triangle = std::array<std::size_t, 3>;

/// Conforming triangulation with positively oriented triangles. Vertices on
/// the boundary of the triangulated region are Dirichlet vertices.
class TriMesh {
 public:
  /// Validates conformity and orientation (negatively oriented triangles are
  /// reoriented; degenerate ones are rejected). When `boundary` is empty the
  /// boundary vertices are detected from the edges owned by one triangle.
  TriMesh(std::vector<Point2> vertices, std::vector<Triangle> triangles,
          std::vector<std::size_t> boundary = {});

  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<bool>& boundary_flags() const { return on_boundary_; }
  bool is_boundary(std::size_t v) const { return on_boundary_[v]; }
  std::vector<std::size_t> boundary_vertices() const;
  std::vector<std::size_t> interior_vertices() const;
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t triangle_count() const { return triangles_.size(); }

  double area(std::size_t t) const;
  double total_area() const;
  /// Edges owned by exactly one triangle, oriented as in that triangle, so for
  /// positively oriented meshes they run counter-clockwise around the region.
  const std::vector<std::array<std::size_t, 2>>& boundary_edges() const { return boundary_edges_; }
  double diameter() const;

 private:
  std::vector<Point2> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<bool> on_boundary_;
  std::vector<std::array<std::size_t, 2>> boundary_edges_;
};

double signed_area(const Point2& a, const Point2& b, const Point2& c);

/// Maps a new boundary midpoint onto the true boundary (identity when empty).
using BoundaryProjection = std::function<Point2(const Point2&)>;

/// Regular 1-to-4 split. Old vertices keep their indices and coordinates.
TriMesh refine(const TriMesh& mesh, const BoundaryProjection& project = {});

/// Hexagonal fan of 6 triangles around the origin, refined `level` times with
/// new boundary vertices placed on the circle of radius R.
TriMesh make_disk_mesh(double radius, int level);

using Mesh = std::variant<Mesh1D, TriMesh>;

int mesh_dimension(const Mesh& mesh);

/// Quadrature point of the P1 space: weight, position, and the (dof, value)
/// pairs of basis functions that do not vanish there (dof < 0 means a
/// Dirichlet vertex).
struct QuadPoint {
  double weight = 0.0;
  Point2 x{0.0, 0.0};
  std::array<long, 3> dof{-1, -1, -1};
  std::array<double, 3> value{0.0, 0.0, 0.0};
};

/// P1 finite element space on a mesh with zero Dirichlet values on the
/// boundary vertices (and, implicitly, outside the domain).
class FemSpace {
 public:
  explicit FemSpace(Mesh mesh);

  const Mesh& mesh() const { return mesh_; }
  int dimension() const { return dim_; }
  std::size_t size() const { return dof_to_vertex_.size(); }
  std::size_t vertex_of(std::size_t dof) const { return dof_to_vertex_[dof]; }
  /// -1 for Dirichlet vertices.
  long dof_of(std::size_t vertex) const { return vertex_to_dof_[vertex]; }
  std::size_t vertex_count() const { return vertex_to_dof_.size(); }
  Point2 vertex_position(std::size_t vertex) const;

  /// Element-wise Gauss rule used for every nonlinear integral (6 points per
  /// interval, degree-7 collapsed rule per triangle).
  const std::vector<QuadPoint>& quadrature() const { return quad_; }

  double measure() const;

 private:
  Mesh mesh_;
  int dim_;
  std::vector<std::size_t> dof_to_vertex_;
  std::vector<long> vertex_to_dof_;
  std::vector<QuadPoint> quad_;
};

using SpacePtr = std::shared_ptr<const FemSpace>;

SpacePtr make_space(Mesh mesh);

/// Coefficient vector over the interior nodes of a space; the represented
/// function is the P1 interpolant, extended by zero outside the domain.
class FemFunction {
 public:
  FemFunction() = default;
  explicit FemFunction(SpacePtr space);
  FemFunction(SpacePtr space, std::vector<double> coefficients);

  /// Nodal interpolation of f (Dirichlet vertices are left at zero).
  static FemFunction interpolate(SpacePtr space, const std::function<double(const Point2&)>& f);

  const SpacePtr& space() const { return space_; }
  const std::vector<double>& coefficients() const { return coef_; }
  std::vector<double>& coefficients() { return coef_; }
  std::size_t size() const { return coef_.size(); }
  double operator[](std::size_t i) const { return coef_[i]; }

  /// Values at every mesh vertex (zeros on Dirichlet vertices).
  std::vector<double> vertex_values() const;
  /// Point evaluation of the P1 function; zero outside the mesh.
  double value_at(const Point2& x) const;
  /// Values at the shared quadrature points.
  std::vector<double> quadrature_values() const;

  double max_value() const;
  double min_value() const;
  bool is_zero() const;

  FemFunction& operator+=(const FemFunction& o);
  FemFunction& operator-=(const FemFunction& o);
  FemFunction& operator*=(double a);

 private:
  void check_compatible(const FemFunction& o) const;

  SpacePtr space_;
  std::vector<double> coef_;
};

FemFunction operator+(FemFunction a, const FemFunction& b);
FemFunction operator-(FemFunction a, const FemFunction& b);
FemFunction operator*(double a, FemFunction u);

}  // namespace nlfem
