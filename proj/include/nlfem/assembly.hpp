// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>

#include "nlfem/kernel.hpp"
#include "nlfem/linalg.hpp"
#include "nlfem/mesh.hpp"

namespace nlfem {

using Potential = std::function<double(const Point2&)>;

struct AssemblyOptions {
  /// V; empty means V = 0.
  Potential potential;
  int duffy_order = 8;
  /// 2D: non-touching pairs closer than this many element diameters are
  /// integrated on recursively subdivided triangles.
  double separation = 1.0;
  /// 2D exterior truncation radius as a multiple of the domain diameter.
  double exterior_radius_factor = 5.0;
  int annulus_level = 2;
};

/// Stiffness-plus-potential matrix S and mass matrix M over the interior
/// basis functions of a P1 space. Copies share the lazily built factors.
class GramPair {
 public:
  GramPair(SpacePtr space, FractionalKernel kernel, SymMatrix stiffness, SymMatrix mass);

  const SpacePtr& space() const { return space_; }
  const FractionalKernel& kernel() const { return kernel_; }
  const SymMatrix& S() const { return s_; }
  const SymMatrix& M() const { return m_; }
  std::size_t size() const { return s_.order(); }

  /// Cholesky factor of S; throws IndefiniteError when S is not positive definite.
  const Cholesky& stiffness_factor() const;
  const Cholesky& mass_factor() const;

 private:
  struct Factors;
  SpacePtr space_;
  FractionalKernel kernel_;
  SymMatrix s_;
  SymMatrix m_;
  std::shared_ptr<Factors> factors_;
};

GramPair assemble_1d(SpacePtr space, const FractionalKernel& kernel, const AssemblyOptions& opts = {});
GramPair assemble_2d(SpacePtr space, const FractionalKernel& kernel, const AssemblyOptions& opts = {});
/// Dispatches on the mesh dimension.
GramPair assemble(SpacePtr space, double s, const AssemblyOptions& opts = {});

/// Exact P1 mass matrix over the interior basis functions.
SymMatrix mass_matrix(const FemSpace& space);

double h_inner(const GramPair& gram, const FemFunction& u, const FemFunction& v);
double l2_inner(const GramPair& gram, const FemFunction& u, const FemFunction& v);
/// (int |u|^p)^(1/p) by the space's element Gauss rule.
double lp_norm(const GramPair& gram, const FemFunction& u, double p);
/// int |u|^p.
double lp_power(const FemFunction& u, double p);

/// Nodal clamping: positive_part(u) + negative_part(u) == u exactly.
FemFunction positive_part(const FemFunction& u);
FemFunction negative_part(const FemFunction& u);

}  // namespace nlfem
