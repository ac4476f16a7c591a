// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlfem/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <tuple>

#include "nlfem/error.hpp"
#include "nlfem/quadrature.hpp"

namespace nlfem {

struct GramPair::Factors {
  std::once_flag s_once;
  std::once_flag m_once;
  std::optional<Cholesky> s;
  std::optional<Cholesky> m;
};

GramPair::GramPair(SpacePtr space, FractionalKernel kernel, SymMatrix stiffness, SymMatrix mass)
    : space_(std::move(space)),
      kernel_(kernel),
      s_(std::move(stiffness)),
      m_(std::move(mass)),
      factors_(std::make_shared<Factors>()) {
  if (!space_) throw DomainError("null FEM space");
  if (s_.order() != space_->size() || m_.order() != space_->size()) {
    throw DomainError("Gram matrices do not match the space dimension");
  }
}

const Cholesky& GramPair::stiffness_factor() const {
  std::call_once(factors_->s_once, [this] { factors_->s.emplace(s_); });
  if (!factors_->s) throw IndefiniteError("stiffness factorization failed earlier", 0);
  return *factors_->s;
}

const Cholesky& GramPair::mass_factor() const {
  std::call_once(factors_->m_once, [this] { factors_->m.emplace(m_); });
  if (!factors_->m) throw IndefiniteError("mass factorization failed earlier", 0);
  return *factors_->m;
}

namespace {

// c0 + cx (x - o) + cy (y - o).
struct Lin {
  double c0 = 0.0, cx = 0.0, cy = 0.0;
};

BivariatePoly times(const Lin& a, const Lin& b, double o) {
  BivariatePoly p;
  p.x0 = p.y0 = o;
  p(0, 0) = a.c0 * b.c0;
  p(1, 0) = a.c0 * b.cx + a.cx * b.c0;
  p(0, 1) = a.c0 * b.cy + a.cy * b.c0;
  p(2, 0) = a.cx * b.cx;
  p(0, 2) = a.cy * b.cy;
  p(1, 1) = a.cx * b.cy + a.cy * b.cx;
  return p;
}

class Assembler1D {
 public:
  Assembler1D(const Mesh1D& mesh, double gamma) : x_(mesh.nodes()), gamma_(gamma) {}

  // phi_n restricted to element k as c0 + c1 (t - o).
  std::pair<double, double> piece(std::size_t n, std::size_t k, double o) const {
    if (k + 1 == n) {
      const double h = x_[n] - x_[n - 1];
      return {(o - x_[n - 1]) / h, 1.0 / h};
    }
    if (k == n) {
      const double h = x_[n + 1] - x_[n];
      return {(x_[n + 1] - o) / h, -1.0 / h};
    }
    return {0.0, 0.0};
  }
  Lin in_x(std::size_t n, std::size_t k, double o) const {
    const auto [c0, c1] = piece(n, k, o);
    return {c0, c1, 0.0};
  }
  Lin in_y(std::size_t n, std::size_t k, double o) const {
    const auto [c0, c1] = piece(n, k, o);
    return {c0, 0.0, c1};
  }
  static Lin diff(const Lin& fx, const Lin& fy) { return {fx.c0 - fy.c0, fx.cx, -fy.cy}; }

  double elem(std::size_t ka, std::size_t kb, const BivariatePoly& q) const {
    return elem_integral_1d(x_[ka], x_[ka + 1], x_[kb], x_[kb + 1], gamma_, q);
  }

  // Integral of |x-y|^-gamma (phi_n(x)-phi_n(y))(phi_m(x)-phi_m(y)) over
  // element pair (ka, kb), ka < kb, with x in ka and y in kb.
  double pair_diff(std::size_t n, std::size_t m, std::size_t ka, std::size_t kb) const {
    const double o = x_[n];
    const Lin dn = diff(in_x(n, ka, o), in_y(n, kb, o));
    const Lin dm = diff(in_x(m, ka, o), in_y(m, kb, o));
    return elem(ka, kb, times(dn, dm, o));
  }

  double self_diff(std::size_t n, std::size_t m, std::size_t k) const {
    const double o = x_[n];
    const Lin dn = diff(in_x(n, k, o), in_y(n, k, o));
    const Lin dm = diff(in_x(m, k, o), in_y(m, k, o));
    return self_integral_1d(x_[k], x_[k + 1], gamma_, times(dn, dm, o));
  }

  // Integral over element k of phi_n phi_m (x) times the integral of
  // |x-y|^-gamma over y < left and y > right.
  double strip(std::size_t n, std::size_t m, std::size_t k, double left, double right) const {
    const double o = x_[n];
    double total = 0.0;
    // x ranges over element k; as the second variable for the left strip.
    const BivariatePoly qy = times(in_y(n, k, o), in_y(m, k, o), o);
    total += elem_integral_1d(-kInf, left, x_[k], x_[k + 1], gamma_, qy);
    const BivariatePoly qx = times(in_x(n, k, o), in_x(m, k, o), o);
    total += elem_integral_1d(x_[k], x_[k + 1], right, kInf, gamma_, qx);
    return total;
  }

  double diagonal(std::size_t n) const {
    const std::size_t l = n - 1, r = n;
    const double ext = strip(n, n, l, x_[n - 1], x_[n + 1]) + strip(n, n, r, x_[n - 1], x_[n + 1]);
    const double self = self_diff(n, n, l) + self_diff(n, n, r) + 2.0 * pair_diff(n, n, l, r);
    return 2.0 * ext + self;
  }

  double neighbor(std::size_t n) const {
    const std::size_t m = n + 1;
    const std::size_t L = n - 1, C = n, R = n + 1;
    const double o = x_[n];
    const double t1 = pair_diff(n, m, L, C);
    const double t2 = self_diff(n, m, C);
    const double t3 = pair_diff(n, m, C, R);
    const double t4 = strip(n, m, C, x_[n - 1], x_[n + 2]);
    // x in L, y in R: only -phi_n(x) phi_m(y) survives.
    const double t5 = elem(L, R, times(in_x(n, L, o), in_y(m, R, o), o));
    return 2.0 * t1 + t2 + 2.0 * t3 + 2.0 * t4 - 2.0 * t5;
  }

  // Sum over support element pairs of int phi_n(x) phi_m(y) |x-y|^-gamma, m >= n+2.
  double far(std::size_t n, std::size_t m) const {
    const double o = x_[n];
    double total = 0.0;
    for (std::size_t ka : {n - 1, n})
      for (std::size_t kb : {m - 1, m}) total += elem(ka, kb, times(in_x(n, ka, o), in_y(m, kb, o), o));
    return total;
  }

 private:
  const std::vector<double>& x_;
  double gamma_;
};

}  // namespace

GramPair assemble_1d(SpacePtr space, const FractionalKernel& kernel, const AssemblyOptions& opts) {
  if (!space || space->dimension() != 1) throw DomainError("assemble_1d needs a 1D space");
  if (kernel.dimension() != 1) throw DomainError("assemble_1d needs a 1D kernel");
  const auto& mesh = std::get<Mesh1D>(space->mesh());
  const auto& x = mesh.nodes();
  const std::size_t n = space->size();
  const double c = kernel.constant();
  const double half_c = 0.5 * c;
  Assembler1D asm1(mesh, kernel.exponent());
  SymMatrix S(n), M;

  // Far entries depend only on the relative geometry, so identical
  // configurations (uniform meshes) are computed once.
  const double scale = mesh.right() - mesh.left();
  auto q = [scale](double v) { return std::llround(v / scale * 1e12); };
  std::map<std::tuple<long long, long long, long long, long long, long long>, double> far_cache;

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t vi = i + 1;
    S.at(i, i) = half_c * asm1.diagonal(vi);
    if (i + 1 < n) S.at(i, i + 1) = half_c * asm1.neighbor(vi);
    for (std::size_t j = i + 2; j < n; ++j) {
      const std::size_t vj = j + 1;
      const auto key = std::make_tuple(q(x[vi] - x[vi - 1]), q(x[vi + 1] - x[vi]),
                                       q(x[vj - 1] - x[vi + 1]), q(x[vj] - x[vj - 1]),
                                       q(x[vj + 1] - x[vj]));
      auto it = far_cache.find(key);
      if (it == far_cache.end()) it = far_cache.emplace(key, -c * asm1.far(vi, vj)).first;
      S.at(i, j) = it->second;
    }
  }
  M = mass_matrix(*space);
  if (opts.potential) {
    SymMatrix Vm(n);
    for (const auto& qp : space->quadrature()) {
      const double vq = opts.potential(qp.x) * qp.weight;
      for (int a = 0; a < 2; ++a) {
        if (qp.dof[a] < 0) continue;
        for (int b = a; b < 2; ++b) {
          if (qp.dof[b] < 0) continue;
          const double w = vq * qp.value[a] * qp.value[b];
          Vm.add(static_cast<std::size_t>(qp.dof[a]), static_cast<std::size_t>(qp.dof[b]),
                 w);
        }
      }
    }
    S += Vm;
  }
  return GramPair(std::move(space), kernel, std::move(S), std::move(M));
}

namespace {

double dist(const Point2& a, const Point2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

struct TriData {
  std::array<std::size_t, 3> v;
  std::array<Point2, 3> p;
  std::array<Point2, 3> grad;  // gradients of the barycentric coordinates
  double area;
  Point2 centroid;
  double radius;  // max distance centroid-vertex
  double diam;
};

TriData make_tri(const TriMesh& mesh, std::size_t t) {
  TriData d;
  d.v = mesh.triangles()[t];
  for (int k = 0; k < 3; ++k) d.p[k] = mesh.vertices()[d.v[k]];
  d.area = mesh.area(t);
  for (int k = 0; k < 3; ++k) {
    const Point2& b = d.p[(k + 1) % 3];
    const Point2& c = d.p[(k + 2) % 3];
    d.grad[k] = {(b[1] - c[1]) / (2.0 * d.area), (c[0] - b[0]) / (2.0 * d.area)};
  }
  d.centroid = {(d.p[0][0] + d.p[1][0] + d.p[2][0]) / 3.0, (d.p[0][1] + d.p[1][1] + d.p[2][1]) / 3.0};
  d.radius = 0.0;
  d.diam = 0.0;
  for (int k = 0; k < 3; ++k) {
    d.radius = std::max(d.radius, dist(d.centroid, d.p[k]));
    d.diam = std::max(d.diam, dist(d.p[k], d.p[(k + 1) % 3]));
  }
  return d;
}

// Moments of K(x - y) over a (sub)triangle of T: m0, m1[k] = int lambda_k K,
// m2[k][l] = int lambda_k lambda_l K, lambda the barycentrics of T.
struct Moments {
  double m0 = 0.0;
  std::array<double, 3> m1{};
  std::array<std::array<double, 3>, 3> m2{};
};

class FarIntegrator {
 public:
  FarIntegrator(const FractionalKernel& kernel, double separation)
      : kernel_(kernel), separation_(separation) {
    for (int n : {3, 4, 5, 7}) rules_[n] = collapsed_triangle_rule(n);
  }

  void accumulate(const TriData& T, const std::array<Point2, 3>& sub, const Point2& y, int depth,
                  Moments& m) const {
    Point2 cen{(sub[0][0] + sub[1][0] + sub[2][0]) / 3.0, (sub[0][1] + sub[1][1] + sub[2][1]) / 3.0};
    double rad = 0.0, diam = 0.0;
    for (int k = 0; k < 3; ++k) {
      rad = std::max(rad, dist(cen, sub[k]));
      diam = std::max(diam, dist(sub[k], sub[(k + 1) % 3]));
    }
    const double ratio = std::max(0.0, dist(cen, y) - rad) / diam;
    if (ratio < separation_ && depth < 12) {
      const Point2 ab{0.5 * (sub[0][0] + sub[1][0]), 0.5 * (sub[0][1] + sub[1][1])};
      const Point2 bc{0.5 * (sub[1][0] + sub[2][0]), 0.5 * (sub[1][1] + sub[2][1])};
      const Point2 ca{0.5 * (sub[2][0] + sub[0][0]), 0.5 * (sub[2][1] + sub[0][1])};
      accumulate(T, {sub[0], ab, ca}, y, depth + 1, m);
      accumulate(T, {ab, sub[1], bc}, y, depth + 1, m);
      accumulate(T, {ca, bc, sub[2]}, y, depth + 1, m);
      accumulate(T, {ab, bc, ca}, y, depth + 1, m);
      return;
    }
    const int order = ratio >= 8 ? 3 : ratio >= 4 ? 4 : ratio >= 2 ? 5 : 7;
    const TriangleRule& r = rules_.at(order);
    const double jac = 2.0 * std::abs(signed_area(sub[0], sub[1], sub[2]));
    for (std::size_t q = 0; q < r.w.size(); ++q) {
      const double u = r.xi[q][0], v = r.xi[q][1];
      const Point2 x{sub[0][0] + u * (sub[1][0] - sub[0][0]) + v * (sub[2][0] - sub[0][0]),
                     sub[0][1] + u * (sub[1][1] - sub[0][1]) + v * (sub[2][1] - sub[0][1])};
      const double w = r.w[q] * jac * kernel_.profile(dist(x, y));
      std::array<double, 3> lam;
      for (int k = 0; k < 3; ++k) {
        lam[k] = 1.0 / 3.0 + T.grad[k][0] * (x[0] - T.centroid[0]) + T.grad[k][1] * (x[1] - T.centroid[1]);
      }
      m.m0 += w;
      for (int k = 0; k < 3; ++k) {
        m.m1[k] += w * lam[k];
        for (int l = k; l < 3; ++l) m.m2[k][l] += w * lam[k] * lam[l];
      }
    }
  }

 private:
  const FractionalKernel& kernel_;
  double separation_;
  std::map<int, TriangleRule> rules_;
};

}  // namespace

GramPair assemble_2d(SpacePtr space, const FractionalKernel& kernel, const AssemblyOptions& opts) {
  if (!space || space->dimension() != 2) throw DomainError("assemble_2d needs a 2D space");
  if (kernel.dimension() != 2) throw DomainError("assemble_2d needs a 2D kernel");
  if (!(opts.separation > 0.0)) throw DomainError("separation threshold must be positive");
  const auto& mesh = std::get<TriMesh>(space->mesh());
  const std::size_t n = space->size();
  const std::size_t nt = mesh.triangle_count();
  const double half_c = 0.5 * kernel.constant();
  const DuffyRule duffy(kernel.order(), opts.duffy_order);
  const FarIntegrator far(kernel, opts.separation);
  const double radius = opts.exterior_radius_factor * mesh.diameter();

  std::vector<TriData> tris;
  tris.reserve(nt);
  for (std::size_t t = 0; t < nt; ++t) tris.push_back(make_tri(mesh, t));

  // Triangles owning each edge.
  std::map<std::array<std::size_t, 2>, std::vector<std::size_t>> edge_owners;
  for (std::size_t t = 0; t < nt; ++t) {
    for (int k = 0; k < 3; ++k) {
      std::size_t a = tris[t].v[k], b = tris[t].v[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      edge_owners[{a, b}].push_back(t);
    }
  }
  std::map<std::array<std::size_t, 2>, double> ext_cache;

  SymMatrix S(n);
  auto add = [&](std::size_t va, std::size_t vb, double val) {
    const long da = space->dof_of(va), db = space->dof_of(vb);
    if (da < 0 || db < 0) return;
    S.add(static_cast<std::size_t>(da), static_cast<std::size_t>(db), val);
  };

  for (std::size_t to = 0; to < nt; ++to) {
    const TriData& out = tris[to];
    const double w = out.area / 3.0;
    for (int k = 0; k < 3; ++k) {
      std::size_t ea = out.v[k], eb = out.v[(k + 1) % 3];
      if (ea > eb) std::swap(ea, eb);
      const Point2 y{0.5 * (mesh.vertices()[ea][0] + mesh.vertices()[eb][0]),
                     0.5 * (mesh.vertices()[ea][1] + mesh.vertices()[eb][1])};
      const auto& owners = edge_owners.at({ea, eb});
      const bool edge_active = !(mesh.is_boundary(ea) && mesh.is_boundary(eb));
      if (!edge_active) continue;  // every interior basis function vanishes on this edge

      for (std::size_t ti = 0; ti < nt; ++ti) {
        const TriData& in = tris[ti];
        if (std::find(owners.begin(), owners.end(), ti) != owners.end()) {
          // y on the boundary of T_in: both differences are affine in x - y.
          std::array<double, 3> mom{};
          for (const auto& piece : split_right_triangles(in.p, y)) {
            const auto m = duffy_moments(piece.y, piece.q, piece.p, duffy);
            for (int c = 0; c < 3; ++c) mom[c] += piece.sign * m[c];
          }
          for (int a = 0; a < 3; ++a) {
            for (int b = a; b < 3; ++b) {
              const Point2& ga = in.grad[a];
              const Point2& gb = in.grad[b];
              const double val = ga[0] * gb[0] * mom[0] + (ga[0] * gb[1] + ga[1] * gb[0]) * mom[1] +
                                 ga[1] * gb[1] * mom[2];
              add(in.v[a], in.v[b], w * half_c * val);
            }
          }
          continue;
        }
        Moments m;
        far.accumulate(in, in.p, y, 0, m);
        // Vertices involved: those of T_in plus the endpoints of the edge of y.
        std::array<std::size_t, 5> verts{};
        std::array<double, 5> psi{}, m1{};
        std::array<int, 5> local{};
        std::size_t count = 0;
        for (int a = 0; a < 3; ++a) {
          verts[count] = in.v[a];
          local[count] = a;
          psi[count] = (in.v[a] == ea || in.v[a] == eb) ? 0.5 : 0.0;
          m1[count] = m.m1[a];
          ++count;
        }
        for (std::size_t e : {ea, eb}) {
          if (e == in.v[0] || e == in.v[1] || e == in.v[2]) continue;
          verts[count] = e;
          local[count] = -1;
          psi[count] = 0.5;
          m1[count] = 0.0;
          ++count;
        }
        for (std::size_t a = 0; a < count; ++a) {
          if (space->dof_of(verts[a]) < 0) continue;
          for (std::size_t b = a; b < count; ++b) {
            if (space->dof_of(verts[b]) < 0) continue;
            double m2 = 0.0;
            if (local[a] >= 0 && local[b] >= 0) {
              const int la = std::min(local[a], local[b]), lb = std::max(local[a], local[b]);
              m2 = m.m2[la][lb];
            }
            const double val = m2 - psi[a] * m1[b] - psi[b] * m1[a] + psi[a] * psi[b] * m.m0;
            add(verts[a], verts[b], w * val);
          }
        }
      }

      // Interaction with the complement of the domain.
      auto it = ext_cache.find({ea, eb});
      if (it == ext_cache.end()) {
        it = ext_cache.emplace(std::array<std::size_t, 2>{ea, eb},
                               exterior_integral_2d(y, mesh, kernel, radius, opts.annulus_level))
                 .first;
      }
      const double ext = it->second;
      add(ea, ea, w * 2.0 * 0.25 * ext);
      add(eb, eb, w * 2.0 * 0.25 * ext);
      add(ea, eb, w * 2.0 * 0.25 * ext);
    }
  }

  SymMatrix M = mass_matrix(*space);
  if (opts.potential) {
    SymMatrix Vm(n);
    for (const auto& qp : space->quadrature()) {
      const double vq = opts.potential(qp.x) * qp.weight;
      for (int a = 0; a < 3; ++a) {
        if (qp.dof[a] < 0) continue;
        for (int b = a; b < 3; ++b) {
          if (qp.dof[b] < 0) continue;
          Vm.add(static_cast<std::size_t>(qp.dof[a]), static_cast<std::size_t>(qp.dof[b]),
                 vq * qp.value[a] * qp.value[b]);
        }
      }
    }
    S += Vm;
  }
  return GramPair(std::move(space), kernel, std::move(S), std::move(M));
}

GramPair assemble(SpacePtr space, double s, const AssemblyOptions& opts) {
  if (!space) throw DomainError("null FEM space");
  const FractionalKernel kernel(space->dimension(), s);
  return space->dimension() == 1 ? assemble_1d(std::move(space), kernel, opts)
                                 : assemble_2d(std::move(space), kernel, opts);
}

SymMatrix mass_matrix(const FemSpace& space) {
  const std::size_t n = space.size();
  SymMatrix M(n);
  if (space.dimension() == 1) {
    const auto& x = std::get<Mesh1D>(space.mesh()).nodes();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t v = i + 1;
      M.at(i, i) = (x[v + 1] - x[v - 1]) / 3.0;
      if (i + 1 < n) M.at(i, i + 1) = (x[v + 1] - x[v]) / 6.0;
    }
    return M;
  }
  const auto& mesh = std::get<TriMesh>(space.mesh());
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const double area = mesh.area(t);
    for (int a = 0; a < 3; ++a) {
      const long da = space.dof_of(tri[a]);
      if (da < 0) continue;
      for (int b = a; b < 3; ++b) {
        const long db = space.dof_of(tri[b]);
        if (db < 0) continue;
        M.add(static_cast<std::size_t>(da), static_cast<std::size_t>(db), area / 12.0 * (a == b ? 2.0 : 1.0));
      }
    }
  }
  return M;
}

namespace {

void check_same(const GramPair& gram, const FemFunction& u) {
  if (!u.space() || u.size() != gram.size() ||
      (u.space() != gram.space() && u.space()->vertex_count() != gram.space()->vertex_count())) {
    throw DomainError("function and Gram pair live on different meshes");
  }
}

}  // namespace

double h_inner(const GramPair& gram, const FemFunction& u, const FemFunction& v) {
  check_same(gram, u);
  check_same(gram, v);
  return gram.S().bilinear(u.coefficients(), v.coefficients());
}

double l2_inner(const GramPair& gram, const FemFunction& u, const FemFunction& v) {
  check_same(gram, u);
  check_same(gram, v);
  return gram.M().bilinear(u.coefficients(), v.coefficients());
}

double lp_power(const FemFunction& u, double p) {
  if (!(p >= 1.0)) throw DomainError("L^p exponent must be at least 1");
  const auto vals = u.quadrature_values();
  const auto& quad = u.space()->quadrature();
  double sum = 0.0;
  for (std::size_t k = 0; k < vals.size(); ++k) sum += quad[k].weight * std::pow(std::abs(vals[k]), p);
  return sum;
}

double lp_norm(const GramPair& gram, const FemFunction& u, double p) {
  check_same(gram, u);
  return std::pow(lp_power(u, p), 1.0 / p);
}

FemFunction positive_part(const FemFunction& u) {
  FemFunction out = u;
  for (double& c : out.coefficients()) c = std::max(c, 0.0);
  return out;
}

FemFunction negative_part(const FemFunction& u) {
  FemFunction out = u;
  for (double& c : out.coefficients()) c = std::min(c, 0.0);
  return out;
}

}  // namespace nlfem
