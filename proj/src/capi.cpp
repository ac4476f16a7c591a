// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlfem/nlfem.h"

#include <cmath>
#include <exception>
#include <new>
#include <numbers>
#include <string>
#include <vector>

#include "nlfem/error.hpp"
#include "nlfem/io.hpp"
#include "nlfem/limit.hpp"
#include "nlfem/spectral.hpp"
#include "nlfem/studies.hpp"

struct nlfem_mesh {
  nlfem::Mesh mesh;
};

struct nlfem_system {
  nlfem::GramPair gram;
};

struct nlfem_function {
  nlfem::FemFunction u;
};

struct nlfem_eigen {
  nlfem::EigenReport rep;
};

struct nlfem_limit {
  nlfem::LimitReport rep;
};

namespace {

thread_local std::string last_error;

nlfem_status status_of(nlfem::ErrorKind kind) {
  switch (kind) {
    case nlfem::ErrorKind::domain: return NLFEM_ERR_DOMAIN;
    case nlfem::ErrorKind::singularity: return NLFEM_ERR_SINGULAR;
    case nlfem::ErrorKind::indefinite: return NLFEM_ERR_INDEFINITE;
    case nlfem::ErrorKind::convergence: return NLFEM_ERR_CONVERGENCE;
    case nlfem::ErrorKind::degeneration: return NLFEM_ERR_DEGENERATION;
    case nlfem::ErrorKind::io: return NLFEM_ERR_IO;
  }
  return NLFEM_ERR_INTERNAL;
}

template <class F>
nlfem_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return NLFEM_OK;
  } catch (const nlfem::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return NLFEM_ERR_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) throw nlfem::DomainError(what);
}

nlfem::Point2 point(const double* x) { return {x[0], x[1]}; }

nlfem::Potential field(nlfem_field f, void* ctx) {
  return [f, ctx](const nlfem::Point2& x) {
    const double xy[2] = {x[0], x[1]};
    return f(xy, ctx);
  };
}

// Functions loaded from files carry their own copy of the mesh; they are
// accepted when the vertices and unknowns coincide.
nlfem::FemFunction on_system(const nlfem_system* sys, const nlfem_function* u) {
  require(u != nullptr, "null function");
  const auto& a = *u->u.space();
  const auto& b = *sys->gram.space();
  if (&a == &b) return u->u;
  bool same = a.dimension() == b.dimension() && a.size() == b.size() && a.vertex_count() == b.vertex_count();
  for (std::size_t v = 0; same && v < a.vertex_count(); ++v) {
    same = a.vertex_position(v) == b.vertex_position(v) && a.dof_of(v) == b.dof_of(v);
  }
  require(same, "function does not belong to this system");
  return nlfem::FemFunction(sys->gram.space(), u->u.coefficients());
}

// Default start: a positive bump for ground states, a sign change for nodal solutions.
nlfem::FemFunction default_start(const nlfem::SpacePtr& space, bool nodal) {
  using std::numbers::pi;
  if (space->dimension() == 1) {
    const auto& m = std::get<nlfem::Mesh1D>(space->mesh());
    const double mid = 0.5 * (m.left() + m.right()), len = m.right() - m.left();
    if (nodal) {
      return nlfem::FemFunction::interpolate(space, [&](const nlfem::Point2& x) { return std::sin(2.0 * pi * (x[0] - mid) / len); });
    }
    return nlfem::FemFunction::interpolate(space, [&](const nlfem::Point2& x) { return std::cos(pi * (x[0] - mid) / len); });
  }
  const auto& m = std::get<nlfem::TriMesh>(space->mesh());
  nlfem::Point2 c{0.0, 0.0};
  for (const auto& v : m.vertices()) {
    c[0] += v[0];
    c[1] += v[1];
  }
  c[0] /= double(m.vertex_count());
  c[1] /= double(m.vertex_count());
  if (nodal) return nlfem::FemFunction::interpolate(space, [&](const nlfem::Point2& x) { return x[0] - c[0]; });
  return nlfem::FemFunction(space, std::vector<double>(space->size(), 1.0));
}

void fill(nlfem_solve_report* report, const nlfem::SolveReport& r) {
  if (!report) return;
  report->iterations = r.iterations;
  report->gradient_norm = r.final_gradient_norm;
  report->energy = r.energy;
  report->wall_time = r.wall_time;
}

}  // namespace

extern "C" {

const char* nlfem_last_error(void) { return last_error.c_str(); }

const char* nlfem_status_name(nlfem_status status) {
  switch (status) {
    case NLFEM_OK: return "ok";
    case NLFEM_ERR_DOMAIN: return "domain error";
    case NLFEM_ERR_SINGULAR: return "singularity error";
    case NLFEM_ERR_INDEFINITE: return "indefinite operator";
    case NLFEM_ERR_CONVERGENCE: return "convergence error";
    case NLFEM_ERR_DEGENERATION: return "degeneration error";
    case NLFEM_ERR_IO: return "io error";
    case NLFEM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* nlfem_version(void) { return "0.1.0"; }

nlfem_status nlfem_fractional_constant(int dim, double s, double* out) {
  return guarded([&] {
    require(out, "null output");
    *out = nlfem::fractional_constant(dim, s);
  });
}

nlfem_status nlfem_explicit_solution(int dim, double s, double radius, const double* x, double* out) {
  return guarded([&] {
    require(x && out, "null argument");
    *out = nlfem::explicit_solution(dim, s, radius, point(x));
  });
}

nlfem_status nlfem_mesh_interval(double a, double b, size_t nodes, nlfem_mesh** out) {
  return guarded([&] {
    require(out, "null output");
    *out = new nlfem_mesh{nlfem::make_interval_mesh(a, b, nodes)};
  });
}

nlfem_status nlfem_mesh_disk(double radius, int level, nlfem_mesh** out) {
  return guarded([&] {
    require(out, "null output");
    *out = new nlfem_mesh{nlfem::make_disk_mesh(radius, level)};
  });
}

nlfem_status nlfem_mesh_refine(const nlfem_mesh* mesh, nlfem_mesh** out) {
  return guarded([&] {
    require(mesh && out, "null argument");
    *out = new nlfem_mesh{std::visit([](const auto& m) -> nlfem::Mesh { return nlfem::refine(m); }, mesh->mesh)};
  });
}

nlfem_status nlfem_mesh_load(const char* path, nlfem_mesh** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new nlfem_mesh{nlfem::mesh_from_json(nlfem::read_file(path))};
  });
}

nlfem_status nlfem_mesh_save(const nlfem_mesh* mesh, const char* path) {
  return guarded([&] {
    require(mesh && path, "null argument");
    nlfem::write_file(path, nlfem::mesh_to_json(mesh->mesh));
  });
}

nlfem_status nlfem_mesh_info(const nlfem_mesh* mesh, int* dim, size_t* vertices, size_t* elements,
                             size_t* interior) {
  return guarded([&] {
    require(mesh, "null mesh");
    std::size_t nv = 0, ne = 0, ni = 0;
    if (const auto* m = std::get_if<nlfem::Mesh1D>(&mesh->mesh)) {
      nv = m->node_count();
      ne = m->element_count();
      ni = m->interior_count();
    } else {
      const auto& t = std::get<nlfem::TriMesh>(mesh->mesh);
      nv = t.vertex_count();
      ne = t.triangle_count();
      ni = t.interior_vertices().size();
    }
    if (dim) *dim = nlfem::mesh_dimension(mesh->mesh);
    if (vertices) *vertices = nv;
    if (elements) *elements = ne;
    if (interior) *interior = ni;
  });
}

void nlfem_mesh_free(nlfem_mesh* mesh) { delete mesh; }

void nlfem_assembly_options_default(nlfem_assembly_options* opts) {
  if (!opts) return;
  const nlfem::AssemblyOptions d;
  opts->potential = 0.0;
  opts->duffy_order = d.duffy_order;
  opts->separation = d.separation;
  opts->exterior_radius_factor = d.exterior_radius_factor;
  opts->annulus_level = d.annulus_level;
}

nlfem_status nlfem_assemble(const nlfem_mesh* mesh, double s, const nlfem_assembly_options* opts,
                            nlfem_system** out) {
  return guarded([&] {
    require(mesh && out, "null argument");
    nlfem_assembly_options o;
    nlfem_assembly_options_default(&o);
    if (opts) o = *opts;
    require(std::isfinite(o.potential) && o.potential >= 0.0, "potential must be finite and nonnegative");
    nlfem::AssemblyOptions a;
    if (o.potential != 0.0) {
      const double v = o.potential;
      a.potential = [v](const nlfem::Point2&) { return v; };
    }
    a.duffy_order = o.duffy_order;
    a.separation = o.separation;
    a.exterior_radius_factor = o.exterior_radius_factor;
    a.annulus_level = o.annulus_level;
    *out = new nlfem_system{nlfem::assemble(nlfem::make_space(mesh->mesh), s, a)};
  });
}

nlfem_status nlfem_system_load(const char* path, nlfem_system** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new nlfem_system{nlfem::system_from_json(nlfem::read_file(path))};
  });
}

nlfem_status nlfem_system_save(const nlfem_system* sys, const char* path) {
  return guarded([&] {
    require(sys && path, "null argument");
    nlfem::write_file(path, nlfem::system_to_json(sys->gram));
  });
}

nlfem_status nlfem_system_info(const nlfem_system* sys, int* dim, size_t* size, double* s) {
  return guarded([&] {
    require(sys, "null system");
    if (dim) *dim = sys->gram.space()->dimension();
    if (size) *size = sys->gram.size();
    if (s) *s = sys->gram.kernel().order();
  });
}

nlfem_status nlfem_system_entry(const nlfem_system* sys, size_t i, size_t j, double* stiffness,
                                double* mass) {
  return guarded([&] {
    require(sys, "null system");
    require(i < sys->gram.size() && j < sys->gram.size(), "entry index out of range");
    if (stiffness) *stiffness = sys->gram.S()(i, j);
    if (mass) *mass = sys->gram.M()(i, j);
  });
}

void nlfem_system_free(nlfem_system* sys) { delete sys; }

nlfem_status nlfem_function_create(const nlfem_system* sys, const double* coefficients, size_t count,
                                   nlfem_function** out) {
  return guarded([&] {
    require(sys && out, "null argument");
    require(count == sys->gram.size(), "coefficient count does not match the system size");
    std::vector<double> c(count, 0.0);
    if (coefficients) c.assign(coefficients, coefficients + count);
    *out = new nlfem_function{nlfem::FemFunction(sys->gram.space(), std::move(c))};
  });
}

nlfem_status nlfem_function_interpolate(const nlfem_system* sys, nlfem_field f, void* ctx,
                                        nlfem_function** out) {
  return guarded([&] {
    require(sys && f && out, "null argument");
    *out = new nlfem_function{nlfem::FemFunction::interpolate(sys->gram.space(), field(f, ctx))};
  });
}

nlfem_status nlfem_function_size(const nlfem_function* f, size_t* count) {
  return guarded([&] {
    require(f && count, "null argument");
    *count = f->u.size();
  });
}

nlfem_status nlfem_function_coefficients(const nlfem_function* f, double* out, size_t count) {
  return guarded([&] {
    require(f && out, "null argument");
    require(count >= f->u.size(), "output buffer too small");
    const auto& c = f->u.coefficients();
    std::copy(c.begin(), c.end(), out);
  });
}

nlfem_status nlfem_function_nodes(const nlfem_function* f, double* out, size_t count) {
  return guarded([&] {
    require(f && out, "null argument");
    require(count >= f->u.size(), "output buffer too small");
    const auto& sp = *f->u.space();
    for (std::size_t i = 0; i < f->u.size(); ++i) {
      const auto x = sp.vertex_position(sp.vertex_of(i));
      out[2 * i] = x[0];
      out[2 * i + 1] = x[1];
    }
  });
}

nlfem_status nlfem_function_eval(const nlfem_function* f, const double* x, double* out) {
  return guarded([&] {
    require(f && x && out, "null argument");
    *out = f->u.value_at(point(x));
  });
}

nlfem_status nlfem_function_extrema(const nlfem_function* f, double* min, double* max) {
  return guarded([&] {
    require(f, "null function");
    if (min) *min = f->u.min_value();
    if (max) *max = f->u.max_value();
  });
}

nlfem_status nlfem_function_save(const nlfem_function* f, const char* path, double p, double s,
                                 double energy, double grad_norm) {
  return guarded([&] {
    require(f && path, "null argument");
    nlfem::write_file(path, nlfem::solution_to_json({f->u, p, s, energy, grad_norm}));
  });
}

nlfem_status nlfem_function_load(const char* path, nlfem_function** out, double* p, double* s) {
  return guarded([&] {
    require(path && out, "null argument");
    auto rec = nlfem::solution_from_json(nlfem::read_file(path));
    if (p) *p = rec.p;
    if (s) *s = rec.s;
    *out = new nlfem_function{std::move(rec.u)};
  });
}

nlfem_status nlfem_function_write_plot(const nlfem_function* f, const char* path) {
  return guarded([&] {
    require(f && path, "null argument");
    nlfem::write_file(path, nlfem::plot_data(f->u));
  });
}

void nlfem_function_free(nlfem_function* f) { delete f; }

nlfem_status nlfem_solve_linear(const nlfem_system* sys, nlfem_field f, void* ctx, nlfem_function** out) {
  return guarded([&] {
    require(sys && out, "null argument");
    const nlfem::Potential src = f ? field(f, ctx) : nlfem::Potential([](const nlfem::Point2&) { return 1.0; });
    *out = new nlfem_function{nlfem::solve_linear(sys->gram, src)};
  });
}

nlfem_status nlfem_energy(const nlfem_system* sys, double p, double lambda, const nlfem_function* u,
                          double* out) {
  return guarded([&] {
    require(sys && u && out, "null argument");
    const nlfem::ProblemSpec spec(sys->gram, p, lambda);
    *out = nlfem::energy(spec, on_system(sys, u));
  });
}

nlfem_status nlfem_ground_state(const nlfem_system* sys, double p, double lambda, const nlfem_function* u0,
                                double tol, int max_iter, nlfem_function** out, nlfem_solve_report* report) {
  return guarded([&] {
    require(sys && out, "null argument");
    const nlfem::ProblemSpec spec(sys->gram, p, lambda);
    const nlfem::FemFunction start = u0 ? on_system(sys, u0) : default_start(sys->gram.space(), false);
    *out = nullptr;
    nlfem::SolveReport r;
    try {
      r = nlfem::mountain_pass(spec, start, tol, max_iter);
    } catch (const nlfem::ConvergenceError& e) {
      if (e.best_iterate().size() == start.size()) {
        *out = new nlfem_function{nlfem::FemFunction(start.space(), e.best_iterate())};
        if (report) {
          *report = {max_iter, e.residual(), nlfem::energy(spec, (*out)->u), 0.0};
        }
      }
      throw;
    }
    fill(report, r);
    *out = new nlfem_function{r.solution};
  });
}

nlfem_status nlfem_nodal_solution(const nlfem_system* sys, double p, double lambda, const nlfem_function* u0,
                                  double tol, int max_iter, nlfem_function** out, nlfem_solve_report* report) {
  return guarded([&] {
    require(sys && out, "null argument");
    const nlfem::ProblemSpec spec(sys->gram, p, lambda);
    const nlfem::FemFunction start = u0 ? on_system(sys, u0) : default_start(sys->gram.space(), true);
    *out = nullptr;
    nlfem::SolveReport r;
    try {
      r = nlfem::modified_mountain_pass(spec, start, tol, max_iter);
    } catch (const nlfem::ConvergenceError& e) {
      if (e.best_iterate().size() == start.size()) {
        *out = new nlfem_function{nlfem::FemFunction(start.space(), e.best_iterate())};
        if (report) {
          *report = {max_iter, e.residual(), nlfem::energy(spec, (*out)->u), 0.0};
        }
      }
      throw;
    }
    fill(report, r);
    *out = new nlfem_function{r.solution};
  });
}

nlfem_status nlfem_eigen_compute(const nlfem_system* sys, size_t k, double tol, nlfem_eigen** out) {
  return guarded([&] {
    require(sys && out, "null argument");
    auto rep = nlfem::smallest_eigenpairs(sys->gram, k, tol);
    for (auto& pair : rep.pairs) pair = nlfem::sign_normalize(std::move(pair));
    *out = new nlfem_eigen{std::move(rep)};
  });
}

nlfem_status nlfem_eigen_count(const nlfem_eigen* e, size_t* count) {
  return guarded([&] {
    require(e && count, "null argument");
    *count = e->rep.pairs.size();
  });
}

nlfem_status nlfem_eigen_value(const nlfem_eigen* e, size_t i, double* lambda, double* residual,
                               int* near_degenerate) {
  return guarded([&] {
    require(e, "null eigen report");
    require(i < e->rep.pairs.size(), "eigenpair index out of range");
    if (lambda) *lambda = e->rep.pairs[i].lambda;
    if (residual) *residual = e->rep.pairs[i].residual;
    if (near_degenerate) *near_degenerate = e->rep.near_degenerate[i] ? 1 : 0;
  });
}

nlfem_status nlfem_eigen_vector(const nlfem_eigen* e, size_t i, nlfem_function** out) {
  return guarded([&] {
    require(e && out, "null argument");
    require(i < e->rep.pairs.size(), "eigenpair index out of range");
    *out = new nlfem_function{e->rep.pairs[i].phi};
  });
}

nlfem_status nlfem_eigen_iterations(const nlfem_eigen* e, int* iterations) {
  return guarded([&] {
    require(e && iterations, "null argument");
    *iterations = e->rep.iterations;
  });
}

void nlfem_eigen_free(nlfem_eigen* e) { delete e; }

nlfem_status nlfem_convergence(double s, const size_t* sizes, size_t count, nlfem_convergence_row* rows,
                               double* h_slope, double* l2_slope) {
  return guarded([&] {
    require(sizes && rows, "null argument");
    const auto study = nlfem::convergence_study(s, std::vector<std::size_t>(sizes, sizes + count));
    for (std::size_t k = 0; k < study.rows.size(); ++k) {
      rows[k] = {study.rows[k].nodes, study.rows[k].h_error, study.rows[k].l2_error, study.rows[k].center_value};
    }
    if (h_slope) *h_slope = study.h_slope;
    if (l2_slope) *l2_slope = study.l2_slope;
  });
}

nlfem_status nlfem_limit_study(const nlfem_system* sys, int index, const double* p_sequence, size_t count,
                               const nlfem_function* u0, double tol, int max_iter, nlfem_limit** out) {
  return guarded([&] {
    require(sys && p_sequence && out, "null argument");
    nlfem::LimitOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    const nlfem::FemFunction start = u0 ? on_system(sys, u0) : default_start(sys->gram.space(), index == 2);
    *out = new nlfem_limit{nlfem::limit_study(sys->gram, index, std::vector<double>(p_sequence, p_sequence + count),
                                              start, opts)};
  });
}

nlfem_status nlfem_limit_row_at(const nlfem_limit* l, size_t i, nlfem_limit_row* row) {
  return guarded([&] {
    require(l && row, "null argument");
    const auto& r = l->rep;
    require(i < r.p_sequence.size(), "row index out of range");
    row->p = r.p_sequence[i];
    row->energy = r.energies[i];
    row->angle = r.angles[i];
    row->limit_residual = r.limit_residuals[i];
    row->norm = r.norms[i];
  });
}

nlfem_status nlfem_limit_summary(const nlfem_limit* l, double* lambda, size_t* eigenspace_dim,
                                 double* direct_residual) {
  return guarded([&] {
    require(l, "null limit report");
    if (lambda) *lambda = l->rep.lambda;
    if (eigenspace_dim) *eigenspace_dim = l->rep.eigenspace_dim;
    if (direct_residual) *direct_residual = l->rep.direct_residual;
  });
}

nlfem_status nlfem_limit_solution(const nlfem_limit* l, size_t i, nlfem_function** out) {
  return guarded([&] {
    require(l && out, "null argument");
    require(i < l->rep.solutions.size(), "solution index out of range");
    *out = new nlfem_function{l->rep.solutions[i]};
  });
}

nlfem_status nlfem_limit_basis(const nlfem_limit* l, size_t j, nlfem_function** out) {
  return guarded([&] {
    require(l && out, "null argument");
    require(j < l->rep.basis.size(), "basis index out of range");
    *out = new nlfem_function{l->rep.basis[j]};
  });
}

void nlfem_limit_free(nlfem_limit* l) { delete l; }

nlfem_status nlfem_symmetry_report(const nlfem_function* u, nlfem_transform t, int interpolate,
                                   nlfem_symmetry* out) {
  return guarded([&] {
    require(u && out, "null argument");
    require(u->u.space() != nullptr, "function without a space");
    nlfem::Transform tr;
    switch (t) {
      case NLFEM_REFLECT_X: tr = nlfem::Transform::reflect_x; break;
      case NLFEM_REFLECT_Y: tr = nlfem::Transform::reflect_y; break;
      case NLFEM_ROTATE_90: tr = nlfem::Transform::rotate_90; break;
      default: throw nlfem::DomainError("unknown transform");
    }
    const auto mass = nlfem::mass_matrix(*u->u.space());
    const auto r = nlfem::symmetry_report(mass, u->u, tr, interpolate != 0);
    out->rho_plus = r.rho_plus;
    out->rho_minus = r.rho_minus;
    out->residual = r.residual;
    out->symmetric = r.symmetric ? 1 : 0;
    out->interpolated = r.interpolated ? 1 : 0;
  });
}

nlfem_status nlfem_table(double s, double p, size_t nodes, double tol, int max_iter, nlfem_table_row* out) {
  return guarded([&] {
    require(out, "null output");
    const auto r = nlfem::table_row(s, p, nodes, tol, max_iter);
    *out = {r.s, r.p, r.ground_energy, r.ground_max, r.nodal_energy, r.nodal_max, r.nodal_min};
  });
}

}  // extern "C"
