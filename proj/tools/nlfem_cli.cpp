// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0
//
// nlfem-cli: front end over the C interface. Exit codes: 0 ok, 2 invalid
// input or I/O, 3 no convergence, 4 numerical failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nlfem/nlfem.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Failure : std::runtime_error {
  Failure(nlfem_status st, const std::string& what) : std::runtime_error(what), status(st) {}
  nlfem_status status;
};

void check(nlfem_status st) {
  if (st != NLFEM_OK) throw Failure(st, nlfem_last_error());
}

int exit_code(nlfem_status st) {
  switch (st) {
    case NLFEM_ERR_DOMAIN:
    case NLFEM_ERR_IO: return 2;
    case NLFEM_ERR_CONVERGENCE:
    case NLFEM_ERR_DEGENERATION: return 3;
    default: return 4;
  }
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using MeshPtr = std::unique_ptr<nlfem_mesh, Deleter<nlfem_mesh, nlfem_mesh_free>>;
using SystemPtr = std::unique_ptr<nlfem_system, Deleter<nlfem_system, nlfem_system_free>>;
using FunctionPtr = std::unique_ptr<nlfem_function, Deleter<nlfem_function, nlfem_function_free>>;
using EigenPtr = std::unique_ptr<nlfem_eigen, Deleter<nlfem_eigen, nlfem_eigen_free>>;
using LimitPtr = std::unique_ptr<nlfem_limit, Deleter<nlfem_limit, nlfem_limit_free>>;

struct Config {
  std::string domain = "interval";
  double a = -1.0, b = 1.0;
  std::size_t nodes = 512;
  double radius = 1.0;
  int level = 2;
  std::string mesh_file, system_file;
  double s = 0.5;
  std::vector<double> s_values;
  double p = 4.0;
  double potential = 0.0;
  double tol = 1e-2;
  int max_iter = 2000;
  std::size_t k = 4;
  std::vector<std::size_t> sizes{32, 64, 128, 256, 512, 1024};
  std::vector<double> p_seq{3.0, 2.5, 2.1, 2.05};
  int index = 1;
  std::string solution;
  std::string transform = "reflect_x";
  bool interpolate = false;
  std::string out = ".";
};

fs::path out_path(const Config& c, const std::string& name) {
  fs::create_directories(c.out);
  return fs::path(c.out) / name;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Failure(NLFEM_ERR_IO, "cannot write " + path.string());
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

MeshPtr make_mesh(const Config& c) {
  nlfem_mesh* m = nullptr;
  if (!c.mesh_file.empty()) {
    check(nlfem_mesh_load(c.mesh_file.c_str(), &m));
  } else if (c.domain == "interval") {
    check(nlfem_mesh_interval(c.a, c.b, c.nodes, &m));
  } else if (c.domain == "disk") {
    check(nlfem_mesh_disk(c.radius, c.level, &m));
  } else {
    throw Failure(NLFEM_ERR_DOMAIN, "unknown domain '" + c.domain + "'");
  }
  return MeshPtr(m);
}

SystemPtr make_system(const Config& c) {
  nlfem_system* sys = nullptr;
  if (!c.system_file.empty()) {
    check(nlfem_system_load(c.system_file.c_str(), &sys));
    return SystemPtr(sys);
  }
  const MeshPtr mesh = make_mesh(c);
  nlfem_assembly_options opts;
  nlfem_assembly_options_default(&opts);
  opts.potential = c.potential;
  check(nlfem_assemble(mesh.get(), c.s, &opts, &sys));
  return SystemPtr(sys);
}

double system_order(const nlfem_system* sys) {
  double s = 0.0;
  check(nlfem_system_info(sys, nullptr, nullptr, &s));
  return s;
}

std::vector<double> coefficients(const nlfem_function* f) {
  std::size_t n = 0;
  check(nlfem_function_size(f, &n));
  std::vector<double> c(n);
  check(nlfem_function_coefficients(f, c.data(), n));
  return c;
}

std::vector<double> nodes_of(const nlfem_function* f) {
  std::size_t n = 0;
  check(nlfem_function_size(f, &n));
  std::vector<double> xy(2 * n);
  check(nlfem_function_nodes(f, xy.data(), n));
  return xy;
}

void save_solution(const Config& c, const nlfem_function* u, const std::string& stem, double p, double s,
                   double energy, double grad) {
  check(nlfem_function_save(u, out_path(c, stem + ".json").c_str(), p, s, energy, grad));
  check(nlfem_function_write_plot(u, out_path(c, stem + ".dat").c_str()));
}

int cmd_mesh_gen(const Config& c) {
  const MeshPtr m = make_mesh(c);
  int dim = 0;
  std::size_t nv = 0, ne = 0, ni = 0;
  check(nlfem_mesh_info(m.get(), &dim, &nv, &ne, &ni));
  check(nlfem_mesh_save(m.get(), out_path(c, "mesh.json").c_str()));
  std::printf("dim %d  vertices %zu  elements %zu  interior %zu\n", dim, nv, ne, ni);
  return 0;
}

int cmd_assemble(const Config& c) {
  const SystemPtr sys = make_system(c);
  std::size_t n = 0;
  check(nlfem_system_info(sys.get(), nullptr, &n, nullptr));
  check(nlfem_system_save(sys.get(), out_path(c, "system.json").c_str()));
  std::printf("assembled %zu x %zu system, s = %g\n", n, n, system_order(sys.get()));
  return 0;
}

int cmd_eigen(const Config& c) {
  const SystemPtr sys = make_system(c);
  nlfem_eigen* raw = nullptr;
  check(nlfem_eigen_compute(sys.get(), c.k, 1e-10, &raw));
  const EigenPtr eig(raw);
  std::size_t count = 0;
  int iterations = 0;
  check(nlfem_eigen_count(eig.get(), &count));
  check(nlfem_eigen_iterations(eig.get(), &iterations));
  json report{{"s", system_order(sys.get())}, {"iterations", iterations}, {"pairs", json::array()}};
  for (std::size_t i = 0; i < count; ++i) {
    double lambda = 0.0, residual = 0.0;
    int degenerate = 0;
    check(nlfem_eigen_value(eig.get(), i, &lambda, &residual, &degenerate));
    nlfem_function* phi = nullptr;
    check(nlfem_eigen_vector(eig.get(), i, &phi));
    const FunctionPtr hold(phi);
    const std::string stem = "phi_" + std::to_string(i + 1);
    save_solution(c, phi, stem, 2.0, system_order(sys.get()), lambda, residual);
    report["pairs"].push_back({{"index", i + 1},
                               {"lambda", lambda},
                               {"residual", residual},
                               {"near_degenerate", degenerate != 0},
                               {"file", stem + ".json"}});
    std::printf("lambda_%zu = %.10g%s\n", i + 1, lambda, degenerate ? "  (near-degenerate)" : "");
  }
  write_json(out_path(c, "eigen.json"), report);
  return 0;
}

int cmd_solve_linear(const Config& c) {
  const SystemPtr sys = make_system(c);
  nlfem_function* raw = nullptr;
  check(nlfem_solve_linear(sys.get(), nullptr, nullptr, &raw));
  const FunctionPtr u(raw);
  save_solution(c, u.get(), "solution", 2.0, system_order(sys.get()), 0.0, 0.0);
  double mn = 0.0, mx = 0.0;
  check(nlfem_function_extrema(u.get(), &mn, &mx));
  std::printf("max u = %.10g\n", mx);
  return 0;
}

int solve_nonlinear(const Config& c, bool nodal) {
  const SystemPtr sys = make_system(c);
  nlfem_function* raw = nullptr;
  nlfem_solve_report rep{};
  const nlfem_status st = nodal ? nlfem_nodal_solution(sys.get(), c.p, 1.0, nullptr, c.tol, c.max_iter, &raw, &rep)
                                : nlfem_ground_state(sys.get(), c.p, 1.0, nullptr, c.tol, c.max_iter, &raw, &rep);
  const std::string msg = nlfem_last_error();
  const FunctionPtr u(raw);
  const double s = system_order(sys.get());
  const std::string stem = nodal ? "nodal" : "ground_state";
  if (st == NLFEM_ERR_CONVERGENCE && u) {
    save_solution(c, u.get(), stem + "_best", c.p, s, rep.energy, rep.gradient_norm);
    throw Failure(st, msg);
  }
  if (st != NLFEM_OK) throw Failure(st, msg);
  save_solution(c, u.get(), stem, c.p, s, rep.energy, rep.gradient_norm);
  double mn = 0.0, mx = 0.0;
  check(nlfem_function_extrema(u.get(), &mn, &mx));
  write_json(out_path(c, stem + "_report.json"), {{"s", s},
                                                  {"p", c.p},
                                                  {"energy", rep.energy},
                                                  {"max", mx},
                                                  {"min", mn},
                                                  {"grad_norm", rep.gradient_norm},
                                                  {"iterations", rep.iterations}});
  std::printf("energy %.8g  max %.8g  min %.8g  iterations %d  grad %.3g  time %.2fs\n", rep.energy, mx, mn,
              rep.iterations, rep.gradient_norm, rep.wall_time);
  return 0;
}

int cmd_converge(const Config& c) {
  std::vector<nlfem_convergence_row> rows(c.sizes.size());
  double hs = 0.0, ls = 0.0;
  check(nlfem_convergence(c.s, c.sizes.data(), c.sizes.size(), rows.data(), &hs, &ls));
  std::string csv = "nodes,h_error,l2_error,center_value\n";
  json j{{"s", c.s}, {"h_slope", hs}, {"l2_slope", ls}, {"rows", json::array()}};
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%zu,%.10e,%.10e,%.10e\n", r.nodes, r.h_error, r.l2_error, r.center_value);
    csv += buf;
    j["rows"].push_back({{"nodes", r.nodes}, {"h_error", r.h_error}, {"l2_error", r.l2_error},
                         {"center_value", r.center_value}});
  }
  write_text(out_path(c, "convergence.csv"), csv);
  write_json(out_path(c, "convergence.json"), j);
  std::printf("%s", csv.c_str());
  std::printf("slopes: H %.4f  L2 %.4f\n", hs, ls);
  return 0;
}

// u/phi at nodes where phi is not small; 1D only.
std::string ratio_curve(const nlfem_function* u, const nlfem_function* phi) {
  const auto xy = nodes_of(u);
  const auto cu = coefficients(u), cp = coefficients(phi);
  double scale = 0.0;
  for (double v : cp) scale = std::max(scale, std::abs(v));
  std::string text;
  char buf[96];
  for (std::size_t i = 0; i < cu.size(); ++i) {
    if (std::abs(cp[i]) < 1e-3 * scale) continue;
    std::snprintf(buf, sizeof buf, "%.10g %.10g\n", xy[2 * i], cu[i] / cp[i]);
    text += buf;
  }
  return text;
}

int cmd_limit(const Config& c) {
  const SystemPtr sys = make_system(c);
  nlfem_limit* raw = nullptr;
  check(nlfem_limit_study(sys.get(), c.index, c.p_seq.data(), c.p_seq.size(), nullptr, c.tol, c.max_iter, &raw));
  const LimitPtr lim(raw);
  double lambda = 0.0, direct = 0.0;
  std::size_t dim_e = 0;
  check(nlfem_limit_summary(lim.get(), &lambda, &dim_e, &direct));
  int dim = 0;
  check(nlfem_system_info(sys.get(), &dim, nullptr, nullptr));
  nlfem_function* b0 = nullptr;
  check(nlfem_limit_basis(lim.get(), 0, &b0));
  const FunctionPtr phi(b0);

  std::string csv = "p,energy,angle_degrees,limit_residual\n";
  json j{{"index", c.index}, {"lambda", lambda}, {"eigenspace_dim", dim_e}, {"direct_residual", direct},
         {"rows", json::array()}};
  char buf[160];
  for (std::size_t i = 0; i < c.p_seq.size(); ++i) {
    nlfem_limit_row r{};
    check(nlfem_limit_row_at(lim.get(), i, &r));
    const double deg = r.angle * 180.0 / std::numbers::pi;
    std::snprintf(buf, sizeof buf, "%.6g,%.10e,%.10e,%.10e\n", r.p, r.energy, deg, r.limit_residual);
    csv += buf;
    j["rows"].push_back({{"p", r.p}, {"energy", r.energy}, {"angle_degrees", deg},
                         {"limit_residual", r.limit_residual}, {"norm", r.norm}});
    nlfem_function* sol = nullptr;
    check(nlfem_limit_solution(lim.get(), i, &sol));
    const FunctionPtr u(sol);
    std::snprintf(buf, sizeof buf, "limit_p%.4g", r.p);
    save_solution(c, u.get(), buf, r.p, system_order(sys.get()), r.energy, 0.0);
    if (dim == 1 && dim_e == 1) {
      std::snprintf(buf, sizeof buf, "ratio_p%.4g.dat", r.p);
      write_text(out_path(c, buf), ratio_curve(u.get(), phi.get()));
    }
  }
  write_text(out_path(c, "limit.csv"), csv);
  write_json(out_path(c, "limit.json"), j);
  std::printf("%s", csv.c_str());
  return 0;
}

int cmd_symmetry(const Config& c) {
  if (c.solution.empty()) throw Failure(NLFEM_ERR_DOMAIN, "--solution is required");
  nlfem_function* raw = nullptr;
  check(nlfem_function_load(c.solution.c_str(), &raw, nullptr, nullptr));
  const FunctionPtr u(raw);
  nlfem_transform t;
  if (c.transform == "reflect_x") t = NLFEM_REFLECT_X;
  else if (c.transform == "reflect_y") t = NLFEM_REFLECT_Y;
  else if (c.transform == "rotate_90") t = NLFEM_ROTATE_90;
  else throw Failure(NLFEM_ERR_DOMAIN, "unknown transform '" + c.transform + "'");
  nlfem_symmetry r{};
  check(nlfem_symmetry_report(u.get(), t, c.interpolate ? 1 : 0, &r));
  const char* cls = r.symmetric ? "symmetric" : "antisymmetric";
  write_json(out_path(c, "symmetry.json"), {{"transform", c.transform},
                                            {"rho_plus", r.rho_plus},
                                            {"rho_minus", r.rho_minus},
                                            {"classification", cls},
                                            {"residual", r.residual},
                                            {"interpolated", r.interpolated != 0}});
  std::printf("%s  rho+ %.3e  rho- %.3e\n", cls, r.rho_plus, r.rho_minus);
  return 0;
}

int cmd_table(const Config& c) {
  std::vector<double> svals = c.s_values.empty() ? std::vector<double>{c.s} : c.s_values;
  std::string csv = "s,p,ground_energy,ground_max,nodal_energy,nodal_max,nodal_min\n";
  json j = json::array();
  char buf[200];
  for (double s : svals) {
    nlfem_table_row r{};
    check(nlfem_table(s, c.p, c.nodes, c.tol, c.max_iter, &r));
    std::snprintf(buf, sizeof buf, "%g,%g,%.6f,%.6f,%.6f,%.6f,%.6f\n", r.s, r.p, r.ground_energy, r.ground_max,
                  r.nodal_energy, r.nodal_max, r.nodal_min);
    csv += buf;
    j.push_back({{"s", r.s}, {"p", r.p}, {"ground_energy", r.ground_energy}, {"ground_max", r.ground_max},
                 {"nodal_energy", r.nodal_energy}, {"nodal_max", r.nodal_max}, {"nodal_min", r.nodal_min}});
    std::printf("%s", buf);
    std::fflush(stdout);
  }
  write_text(out_path(c, "table.csv"), csv);
  write_json(out_path(c, "table.json"), j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlocal fractional Laplacian FEM solver"};
  app.require_subcommand(1);
  Config c;

  auto domain = [&c](CLI::App* sub) {
    sub->add_option("--domain", c.domain, "interval or disk")->check(CLI::IsMember({"interval", "disk"}));
    sub->add_option("--a", c.a, "left endpoint");
    sub->add_option("--b", c.b, "right endpoint");
    sub->add_option("--nodes", c.nodes, "interval node count")->check(CLI::Range(std::size_t{3}, std::size_t{1} << 20));
    sub->add_option("--radius", c.radius, "disk radius")->check(CLI::PositiveNumber);
    sub->add_option("--level", c.level, "disk refinement level")->check(CLI::Range(0, 8));
    sub->add_option("--mesh", c.mesh_file, "mesh JSON file")->check(CLI::ExistingFile);
  };
  auto system = [&](CLI::App* sub) {
    domain(sub);
    sub->add_option("--s", c.s, "fractional order in (0,1)")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--potential", c.potential, "constant potential V >= 0")->check(CLI::NonNegativeNumber);
    sub->add_option("--system", c.system_file, "assembled system JSON file")->check(CLI::ExistingFile);
  };
  auto solver = [&](CLI::App* sub) {
    sub->add_option("--p", c.p, "exponent p > 2");
    sub->add_option("--tol", c.tol, "H-gradient tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", c.max_iter, "iteration cap")->check(CLI::PositiveNumber);
  };

  auto* mesh_gen = app.add_subcommand("mesh-gen", "generate an interval or disk mesh");
  domain(mesh_gen);
  auto* assemble = app.add_subcommand("assemble", "assemble stiffness and mass matrices");
  system(assemble);
  auto* eigen = app.add_subcommand("eigen", "smallest eigenpairs");
  system(eigen);
  eigen->add_option("--k", c.k, "number of eigenpairs")->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  auto* linear = app.add_subcommand("solve-linear", "solve the linear problem with source 1");
  system(linear);
  auto* ground = app.add_subcommand("ground-state", "ground state by the mountain-pass iteration");
  system(ground);
  solver(ground);
  auto* nodal = app.add_subcommand("nodal", "least-energy nodal solution");
  system(nodal);
  solver(nodal);
  auto* converge = app.add_subcommand("converge", "error study against the explicit solution on (-1,1)");
  converge->add_option("--s", c.s, "fractional order")->check(CLI::Range(0.0, 1.0));
  converge->add_option("--sizes", c.sizes, "node counts")->delimiter(',');
  auto* limit = app.add_subcommand("limit", "study of p -> 2");
  system(limit);
  limit->add_option("--index", c.index, "eigenvalue index, 1 or 2")->check(CLI::IsMember({1, 2}));
  limit->add_option("--p-seq", c.p_seq, "decreasing exponents")->delimiter(',');
  limit->add_option("--tol", c.tol, "H-gradient tolerance")->check(CLI::PositiveNumber);
  limit->add_option("--max-iter", c.max_iter, "iteration cap")->check(CLI::PositiveNumber);
  auto* symmetry = app.add_subcommand("symmetry", "symmetry classification of a solution file");
  symmetry->add_option("--solution", c.solution, "solution JSON file")->required()->check(CLI::ExistingFile);
  symmetry->add_option("--transform", c.transform, "reflect_x, reflect_y or rotate_90")
      ->check(CLI::IsMember({"reflect_x", "reflect_y", "rotate_90"}));
  symmetry->add_flag("--interpolate", c.interpolate, "compare by interpolation instead of node permutation");
  auto* table = app.add_subcommand("table", "ground and nodal characteristics on (-1,1)");
  table->add_option("--s", c.s_values, "fractional orders")->delimiter(',');
  table->add_option("--nodes", c.nodes, "node count")->check(CLI::Range(std::size_t{3}, std::size_t{1} << 20));
  solver(table);

  for (auto* sub : app.get_subcommands({})) sub->add_option("--out", c.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*mesh_gen) return cmd_mesh_gen(c);
    if (*assemble) return cmd_assemble(c);
    if (*eigen) return cmd_eigen(c);
    if (*linear) return cmd_solve_linear(c);
    if (*ground) return solve_nonlinear(c, false);
    if (*nodal) return solve_nonlinear(c, true);
    if (*converge) return cmd_converge(c);
    if (*limit) return cmd_limit(c);
    if (*symmetry) return cmd_symmetry(c);
    if (*table) return cmd_table(c);
  } catch (const Failure& e) {
    std::fprintf(stderr, "error: %s (%s)\n", e.what(), nlfem_status_name(e.status));
    return exit_code(e.status);
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
