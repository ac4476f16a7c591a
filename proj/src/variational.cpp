// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlfem/variational.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nlfem/error.hpp"
#include "text.hpp"

namespace nlfem {

double critical_exponent(int dim, double s) {
  if (dim > 2.0 * s) return 2.0 * dim / (dim - 2.0 * s);
  return std::numeric_limits<double>::infinity();
}

ProblemSpec::ProblemSpec(GramPair gram, double p, double lambda)
    : gram_(std::move(gram)), p_(p), lambda_(lambda) {
  const double crit = critical_exponent(gram_.space()->dimension(), gram_.kernel().order());
  if (!(p > 2.0) || !(p < crit)) {
    throw DomainError("exponent p must lie in (2, " + detail::num(crit) + "), got " +
                      detail::num(p));
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive");
}

namespace {

void check_space(const ProblemSpec& spec, const FemFunction& u) {
  if (!u.space() || u.size() != spec.gram().size()) {
    throw DomainError("function does not live on the problem's mesh");
  }
}

}  // namespace

double energy(const ProblemSpec& spec, const FemFunction& u) {
  check_space(spec, u);
  const double q = spec.gram().S().bilinear(u.coefficients(), u.coefficients());
  return 0.5 * q - spec.lambda() / spec.p() * lp_power(u, spec.p());
}

std::vector<double> nonlinear_load(const ProblemSpec& spec, const FemFunction& u) {
  check_space(spec, u);
  const auto vals = u.quadrature_values();
  const auto& quad = u.space()->quadrature();
  const double p = spec.p();
  std::vector<double> b(u.size(), 0.0);
  for (std::size_t k = 0; k < vals.size(); ++k) {
    const double v = vals[k];
    if (v == 0.0) continue;
    const double f = quad[k].weight * std::pow(std::abs(v), p - 2.0) * v;
    for (int j = 0; j < 3; ++j) {
      if (quad[k].dof[j] >= 0) b[static_cast<std::size_t>(quad[k].dof[j])] += f * quad[k].value[j];
    }
  }
  for (double& x : b) x *= spec.lambda();
  return b;
}

double derivative(const ProblemSpec& spec, const FemFunction& w, const FemFunction& v) {
  check_space(spec, v);
  const auto b = nonlinear_load(spec, w);
  return spec.gram().S().bilinear(w.coefficients(), v.coefficients()) - dot(b, v.coefficients());
}

FemFunction gradient(const ProblemSpec& spec, const FemFunction& u) {
  const auto a = spec.gram().stiffness_factor().solve(nonlinear_load(spec, u));
  FemFunction g = u;
  for (std::size_t i = 0; i < a.size(); ++i) g.coefficients()[i] -= a[i];
  return g;
}

double h_norm(const GramPair& gram, const FemFunction& u) {
  return std::sqrt(std::max(0.0, gram.S().bilinear(u.coefficients(), u.coefficients())));
}

NehariProjection nehari_project(const ProblemSpec& spec, const FemFunction& u) {
  check_space(spec, u);
  if (u.is_zero()) throw DomainError("cannot project the zero function onto the Nehari manifold");
  const double q = spec.gram().S().bilinear(u.coefficients(), u.coefficients());
  const double r = spec.lambda() * lp_power(u, spec.p());
  if (!(q > 0.0) || !(r > 0.0)) throw DomainError("degenerate function in Nehari projection");
  const double t = std::pow(q / r, 1.0 / (spec.p() - 2.0));
  return {t, t * u};
}

NodalProjection nodal_nehari_project(const ProblemSpec& spec, const FemFunction& u,
                                     std::optional<std::array<double, 2>> start) {
  check_space(spec, u);
  const FemFunction up = positive_part(u);
  const FemFunction um = negative_part(u);
  if (up.is_zero() || um.is_zero()) {
    throw DomainError("nodal projection needs a sign-changing function");
  }
  const SymMatrix& S = spec.gram().S();
  const double spp = S.bilinear(up.coefficients(), up.coefficients());
  const double smm = S.bilinear(um.coefficients(), um.coefficients());
  const double spm = S.bilinear(up.coefficients(), um.coefficients());
  const double p = spec.p(), lam = spec.lambda();
  const auto& quad = u.space()->quadrature();
  const auto vp = up.quadrature_values();
  const auto vm = um.quadrature_values();

  // F(t) = (E'(w)[u+], E'(w)[u-]) and its Jacobian, w = t+ u+ + t- u-.
  struct Eval {
    double f[2];
    double j[2][2];
  };
  auto evaluate = [&](double tp, double tm) {
    double n_p = 0, n_m = 0, jpp = 0, jpm = 0, jmm = 0;
    for (std::size_t k = 0; k < quad.size(); ++k) {
      const double w = tp * vp[k] + tm * vm[k];
      if (w == 0.0) continue;
      const double aw = std::abs(w);
      const double g = quad[k].weight * std::pow(aw, p - 2.0);
      n_p += g * w * vp[k];
      n_m += g * w * vm[k];
      jpp += g * vp[k] * vp[k];
      jpm += g * vp[k] * vm[k];
      jmm += g * vm[k] * vm[k];
    }
    Eval e;
    e.f[0] = tp * spp + tm * spm - lam * n_p;
    e.f[1] = tp * spm + tm * smm - lam * n_m;
    e.j[0][0] = spp - lam * (p - 1.0) * jpp;
    e.j[0][1] = spm - lam * (p - 1.0) * jpm;
    e.j[1][0] = e.j[0][1];
    e.j[1][1] = smm - lam * (p - 1.0) * jmm;
    return e;
  };
  auto wnorm2 = [&](double tp, double tm) { return tp * tp * spp + 2 * tp * tm * spm + tm * tm * smm; };

  double tp, tm;
  if (start) {
    tp = (*start)[0];
    tm = (*start)[1];
    if (!(tp > 0.0) || !(tm > 0.0)) throw DomainError("nodal Newton start must be positive");
  } else {
    tp = std::pow(spp / (lam * lp_power(up, p)), 1.0 / (p - 2.0));
    tm = std::pow(smm / (lam * lp_power(um, p)), 1.0 / (p - 2.0));
  }
  constexpr double kTol = 1e-10;
  constexpr int kMaxIter = 100;
  // Newton on G(sigma) = F(t)/t with t = exp(sigma): positivity is built in.
  auto gvec = [](const Eval& e, double tp_, double tm_) {
    return std::array<double, 2>{e.f[0] / tp_, e.f[1] / tm_};
  };
  Eval e = evaluate(tp, tm);
  for (int it = 0; it <= kMaxIter; ++it) {
    const double scale = kTol * wnorm2(tp, tm);
    if (std::abs(e.f[0]) <= scale && std::abs(e.f[1]) <= scale) {
      NodalProjection out{tp, tm, tp * up + tm * um, it};
      return out;
    }
    if (it == kMaxIter) break;
    const auto g = gvec(e, tp, tm);
    // dG_i/dsigma_j = t_j/t_i dF_i/dt_j - delta_ij F_i/t_i.
    const double a00 = e.j[0][0] - g[0];
    const double a01 = tm / tp * e.j[0][1];
    const double a10 = tp / tm * e.j[1][0];
    const double a11 = e.j[1][1] - g[1];
    const double det = a00 * a11 - a01 * a10;
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) break;
    const double d0 = -(a11 * g[0] - a01 * g[1]) / det;
    const double d1 = -(-a10 * g[0] + a00 * g[1]) / det;
    const double g0 = std::hypot(g[0], g[1]);
    double step = 1.0;
    bool accepted = false;
    for (int h = 0; h < 60; ++h, step *= 0.5) {
      const double ntp = tp * std::exp(step * d0);
      const double ntm = tm * std::exp(step * d1);
      if (!std::isfinite(ntp) || !std::isfinite(ntm) || ntp <= 0.0 || ntm <= 0.0) continue;
      const Eval ne = evaluate(ntp, ntm);
      const auto ng = gvec(ne, ntp, ntm);
      if (std::hypot(ng[0], ng[1]) < g0) {
        tp = ntp;
        tm = ntm;
        e = ne;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  const double res = std::max(std::abs(e.f[0]), std::abs(e.f[1])) / wnorm2(tp, tm);
  std::vector<double> best = (tp * up + tm * um).coefficients();
  throw ConvergenceError("nodal Nehari Newton did not converge", res, std::move(best));
}

FemFunction rescale_solution(const FemFunction& u, double lambda, double p) {
  if (!(p > 2.0)) throw DomainError("rescaling needs p > 2");
  if (!(lambda > 0.0)) throw DomainError("rescaling needs lambda > 0");
  return std::pow(lambda, 1.0 / (p - 2.0)) * u;
}

}  // namespace nlfem
