// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlfem/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nlfem/error.hpp"

namespace nlfem {

namespace {

void check_order(double s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw DomainError("fractional order s must lie in (0,1), got " + std::to_string(s));
  }
}

}  // namespace

double fractional_constant(int dim, double s) {
  if (dim < 1 || dim > 3) {
    throw DomainError("dimension must be 1, 2 or 3, got " + std::to_string(dim));
  }
  check_order(s);
  const double n = dim;
  return s * std::pow(2.0, 2.0 * s) * std::tgamma(0.5 * (n + 2.0 * s)) /
         (std::pow(std::numbers::pi, 0.5 * n) * std::tgamma(1.0 - s));
}

double sphere_measure(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return 2.0 * std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi;
    default: throw DomainError("unsupported dimension " + std::to_string(dim));
  }
}

FractionalKernel::FractionalKernel(int dim, double s)
    : dim_(dim), s_(s), c_(0.0), gamma_(0.0) {
  if (dim != 1 && dim != 2) {
    throw DomainError("kernel dimension must be 1 or 2, got " + std::to_string(dim));
  }
  c_ = fractional_constant(dim, s);
  gamma_ = dim + 2.0 * s;
}

double FractionalKernel::profile(double r) const {
  if (!(r > 0.0)) {
    throw DomainError("kernel evaluated at non-positive radius");
  }
  return 0.5 * c_ * std::pow(r, -gamma_);
}

double FractionalKernel::tail_integral(double radius) const {
  if (!(radius > 0.0)) {
    throw DomainError("tail radius must be positive");
  }
  return c_ * sphere_measure(dim_) / (4.0 * s_ * std::pow(radius, 2.0 * s_));
}

}  // namespace nlfem
