// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace nlfem {

/// Normalization constant c_{N,s} = s 4^s Gamma((N+2s)/2) / (pi^{N/2} Gamma(1-s)),
/// which makes the integral operator agree with the Fourier-symbol definition
/// of the fractional Laplacian. Accepts N in {1,2,3} and s in (0,1).
double fractional_constant(int dim, double s);

/// Measure of the unit sphere S^{N-1} in R^N (2, 2 pi, 4 pi).
double sphere_measure(int dim);

/// A radial interaction kernel K(x) = k(|x|) together with its exterior-ball
/// integral. Only the fractional kernel is built in.
class RadialKernel {
 public:
  virtual ~RadialKernel() = default;
  virtual int dimension() const = 0;
  virtual double profile(double r) const = 0;
  /// Integral of K over the complement of a ball of radius R.
  virtual double tail_integral(double radius) const = 0;
};

/// K(x) = 1/2 c_{N,s} |x|^{-N-2s}. Immutable value type.
class FractionalKernel final : public RadialKernel {
 public:
  FractionalKernel(int dim, double s);

  int dimension() const override { return dim_; }
  double order() const { return s_; }
  double constant() const { return c_; }
  /// Singularity exponent N + 2s.
  double exponent() const { return gamma_; }

  /// Throws DomainError for r <= 0: the singularity belongs to quadrature.
  double profile(double r) const override;
  double operator()(double r) const { return profile(r); }
  double tail_integral(double radius) const override;

 private:
  int dim_;
  double s_;
  double c_;
  double gamma_;
};

}  // namespace nlfem
