// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nlfem {

enum class ErrorKind {
  domain,        // precondition / validation failure
  singularity,   // non-integrable kernel configuration
  indefinite,    // non-positive pivot in a factorization
  convergence,   // iteration budget exhausted
  degeneration,  // nodal iterate lost its sign change
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class SingularityError : public Error {
 public:
  explicit SingularityError(const std::string& what)
      : Error(ErrorKind::singularity, what) {}
};

class IndefiniteError : public Error {
 public:
  IndefiniteError(const std::string& what, std::size_t pivot)
      : Error(ErrorKind::indefinite, what + " (pivot " + std::to_string(pivot) + ")"),
        pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

/// Carries the best residual reached and, when available, the coefficients of
/// the best iterate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual,
                   std::vector<double> best = {})
      : Error(ErrorKind::convergence, what), residual_(residual), best_(std::move(best)) {}
  double residual() const noexcept { return residual_; }
  const std::vector<double>& best_iterate() const noexcept { return best_; }

 private:
  double residual_;
  std::vector<double> best_;
};

class DegenerationError : public Error {
 public:
  explicit DegenerationError(const std::string& what)
      : Error(ErrorKind::degeneration, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace nlfem
