// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace dppipa {

enum class ErrorKind {
  invalid_argument,
  shell_violation,
  rank_deficient,
  ill_conditioned,
  degenerate_region,
  too_large,
  numerical_failure,
  io,
};

/// Base exception for every failure raised by the library. The kind selects
/// the CLI exit code (2 invalid arguments, 3 numerical failure, 4 I/O).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Requested orbital count does not close a degenerate Fourier shell.
class ShellViolation : public Error {
 public:
  ShellViolation(int requested, int lower, int upper, const std::string& what)
      : Error(ErrorKind::shell_violation, what),
        requested_(requested), lower_(lower), upper_(upper) {}

  int requested() const noexcept { return requested_; }
  /// Nearest closing count below the request, 0 if none.
  int lower() const noexcept { return lower_; }
  /// Nearest closing count above the request, 0 if none fits the grid.
  int upper() const noexcept { return upper_; }

 private:
  int requested_, lower_, upper_;
};

class IllConditioned : public Error {
 public:
  IllConditioned(double eigenvalue, const std::string& what)
      : Error(ErrorKind::ill_conditioned, what), eigenvalue_(eigenvalue) {}

  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

class DegenerateRegion : public Error {
 public:
  DegenerateRegion(int region, const std::string& what)
      : Error(ErrorKind::degenerate_region, what), region_(region) {}

  int region() const noexcept { return region_; }

 private:
  int region_;
};

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument:
    case ErrorKind::shell_violation:
    case ErrorKind::too_large:
      return 2;
    case ErrorKind::io:
      return 4;
    default:
      return 3;
  }
}

}  // namespace dppipa
