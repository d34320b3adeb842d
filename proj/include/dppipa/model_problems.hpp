// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file model_problems.hpp
 * @brief Ground sets, Schrodinger-type operators and orbital sets on the unit
 *        square.
 *
 * The ground set is an n x n grid with flat index iy * n + ix. Orbitals are
 * the columns of an N x k matrix with orthonormal columns; they define the
 * projection kernel K = Phi Phi^T and the density rho(x) = K(x, x).
 */

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace dppipa {

enum class Boundary : std::uint8_t { periodic = 0, dirichlet = 1 };

std::string to_string(Boundary bc);
Boundary parse_boundary(const std::string& text);

struct Grid {
  int n = 0;
  Boundary bc = Boundary::periodic;
  double h = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(n) * n; }
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * n + ix;
  }
  int ix(std::size_t cell) const { return static_cast<int>(cell % n); }
  int iy(std::size_t cell) const { return static_cast<int>(cell / n); }

  /// Physical coordinate of a grid index along one axis. Periodic cells sit
  /// at i*h (h = 1/n); Dirichlet cells at the interior nodes (i+1)*h
  /// (h = 1/(n+1)).
  double coordinate(int i) const {
    return bc == Boundary::periodic ? i * h : (i + 1) * h;
  }
  std::array<double, 2> point(std::size_t cell) const {
    return {coordinate(ix(cell)), coordinate(iy(cell))};
  }

  bool operator==(const Grid&) const = default;
};

/// Throws invalid_argument when n < 2.
Grid build_grid(int n, Boundary bc);

enum class PotentialKind : std::uint8_t { none, corner_well, center_well };

struct PotentialSpec {
  PotentialKind kind = PotentialKind::none;
  double amplitude = 512.0;

  /// U(x) = -+amplitude * (cos 2 pi x1 + 1)(cos 2 pi x2 + 1); minus for the
  /// corner well, plus for the center well.
  double operator()(double x1, double x2) const;
};

using SparseOperator = Eigen::SparseMatrix<double>;

/// 5-point discrete -Laplacian scaled by 1/h^2 plus diag(U) at the cells.
SparseOperator assemble_operator(const Grid& grid, const PotentialSpec& pot);

struct OrbitalSet {
  /// Absent for synthetic kernels whose ground set is not a square grid.
  std::optional<Grid> grid;
  Eigen::MatrixXd phi;           ///< N x k, orthonormal columns
  Eigen::VectorXd eigenvalues;   ///< k entries, nondecreasing (may be empty)
  std::optional<double> fermi_gap;
  bool near_degenerate = false;  ///< gap below 1e-6 * |lambda_{k+1}|

  std::size_t size() const { return static_cast<std::size_t>(phi.rows()); }
  int k() const { return static_cast<int>(phi.cols()); }
};

/// Wraps an arbitrary matrix with orthonormal columns (checked to 1e-10).
OrbitalSet make_orbital_set(Eigen::MatrixXd phi, std::optional<Grid> grid = {});

/// Haar-like random N x k orthonormal columns from a seeded Gaussian QR.
Eigen::MatrixXd random_orthonormal(std::size_t rows, int cols, std::uint64_t seed);

/// Cumulative mode counts #{m in Z^2 : |m|^2 <= r^2} for every closed shell
/// representable on an n-point periodic axis (r^2 < (n/2)^2).
std::vector<int> closed_shell_counts(int n);

/// Analytic real Fourier eigenbasis of the periodic grid Laplacian; k must
/// close a shell, otherwise ShellViolation names the nearest closing counts.
OrbitalSet fourier_orbitals(const Grid& grid, int k);

/// The k lowest eigenpairs of a symmetric operator on `grid`. Each column is
/// signed so its largest-magnitude entry (lowest index on ties) is positive.
OrbitalSet lowest_eigenmodes(const Grid& grid, const SparseOperator& op, int k);

/// rho(x) = sum_i phi_i(x)^2.
Eigen::VectorXd density(const OrbitalSet& orbitals);

/// K(x, y) = sum_i phi_i(x) phi_i(y).
double kernel_entry(const OrbitalSet& orbitals, std::size_t x, std::size_t y);

}  // namespace dppipa
