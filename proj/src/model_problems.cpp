// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#include "dppipa/model_problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <lapacke.h>

#include "dppipa/error.hpp"
#include "dppipa/rng.hpp"

namespace dppipa {

std::string to_string(Boundary bc) {
  return bc == Boundary::periodic ? "periodic" : "dirichlet";
}

Boundary parse_boundary(const std::string& text) {
  if (text == "periodic") return Boundary::periodic;
  if (text == "dirichlet") return Boundary::dirichlet;
  throw Error(ErrorKind::invalid_argument, "unknown boundary condition '" + text + "'");
}

Grid build_grid(int n, Boundary bc) {
  if (n < 2) {
    throw Error(ErrorKind::invalid_argument,
                "grid needs at least 2 cells per dimension, got " + std::to_string(n));
  }
  const double h = bc == Boundary::periodic ? 1.0 / n : 1.0 / (n + 1);
  return Grid{n, bc, h};
}

double PotentialSpec::operator()(double x1, double x2) const {
  if (kind == PotentialKind::none) return 0.0;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double bump = (std::cos(two_pi * x1) + 1.0) * (std::cos(two_pi * x2) + 1.0);
  return kind == PotentialKind::corner_well ? -amplitude * bump : amplitude * bump;
}

SparseOperator assemble_operator(const Grid& grid, const PotentialSpec& pot) {
  const int n = grid.n;
  const double inv_h2 = 1.0 / (grid.h * grid.h);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(grid.size() * 5);

  auto neighbor = [&](int i, int step) -> int {
    const int j = i + step;
    if (grid.bc == Boundary::periodic) return (j + n) % n;
    return (j < 0 || j >= n) ? -1 : j;
  };

  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const auto row = static_cast<int>(grid.index(ix, iy));
      const auto [x1, x2] = grid.point(row);
      entries.emplace_back(row, row, 4.0 * inv_h2 + pot(x1, x2));
      for (int step : {-1, 1}) {
        if (int jx = neighbor(ix, step); jx >= 0)
          entries.emplace_back(row, static_cast<int>(grid.index(jx, iy)), -inv_h2);
        if (int jy = neighbor(iy, step); jy >= 0)
          entries.emplace_back(row, static_cast<int>(grid.index(ix, jy)), -inv_h2);
      }
    }
  }
  const auto size = static_cast<Eigen::Index>(grid.size());
  SparseOperator op(size, size);
  op.setFromTriplets(entries.begin(), entries.end());
  return op;
}

OrbitalSet make_orbital_set(Eigen::MatrixXd phi, std::optional<Grid> grid) {
  if (grid && static_cast<std::size_t>(phi.rows()) != grid->size()) {
    throw Error(ErrorKind::invalid_argument, "orbital rows do not match the grid size");
  }
  if (phi.cols() < 1 || phi.cols() > phi.rows()) {
    throw Error(ErrorKind::invalid_argument, "need 1 <= k <= N orbitals");
  }
  const Eigen::MatrixXd gram = phi.transpose() * phi;
  const double defect =
      (gram - Eigen::MatrixXd::Identity(phi.cols(), phi.cols())).cwiseAbs().maxCoeff();
  if (defect > 1e-10) {
    std::ostringstream msg;
    msg << "orbital columns are not orthonormal (max defect " << defect << ")";
    throw Error(ErrorKind::invalid_argument, msg.str());
  }
  OrbitalSet set;
  set.grid = grid;
  set.phi = std::move(phi);
  return set;
}

Eigen::MatrixXd random_orthonormal(std::size_t rows, int cols, std::uint64_t seed) {
  RngStream rng(seed, 0x6f7274686fULL);
  Eigen::MatrixXd gauss(static_cast<Eigen::Index>(rows), cols);
  for (Eigen::Index j = 0; j < gauss.cols(); ++j) {
    for (Eigen::Index i = 0; i < gauss.rows(); ++i) {
      // Box-Muller; 1 - u keeps the log argument in (0, 1].
      const double u = 1.0 - rng.uniform();
      const double w = rng.uniform();
      gauss(i, j) = std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * w);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gauss);
  return qr.householderQ() * Eigen::MatrixXd::Identity(gauss.rows(), cols);
}

namespace {

struct Mode {
  int m1, m2;
  double eigenvalue;
};

// Largest shell radius^2 whose modes stay strictly below the Nyquist index.
bool representable(int r2, int n) { return 4 * r2 < n * n; }

int lattice_count(int r2) {
  int count = 0;
  const int r = static_cast<int>(std::sqrt(static_cast<double>(r2))) + 1;
  for (int a = -r; a <= r; ++a)
    for (int b = -r; b <= r; ++b)
      if (a * a + b * b <= r2) ++count;
  return count;
}

bool is_sum_of_two_squares(int r2) {
  for (int a = 0; a * a <= r2; ++a) {
    const int rest = r2 - a * a;
    const int b = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rest))));
    if (b * b == rest) return true;
  }
  return false;
}

double stencil_symbol(const Grid& grid, int m1, int m2) {
  const double s1 = std::sin(std::numbers::pi * m1 / grid.n);
  const double s2 = std::sin(std::numbers::pi * m2 / grid.n);
  return 4.0 / (grid.h * grid.h) * (s1 * s1 + s2 * s2);
}

}  // namespace

std::vector<int> closed_shell_counts(int n) {
  std::vector<int> counts;
  for (int r2 = 0; representable(r2, n); ++r2) {
    if (is_sum_of_two_squares(r2)) counts.push_back(lattice_count(r2));
  }
  return counts;
}

OrbitalSet fourier_orbitals(const Grid& grid, int k) {
  if (grid.bc != Boundary::periodic) {
    throw Error(ErrorKind::invalid_argument, "Fourier orbitals need a periodic grid");
  }
  if (k < 1) throw Error(ErrorKind::invalid_argument, "k must be positive");

  int radius2 = -1;
  int lower = 0, upper = 0;
  for (int r2 = 0; representable(r2, grid.n); ++r2) {
    if (!is_sum_of_two_squares(r2)) continue;
    const int count = lattice_count(r2);
    if (count == k) {
      radius2 = r2;
      break;
    }
    if (count < k) lower = count;
    if (count > k) {
      upper = count;
      break;
    }
  }
  if (radius2 < 0) {
    std::ostringstream msg;
    msg << "k=" << k << " does not close a Fourier shell on an n=" << grid.n
        << " grid; nearest closing values are ";
    if (lower > 0) msg << lower;
    if (lower > 0 && upper > 0) msg << " and ";
    if (upper > 0) msg << upper;
    if (upper == 0) msg << " (larger shells exceed the grid resolution)";
    throw ShellViolation(k, lower, upper, msg.str());
  }

  // Half-plane representatives of +-m pairs; each contributes cos and sin.
  std::vector<Mode> modes;
  const int r = static_cast<int>(std::sqrt(static_cast<double>(radius2)));
  for (int m1 = 0; m1 <= r; ++m1) {
    for (int m2 = -r; m2 <= r; ++m2) {
      if (m1 * m1 + m2 * m2 > radius2) continue;
      if (m1 == 0 && m2 <= 0) continue;
      modes.push_back({m1, m2, stencil_symbol(grid, m1, m2)});
    }
  }
  std::stable_sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
    return a.eigenvalue < b.eigenvalue;
  });

  const std::size_t size = grid.size();
  const int n = grid.n;
  OrbitalSet set;
  set.grid = grid;
  set.phi.resize(static_cast<Eigen::Index>(size), k);
  set.eigenvalues.resize(k);
  set.phi.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(size)));
  set.eigenvalues(0) = 0.0;

  Eigen::Index col = 1;
  for (const Mode& mode : modes) {
    for (std::size_t cell = 0; cell < size; ++cell) {
      // Reduce the phase in integers so equal phases give bitwise-equal values.
      const long phase =
          ((static_cast<long>(mode.m1) * grid.ix(cell) + static_cast<long>(mode.m2) * grid.iy(cell)) %
               n + n) % n;
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(phase) / n;
      set.phi(static_cast<Eigen::Index>(cell), col) = std::cos(angle);
      set.phi(static_cast<Eigen::Index>(cell), col + 1) = std::sin(angle);
    }
    set.phi.col(col).normalize();
    set.phi.col(col + 1).normalize();
    set.eigenvalues(col) = set.eigenvalues(col + 1) = mode.eigenvalue;
    col += 2;
  }

  // Gap to the next nonempty shell, when it still fits on the grid.
  for (int r2 = radius2 + 1; representable(r2, n); ++r2) {
    if (!is_sum_of_two_squares(r2)) continue;
    double next = std::numeric_limits<double>::infinity();
    for (int m1 = 0; m1 * m1 <= r2; ++m1) {
      const int rest = r2 - m1 * m1;
      const int m2 = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rest))));
      if (m2 * m2 == rest) next = std::min(next, stencil_symbol(grid, m1, m2));
    }
    set.fermi_gap = next - set.eigenvalues(k - 1);
    break;
  }
  return set;
}

OrbitalSet lowest_eigenmodes(const Grid& grid, const SparseOperator& op, int k) {
  const auto size = static_cast<Eigen::Index>(grid.size());
  if (op.rows() != size || op.cols() != size) {
    throw Error(ErrorKind::invalid_argument, "operator size does not match the grid");
  }
  if (k < 1 || k >= size) {
    throw Error(ErrorKind::invalid_argument, "need 1 <= k < N eigenmodes");
  }
  const SparseOperator asym = op - SparseOperator(op.transpose());
  if (asym.nonZeros() > 0 && asym.coeffs().cwiseAbs().maxCoeff() > 1e-12 * op.coeffs().cwiseAbs().maxCoeff()) {
    throw Error(ErrorKind::invalid_argument, "operator is not symmetric");
  }

  Eigen::MatrixXd dense(op);
  const int wanted = static_cast<int>(std::min<Eigen::Index>(k + 1, size));
  Eigen::VectorXd values(size);
  Eigen::MatrixXd vectors(size, wanted);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(wanted));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, 'V', 'I', 'L', static_cast<lapack_int>(size), dense.data(),
      static_cast<lapack_int>(size), 0.0, 0.0, 1, wanted, 0.0, &found, values.data(),
      vectors.data(), static_cast<lapack_int>(size), support.data());
  if (info != 0 || found != wanted) {
    throw Error(ErrorKind::numerical_failure,
                "symmetric eigensolver failed (info " + std::to_string(info) + ")");
  }

  OrbitalSet set;
  set.grid = grid;
  set.phi = vectors.leftCols(k);
  set.eigenvalues = values.head(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    Eigen::Index pivot = 0;
    set.phi.col(j).cwiseAbs().maxCoeff(&pivot);
    if (set.phi(pivot, j) < 0.0) set.phi.col(j) *= -1.0;
  }
  if (wanted > k) {
    const double gap = values(k) - values(k - 1);
    set.fermi_gap = gap;
    set.near_degenerate = gap < 1e-6 * std::abs(values(k));
  }
  return set;
}

Eigen::VectorXd density(const OrbitalSet& orbitals) {
  return orbitals.phi.rowwise().squaredNorm();
}

double kernel_entry(const OrbitalSet& orbitals, std::size_t x, std::size_t y) {
  return orbitals.phi.row(static_cast<Eigen::Index>(x))
      .dot(orbitals.phi.row(static_cast<Eigen::Index>(y)));
}

}  // namespace dppipa
