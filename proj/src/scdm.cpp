// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#include "dppipa/scdm.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "dppipa/error.hpp"

namespace dppipa {

std::vector<std::size_t> pivoted_qr_pivots(const Eigen::MatrixXd& a) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  if (rows < 1 || rows > cols) {
    throw Error(ErrorKind::invalid_argument, "pivoted QR needs 1 <= rows <= cols");
  }

  Eigen::MatrixXd work = a;
  std::vector<std::size_t> perm(static_cast<std::size_t>(cols));
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Eigen::VectorXd reflector(rows);
  double leading = 0.0;

  for (Eigen::Index j = 0; j < rows; ++j) {
    const Eigen::Index tail = rows - j;

    // Residual norms are recomputed rather than downdated; for a wide k x N
    // matrix this costs the same order as applying the reflector.
    Eigen::Index best = j;
    double best_norm = -1.0;
    for (Eigen::Index c = j; c < cols; ++c) {
      const double norm = work.col(c).tail(tail).squaredNorm();
      if (norm > best_norm || (norm == best_norm && perm[c] < perm[best])) {
        best = c;
        best_norm = norm;
      }
    }
    if (best != j) {
      work.col(j).swap(work.col(best));
      std::swap(perm[j], perm[best]);
    }

    const double norm = std::sqrt(best_norm);
    if (j == 0) leading = norm;
    if (norm == 0.0 || norm < 1e-12 * leading) {
      std::ostringstream msg;
      msg << "matrix is rank deficient at pivot " << j << " (|R_jj| = " << norm << ")";
      throw Error(ErrorKind::rank_deficient, msg.str());
    }

    // Householder reflector mapping the pivot column onto -sign(x0)|x| e_0.
    auto v = reflector.head(tail);
    v = work.col(j).tail(tail);
    const double diag = v(0) >= 0.0 ? -norm : norm;
    v(0) -= diag;
    const double vv = v.squaredNorm();
    if (j + 1 < cols && vv > 0.0) {
      auto block = work.bottomRightCorner(tail, cols - j - 1);
      const Eigen::RowVectorXd proj = v.transpose() * block;
      block.noalias() -= (2.0 / vv) * v * proj;
    }
    work.col(j).tail(tail).setZero();
    work(j, j) = diag;
  }
  return {perm.begin(), perm.begin() + rows};
}

Eigen::MatrixXd inv_sqrt_spd(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::invalid_argument, "inverse square root needs a square matrix");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorKind::invalid_argument, "inverse square root needs a symmetric matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorKind::numerical_failure, "symmetric eigensolver failed");
  }
  const double smallest = eig.eigenvalues().minCoeff();
  if (!(smallest > tol)) {
    std::ostringstream msg;
    msg << "matrix is ill-conditioned: eigenvalue " << smallest << " <= " << tol;
    throw IllConditioned(smallest, msg.str());
  }
  const Eigen::MatrixXd& u = eig.eigenvectors();
  Eigen::MatrixXd x =
      u * eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * u.transpose();
  return 0.5 * (x + x.transpose());
}

ScdmResult scdm_localize(const OrbitalSet& orbitals) {
  const Eigen::MatrixXd& phi = orbitals.phi;
  const Eigen::Index k = phi.cols();

  ScdmResult result;
  result.pivots = pivoted_qr_pivots(phi.transpose());

  Eigen::MatrixXd anchors(k, k);  // Phi(sigma, :)
  for (Eigen::Index i = 0; i < k; ++i)
    anchors.row(i) = phi.row(static_cast<Eigen::Index>(result.pivots[i]));

  const Eigen::MatrixXd overlap = anchors * anchors.transpose();  // K(sigma, sigma)
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(overlap, Eigen::EigenvaluesOnly);
  result.conditioning = eig.eigenvalues().minCoeff();

  const Eigen::MatrixXd mixing = anchors.transpose() * inv_sqrt_spd(overlap);
  result.v.noalias() = phi * mixing;
  return result;
}

Eigen::VectorXd column_spread(const Eigen::MatrixXd& v, const Grid& grid) {
  if (static_cast<std::size_t>(v.rows()) != grid.size()) {
    throw Error(ErrorKind::invalid_argument, "column length does not match the grid");
  }
  const bool periodic = grid.bc == Boundary::periodic;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const auto size = static_cast<Eigen::Index>(grid.size());

  Eigen::VectorXd spreads(v.cols());
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    const Eigen::VectorXd w = v.col(j).array().square();
    const double total = w.sum();
    if (!(total > 0.0)) {
      throw Error(ErrorKind::invalid_argument,
                  "spread is undefined for zero column " + std::to_string(j));
    }

    std::array<double, 2> centroid{};
    for (int axis = 0; axis < 2; ++axis) {
      double c = 0.0, s = 0.0, mean = 0.0;
      for (Eigen::Index x = 0; x < size; ++x) {
        const double coord = grid.point(static_cast<std::size_t>(x))[axis];
        const double weight = w(x) / total;
        if (periodic) {
          c += weight * std::cos(two_pi * coord);
          s += weight * std::sin(two_pi * coord);
        } else {
          mean += weight * coord;
        }
      }
      if (periodic) {
        // A vanishing resultant (e.g. uniform weight) has no circular mean;
        // anchor it at the origin.
        mean = std::hypot(c, s) < 1e-12 ? 0.0 : std::atan2(s, c) / two_pi;
      }
      centroid[axis] = mean;
    }

    double second_moment = 0.0;
    for (Eigen::Index x = 0; x < size; ++x) {
      const auto p = grid.point(static_cast<std::size_t>(x));
      double d2 = 0.0;
      for (int axis = 0; axis < 2; ++axis) {
        double d = p[axis] - centroid[axis];
        if (periodic) d -= std::round(d);
        d2 += d * d;
      }
      second_moment += w(x) / total * d2;
    }
    spreads(j) = std::sqrt(second_moment);
  }
  return spreads;
}

}  // namespace dppipa
