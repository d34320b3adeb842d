// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "dppipa/model_problems.hpp"

namespace dppipa {

/// Localized orbitals from selected columns of the density matrix.
struct ScdmResult {
  std::vector<std::size_t> pivots;  ///< k distinct cells, selection order
  Eigen::MatrixXd v;                ///< N x k, column i anchored at pivots[i]
  double conditioning = 0.0;        ///< smallest eigenvalue of K(pivots, pivots)
};

/// First rows() pivots of a greedy column-pivoted Householder QR of the wide
/// matrix `a`. Each step takes the column with the largest residual norm,
/// lowest original index on exact ties. Throws rank_deficient when
/// |R_jj| < 1e-12 |R_00|.
std::vector<std::size_t> pivoted_qr_pivots(const Eigen::MatrixXd& a);

/// Symmetric inverse square root by eigendecomposition. Throws
/// invalid_argument if `m` is not symmetric to 1e-12 and IllConditioned if an
/// eigenvalue is <= tol.
Eigen::MatrixXd inv_sqrt_spd(const Eigen::MatrixXd& m, double tol = 1e-10);

/// V = Phi C^T (C C^T)^{-1/2} with C = Phi(pivots, :), pivots taken from
/// Phi^T. Never forms the N x N kernel.
ScdmResult scdm_localize(const OrbitalSet& orbitals);

/// Root-mean-square distance of each column's normalized weight v^2 from its
/// centroid. On periodic grids the centroid is the circular mean per axis and
/// distances use the minimum image. Throws invalid_argument on a zero column.
Eigen::VectorXd column_spread(const Eigen::MatrixXd& v, const Grid& grid);

}  // namespace dppipa
