// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dppipa/model_problems.hpp"
#include "dppipa/rng.hpp"

namespace dppipa {

using Labels = std::vector<std::uint32_t>;

struct Partition {
  Labels labels;            ///< region of each cell, in [0, k)
  Eigen::VectorXd alpha;    ///< positive scale factors, geometric mean 1
  Eigen::VectorXd masses;   ///< sum of rho over each region
  int balance_iters = 0;    ///< alpha updates performed
  bool converged = false;
  double baseline_imbalance = 0.0;  ///< max |m_i - 1| at alpha = 1
  std::vector<std::size_t> pivots;  ///< SCDM anchors, when known

  int k() const { return static_cast<int>(alpha.size()); }
};

struct BalanceParams {
  double eta = 0.5;     ///< damping exponent in (0, 1]
  double eps = 0.1;     ///< target max |m_i - 1|
  int max_iters = 200;
  std::uint64_t seed = 0;
};

/// Relative threshold under which two scaled magnitudes count as tied.
inline constexpr double kTieTolerance = 1e-14;

/// label(x) = argmax_j alpha_j |v_j(x)|. Ties are resolved uniformly at
/// random with draw `x` of `rng`, so the result does not depend on threading.
Labels assign_labels(const Eigen::MatrixXd& v, const Eigen::VectorXd& alpha,
                     const CounterRng& rng);

Eigen::VectorXd region_masses(const Labels& labels, const Eigen::VectorXd& rho,
                              int k);

/// max_i |m_i - 1|
double max_imbalance(const Eigen::VectorXd& masses);

/// Damped multiplicative balancing: alpha_i <- alpha_i m_i^-eta (doubling for
/// empty regions), renormalized to geometric mean 1. Returns the best iterate
/// seen, so the result is never worse than alpha = 1.
Partition balance(const Eigen::MatrixXd& v, const Eigen::VectorXd& rho,
                  const BalanceParams& params = {});

struct Region {
  std::vector<std::uint32_t> cells;  ///< increasing cell index
  std::vector<double> weights;       ///< rho_i on cells, sums to 1
  std::vector<double> cumulative;    ///< inclusive prefix sums, last == 1
};

/// One-point-per-region product approximation of the DPP.
struct IndependentModel {
  std::vector<Region> regions;
  std::vector<std::int32_t> region_of;  ///< -1 outside every support
  std::vector<double> weight_of;        ///< rho_i(x) on the owning region
  std::optional<Grid> grid;
  Eigen::VectorXd alpha;

  int k() const { return static_cast<int>(regions.size()); }
  std::size_t size() const { return region_of.size(); }
};

/// Restricts rho to each region and normalizes it. Throws DegenerateRegion
/// when a region is empty or carries no density.
IndependentModel build_model(const Partition& partition, const Eigen::VectorXd& rho,
                             std::optional<Grid> grid = {});

}  // namespace dppipa
