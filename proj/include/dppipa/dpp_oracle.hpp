// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dppipa/model_problems.hpp"
#include "dppipa/partition.hpp"
#include "dppipa/rng.hpp"

namespace dppipa {

/// Enumeration limit for brute-force pmfs.
inline constexpr double kMaxSubsets = 1e6;

/// Exact pmf of the elementary DPP over all k-subsets in lexicographic order.
struct ExactPmf {
  int k = 0;
  std::vector<std::uint32_t> cells;  ///< subsets, k entries each
  std::vector<double> probs;

  std::size_t count() const { return probs.size(); }
  std::span<const std::uint32_t> subset(std::size_t i) const {
    return {cells.data() + i * k, static_cast<std::size_t>(k)};
  }
};

/// Number of k-subsets of an N-set as a double (no overflow).
double choose(std::size_t n, int k);

/// det K(A, A) for every k-subset A, from Gram matrices of Phi rows. Throws
/// too_large when C(N, k) exceeds kMaxSubsets.
ExactPmf brute_force_pmf(const OrbitalSet& orbitals);

/// Exact sequential projection-DPP sampler, O(N k^2) per draw: sample a cell
/// with probability proportional to the residual density, then rotate the
/// basis so that cell's row vanishes and drop one dimension.
std::vector<std::uint32_t> exact_sample(const OrbitalSet& orbitals, RngStream& rng);

/// P(x and y both in A) = rho(x) rho(y) - K(x, y)^2.
double pair_inclusion_exact(const OrbitalSet& orbitals, std::size_t x, std::size_t y);

/// Same probability under the independent model: rho_i(x) rho_j(y) for
/// distinct regions, 0 otherwise.
double pair_inclusion_independent(const IndependentModel& model, std::size_t x,
                                  std::size_t y);

struct CompareParams {
  std::size_t pairs = 10000;
  std::uint64_t seed = 0;
  bool brute_force = true;  ///< compute tv_small when enumeration is feasible
};

struct ComparisonReport {
  double marginal_l1 = 0.0;
  double pair_error = 0.0;
  std::optional<double> tv_small;
  std::size_t pairs = 0;
  double seconds_marginal = 0.0;
  double seconds_pairs = 0.0;
  double seconds_tv = 0.0;
};

ComparisonReport compare(const OrbitalSet& orbitals, const IndependentModel& model,
                         const CompareParams& params = {});

}  // namespace dppipa
