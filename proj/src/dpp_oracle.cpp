// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#include "dppipa/dpp_oracle.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dppipa/error.hpp"

namespace dppipa {
namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

// Advances `idx` to the next k-subset of [0, n) in lexicographic order.
bool next_subset(std::vector<std::uint32_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t pos = k; pos-- > 0;) {
    if (idx[pos] < n - k + pos) {
      ++idx[pos];
      for (std::size_t j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

double choose(std::size_t n, int k) {
  if (k < 0 || static_cast<std::size_t>(k) > n) return 0.0;
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * static_cast<double>(n - k + i) / i;
  return std::round(result);
}

ExactPmf brute_force_pmf(const OrbitalSet& orbitals) {
  const std::size_t size = orbitals.size();
  const int k = orbitals.k();
  const double subsets = choose(size, k);
  if (subsets > kMaxSubsets) {
    std::ostringstream msg;
    msg << "brute-force pmf needs C(" << size << ", " << k << ") = " << subsets
        << " subsets, limit is " << kMaxSubsets;
    throw Error(ErrorKind::too_large, msg.str());
  }

  ExactPmf pmf;
  pmf.k = k;
  pmf.probs.reserve(static_cast<std::size_t>(subsets));
  pmf.cells.reserve(static_cast<std::size_t>(subsets) * k);

  std::vector<std::uint32_t> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0u);
  Eigen::MatrixXd rows(k, orbitals.k());
  do {
    for (int i = 0; i < k; ++i) rows.row(i) = orbitals.phi.row(idx[i]);
    const Eigen::MatrixXd gram = rows * rows.transpose();  // K(A, A)
    pmf.probs.push_back(gram.determinant());
    pmf.cells.insert(pmf.cells.end(), idx.begin(), idx.end());
  } while (next_subset(idx, size));
  return pmf;
}

std::vector<std::uint32_t> exact_sample(const OrbitalSet& orbitals, RngStream& rng) {
  const auto size = static_cast<Eigen::Index>(orbitals.size());
  const int k = orbitals.k();
  Eigen::MatrixXd basis = orbitals.phi;
  Eigen::VectorXd residual = basis.rowwise().squaredNorm();

  std::vector<std::uint32_t> points;
  points.reserve(static_cast<std::size_t>(k));
  for (int step = 0; step < k; ++step) {
    const double total = residual.sum();
    if (!(total > 0.0)) {
      throw Error(ErrorKind::numerical_failure, "residual density vanished during exact sampling");
    }
    const double target = rng.uniform() * total;
    Eigen::Index chosen = size - 1;
    double running = 0.0;
    for (Eigen::Index x = 0; x < size; ++x) {
      running += residual(x);
      if (target < running && residual(x) > 0.0) {
        chosen = x;
        break;
      }
    }
    while (chosen > 0 && residual(chosen) <= 0.0) --chosen;
    points.push_back(static_cast<std::uint32_t>(chosen));

    // Reflect the chosen row onto e_0 and drop that column: the remaining
    // columns stay orthonormal and vanish at the chosen cell.
    const Eigen::Index rank = basis.cols();
    if (rank == 1) break;
    Eigen::VectorXd v = basis.row(chosen).transpose();
    const double norm = v.norm();
    v(0) += v(0) >= 0.0 ? norm : -norm;
    const double vv = v.squaredNorm();
    const Eigen::VectorXd bv = basis * v;
    basis.noalias() -= (2.0 / vv) * bv * v.transpose();
    Eigen::MatrixXd reduced = basis.rightCols(rank - 1);
    basis = std::move(reduced);
    basis.row(chosen).setZero();
    residual = basis.rowwise().squaredNorm();
  }
  return points;
}

double pair_inclusion_exact(const OrbitalSet& orbitals, std::size_t x, std::size_t y) {
  if (x == y) throw Error(ErrorKind::invalid_argument, "pair inclusion needs distinct cells");
  const double kxy = kernel_entry(orbitals, x, y);
  return kernel_entry(orbitals, x, x) * kernel_entry(orbitals, y, y) - kxy * kxy;
}

double pair_inclusion_independent(const IndependentModel& model, std::size_t x,
                                  std::size_t y) {
  if (x == y) throw Error(ErrorKind::invalid_argument, "pair inclusion needs distinct cells");
  const std::int32_t rx = model.region_of[x];
  const std::int32_t ry = model.region_of[y];
  if (rx < 0 || ry < 0 || rx == ry) return 0.0;
  return model.weight_of[x] * model.weight_of[y];
}

ComparisonReport compare(const OrbitalSet& orbitals, const IndependentModel& model,
                         const CompareParams& params) {
  const std::size_t size = orbitals.size();
  if (model.size() != size || model.k() != orbitals.k()) {
    throw Error(ErrorKind::invalid_argument, "model and orbitals have inconsistent dimensions");
  }
  ComparisonReport report;

  auto start = clock_type::now();
  const Eigen::VectorXd rho = density(orbitals);
  double l1 = 0.0;
  for (std::size_t x = 0; x < size; ++x)
    l1 += std::abs(model.weight_of[x] - rho(static_cast<Eigen::Index>(x)));
  report.marginal_l1 = l1 / orbitals.k();
  report.seconds_marginal = seconds_since(start);

  start = clock_type::now();
  if (size >= 2 && params.pairs > 0) {
    RngStream rng(params.seed, 0x7061697273ULL);
    double total = 0.0;
    for (std::size_t p = 0; p < params.pairs; ++p) {
      const std::size_t x = rng.below(size);
      std::size_t y = rng.below(size - 1);
      if (y >= x) ++y;
      total += std::abs(pair_inclusion_independent(model, x, y) -
                        pair_inclusion_exact(orbitals, x, y));
    }
    report.pairs = params.pairs;
    report.pair_error = total / static_cast<double>(params.pairs);
  }
  report.seconds_pairs = seconds_since(start);

  if (params.brute_force && choose(size, orbitals.k()) <= kMaxSubsets) {
    start = clock_type::now();
    const ExactPmf pmf = brute_force_pmf(orbitals);
    double tv = 0.0;
    std::vector<char> seen(static_cast<std::size_t>(model.k()));
    for (std::size_t s = 0; s < pmf.count(); ++s) {
      double product = 1.0;
      std::fill(seen.begin(), seen.end(), 0);
      for (std::uint32_t x : pmf.subset(s)) {
        const std::int32_t region = model.region_of[x];
        if (region < 0 || seen[static_cast<std::size_t>(region)]) {
          product = 0.0;
          break;
        }
        seen[static_cast<std::size_t>(region)] = 1;
        product *= model.weight_of[x];
      }
      tv += std::abs(pmf.probs[s] - product);
    }
    report.tv_small = std::min(1.0, 0.5 * tv);
    report.seconds_tv = seconds_since(start);
  }
  return report;
}

}  // namespace dppipa
