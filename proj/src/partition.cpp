// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#include "dppipa/partition.hpp"

#include <cmath>
#include <limits>

#include "dppipa/error.hpp"
#include "dppipa/parallel.hpp"

namespace dppipa {

Labels assign_labels(const Eigen::MatrixXd& v, const Eigen::VectorXd& alpha,
                     const CounterRng& rng) {
  if (alpha.size() != v.cols()) {
    throw Error(ErrorKind::invalid_argument, "alpha length does not match the orbital count");
  }
  if (alpha.size() == 0 || !(alpha.minCoeff() > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "alpha must be positive");
  }
  const Eigen::Index k = v.cols();
  // Row-contiguous scaled magnitudes: column x holds alpha_j |v_j(x)|.
  const Eigen::MatrixXd scaled = (v.cwiseAbs() * alpha.asDiagonal()).transpose();

  Labels labels(static_cast<std::size_t>(v.rows()));
  parallel_for(labels.size(), [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> tied;
    tied.reserve(static_cast<std::size_t>(k));
    for (std::size_t x = begin; x < end; ++x) {
      const auto row = scaled.col(static_cast<Eigen::Index>(x));
      const double best = row.maxCoeff();
      const double cutoff = best * (1.0 - kTieTolerance);
      tied.clear();
      for (Eigen::Index j = 0; j < k; ++j)
        if (row(j) >= cutoff) tied.push_back(static_cast<std::uint32_t>(j));
      labels[x] = tied.size() == 1 ? tied.front() : tied[rng.below(x, tied.size())];
    }
  });
  return labels;
}

Eigen::VectorXd region_masses(const Labels& labels, const Eigen::VectorXd& rho, int k) {
  if (static_cast<Eigen::Index>(labels.size()) != rho.size()) {
    throw Error(ErrorKind::invalid_argument, "labels and density differ in length");
  }
  Eigen::VectorXd masses = Eigen::VectorXd::Zero(k);
  for (std::size_t x = 0; x < labels.size(); ++x) {
    if (labels[x] >= static_cast<std::uint32_t>(k)) {
      throw Error(ErrorKind::invalid_argument, "label out of range");
    }
    masses(labels[x]) += rho(static_cast<Eigen::Index>(x));
  }
  return masses;
}

double max_imbalance(const Eigen::VectorXd& masses) {
  return (masses.array() - 1.0).abs().maxCoeff();
}

Partition balance(const Eigen::MatrixXd& v, const Eigen::VectorXd& rho,
                  const BalanceParams& params) {
  if (v.rows() != rho.size() || v.cols() < 1) {
    throw Error(ErrorKind::invalid_argument, "balance needs an N x k matrix and length-N density");
  }
  if (!(params.eta > 0.0 && params.eta <= 1.0) || params.max_iters < 0) {
    throw Error(ErrorKind::invalid_argument, "balance needs eta in (0, 1] and max_iters >= 0");
  }
  const int k = static_cast<int>(v.cols());
  const CounterRng ties{params.seed, 0};

  Partition best;
  double best_error = std::numeric_limits<double>::infinity();
  Eigen::VectorXd alpha = Eigen::VectorXd::Ones(k);

  int iter = 0;
  for (;; ++iter) {
    Labels labels = assign_labels(v, alpha, ties.fork(static_cast<std::uint64_t>(iter)));
    Eigen::VectorXd masses = region_masses(labels, rho, k);
    const double error = max_imbalance(masses);
    if (iter == 0) best.baseline_imbalance = error;
    if (error < best_error) {
      best_error = error;
      best.labels = std::move(labels);
      best.alpha = alpha;
      best.masses = masses;
    }
    if (error <= params.eps || iter >= params.max_iters) break;

    for (int i = 0; i < k; ++i)
      alpha(i) *= masses(i) > 0.0 ? std::pow(masses(i), -params.eta) : 2.0;
    alpha /= std::exp(alpha.array().log().mean());
  }
  best.balance_iters = iter;
  best.converged = best_error <= params.eps;
  return best;
}

IndependentModel build_model(const Partition& partition, const Eigen::VectorXd& rho,
                             std::optional<Grid> grid) {
  const int k = partition.k();
  const std::size_t size = partition.labels.size();
  if (static_cast<Eigen::Index>(size) != rho.size()) {
    throw Error(ErrorKind::invalid_argument, "partition and density differ in length");
  }

  IndependentModel model;
  model.regions.resize(static_cast<std::size_t>(k));
  model.region_of.assign(size, -1);
  model.weight_of.assign(size, 0.0);
  model.grid = grid;
  model.alpha = partition.alpha;

  for (std::size_t x = 0; x < size; ++x) {
    const std::uint32_t label = partition.labels[x];
    if (label >= static_cast<std::uint32_t>(k)) {
      throw Error(ErrorKind::invalid_argument, "label out of range");
    }
    model.regions[label].cells.push_back(static_cast<std::uint32_t>(x));
    model.region_of[x] = static_cast<std::int32_t>(label);
  }

  for (int i = 0; i < k; ++i) {
    Region& region = model.regions[static_cast<std::size_t>(i)];
    double total = 0.0;
    region.weights.reserve(region.cells.size());
    for (std::uint32_t x : region.cells) {
      const double w = std::max(0.0, rho(x));  // clamp roundoff negatives
      region.weights.push_back(w);
      total += w;
    }
    if (region.cells.empty() || !(total > 0.0)) {
      throw DegenerateRegion(i, "region " + std::to_string(i) + " carries no density");
    }

    std::size_t last_positive = 0;
    double running = 0.0;
    region.cumulative.resize(region.weights.size());
    for (std::size_t j = 0; j < region.weights.size(); ++j) {
      region.weights[j] /= total;
      running += region.weights[j];
      region.cumulative[j] = std::min(running, 1.0);
      if (region.weights[j] > 0.0) last_positive = j;
      model.weight_of[region.cells[j]] = region.weights[j];
    }
    // Close the table at the last reachable cell so trailing zero-weight
    // cells can never be selected.
    for (std::size_t j = last_positive; j < region.cumulative.size(); ++j)
      region.cumulative[j] = 1.0;
  }
  return model;
}

}  // namespace dppipa
