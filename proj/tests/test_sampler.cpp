// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <set>

#include "dppipa/sampler.hpp"
#include "dppipa/scdm.hpp"

using namespace dppipa;

namespace {

// Model with the given labels and cell densities; alpha is all ones.
IndependentModel toy_model(const Labels& labels, const std::vector<double>& rho, int k) {
  Partition part;
  part.labels = labels;
  part.alpha = Eigen::VectorXd::Ones(k);
  const Eigen::VectorXd r = Eigen::Map<const Eigen::VectorXd>(rho.data(), static_cast<Eigen::Index>(rho.size()));
  part.masses = region_masses(labels, r, k);
  return build_model(part, r);
}

IndependentModel uniform_model(int n, int k) {
  const OrbitalSet set = fourier_orbitals(build_grid(n, Boundary::periodic), k);
  const Eigen::VectorXd rho = density(set);
  return build_model(balance(scdm_localize(set).v, rho), rho, set.grid);
}

}  // namespace

TEST_CASE("single-cell region always returns its cell") {
  const IndependentModel model = toy_model({0, 1, 1}, {1.0, 0.5, 0.5}, 2);
  for (const SampleSet& s : sample_many(model, 100, 3)) CHECK(s.points[0] == 0);
}

TEST_CASE("zero-weight cells are never drawn") {
  const IndependentModel model = toy_model({0, 0}, {1.0, 0.0}, 1);
  for (const SampleSet& s : sample_many(model, 10000, 4)) CHECK(s.points[0] == 0);
  const IndependentModel tail = toy_model({0, 0, 0}, {0.0, 1.0, 0.0}, 1);
  for (const SampleSet& s : sample_many(tail, 10000, 5)) CHECK(s.points[0] == 1);
}

TEST_CASE("two-cell frequencies") {
  const IndependentModel model = toy_model({0, 0}, {0.25, 0.75}, 1);
  const auto samples = sample_many(model, 100000, 6);
  double ones = 0;
  for (const SampleSet& s : samples) ones += s.points[0];
  CHECK(std::abs(ones / samples.size() - 0.75) <= 0.01);
}

TEST_CASE("chi-square goodness of fit on a four-cell region") {
  const std::vector<double> w = {0.1, 0.2, 0.3, 0.4};
  const IndependentModel model = toy_model({0, 0, 0, 0}, w, 1);
  const std::size_t count = 100000;
  std::vector<double> seen(4, 0.0);
  for (const SampleSet& s : sample_many(model, count, 8)) seen[s.points[0]] += 1;
  double chi2 = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double expected = w[static_cast<std::size_t>(i)] * count;
    chi2 += (seen[static_cast<std::size_t>(i)] - expected) * (seen[static_cast<std::size_t>(i)] - expected) / expected;
  }
  CHECK(chi2 < 16.27);  // 0.999 quantile, 3 degrees of freedom
}

TEST_CASE("count = 0 returns an empty batch") {
  const IndependentModel model = toy_model({0, 0}, {0.5, 0.5}, 1);
  CHECK(sample_many(model, 0, 1).empty());
}

TEST_CASE("realizations: one distinct point per region") {
  const IndependentModel model = uniform_model(32, 13);
  for (const SampleSet& s : sample_many(model, 2000, 9)) {
    REQUIRE(s.points.size() == 13);
    CHECK(std::set<std::uint32_t>(s.points.begin(), s.points.end()).size() == 13);
    for (std::size_t i = 0; i < 13; ++i) {
      CHECK(model.region_of[s.points[i]] == static_cast<std::int32_t>(i));
      CHECK(model.weight_of[s.points[i]] > 0.0);
    }
  }
}

TEST_CASE("sampling is deterministic across calls and thread counts") {
  const IndependentModel model = uniform_model(32, 13);
  ::setenv("DPP_IPA_THREADS", "1", 1);
  const auto serial = sample_many(model, 3000, 42);
  ::setenv("DPP_IPA_THREADS", "4", 1);
  const auto parallel = sample_many(model, 3000, 42);
  ::unsetenv("DPP_IPA_THREADS");
  CHECK(serial == parallel);
  CHECK(sample_many(model, 3000, 42) == serial);
  CHECK_FALSE(sample_many(model, 3000, 43) == serial);
  // A prefix of a larger batch is the smaller batch.
  const auto longer = sample_many(model, 3500, 42);
  CHECK(std::equal(serial.begin(), serial.end(), longer.begin()));
}

TEST_CASE("empirical marginals match the model weights") {
  const IndependentModel model = uniform_model(16, 5);
  const std::size_t count = 200000;
  std::vector<double> seen(model.size(), 0.0);
  for (const SampleSet& s : sample_many(model, count, 10))
    for (std::uint32_t x : s.points) seen[x] += 1.0;
  double tv = 0.0;
  for (std::size_t x = 0; x < model.size(); ++x)
    tv += std::abs(seen[x] / count - model.weight_of[x]);
  CHECK(tv / 2 / model.k() <= 0.01);
}

TEST_CASE("throughput probe reports positive rates") {
  const IndependentModel model = uniform_model(32, 13);
  const Throughput t = throughput_probe(model, 10000, 2);
  CHECK(t.points == 130000);
  CHECK(t.seconds > 0.0);
  CHECK(t.points_per_second > 0.0);
  CHECK(t.ns_per_point == doctest::Approx(t.seconds * 1e9 / t.points));
}
