// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#include "dppipa/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "dppipa/parallel.hpp"

namespace dppipa {
namespace {

std::uint32_t draw(const Region& region, double u) {
  // First cumulative entry strictly greater than u; zero-weight cells share
  // their predecessor's entry and are never returned.
  const auto it = std::upper_bound(region.cumulative.begin(), region.cumulative.end(), u);
  const auto pos = std::min<std::size_t>(
      static_cast<std::size_t>(it - region.cumulative.begin()), region.cells.size() - 1);
  return region.cells[pos];
}

}  // namespace

SampleSet sample_one(const IndependentModel& model, RngStream& rng) {
  SampleSet sample;
  sample.points.reserve(model.regions.size());
  for (const Region& region : model.regions) sample.points.push_back(draw(region, rng.uniform()));
  return sample;
}

std::vector<SampleSet> sample_many(const IndependentModel& model, std::size_t count,
                                   std::uint64_t seed) {
  std::vector<SampleSet> samples(count);
  const CounterRng base{seed, 0};
  parallel_for(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      RngStream rng(base.fork(r));
      samples[r] = sample_one(model, rng);
    }
  });
  return samples;
}

Throughput throughput_probe(const IndependentModel& model, std::size_t count, int repeats) {
  using clock = std::chrono::steady_clock;
  Throughput result;
  result.points = count * model.regions.size();
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t sink = 0;
  for (int rep = 0; rep < std::max(1, repeats); ++rep) {
    RngStream rng(0x7468726f75676870ULL, static_cast<std::uint64_t>(rep));
    const auto start = clock::now();
    for (std::size_t r = 0; r < count; ++r) {
      for (const Region& region : model.regions) sink += draw(region, rng.uniform());
    }
    best = std::min(best, std::chrono::duration<double>(clock::now() - start).count());
  }
  // Keep the draws observable so the loop is not optimized away.
  if (sink == std::numeric_limits<std::uint64_t>::max()) result.points += 1;
  result.seconds = best;
  result.points_per_second = best > 0.0 ? result.points / best : 0.0;
  result.ns_per_point = result.points > 0 ? best * 1e9 / result.points : 0.0;
  return result;
}

}  // namespace dppipa
