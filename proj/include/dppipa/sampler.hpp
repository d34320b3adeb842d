// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dppipa/partition.hpp"
#include "dppipa/rng.hpp"

namespace dppipa {

/// One realization: points[i] is the cell drawn from region i.
struct SampleSet {
  std::vector<std::uint32_t> points;

  bool operator==(const SampleSet&) const = default;
};

/// Draws one point per region in region order, consuming exactly k uniforms.
SampleSet sample_one(const IndependentModel& model, RngStream& rng);

/// Realization r uses stream fork(r) of `seed`; output is independent of the
/// thread count.
std::vector<SampleSet> sample_many(const IndependentModel& model, std::size_t count,
                                   std::uint64_t seed);

struct Throughput {
  std::size_t points = 0;
  double seconds = 0.0;
  double points_per_second = 0.0;
  double ns_per_point = 0.0;
};

/// Single-threaded timing of `count` realizations; best of `repeats` runs.
Throughput throughput_probe(const IndependentModel& model, std::size_t count,
                            int repeats = 3);

}  // namespace dppipa
