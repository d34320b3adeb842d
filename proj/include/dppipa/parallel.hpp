// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace dppipa {

/// Worker count: DPP_IPA_THREADS when set to a positive integer, otherwise
/// the hardware concurrency.
unsigned thread_count();

/// Runs body(begin, end) over contiguous chunks of [0, count). Chunks write
/// disjoint outputs; callers keep results independent of the chunking.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace dppipa
