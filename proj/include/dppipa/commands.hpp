// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dppipa/dpp_oracle.hpp"
#include "dppipa/io.hpp"
#include "dppipa/partition.hpp"

namespace dppipa {

/// Settings shared by every CLI subcommand.
struct RunConfig {
  std::string example = "uniform";  ///< uniform | corner | center | custom
  std::optional<int> n;
  std::optional<int> k;
  std::filesystem::path input;  ///< DPPO file for example == "custom"
  std::uint64_t seed = 7;
  BalanceParams balance;
  std::filesystem::path out = "out";
  double amplitude = 512.0;
  std::size_t count = 1000;
  io::SampleFormat format = io::SampleFormat::index;
  int scale = 4;
  std::size_t pairs = 10000;
};

/// Fills n and k from the example defaults: uniform 128/61, corner and center
/// 64/64.
RunConfig resolve(RunConfig config);

/// File stem for a run: the example name, or the input stem for custom runs.
std::string run_name(const RunConfig& config);
std::filesystem::path output_path(const RunConfig& config, const std::string& suffix);

/// Reads a DPPO file and verifies its columns are orthonormal.
OrbitalSet read_orbitals_checked(const std::filesystem::path& path);

/// Builds the orbital set a config describes (no file output).
OrbitalSet build_orbitals(const RunConfig& config);

std::filesystem::path cmd_model(const RunConfig& config, std::ostream& log);

struct PipelineResult {
  ScdmResult scdm;
  Partition partition;
  std::vector<std::filesystem::path> files;
};
PipelineResult cmd_pipeline(const RunConfig& config, std::ostream& log);

std::filesystem::path cmd_sample(const RunConfig& config, std::ostream& log);

ComparisonReport cmd_stats(const RunConfig& config, std::ostream& log);

std::vector<std::filesystem::path> cmd_render(const RunConfig& config, std::ostream& log);

/// model -> pipeline -> sample -> stats -> render for the three examples with
/// pinned seeds. Returns the number of failed examples.
int cmd_demo(const RunConfig& config, std::ostream& log);

}  // namespace dppipa
