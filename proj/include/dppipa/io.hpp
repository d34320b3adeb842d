// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file io.hpp
 * @brief Binary and CSV file formats.
 *
 * All binary formats are little-endian and start with a 4-byte magic and a
 * u32 version (currently 1):
 *
 *   DPPO  u32 n, u8 bc, u32 k, k f64 eigenvalues, N*k f64 Phi (column-major)
 *   DPPV  u32 n, u8 bc, u32 k, k u32 pivots, N*k f64 V (column-major)
 *   DPPP  u32 n, u32 k, k f64 alpha, N u32 labels, k f64 masses, u8 converged
 *
 * Read failures and malformed files raise Error(ErrorKind::io).
 */

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dppipa/dpp_oracle.hpp"
#include "dppipa/model_problems.hpp"
#include "dppipa/partition.hpp"
#include "dppipa/sampler.hpp"
#include "dppipa/scdm.hpp"

namespace dppipa::io {

inline constexpr std::uint32_t kFormatVersion = 1;

void write_orbitals(const std::filesystem::path& path, const OrbitalSet& orbitals);
OrbitalSet read_orbitals(const std::filesystem::path& path);

/// First row "n,bc,k" with values, then a column header and one row per cell:
/// cell,ix,iy,x1,x2,rho,phi0..phi{k-1}.
void write_orbitals_csv(const std::filesystem::path& path, const OrbitalSet& orbitals);

struct ScdmFile {
  Grid grid;
  ScdmResult result;
};
void write_scdm(const std::filesystem::path& path, const Grid& grid,
                const ScdmResult& result);
ScdmFile read_scdm(const std::filesystem::path& path);
/// order,cell,ix,iy
void write_pivots_csv(const std::filesystem::path& path, const Grid& grid,
                      const std::vector<std::size_t>& pivots);

struct PartitionFile {
  int n = 0;
  Partition partition;
};
void write_partition(const std::filesystem::path& path, int n, const Partition& partition);
PartitionFile read_partition(const std::filesystem::path& path);
/// cell,ix,iy,label
void write_labels_csv(const std::filesystem::path& path, const Grid& grid,
                      const Labels& labels);

enum class SampleFormat { index, coordinates };
SampleFormat parse_sample_format(const std::string& text);

/// One realization per line. Index format: header p0..p{k-1} and flat cell
/// indices. Coordinate format: header x0,y0,... and physical coordinates.
void write_samples_csv(const std::filesystem::path& path,
                       const std::vector<SampleSet>& samples, int k,
                       SampleFormat format = SampleFormat::index,
                       const std::optional<Grid>& grid = {});
std::vector<SampleSet> read_samples_csv(const std::filesystem::path& path);

/// key=value lines. Timing fields are only written when `with_timing`.
std::string format_report(const ComparisonReport& report, bool with_timing);
void write_report(const std::filesystem::path& path, const ComparisonReport& report,
                  bool with_timing = false);
/// Header row plus one data row.
void write_report_csv(const std::filesystem::path& path, const ComparisonReport& report,
                      bool with_timing = false);

}  // namespace dppipa::io
