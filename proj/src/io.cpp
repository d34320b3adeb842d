// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#include "dppipa/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "dppipa/error.hpp"

namespace dppipa::io {
namespace {

namespace fs = std::filesystem;

class Writer {
 public:
  explicit Writer(const fs::path& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
  }

  void magic(const char (&tag)[5]) { out_.write(tag, 4); }
  void u8(std::uint8_t value) { out_.put(static_cast<char>(value)); }
  void u32(std::uint32_t value) {
    for (int i = 0; i < 4; ++i) out_.put(static_cast<char>((value >> (8 * i)) & 0xFF));
  }
  void f64(double value) {
    const auto bits = std::bit_cast<std::uint64_t>(value);
    for (int i = 0; i < 8; ++i) out_.put(static_cast<char>((bits >> (8 * i)) & 0xFF));
  }

  void finish() {
    out_.flush();
    if (!out_) throw Error(ErrorKind::io, "failed writing " + path_.string());
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const fs::path& path) : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw Error(ErrorKind::io, "cannot open " + path.string());
  }

  void expect_magic(const char (&tag)[5]) {
    char got[4];
    bytes(got, 4);
    if (std::memcmp(got, tag, 4) != 0) fail(std::string("expected magic ") + tag);
    const std::uint32_t version = u32();
    if (version != kFormatVersion) fail("unsupported version " + std::to_string(version));
  }
  std::uint8_t u8() {
    unsigned char b;
    bytes(reinterpret_cast<char*>(&b), 1);
    return b;
  }
  std::uint32_t u32() {
    unsigned char b[4];
    bytes(reinterpret_cast<char*>(b), 4);
    std::uint32_t value = 0;
    for (int i = 0; i < 4; ++i) value |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return value;
  }
  double f64() {
    unsigned char b[8];
    bytes(reinterpret_cast<char*>(b), 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return std::bit_cast<double>(bits);
  }
  void expect_end() {
    if (in_.peek() != std::char_traits<char>::eof()) fail("trailing bytes");
  }
  [[noreturn]] void fail(const std::string& why) {
    throw Error(ErrorKind::io, "malformed file " + path_.string() + ": " + why);
  }

 private:
  void bytes(char* dst, std::streamsize count) {
    if (!in_.read(dst, count)) fail("unexpected end of file");
  }

  fs::path path_;
  std::ifstream in_;
};

std::ofstream open_text(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
  out << std::setprecision(17);
  return out;
}

void check_written(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::io, "failed writing " + path.string());
}

const Grid& require_grid(const OrbitalSet& orbitals) {
  if (!orbitals.grid) {
    throw Error(ErrorKind::invalid_argument, "orbital set has no grid to serialize");
  }
  return *orbitals.grid;
}

Grid read_grid(Reader& in) {
  const std::uint32_t n = in.u32();
  const std::uint8_t bc = in.u8();
  if (bc > 1) in.fail("bad boundary tag");
  if (n < 2 || n > 65535) in.fail("bad grid size");
  return build_grid(static_cast<int>(n), static_cast<Boundary>(bc));
}

}  // namespace

void write_orbitals(const fs::path& path, const OrbitalSet& orbitals) {
  const Grid& grid = require_grid(orbitals);
  Writer out(path);
  out.magic("DPPO");
  out.u32(kFormatVersion);
  out.u32(static_cast<std::uint32_t>(grid.n));
  out.u8(static_cast<std::uint8_t>(grid.bc));
  out.u32(static_cast<std::uint32_t>(orbitals.k()));
  for (int i = 0; i < orbitals.k(); ++i)
    out.f64(i < orbitals.eigenvalues.size() ? orbitals.eigenvalues(i) : 0.0);
  for (Eigen::Index j = 0; j < orbitals.phi.cols(); ++j)
    for (Eigen::Index x = 0; x < orbitals.phi.rows(); ++x) out.f64(orbitals.phi(x, j));
  out.finish();
}

OrbitalSet read_orbitals(const fs::path& path) {
  Reader in(path);
  in.expect_magic("DPPO");
  const Grid grid = read_grid(in);
  const std::uint32_t k = in.u32();
  if (k < 1 || k > grid.size()) in.fail("bad orbital count");
  OrbitalSet set;
  set.grid = grid;
  set.eigenvalues.resize(k);
  for (std::uint32_t i = 0; i < k; ++i) set.eigenvalues(i) = in.f64();
  set.phi.resize(static_cast<Eigen::Index>(grid.size()), k);
  for (Eigen::Index j = 0; j < set.phi.cols(); ++j)
    for (Eigen::Index x = 0; x < set.phi.rows(); ++x) set.phi(x, j) = in.f64();
  in.expect_end();
  return set;
}

void write_orbitals_csv(const fs::path& path, const OrbitalSet& orbitals) {
  const Grid& grid = require_grid(orbitals);
  auto out = open_text(path);
  out << grid.n << ',' << to_string(grid.bc) << ',' << orbitals.k() << '\n';
  out << "cell,ix,iy,x1,x2,rho";
  for (int j = 0; j < orbitals.k(); ++j) out << ",phi" << j;
  out << '\n';
  const Eigen::VectorXd rho = density(orbitals);
  for (std::size_t x = 0; x < grid.size(); ++x) {
    const auto p = grid.point(x);
    out << x << ',' << grid.ix(x) << ',' << grid.iy(x) << ',' << p[0] << ',' << p[1] << ','
        << rho(static_cast<Eigen::Index>(x));
    for (int j = 0; j < orbitals.k(); ++j) out << ',' << orbitals.phi(static_cast<Eigen::Index>(x), j);
    out << '\n';
  }
  check_written(out, path);
}

void write_scdm(const fs::path& path, const Grid& grid, const ScdmResult& result) {
  Writer out(path);
  out.magic("DPPV");
  out.u32(kFormatVersion);
  out.u32(static_cast<std::uint32_t>(grid.n));
  out.u8(static_cast<std::uint8_t>(grid.bc));
  out.u32(static_cast<std::uint32_t>(result.pivots.size()));
  for (std::size_t p : result.pivots) out.u32(static_cast<std::uint32_t>(p));
  for (Eigen::Index j = 0; j < result.v.cols(); ++j)
    for (Eigen::Index x = 0; x < result.v.rows(); ++x) out.f64(result.v(x, j));
  out.finish();
}

ScdmFile read_scdm(const fs::path& path) {
  Reader in(path);
  in.expect_magic("DPPV");
  ScdmFile file;
  file.grid = read_grid(in);
  const std::uint32_t k = in.u32();
  if (k < 1 || k > file.grid.size()) in.fail("bad orbital count");
  for (std::uint32_t i = 0; i < k; ++i) {
    const std::uint32_t p = in.u32();
    if (p >= file.grid.size()) in.fail("pivot out of range");
    file.result.pivots.push_back(p);
  }
  file.result.v.resize(static_cast<Eigen::Index>(file.grid.size()), k);
  for (Eigen::Index j = 0; j < file.result.v.cols(); ++j)
    for (Eigen::Index x = 0; x < file.result.v.rows(); ++x) file.result.v(x, j) = in.f64();
  in.expect_end();
  return file;
}

void write_pivots_csv(const fs::path& path, const Grid& grid,
                      const std::vector<std::size_t>& pivots) {
  auto out = open_text(path);
  out << "order,cell,ix,iy\n";
  for (std::size_t i = 0; i < pivots.size(); ++i)
    out << i << ',' << pivots[i] << ',' << grid.ix(pivots[i]) << ',' << grid.iy(pivots[i]) << '\n';
  check_written(out, path);
}

void write_partition(const fs::path& path, int n, const Partition& partition) {
  if (partition.labels.size() != static_cast<std::size_t>(n) * n) {
    throw Error(ErrorKind::invalid_argument, "partition does not cover an n x n grid");
  }
  Writer out(path);
  out.magic("DPPP");
  out.u32(kFormatVersion);
  out.u32(static_cast<std::uint32_t>(n));
  out.u32(static_cast<std::uint32_t>(partition.k()));
  for (int i = 0; i < partition.k(); ++i) out.f64(partition.alpha(i));
  for (std::uint32_t label : partition.labels) out.u32(label);
  for (int i = 0; i < partition.k(); ++i) out.f64(partition.masses(i));
  out.u8(partition.converged ? 1 : 0);
  out.finish();
}

PartitionFile read_partition(const fs::path& path) {
  Reader in(path);
  in.expect_magic("DPPP");
  PartitionFile file;
  file.n = static_cast<int>(in.u32());
  if (file.n < 2 || file.n > 65535) in.fail("bad grid size");
  const std::uint32_t k = in.u32();
  const std::size_t size = static_cast<std::size_t>(file.n) * file.n;
  if (k < 1 || k > size) in.fail("bad region count");
  Partition& p = file.partition;
  p.alpha.resize(k);
  for (std::uint32_t i = 0; i < k; ++i) p.alpha(i) = in.f64();
  p.labels.resize(size);
  for (auto& label : p.labels) {
    label = in.u32();
    if (label >= k) in.fail("label out of range");
  }
  p.masses.resize(k);
  for (std::uint32_t i = 0; i < k; ++i) p.masses(i) = in.f64();
  p.converged = in.u8() != 0;
  in.expect_end();
  return file;
}

void write_labels_csv(const fs::path& path, const Grid& grid, const Labels& labels) {
  auto out = open_text(path);
  out << "cell,ix,iy,label\n";
  for (std::size_t x = 0; x < labels.size(); ++x)
    out << x << ',' << grid.ix(x) << ',' << grid.iy(x) << ',' << labels[x] << '\n';
  check_written(out, path);
}

SampleFormat parse_sample_format(const std::string& text) {
  if (text == "index") return SampleFormat::index;
  if (text == "coordinates" || text == "coords") return SampleFormat::coordinates;
  throw Error(ErrorKind::invalid_argument, "unknown sample format '" + text + "'");
}

void write_samples_csv(const fs::path& path, const std::vector<SampleSet>& samples, int k,
                       SampleFormat format, const std::optional<Grid>& grid) {
  if (format == SampleFormat::coordinates && !grid) {
    throw Error(ErrorKind::invalid_argument, "coordinate output needs a grid");
  }
  auto out = open_text(path);
  for (int i = 0; i < k; ++i) {
    if (i > 0) out << ',';
    if (format == SampleFormat::index) {
      out << 'p' << i;
    } else {
      out << 'x' << i << ",y" << i;
    }
  }
  out << '\n';
  for (const SampleSet& s : samples) {
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      if (i > 0) out << ',';
      if (format == SampleFormat::index) {
        out << s.points[i];
      } else {
        const auto p = grid->point(s.points[i]);
        out << p[0] << ',' << p[1];
      }
    }
    out << '\n';
  }
  check_written(out, path);
}

std::vector<SampleSet> read_samples_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  std::string line;
  std::getline(in, line);  // header
  if (line.rfind('p', 0) != 0 && !line.empty()) {
    throw Error(ErrorKind::io, path.string() + " is not an index-format sample file");
  }
  std::vector<SampleSet> samples;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SampleSet s;
    std::stringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) {
      try {
        s.points.push_back(static_cast<std::uint32_t>(std::stoul(field)));
      } catch (const std::exception&) {
        throw Error(ErrorKind::io, "malformed sample row in " + path.string());
      }
    }
    samples.push_back(std::move(s));
  }
  return samples;
}

std::string format_report(const ComparisonReport& report, bool with_timing) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "marginal_l1=" << report.marginal_l1 << '\n';
  out << "pair_error=" << report.pair_error << '\n';
  out << "pairs=" << report.pairs << '\n';
  out << "tv_small=";
  if (report.tv_small) {
    out << *report.tv_small;
  } else {
    out << "nan";
  }
  out << '\n';
  if (with_timing) {
    out << "seconds_marginal=" << report.seconds_marginal << '\n';
    out << "seconds_pairs=" << report.seconds_pairs << '\n';
    out << "seconds_tv=" << report.seconds_tv << '\n';
  }
  return out.str();
}

void write_report(const fs::path& path, const ComparisonReport& report, bool with_timing) {
  auto out = open_text(path);
  out << format_report(report, with_timing);
  check_written(out, path);
}

void write_report_csv(const fs::path& path, const ComparisonReport& report, bool with_timing) {
  auto out = open_text(path);
  out << "marginal_l1,pair_error,pairs,tv_small";
  if (with_timing) out << ",seconds_marginal,seconds_pairs,seconds_tv";
  out << '\n' << report.marginal_l1 << ',' << report.pair_error << ',' << report.pairs << ',';
  if (report.tv_small) {
    out << *report.tv_small;
  } else {
    out << "nan";
  }
  if (with_timing)
    out << ',' << report.seconds_marginal << ',' << report.seconds_pairs << ',' << report.seconds_tv;
  out << '\n';
  check_written(out, path);
}

}  // namespace dppipa::io
