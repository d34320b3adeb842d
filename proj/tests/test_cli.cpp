// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

// Runs the dpp-ipa executable end to end and checks files and exit codes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "dppipa/io.hpp"
#include "dppipa/model_problems.hpp"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = DPPIPA_CLI_PATH;

// FNV-1a, 64 bit.
std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

int cli(const std::string& args, const fs::path& log = "/dev/null") {
  return support::run("'" + kCli + "' " + args, log);
}

std::map<std::string, std::string> key_values(const fs::path& path) {
  std::map<std::string, std::string> out;
  std::istringstream in(support::read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

}  // namespace

TEST_CASE("model: shell violation exits 2 and names the closures") {
  const fs::path dir = support::scratch_dir("cli_model");
  CHECK(cli("model --example uniform --n 32 --k 12 --out " + dir.string(), dir / "log") == 2);
  CHECK(support::read_file(dir / "log").find("9 and 13") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "uniform.dppo"));

  CHECK(cli("model --example uniform --n 32 --k 13 --out " + dir.string(), dir / "log") == 0);
  const auto set = dppipa::io::read_orbitals(dir / "uniform.dppo");
  CHECK(set.k() == 13);
  CHECK(set.size() == 1024);
  const Eigen::VectorXd rho = dppipa::density(set);
  CHECK(rho.maxCoeff() - rho.minCoeff() <= 1e-12);
  CHECK(support::read_file(dir / "log").find("N=1024") != std::string::npos);
}

TEST_CASE("invalid arguments exit 2") {
  CHECK(cli("") == 2);
  CHECK(cli("model --example moon") == 2);
  CHECK(cli("model --n abc") == 2);
  CHECK(cli("model --example custom") == 2);
  CHECK(cli("sample --format yaml") == 2);
  CHECK(cli("pipeline --example uniform --n 16 --k 5 --eta 0 --out " +
            support::scratch_dir("cli_eta").string()) == 2);
}

TEST_CASE("missing inputs exit 4") {
  const fs::path dir = support::scratch_dir("cli_missing");
  CHECK(cli("sample --example uniform --n 32 --k 13 --out " + dir.string()) == 4);
  CHECK(cli("stats --example custom --input " + (dir / "none.dppo").string() + " --out " +
            dir.string()) == 4);
}

TEST_CASE("pipeline: golden labels, deterministic samples") {
  const fs::path dir = support::scratch_dir("cli_golden");
  const std::string common = " --example uniform --n 32 --k 13 --seed 7 --out " + dir.string();
  REQUIRE(cli("pipeline" + common) == 0);
  for (const char* f : {"uniform.dppo", "uniform.dppv", "uniform.dppp", "uniform_sigma.csv",
                        "uniform_labels.csv", "uniform_summary.txt"})
    CHECK(fs::exists(dir / f));
  CHECK(fnv1a(support::read_file(dir / "uniform_labels.csv")) == 0x40f2e44dcb7a4121ULL);
  const auto summary = key_values(dir / "uniform_summary.txt");
  CHECK(summary.at("converged") == "1");
  CHECK(std::stod(summary.at("max_imbalance")) <= 0.1);

  REQUIRE(cli("sample --count 500" + common) == 0);
  const std::string first = support::read_file(dir / "uniform_samples.csv");
  REQUIRE(cli("sample --count 500" + common) == 0);
  CHECK(support::read_file(dir / "uniform_samples.csv") == first);
  CHECK(dppipa::io::read_samples_csv(dir / "uniform_samples.csv").size() == 500);

  REQUIRE(cli("sample --count 0" + common) == 0);
  CHECK(support::read_file(dir / "uniform_samples.csv") ==
        "p0,p1,p2,p3,p4,p5,p6,p7,p8,p9,p10,p11,p12\n");

  REQUIRE(cli("sample --count 3 --format coordinates" + common) == 0);
  CHECK(support::read_file(dir / "uniform_samples.csv").rfind("x0,y0,x1,y1", 0) == 0);
}

TEST_CASE("pipeline: k = 1 covers the grid with one region") {
  const fs::path dir = support::scratch_dir("cli_k1");
  REQUIRE(cli("pipeline --example uniform --n 16 --k 1 --out " + dir.string()) == 0);
  const auto part = dppipa::io::read_partition(dir / "uniform.dppp");
  CHECK(part.partition.k() == 1);
  CHECK(std::all_of(part.partition.labels.begin(), part.partition.labels.end(),
                    [](std::uint32_t l) { return l == 0; }));
}

TEST_CASE("stats on custom inputs") {
  const fs::path dir = support::scratch_dir("cli_custom");
  // Block-diagonal: each orbital lives on its own pair of cells.
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(4, 2);
  block(0, 0) = std::sqrt(0.7);
  block(1, 0) = std::sqrt(0.3);
  block(2, 1) = -std::sqrt(0.4);
  block(3, 1) = std::sqrt(0.6);
  dppipa::io::write_orbitals(dir / "block.dppo",
                             dppipa::make_orbital_set(block, dppipa::build_grid(2, dppipa::Boundary::periodic)));
  const std::string block_args = " --example custom --input " + (dir / "block.dppo").string() +
                                 " --out " + dir.string();
  REQUIRE(cli("pipeline" + block_args) == 0);
  REQUIRE(cli("stats" + block_args) == 0);
  const auto report = key_values(dir / "block_report.txt");
  CHECK(std::stod(report.at("marginal_l1")) <= 1e-12);
  CHECK(std::stod(report.at("pair_error")) <= 1e-12);
  CHECK(std::stod(report.at("tv_small")) <= 1e-12);

  // Random toy on a 3 x 3 grid: brute force runs and is reproducible.
  dppipa::io::write_orbitals(dir / "toy.dppo",
                             dppipa::make_orbital_set(dppipa::random_orthonormal(9, 2, 5),
                                                      dppipa::build_grid(3, dppipa::Boundary::dirichlet)));
  const std::string toy_args = " --example custom --input " + (dir / "toy.dppo").string() +
                               " --out " + dir.string();
  REQUIRE(cli("pipeline" + toy_args) == 0);
  REQUIRE(cli("stats" + toy_args) == 0);
  const std::string first = support::read_file(dir / "toy_report.txt");
  CHECK(key_values(dir / "toy_report.txt").at("tv_small") != "nan");
  REQUIRE(cli("stats" + toy_args) == 0);
  CHECK(support::read_file(dir / "toy_report.txt") == first);

  // Non-orthonormal input is rejected as a numerical failure.
  dppipa::OrbitalSet bad;
  bad.grid = dppipa::build_grid(2, dppipa::Boundary::periodic);
  bad.phi = Eigen::MatrixXd::Ones(4, 1);
  bad.eigenvalues = Eigen::VectorXd::Zero(1);
  dppipa::io::write_orbitals(dir / "bad.dppo", bad);
  CHECK(cli("pipeline --example custom --input " + (dir / "bad.dppo").string() + " --out " +
            dir.string()) != 0);
}

TEST_CASE("render: image files for the uniform example") {
  const fs::path dir = support::scratch_dir("cli_render");
  const std::string args = " --example uniform --n 32 --k 13 --out " + dir.string();
  REQUIRE(cli("pipeline" + args) == 0);
  REQUIRE(cli("render" + args) == 0);
  const support::Netpbm density = support::read_netpbm(dir / "uniform_density.pgm");
  CHECK(density.width == 128);
  CHECK(std::all_of(density.data.begin(), density.data.end(),
                    [&](std::uint8_t p) { return p == density.data[0]; }));
  const support::Netpbm part = support::read_netpbm(dir / "uniform_partition.ppm");
  CHECK(part.channels == 3);
  CHECK(fs::exists(dir / "uniform_realization.ppm"));
}

TEST_CASE("pipeline: corner example balances to within 0.2") {
  const fs::path dir = support::scratch_dir("cli_corner");
  REQUIRE(cli("pipeline --example corner --out " + dir.string(), dir / "log") == 0);
  const auto summary = key_values(dir / "corner_summary.txt");
  CHECK(summary.at("n") == "64");
  CHECK(summary.at("k") == "64");
  CHECK(std::stod(summary.at("max_imbalance")) <= 0.2);
  CHECK(support::read_file(dir / "log").find("converged=") != std::string::npos);
}
