// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#include "dppipa/commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "dppipa/error.hpp"
#include "dppipa/image.hpp"
#include "dppipa/sampler.hpp"
#include "dppipa/scdm.hpp"

namespace dppipa {
namespace {

namespace fs = std::filesystem;

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create " + dir.string() + ": " + ec.message());
}

void warn_if_degenerate(const OrbitalSet& orbitals, std::ostream& log) {
  if (orbitals.near_degenerate) {
    log << "warning: near-degenerate Fermi level (gap " << *orbitals.fermi_gap
        << "); the kernel depends on the eigensolver's choice inside the eigenspace\n";
  }
}

// Orbitals for a run: the custom input, a matching cached DPPO in the output
// directory, or a fresh build that is then cached.
OrbitalSet obtain_orbitals(const RunConfig& config, std::ostream& log) {
  if (config.example == "custom") return read_orbitals_checked(config.input);
  const fs::path cached = output_path(config, ".dppo");
  if (fs::exists(cached)) {
    OrbitalSet set = io::read_orbitals(cached);
    if (set.grid && set.grid->n == *config.n && set.k() == *config.k) return set;
  }
  OrbitalSet set = build_orbitals(config);
  warn_if_degenerate(set, log);
  ensure_dir(config.out);
  io::write_orbitals(cached, set);
  return set;
}

// Files written by an earlier model/pipeline step; missing ones are I/O errors.
OrbitalSet load_orbitals(const RunConfig& config) {
  if (config.example == "custom") return read_orbitals_checked(config.input);
  return io::read_orbitals(output_path(config, ".dppo"));
}

Partition load_partition(const RunConfig& config, const OrbitalSet& orbitals) {
  io::PartitionFile file = io::read_partition(output_path(config, ".dppp"));
  if (!orbitals.grid || file.n != orbitals.grid->n || file.partition.k() != orbitals.k()) {
    throw Error(ErrorKind::io, "partition file does not match the orbital file");
  }
  return std::move(file.partition);
}

}  // namespace

OrbitalSet read_orbitals_checked(const fs::path& path) {
  OrbitalSet raw = io::read_orbitals(path);
  OrbitalSet set = make_orbital_set(std::move(raw.phi), raw.grid);
  set.eigenvalues = std::move(raw.eigenvalues);
  return set;
}

RunConfig resolve(RunConfig config) {
  if (config.example == "uniform") {
    if (!config.n) config.n = 128;
    if (!config.k) config.k = 61;
  } else if (config.example == "corner" || config.example == "center") {
    if (!config.n) config.n = 64;
    if (!config.k) config.k = 64;
  } else if (config.example == "custom") {
    if (config.input.empty()) {
      throw Error(ErrorKind::invalid_argument, "custom example needs --input <file.dppo>");
    }
  } else {
    throw Error(ErrorKind::invalid_argument, "unknown example '" + config.example +
                                                 "' (uniform, corner, center, custom)");
  }
  if (config.scale < 1) throw Error(ErrorKind::invalid_argument, "--scale must be positive");
  return config;
}

std::string run_name(const RunConfig& config) {
  return config.example == "custom" ? config.input.stem().string() : config.example;
}

fs::path output_path(const RunConfig& config, const std::string& suffix) {
  return config.out / (run_name(config) + suffix);
}

OrbitalSet build_orbitals(const RunConfig& config) {
  if (config.example == "custom") return read_orbitals_checked(config.input);
  if (config.example == "uniform") {
    return fourier_orbitals(build_grid(*config.n, Boundary::periodic), *config.k);
  }
  const Grid grid = build_grid(*config.n, Boundary::dirichlet);
  const PotentialSpec pot{config.example == "corner" ? PotentialKind::corner_well
                                                     : PotentialKind::center_well,
                          config.amplitude};
  return lowest_eigenmodes(grid, assemble_operator(grid, pot), *config.k);
}

fs::path cmd_model(const RunConfig& config, std::ostream& log) {
  OrbitalSet orbitals = build_orbitals(config);
  warn_if_degenerate(orbitals, log);
  ensure_dir(config.out);
  const fs::path path = output_path(config, ".dppo");
  io::write_orbitals(path, orbitals);
  log << "k=" << orbitals.k() << " N=" << orbitals.size() << " fermi_gap=";
  if (orbitals.fermi_gap) {
    log << *orbitals.fermi_gap;
  } else {
    log << "n/a";
  }
  log << "\nwrote " << path.string() << '\n';
  return path;
}

PipelineResult cmd_pipeline(const RunConfig& config, std::ostream& log) {
  const OrbitalSet orbitals = obtain_orbitals(config, log);
  if (!orbitals.grid) throw Error(ErrorKind::invalid_argument, "pipeline needs a grid");
  const Grid& grid = *orbitals.grid;
  const Eigen::VectorXd rho = density(orbitals);

  PipelineResult result;
  result.scdm = scdm_localize(orbitals);
  BalanceParams params = config.balance;
  params.seed = config.seed;
  result.partition = balance(result.scdm.v, rho, params);
  result.partition.pivots = result.scdm.pivots;
  build_model(result.partition, rho, grid);  // rejects degenerate regions

  ensure_dir(config.out);
  const auto add = [&](const std::string& suffix) {
    result.files.push_back(output_path(config, suffix));
    return result.files.back();
  };
  io::write_scdm(add(".dppv"), grid, result.scdm);
  io::write_pivots_csv(add("_sigma.csv"), grid, result.scdm.pivots);
  io::write_partition(add(".dppp"), grid.n, result.partition);
  io::write_labels_csv(add("_labels.csv"), grid, result.partition.labels);

  const Partition& p = result.partition;
  std::ostringstream summary;
  summary << std::setprecision(17);
  summary << "n=" << grid.n << "\nk=" << p.k() << "\nN=" << grid.size()
          << "\nconditioning=" << result.scdm.conditioning
          << "\nbalance_iters=" << p.balance_iters << "\nconverged=" << (p.converged ? 1 : 0)
          << "\nbaseline_imbalance=" << p.baseline_imbalance
          << "\nmax_imbalance=" << max_imbalance(p.masses) << "\nmasses=";
  for (int i = 0; i < p.k(); ++i) summary << (i ? "," : "") << p.masses(i);
  summary << "\nalpha=";
  for (int i = 0; i < p.k(); ++i) summary << (i ? "," : "") << p.alpha(i);
  summary << '\n';
  const fs::path summary_path = add("_summary.txt");
  std::ofstream out(summary_path);
  out << summary.str();
  if (!out) throw Error(ErrorKind::io, "failed writing " + summary_path.string());

  log << run_name(config) << ": k=" << p.k() << " iterations=" << p.balance_iters
      << " converged=" << (p.converged ? "yes" : "no") << " baseline=" << p.baseline_imbalance
      << " max|m-1|=" << max_imbalance(p.masses) << '\n';
  return result;
}

fs::path cmd_sample(const RunConfig& config, std::ostream& log) {
  const OrbitalSet orbitals = load_orbitals(config);
  const Partition partition = load_partition(config, orbitals);
  const IndependentModel model = build_model(partition, density(orbitals), orbitals.grid);
  const auto samples = sample_many(model, config.count, config.seed);
  ensure_dir(config.out);
  const fs::path path = output_path(config, "_samples.csv");
  io::write_samples_csv(path, samples, model.k(), config.format, orbitals.grid);
  log << "wrote " << samples.size() << " realizations to " << path.string() << '\n';
  return path;
}

ComparisonReport cmd_stats(const RunConfig& config, std::ostream& log) {
  const OrbitalSet orbitals = load_orbitals(config);
  const Partition partition = load_partition(config, orbitals);
  const IndependentModel model = build_model(partition, density(orbitals), orbitals.grid);
  CompareParams params;
  params.pairs = config.pairs;
  params.seed = config.seed;
  const ComparisonReport report = compare(orbitals, model, params);
  ensure_dir(config.out);
  io::write_report(output_path(config, "_report.txt"), report);
  io::write_report_csv(output_path(config, "_report.csv"), report);
  log << io::format_report(report, true);
  return report;
}

std::vector<fs::path> cmd_render(const RunConfig& config, std::ostream& log) {
  const OrbitalSet orbitals = load_orbitals(config);
  const Partition partition = load_partition(config, orbitals);
  const Grid& grid = *orbitals.grid;
  const Eigen::VectorXd rho = density(orbitals);
  const IndependentModel model = build_model(partition, rho, grid);
  // Realization 0 of the seed, i.e. the first row of the samples file.
  const SampleSet realization = sample_many(model, 1, config.seed).front();

  ensure_dir(config.out);
  std::vector<fs::path> files = {output_path(config, "_density.pgm"),
                                 output_path(config, "_partition.ppm"),
                                 output_path(config, "_realization.ppm")};
  write_pgm(files[0], render_density(rho, grid, config.scale));
  RgbImage regions = render_partition(partition.labels, grid, config.scale);
  write_ppm(files[1], regions);
  overlay_points(regions, realization.points, grid, config.scale);
  write_ppm(files[2], regions);
  for (const auto& f : files) log << "wrote " << f.string() << '\n';
  return files;
}

int cmd_demo(const RunConfig& config, std::ostream& log) {
  struct Case {
    const char* example;
    int n, k;
  };
  constexpr Case cases[] = {{"uniform", 128, 61}, {"corner", 64, 64}, {"center", 64, 64}};
  int failures = 0;
  for (const Case& c : cases) {
    RunConfig run = config;
    run.example = c.example;
    run.n = c.n;
    run.k = c.k;
    run = resolve(run);
    const auto start = std::chrono::steady_clock::now();
    try {
      cmd_model(run, log);
      cmd_pipeline(run, log);
      cmd_sample(run, log);
      cmd_stats(run, log);
      cmd_render(run, log);
      log << c.example << " done in "
          << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
          << " s\n";
    } catch (const std::exception& e) {
      log << c.example << " failed: " << e.what() << '\n';
      ++failures;
    }
  }
  return failures;
}

}  // namespace dppipa
