// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line driver: builds orbital sets, localizes and partitions them,
// samples the independent-particle model, compares it with the exact DPP and
// renders the density / partition / realization images.

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dppipa/commands.hpp"
#include "dppipa/error.hpp"

namespace {

struct Flags {
  dppipa::RunConfig config;
  int n = 0;
  int k = 0;
  std::string format = "index";
};

void add_common(CLI::App* cmd, Flags& flags, bool sampling) {
  cmd->add_option("--example", flags.config.example, "uniform | corner | center | custom")
      ->capture_default_str();
  cmd->add_option("--n", flags.n, "cells per dimension (default per example)");
  cmd->add_option("--k", flags.k, "number of orbitals / points (default per example)");
  cmd->add_option("--input", flags.config.input, "DPPO file for --example custom");
  cmd->add_option("--seed", flags.config.seed, "random seed")->capture_default_str();
  cmd->add_option("--eta", flags.config.balance.eta, "balancing damping in (0,1]")
      ->capture_default_str();
  cmd->add_option("--eps", flags.config.balance.eps, "balancing tolerance on max|m-1|")
      ->capture_default_str();
  cmd->add_option("--max-iters", flags.config.balance.max_iters, "balancing iteration cap")
      ->capture_default_str();
  cmd->add_option("--amplitude", flags.config.amplitude, "potential amplitude")
      ->capture_default_str();
  cmd->add_option("--out", flags.config.out, "output directory")->capture_default_str();
  cmd->add_option("--scale", flags.config.scale, "pixels per grid cell in images")
      ->capture_default_str();
  cmd->add_option("--pairs", flags.config.pairs, "random pairs for the pair metric")
      ->capture_default_str();
  if (sampling) {
    cmd->add_option("--count", flags.config.count, "number of realizations")
        ->capture_default_str();
    cmd->add_option("--format", flags.format, "index | coordinates")->capture_default_str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Independent-particle approximation to elementary DPPs"};
  app.require_subcommand(1);
  Flags flags;

  auto* model = app.add_subcommand("model", "build an orbital set and write <name>.dppo");
  auto* pipeline = app.add_subcommand("pipeline", "localize, balance and partition");
  auto* sample = app.add_subcommand("sample", "draw realizations into <name>_samples.csv");
  auto* stats = app.add_subcommand("stats", "compare the model with the exact DPP");
  auto* render = app.add_subcommand("render", "write density, partition and realization images");
  auto* demo = app.add_subcommand("demo", "run every stage for the three examples");
  for (auto* cmd : {model, pipeline, render, stats}) add_common(cmd, flags, false);
  add_common(sample, flags, true);
  add_common(demo, flags, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (flags.n > 0) flags.config.n = flags.n;
    if (flags.k > 0) flags.config.k = flags.k;
    flags.config.format = dppipa::io::parse_sample_format(flags.format);

    if (*demo) return dppipa::cmd_demo(dppipa::resolve(flags.config), std::cout) == 0 ? 0 : 3;

    const dppipa::RunConfig config = dppipa::resolve(flags.config);
    if (*model) dppipa::cmd_model(config, std::cout);
    if (*pipeline) dppipa::cmd_pipeline(config, std::cout);
    if (*sample) dppipa::cmd_sample(config, std::cout);
    if (*stats) dppipa::cmd_stats(config, std::cout);
    if (*render) dppipa::cmd_render(config, std::cout);
  } catch (const dppipa::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dppipa::exit_code(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
