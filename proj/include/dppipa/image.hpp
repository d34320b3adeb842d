// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dppipa/model_problems.hpp"
#include "dppipa/partition.hpp"

namespace dppipa {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

/// Label colors: hue stepped by the golden-ratio conjugate, saturation 0.65,
/// value 0.95. Never black.
Rgb palette_color(std::uint32_t label);

struct GrayImage {
  int width = 0, height = 0;
  std::vector<std::uint8_t> pixels;  // row-major
};

struct RgbImage {
  int width = 0, height = 0;
  std::vector<Rgb> pixels;  // row-major

  Rgb& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  const Rgb& at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
};

/// Linear min-max scaling to 0..255, each cell a scale x scale block, image
/// row iy holds grid row iy. A field whose range is below 1e-9 of its largest
/// magnitude is drawn uniformly at 128.
GrayImage render_density(const Eigen::VectorXd& rho, const Grid& grid, int scale = 1);

RgbImage render_partition(const Labels& labels, const Grid& grid, int scale = 1);

/// Black 3x3 dots whose top-left pixel is the top-left of each cell's block.
void overlay_points(RgbImage& image, std::span<const std::uint32_t> cells,
                    const Grid& grid, int scale = 1);

/// Binary netpbm "P5" with maxval 255.
void write_pgm(const std::filesystem::path& path, const GrayImage& image);
/// Binary netpbm "P6" with maxval 255.
void write_ppm(const std::filesystem::path& path, const RgbImage& image);

}  // namespace dppipa
