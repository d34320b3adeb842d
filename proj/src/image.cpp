// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#include "dppipa/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "dppipa/error.hpp"

namespace dppipa {
namespace {

constexpr double kGoldenConjugate = 0.6180339887498949;

std::uint8_t channel(double value) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(value, 0.0, 1.0) * 255.0));
}

void check_scale(const Grid& grid, int scale, std::size_t length) {
  if (scale < 1) throw Error(ErrorKind::invalid_argument, "render scale must be positive");
  if (length != grid.size()) {
    throw Error(ErrorKind::invalid_argument, "field length does not match the grid");
  }
}

std::ofstream open_binary(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

Rgb palette_color(std::uint32_t label) {
  const double hue = std::fmod(label * kGoldenConjugate, 1.0) * 6.0;
  constexpr double s = 0.65, v = 0.95;
  const int sector = static_cast<int>(hue) % 6;
  const double f = hue - std::floor(hue);
  const double p = v * (1 - s), q = v * (1 - s * f), t = v * (1 - s * (1 - f));
  switch (sector) {
    case 0: return {channel(v), channel(t), channel(p)};
    case 1: return {channel(q), channel(v), channel(p)};
    case 2: return {channel(p), channel(v), channel(t)};
    case 3: return {channel(p), channel(q), channel(v)};
    case 4: return {channel(t), channel(p), channel(v)};
    default: return {channel(v), channel(p), channel(q)};
  }
}

GrayImage render_density(const Eigen::VectorXd& rho, const Grid& grid, int scale) {
  check_scale(grid, scale, static_cast<std::size_t>(rho.size()));
  const double lo = rho.minCoeff();
  const double hi = rho.maxCoeff();
  const bool flat = hi - lo <= 1e-9 * std::max(std::abs(lo), std::abs(hi));

  GrayImage image;
  image.width = image.height = grid.n * scale;
  image.pixels.resize(static_cast<std::size_t>(image.width) * image.height);
  for (int py = 0; py < image.height; ++py) {
    for (int px = 0; px < image.width; ++px) {
      const double value = rho(static_cast<Eigen::Index>(grid.index(px / scale, py / scale)));
      image.pixels[static_cast<std::size_t>(py) * image.width + px] =
          flat ? std::uint8_t{128} : channel((value - lo) / (hi - lo));
    }
  }
  return image;
}

RgbImage render_partition(const Labels& labels, const Grid& grid, int scale) {
  check_scale(grid, scale, labels.size());
  RgbImage image;
  image.width = image.height = grid.n * scale;
  image.pixels.resize(static_cast<std::size_t>(image.width) * image.height);
  for (int py = 0; py < image.height; ++py)
    for (int px = 0; px < image.width; ++px)
      image.at(px, py) = palette_color(labels[grid.index(px / scale, py / scale)]);
  return image;
}

void overlay_points(RgbImage& image, std::span<const std::uint32_t> cells, const Grid& grid,
                    int scale) {
  for (std::uint32_t cell : cells) {
    const int x0 = grid.ix(cell) * scale;
    const int y0 = grid.iy(cell) * scale;
    for (int dy = 0; dy < 3; ++dy)
      for (int dx = 0; dx < 3; ++dx)
        if (x0 + dx < image.width && y0 + dy < image.height) image.at(x0 + dx, y0 + dy) = Rgb{};
  }
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  auto out = open_binary(path);
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw Error(ErrorKind::io, "failed writing " + path.string());
}

void write_ppm(const std::filesystem::path& path, const RgbImage& image) {
  auto out = open_binary(path);
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  for (const Rgb& px : image.pixels) {
    const char rgb[3] = {static_cast<char>(px.r), static_cast<char>(px.g), static_cast<char>(px.b)};
    out.write(rgb, 3);
  }
  if (!out) throw Error(ErrorKind::io, "failed writing " + path.string());
}

}  // namespace dppipa
