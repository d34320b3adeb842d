// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <tuple>

#include "dppipa/error.hpp"
#include "dppipa/image.hpp"
#include "support.hpp"

using namespace dppipa;

TEST_CASE("palette: distinct, never black") {
  std::set<std::tuple<int, int, int>> colors;
  for (std::uint32_t label = 0; label < 256; ++label) {
    const Rgb c = palette_color(label);
    CHECK(c.r + c.g + c.b > 200);
    colors.insert({c.r, c.g, c.b});
  }
  CHECK(colors.size() == 256);
  CHECK(palette_color(7) == palette_color(7));
}

TEST_CASE("density image: min-max scaling and constant fields") {
  const Grid g = build_grid(2, Boundary::periodic);
  Eigen::Vector4d rho(0.0, 1.0, 0.5, 0.25);
  const GrayImage img = render_density(rho, g, 2);
  CHECK(img.width == 4);
  CHECK(img.height == 4);
  CHECK(img.pixels[0] == 0);
  CHECK(img.pixels[3] == 255);            // cell (1, 0)
  CHECK(img.pixels[2 * 4 + 1] == 128);    // cell (0, 1), 0.5 rounds up
  CHECK(img.pixels[3 * 4 + 3] == 64);     // cell (1, 1)
  const GrayImage flat = render_density(Eigen::Vector4d::Constant(0.25), g, 1);
  CHECK(std::all_of(flat.pixels.begin(), flat.pixels.end(), [](auto p) { return p == 128; }));
  CHECK_THROWS_AS(render_density(Eigen::Vector3d::Ones(), g, 1), Error);
  CHECK_THROWS_AS(render_density(rho, g, 0), Error);
}

TEST_CASE("partition image and point overlay") {
  const Grid g = build_grid(4, Boundary::periodic);
  Labels labels(16, 0);
  for (std::size_t c = 8; c < 16; ++c) labels[c] = 1;
  RgbImage img = render_partition(labels, g, 4);
  CHECK(img.width == 16);
  CHECK(img.at(0, 0) == palette_color(0));
  CHECK(img.at(15, 15) == palette_color(1));
  const std::uint32_t points[] = {5, 14};
  overlay_points(img, points, g, 4);
  CHECK(img.at(4, 4) == Rgb{});
  CHECK(img.at(6, 6) == Rgb{});
  CHECK(img.at(7, 7) == palette_color(0));
  CHECK(img.at(8, 12) == Rgb{});
  std::size_t black = 0;
  for (const Rgb& p : img.pixels) black += p == Rgb{};
  CHECK(black == 18);
}

TEST_CASE("netpbm files parse back to the rendered pixels") {
  const auto dir = support::scratch_dir("image_files");
  const Grid g = build_grid(3, Boundary::dirichlet);
  Eigen::VectorXd rho(9);
  rho << 1, 2, 3, 4, 5, 6, 7, 8, 9;
  const GrayImage gray = render_density(rho, g, 3);
  write_pgm(dir / "d.pgm", gray);
  const support::Netpbm pgm = support::read_netpbm(dir / "d.pgm");
  CHECK(pgm.channels == 1);
  CHECK(pgm.width == 9);
  CHECK(pgm.data == gray.pixels);

  const RgbImage rgb = render_partition(Labels{0, 1, 2, 0, 1, 2, 0, 1, 2}, g, 2);
  write_ppm(dir / "p.ppm", rgb);
  const support::Netpbm ppm = support::read_netpbm(dir / "p.ppm");
  CHECK(ppm.channels == 3);
  CHECK(ppm.height == 6);
  for (int y = 0; y < 6; ++y) {
    for (int x = 0; x < 6; ++x) {
      const std::uint8_t* px = ppm.at(x, y);
      CHECK(Rgb{px[0], px[1], px[2]} == rgb.at(x, y));
    }
  }
  CHECK_THROWS_AS(write_pgm(dir / "missing" / "d.pgm", gray), Error);
}
