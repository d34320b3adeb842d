// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

// Helpers shared by the file-level tests: raw file access, a netpbm reader and
// a subprocess runner for the command-line tool.

#pragma once

#include <sys/wait.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace support {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("dppipa_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

struct Netpbm {
  int width = 0, height = 0, channels = 0;
  std::vector<std::uint8_t> data;  // row-major, `channels` bytes per pixel
  const std::uint8_t* at(int x, int y) const {
    return data.data() + (static_cast<std::size_t>(y) * width + x) * channels;
  }
};

// Binary P5/P6 with maxval 255 and single-whitespace headers.
inline Netpbm read_netpbm(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  std::istringstream in(bytes);
  std::string magic;
  int maxval = 0;
  Netpbm img;
  in >> magic >> img.width >> img.height >> maxval;
  in.get();
  if ((magic != "P5" && magic != "P6") || maxval != 255)
    throw std::runtime_error("unsupported netpbm header in " + path.string());
  img.channels = magic == "P5" ? 1 : 3;
  const auto offset = static_cast<std::size_t>(in.tellg());
  const std::size_t expected = static_cast<std::size_t>(img.width) * img.height * img.channels;
  if (bytes.size() - offset != expected) throw std::runtime_error("truncated " + path.string());
  img.data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset), bytes.end());
  return img;
}

// Runs a shell command and returns its exit status; output goes to `log`.
inline int run(const std::string& command, const std::filesystem::path& log = "/dev/null") {
  const int status = std::system((command + " > '" + log.string() + "' 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace support
