/* Copyright 2026 The nlcl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef NLCL_IO_HPP
#define NLCL_IO_HPP

// Snapshot CSV layout:
//   nx,ny,h,t
//   <nx>,<ny>,<h>,<t>
//   ny rows of nx comma-separated values (row j = 0 first)
// Every number is written with 17 significant digits so a read gives back the
// exact doubles.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nlcl/fields.hpp"
#include "nlcl/geometry.hpp"

namespace nlcl {

class IoError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::ofstream open_for_write(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace detail

struct SnapshotHeader {
  int nx = 0;
  int ny = 0;
  double h = 0.0;
  double t = 0.0;
};

inline void write_snapshot(const ScalarField& field, const Grid& grid, double t, const std::filesystem::path& path) {
  auto out = detail::open_for_write(path);
  out << "nx,ny,h,t\n"
      << grid.nx << ',' << grid.ny << ',' << detail::format_double(grid.h()) << ',' << detail::format_double(t)
      << '\n';
  std::string row;
  for (int j = 0; j < grid.ny; ++j) {
    row.clear();
    for (int i = 0; i < grid.nx; ++i) {
      if (i) row += ',';
      row += detail::format_double(field(i, j));
    }
    out << row << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

inline ScalarField read_snapshot(const std::filesystem::path& path, SnapshotHeader* header = nullptr) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != "nx,ny,h,t") throw IoError("bad snapshot header in " + path.string());
  SnapshotHeader hd;
  std::getline(in, line);
  if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf", &hd.nx, &hd.ny, &hd.h, &hd.t) != 4 || hd.nx <= 0 || hd.ny <= 0) {
    throw IoError("bad snapshot dimensions in " + path.string());
  }
  ScalarField f(hd.nx, hd.ny);
  for (int j = 0; j < hd.ny; ++j) {
    if (!std::getline(in, line)) throw IoError("truncated snapshot " + path.string());
    const char* p = line.c_str();
    for (int i = 0; i < hd.nx; ++i) {
      char* end = nullptr;
      f(i, j) = std::strtod(p, &end);
      if (end == p) throw IoError("bad value in snapshot " + path.string());
      p = (*end == ',') ? end + 1 : end;
    }
  }
  if (header) *header = hd;
  return f;
}

/// 8-bit binary PGM: value 0 maps to 255 (white), the field sup to 0 (black);
/// non-interior cells are 128. Top image row is the largest y.
inline void write_raster(const ScalarField& field, const Mesh& mesh, const std::filesystem::path& path) {
  const Grid& g = mesh.grid;
  double sup = 0.0;
  for (std::size_t k = 0; k < field.size(); ++k) {
    if (mesh.interior(k)) sup = std::max(sup, field[k]);
  }
  std::vector<std::uint8_t> pixels(g.cell_count());
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      std::uint8_t px = 128;
      if (mesh.interior(k)) {
        const double s = sup > 0.0 ? std::clamp(field[k] / sup, 0.0, 1.0) : 0.0;
        px = static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - s)));
      }
      pixels[static_cast<std::size_t>(g.ny - 1 - j) * g.nx + i] = px;
    }
  }
  auto out = detail::open_for_write(path, std::ios::out | std::ios::binary);
  out << "P5\n" << g.nx << ' ' << g.ny << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

inline std::vector<std::uint8_t> read_raster(const std::filesystem::path& path, int* nx = nullptr, int* ny = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string magic;
  int w = 0, hgt = 0, maxval = 0;
  in >> magic >> w >> hgt >> maxval;
  in.get();
  if (magic != "P5" || w <= 0 || hgt <= 0 || maxval != 255) throw IoError("bad PGM header in " + path.string());
  std::vector<std::uint8_t> px(static_cast<std::size_t>(w) * hgt);
  in.read(reinterpret_cast<char*>(px.data()), static_cast<std::streamsize>(px.size()));
  if (!in) throw IoError("truncated PGM " + path.string());
  if (nx) *nx = w;
  if (ny) *ny = hgt;
  return px;
}

}  // namespace nlcl

#endif  // NLCL_IO_HPP
