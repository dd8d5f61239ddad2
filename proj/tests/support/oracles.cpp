// Copyright 2026 The stripmesh Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

namespace oracle {
namespace {

using stripmesh::Face;
using stripmesh::Mesh;
using stripmesh::QuantizedMesh;

std::uint16_t c1_of(GridCoord g) {
  return static_cast<std::uint16_t>((g.x >> 7) * 16 + (g.y >> 7) * 4 + (g.z >> 7));
}
std::uint16_t c2_of(GridCoord g) {
  return static_cast<std::uint16_t>(((g.x >> 4) & 7) * 64 + ((g.y >> 4) & 7) * 8 +
                                    ((g.z >> 4) & 7));
}
std::uint16_t c3_of(GridCoord g) {
  return static_cast<std::uint16_t>((g.x & 15) * 256 + (g.y & 15) * 16 + (g.z & 15));
}

std::tuple<int, int, int> yzx(GridCoord g) { return {g.y, g.z, g.x}; }

}  // namespace

std::vector<Index> uv_components(const Mesh& mesh) {
  const std::size_t n = mesh.faces.size();
  auto touches = [&](std::size_t i, std::size_t j) {
    const Face& fi = mesh.faces[i];
    const Face& fj = mesh.faces[j];
    const Face& ui = mesh.face_uvs[i];
    const Face& uj = mesh.face_uvs[j];
    for (std::size_t a = 0; a < fi.degree; ++a) {
      const std::size_t a2 = (a + 1) % fi.degree;
      for (std::size_t b = 0; b < fj.degree; ++b) {
        const std::size_t b2 = (b + 1) % fj.degree;
        if (fi[a] == fj[b] && fi[a2] == fj[b2] && ui[a] == uj[b] && ui[a2] == uj[b2])
          return true;
        if (fi[a] == fj[b2] && fi[a2] == fj[b] && ui[a] == uj[b2] && ui[a2] == uj[b])
          return true;
      }
    }
    return false;
  };
  std::vector<Index> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = static_cast<Index>(i);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (label[i] == label[j] || !touches(i, j)) continue;
        const Index m = std::min(label[i], label[j]);
        label[i] = label[j] = m;
        changed = true;
      }
  }
  std::map<Index, Index> dense;
  std::vector<Index> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = dense.try_emplace(label[i], static_cast<Index>(dense.size())).first;
    out[i] = it->second;
  }
  return out;
}

std::vector<std::uint16_t> strip_tokens(const std::vector<GridCoord>& strip,
                                        std::uint16_t marker_base) {
  std::vector<std::uint16_t> out;
  for (std::size_t i = 0; i < strip.size(); ++i) {
    const GridCoord g = strip[i];
    const bool same_c1 = i > 0 && c1_of(strip[i - 1]) == c1_of(g);
    const bool same_c2 = same_c1 && c2_of(strip[i - 1]) == c2_of(g);
    if (i == 0) out.push_back(static_cast<std::uint16_t>(marker_base + c1_of(g)));
    else if (!same_c1) out.push_back(c1_of(g));
    if (!same_c2) out.push_back(static_cast<std::uint16_t>(192 + c2_of(g)));
    out.push_back(static_cast<std::uint16_t>(704 + c3_of(g)));
  }
  return out;
}

std::vector<std::uint16_t> expected_tokens(const stripmesh::StripSet& strips,
                                           bool uv_mode) {
  std::vector<std::uint16_t> out;
  for (std::size_t s = 0; s < strips.strips.size(); ++s) {
    const auto& strip = strips.strips[s];
    const bool island_start = s == 0 || strips.strips[s - 1].island != strip.island;
    std::vector<GridCoord> coords;
    for (Index k : strip.keys) coords.push_back(strips.vertex_keys[k]);
    const auto t = strip_tokens(coords, uv_mode && island_start ? 128 : 64);
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

std::vector<GridCoord> ribbon_strip(int cells) {
  auto snap = [&](int num) {
    return static_cast<std::uint16_t>(std::min(512 * num / cells, 511));
  };
  std::vector<GridCoord> out;
  for (int j = 0; j <= cells; ++j) {
    out.push_back({0, snap(j), 0});
    out.push_back({snap(1), snap(j), 0});
  }
  return out;
}

std::size_t greedy_patch_count(const QuantizedMesh& q, std::size_t cap) {
  using Tuple = std::vector<std::tuple<int, int, int>>;
  const std::size_t n = q.faces.size();
  std::vector<Tuple> tuple(n);
  std::vector<std::vector<std::size_t>> incident(q.vertex_keys.size());
  for (std::size_t f = 0; f < n; ++f) {
    for (Index k : q.faces[f]) {
      tuple[f].push_back(yzx(q.vertex_keys[k]));
      incident[k].push_back(f);
    }
    std::sort(tuple[f].begin(), tuple[f].end());
  }
  auto island = [&](std::size_t f) {
    return q.island_of_face.empty() ? Index{0} : q.island_of_face[f];
  };
  auto before = [&](std::size_t a, std::size_t b) {
    return std::tie(tuple[a], a) < std::tie(tuple[b], b);
  };
  std::vector<std::size_t> order(n);
  for (std::size_t f = 0; f < n; ++f) order[f] = f;
  std::sort(order.begin(), order.end(), before);

  std::vector<bool> used(n, false);
  std::size_t patches = 0;
  for (std::size_t seed : order) {
    if (used[seed]) continue;
    auto open_fan = [&](Index k) {
      std::vector<std::size_t> fan;
      for (std::size_t f : incident[k])
        if (!used[f] && island(f) == island(seed)) fan.push_back(f);
      return fan;
    };
    // Centre on the corner with the most unclaimed faces, lowest key on ties.
    Index center = q.faces[seed][0];
    for (Index k : q.faces[seed]) {
      const std::size_t a = open_fan(k).size(), b = open_fan(center).size();
      if (a > b || (a == b && yzx(q.vertex_keys[k]) < yzx(q.vertex_keys[center]))) center = k;
    }
    std::vector<std::size_t> fan = open_fan(center);
    std::sort(fan.begin(), fan.end(), before);
    if (fan.size() > cap) fan.resize(cap);
    for (std::size_t f : fan) used[f] = true;
    ++patches;
  }
  return patches;
}

std::vector<Nearest> brute_nearest(const std::vector<stripmesh::Vec3>& from,
                                   const std::vector<stripmesh::Vec3>& to) {
  std::vector<Nearest> out;
  out.reserve(from.size());
  for (const auto& p : from) {
    Nearest best{0, std::numeric_limits<double>::infinity()};
    double best2 = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < to.size(); ++j) {
      const double dx = p[0] - to[j][0], dy = p[1] - to[j][1], dz = p[2] - to[j][2];
      const double d2 = dx * dx + dy * dy + dz * dz;
      if (d2 < best2) {
        best2 = d2;
        best = {j, 0.0};
      }
    }
    best.dist = std::sqrt(best2);
    out.push_back(best);
  }
  return out;
}

std::vector<std::vector<GridCoord>> face_sets(const QuantizedMesh& q) {
  std::vector<std::vector<GridCoord>> out;
  for (const Face& f : q.faces) {
    std::vector<GridCoord> c;
    for (Index k : f) c.push_back(q.vertex_keys[k]);
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

const char* kCubeCorners =
    "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\n"
    "v 0 0 1\nv 1 0 1\nv 1 1 1\nv 0 1 1\n";

const std::array<std::array<int, 4>, 6> kCubeFaces = {{
    {1, 4, 3, 2}, {5, 6, 7, 8}, {1, 2, 6, 5},
    {4, 8, 7, 3}, {1, 5, 8, 4}, {2, 3, 7, 6},
}};

}  // namespace

std::string cube_six_charts_obj() {
  std::string s = kCubeCorners;
  for (int f = 0; f < 6; ++f)
    s += "vt 0 0\nvt 1 0\nvt 1 1\nvt 0 1\n";
  for (int f = 0; f < 6; ++f) {
    s += "f";
    for (int c = 0; c < 4; ++c)
      s += " " + std::to_string(kCubeFaces[f][c]) + "/" + std::to_string(4 * f + c + 1);
    s += "\n";
  }
  return s;
}

std::string cube_one_chart_obj() {
  std::string s = kCubeCorners;
  for (int v = 0; v < 8; ++v) s += "vt " + std::to_string(v) + " 0\n";
  for (const auto& face : kCubeFaces) {
    s += "f";
    for (int c : face) s += " " + std::to_string(c) + "/" + std::to_string(c);
    s += "\n";
  }
  return s;
}

std::string nonmanifold_fin_obj() {
  return "v 0 0 0\nv 0 1 0\nv 1 0.5 0\nv -1 0.5 0\nv 0 0.5 1\n"
         "v 3 0 0\nv 4 0 0\nv 3 1 0\n"
         "f 1 3 2\nf 2 4 1\nf 1 5 2\nf 6 7 8\n";
}

}  // namespace oracle
