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

#include "stripmesh/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "stripmesh/error.hpp"

namespace stripmesh {
namespace {

constexpr double kRangeEps = 1e-9;

struct FaceKeyHash {
  std::size_t operator()(const std::array<Index, 4>& k) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (Index v : k) h = (h ^ v) * 0x100000001b3ull;
    return h;
  }
};

}  // namespace

Index QuantizedMesh::island_count() const {
  if (faces.empty()) return 0;
  if (island_of_face.empty()) return 1;
  return *std::max_element(island_of_face.begin(), island_of_face.end()) + 1;
}

Transform fit_transform(const Mesh& mesh) {
  if (mesh.positions.empty())
    throw Error(ErrorCode::kEmptyMesh, "empty mesh");
  Vec3 lo = mesh.positions.front();
  Vec3 hi = lo;
  // Only referenced vertices define the extent when faces exist.
  auto grow = [&](const Vec3& p) {
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  };
  if (mesh.faces.empty()) {
    for (const Vec3& p : mesh.positions) grow(p);
  } else {
    lo = hi = mesh.positions[mesh.faces.front()[0]];
    for (const Face& f : mesh.faces)
      for (Index v : f) grow(mesh.positions[v]);
  }
  const double extent =
      std::max({hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]});
  if (!(extent > 0.0) || !std::isfinite(extent))
    throw Error(ErrorCode::kDegenerateExtent, "degenerate extent");
  return Transform{lo, extent};
}

std::pair<Mesh, Transform> normalize(const Mesh& mesh) {
  const Transform t = fit_transform(mesh);
  Mesh out = mesh;
  for (Vec3& p : out.positions) {
    p = t.invert(p);
    // Clamp rounding noise at the upper face of the cube.
    for (double& c : p) c = std::clamp(c, 0.0, 1.0);
  }
  return {std::move(out), t};
}

GridCoord to_grid(const Vec3& p) {
  std::array<std::uint16_t, 3> g{};
  for (int a = 0; a < 3; ++a) {
    const double c = p[a];
    if (!(c >= -kRangeEps && c <= 1.0 + kRangeEps))
      throw Error(ErrorCode::kOutOfRange,
                  "normalized coordinate " + std::to_string(c) +
                      " outside the unit cube");
    const double cell = std::floor(std::max(c, 0.0) * kGridResolution);
    g[a] = static_cast<std::uint16_t>(
        std::min(cell, static_cast<double>(kGridResolution - 1)));
  }
  return {g[0], g[1], g[2]};
}

HierCode encode_hier(GridCoord g) {
  HierCode h;
  std::array<int, 3> a1{}, a2{}, a3{};
  for (int axis = 0; axis < 3; ++axis) {
    const int v = g[axis];
    a1[axis] = v / 128;
    a2[axis] = (v % 128) / 16;
    a3[axis] = v % 16;
  }
  h.c1 = static_cast<std::uint16_t>(a1[0] * 16 + a1[1] * 4 + a1[2]);
  h.c2 = static_cast<std::uint16_t>(a2[0] * 64 + a2[1] * 8 + a2[2]);
  h.c3 = static_cast<std::uint16_t>(a3[0] * 256 + a3[1] * 16 + a3[2]);
  return h;
}

GridCoord decode_hier(HierCode h) {
  auto axis = [&](int shift1, int shift2, int shift3) {
    const int a1 = (h.c1 / shift1) % kLevel1Cells;
    const int a2 = (h.c2 / shift2) % kLevel2Cells;
    const int a3 = (h.c3 / shift3) % kLevel3Cells;
    return static_cast<std::uint16_t>(a1 * 128 + a2 * 16 + a3);
  };
  return {axis(16, 64, 256), axis(4, 8, 16), axis(1, 1, 1)};
}

Vec3 dequantize(GridCoord g, const Transform& t) {
  const Vec3 n{(g.x + 0.5) / kGridResolution, (g.y + 0.5) / kGridResolution,
               (g.z + 0.5) / kGridResolution};
  return t.apply(n);
}

QuantizedMesh quantize_mesh(const Mesh& mesh, const IslandPartition* partition) {
  if (mesh.faces.empty()) throw Error(ErrorCode::kEmptyMesh, "empty mesh");
  return quantize_with(mesh, fit_transform(mesh), partition);
}

QuantizedMesh quantize_with(const Mesh& mesh, const Transform& transform,
                            const IslandPartition* partition) {
  if (mesh.faces.empty()) throw Error(ErrorCode::kEmptyMesh, "empty mesh");
  validate(mesh);
  if (!(transform.scale > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "transform scale must be > 0");
  if (partition && partition->island_of_face.size() != mesh.faces.size())
    throw Error(ErrorCode::kInvalidArgument,
                "partition does not match face count");

  // Keys in first-reference order.
  std::unordered_map<GridCoord, Index, GridCoordHash> key_index;
  std::vector<GridCoord> keys;
  std::vector<Index> vertex_to_key(mesh.positions.size(),
                                   std::numeric_limits<Index>::max());
  auto key_of = [&](Index v) {
    if (vertex_to_key[v] == std::numeric_limits<Index>::max()) {
      Vec3 n = transform.invert(mesh.positions[v]);
      for (double& c : n)
        if (c > 1.0 && c <= 1.0 + kRangeEps) c = 1.0;
      const GridCoord g = to_grid(n);
      auto [it, inserted] =
          key_index.try_emplace(g, static_cast<Index>(keys.size()));
      if (inserted) keys.push_back(g);
      vertex_to_key[v] = it->second;
    }
    return vertex_to_key[v];
  };

  QuantizedMesh q;
  q.transform = transform;
  std::vector<Index> labels;
  std::unordered_set<std::array<Index, 4>, FaceKeyHash> seen;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    Face out = mesh.faces[f];
    for (Index& v : out.view()) v = key_of(v);
    const auto sk = sorted_key(out);
    bool collapsed = false;
    for (std::size_t i = 1; i < out.degree; ++i)
      collapsed |= sk[i] == sk[i - 1];
    if (collapsed) continue;
    if (!seen.insert(sk).second) continue;
    q.faces.push_back(out);
    if (partition) labels.push_back(partition->island_of_face[f]);
  }
  if (q.faces.empty())
    throw Error(ErrorCode::kAllFacesDegenerate,
                "every face collapsed under quantization");

  // Compact to keys referenced by surviving faces, preserving order.
  std::vector<Index> used(keys.size(), std::numeric_limits<Index>::max());
  for (const Face& f : q.faces)
    for (Index k : f) used[k] = 0;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (used[k] == 0) {
      used[k] = static_cast<Index>(q.vertex_keys.size());
      q.vertex_keys.push_back(keys[k]);
    }
  }
  for (Face& f : q.faces)
    for (Index& k : f.view()) k = used[k];

  if (partition) {
    // Re-densify keeping the relative order of surviving labels.
    std::map<Index, Index> remap;
    for (Index l : labels) remap.emplace(l, 0);
    Index next = 0;
    for (auto& [from, to] : remap) to = next++;
    q.island_of_face.reserve(labels.size());
    for (Index l : labels) q.island_of_face.push_back(remap[l]);
  }
  return q;
}

Mesh to_mesh(const QuantizedMesh& q, bool split_islands) {
  Mesh m;
  if (!split_islands || q.island_of_face.empty()) {
    m.positions.reserve(q.vertex_keys.size());
    for (const GridCoord& g : q.vertex_keys)
      m.positions.push_back(dequantize(g, q.transform));
    m.faces = q.faces;
    return m;
  }
  std::map<std::pair<Index, Index>, Index> split;
  m.faces.reserve(q.faces.size());
  for (std::size_t f = 0; f < q.faces.size(); ++f) {
    Face out = q.faces[f];
    for (Index& k : out.view()) {
      auto [it, inserted] = split.try_emplace({q.island_of_face[f], k},
                                              static_cast<Index>(m.positions.size()));
      if (inserted) m.positions.push_back(dequantize(q.vertex_keys[k], q.transform));
      k = it->second;
    }
    m.faces.push_back(out);
  }
  return m;
}

void check_invariants(const QuantizedMesh& q) {
  std::unordered_set<GridCoord, GridCoordHash> keys(q.vertex_keys.begin(),
                                                    q.vertex_keys.end());
  if (keys.size() != q.vertex_keys.size())
    throw Error(ErrorCode::kInvalidArgument, "duplicate vertex keys");
  if (!q.island_of_face.empty() && q.island_of_face.size() != q.faces.size())
    throw Error(ErrorCode::kInvalidArgument, "island labels misaligned");
  std::unordered_set<std::array<Index, 4>, FaceKeyHash> seen;
  for (const Face& f : q.faces) {
    if (f.degree != 3 && f.degree != 4)
      throw Error(ErrorCode::kInvalidArgument, "bad face degree");
    for (Index k : f)
      if (k >= q.vertex_keys.size())
        throw Error(ErrorCode::kIndexOutOfRange, "face key out of range");
    const auto sk = sorted_key(f);
    for (std::size_t i = 1; i < f.degree; ++i)
      if (sk[i] == sk[i - 1])
        throw Error(ErrorCode::kInvalidArgument, "face repeats a key");
    if (!seen.insert(sk).second)
      throw Error(ErrorCode::kInvalidArgument, "duplicate face");
  }
  if (!q.island_of_face.empty()) {
    const Index n = q.island_count();
    std::vector<bool> present(n, false);
    for (Index l : q.island_of_face) present[l] = true;
    if (std::find(present.begin(), present.end(), false) != present.end())
      throw Error(ErrorCode::kInvalidArgument, "island labels not dense");
  }
}

}  // namespace stripmesh
