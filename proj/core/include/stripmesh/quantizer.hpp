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

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

#include "stripmesh/mesh.hpp"

namespace stripmesh {

inline constexpr int kGridResolution = 512;
inline constexpr int kLevel1Cells = 4;   // per axis, 128 grid units each
inline constexpr int kLevel2Cells = 8;   // per axis, 16 grid units each
inline constexpr int kLevel3Cells = 16;  // per axis, 1 grid unit each
inline constexpr int kC1Count = 64;
inline constexpr int kC2Count = 512;
inline constexpr int kC3Count = 4096;

/// Maps normalized unit-cube coordinates back to model space:
/// model = normalized * scale + center.
struct Transform {
  Vec3 center{0.0, 0.0, 0.0};
  double scale = 1.0;

  static Transform identity() { return {}; }
  Vec3 apply(const Vec3& normalized) const {
    return normalized * scale + center;
  }
  Vec3 invert(const Vec3& model) const {
    const Vec3 d = model - center;
    return {d[0] / scale, d[1] / scale, d[2] / scale};
  }

  friend bool operator==(const Transform&, const Transform&) = default;
};

struct GridCoord {
  std::uint16_t x = 0;
  std::uint16_t y = 0;
  std::uint16_t z = 0;

  std::uint16_t operator[](int axis) const {
    return axis == 0 ? x : (axis == 1 ? y : z);
  }
  friend auto operator<=>(const GridCoord&, const GridCoord&) = default;
};

struct GridCoordHash {
  std::size_t operator()(const GridCoord& g) const noexcept {
    return (std::size_t{g.x} << 18) | (std::size_t{g.y} << 9) | g.z;
  }
};

/// Three-level code of a grid coordinate: c1 in [0,64), c2 in [0,512),
/// c3 in [0,4096).
struct HierCode {
  std::uint16_t c1 = 0;
  std::uint16_t c2 = 0;
  std::uint16_t c3 = 0;

  friend auto operator<=>(const HierCode&, const HierCode&) = default;
};

/// A mesh snapped to the 512^3 grid with unique keys, no degenerate faces and
/// no duplicate faces. `island_of_face` is empty for a single implicit island.
struct QuantizedMesh {
  std::vector<GridCoord> vertex_keys;
  std::vector<Face> faces;
  std::vector<Index> island_of_face;
  Transform transform;

  int degree() const { return faces.empty() ? 0 : faces.front().degree; }
  Index island(std::size_t face) const {
    return island_of_face.empty() ? 0 : island_of_face[face];
  }
  Index island_count() const;
};

/// Uniform scale into [0,1]^3 anchored at the bounding-box minimum.
std::pair<Mesh, Transform> normalize(const Mesh& mesh);
Transform fit_transform(const Mesh& mesh);

/// floor(p * 512) clamped to 511; inputs outside [-1e-9, 1 + 1e-9] throw.
GridCoord to_grid(const Vec3& normalized);

HierCode encode_hier(GridCoord g);
GridCoord decode_hier(HierCode h);

/// Cell center of `g` mapped through `t`.
Vec3 dequantize(GridCoord g, const Transform& t);

/// normalize + to_grid + key dedup, dropping collapsed and duplicate faces.
QuantizedMesh quantize_mesh(const Mesh& mesh,
                            const IslandPartition* partition = nullptr);

/// Same as quantize_mesh but with a caller-supplied normalization.
QuantizedMesh quantize_with(const Mesh& mesh, const Transform& transform,
                            const IslandPartition* partition = nullptr);

/// Dequantized mesh at cell centers. With `split_islands`, vertices shared
/// by several islands are duplicated so each island is a separate component.
Mesh to_mesh(const QuantizedMesh& q, bool split_islands = false);

/// Throws unless keys are unique, faces reference valid keys, faces have no
/// repeated key and no two faces share the same key set.
void check_invariants(const QuantizedMesh& q);

}  // namespace stripmesh
