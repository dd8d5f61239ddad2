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
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace stripmesh {

using Index = std::uint32_t;
using Vec3 = std::array<double, 3>;
using Vec2 = std::array<double, 2>;

/// A polygon of degree 3 or 4 referencing a vertex table.
struct Face {
  std::array<Index, 4> idx{};
  std::uint8_t degree = 0;

  Face() = default;
  Face(std::initializer_list<Index> v);

  std::span<const Index> view() const { return {idx.data(), degree}; }
  std::span<Index> view() { return {idx.data(), degree}; }
  Index operator[](std::size_t i) const { return idx[i]; }
  Index& operator[](std::size_t i) { return idx[i]; }
  std::size_t size() const { return degree; }
  const Index* begin() const { return idx.data(); }
  const Index* end() const { return idx.data() + degree; }

  friend bool operator==(const Face& a, const Face& b) {
    if (a.degree != b.degree) return false;
    for (std::size_t i = 0; i < a.degree; ++i)
      if (a.idx[i] != b.idx[i]) return false;
    return true;
  }
};

/// True when `a` is a cyclic rotation of `b` (same winding).
bool same_winding(const Face& a, const Face& b);

/// Vertex indices in ascending order, padded with the max index.
std::array<Index, 4> sorted_key(const Face& f);

/// Positions, faces, and optional per-face UV references. All faces share
/// one degree; `face_uvs` is either empty or aligned with `faces`.
struct Mesh {
  std::vector<Vec3> positions;
  std::vector<Face> faces;
  std::vector<Vec2> uv_coords;
  std::vector<Face> face_uvs;

  bool empty() const { return faces.empty(); }
  bool has_uvs() const { return !face_uvs.empty(); }
  /// 3 or 4; 0 for an empty mesh.
  int degree() const { return faces.empty() ? 0 : faces.front().degree; }
};

/// Dense island labels, one per face.
struct IslandPartition {
  std::vector<Index> island_of_face;
  Index island_count = 0;
};

/// All faces in island 0.
IslandPartition single_island(std::size_t face_count);

/// Relabels in order of first appearance so labels are dense from 0.
IslandPartition densify(std::span<const Index> labels);

/// Throws if indices are out of range or degrees are invalid. Mixed degrees
/// are rejected unless `allow_mixed` (decoded quad strips may end in a
/// triangle).
void validate(const Mesh& mesh, bool allow_mixed = false);

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator*(const Vec3& a, double s) {
  return {a[0] * s, a[1] * s, a[2] * s};
}
inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

}  // namespace stripmesh
