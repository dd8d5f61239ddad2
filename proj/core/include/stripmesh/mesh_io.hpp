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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "stripmesh/mesh.hpp"

namespace stripmesh {

/// Reads Wavefront OBJ text. Only `v`, `vt` and `f` records are interpreted;
/// face corners may be `v`, `v/vt`, `v//vn` or `v/vt/vn`. Negative (relative)
/// indices are accepted. Errors name the offending line.
Mesh parse_obj(std::string_view text);
Mesh load_obj(const std::filesystem::path& path);

/// Writes OBJ with shortest round-trip decimal coordinates. When a partition
/// is given, faces are emitted island by island under `g island_<id>`.
void write_obj(std::ostream& out, const Mesh& mesh,
               const IslandPartition* partition = nullptr);
void write_obj(const Mesh& mesh, const IslandPartition* partition,
               const std::filesystem::path& path);
std::string to_obj_string(const Mesh& mesh,
                          const IslandPartition* partition = nullptr);

/// Connected components of faces linked across edges that are shared in 3D
/// and carry identical uv indices at both endpoints on both sides.
IslandPartition uv_islands(const Mesh& mesh);

struct FilterLimits {
  std::size_t min_faces = 500;
  std::size_t max_faces = 16000;
  double max_vertex_face_ratio = 1.0;
  Index min_islands = 10;
  Index max_islands = 300;
};

struct FilterVerdict {
  bool accepted = false;
  /// One of "manifold", "face_count", "vertex_face_ratio", "island_count";
  /// empty when accepted.
  std::string reason;
  /// Vertex count after the exact duplicate merge.
  std::size_t merged_vertices = 0;
};

/// Corpus rules, checked in order: edge-manifold after exact duplicate
/// merge, face count, merged vertex/face ratio, island count.
FilterVerdict corpus_filter(const Mesh& mesh,
                            const IslandPartition* partition = nullptr,
                            const FilterLimits& limits = {});

/// Exact (bitwise) duplicate-position merge. Returns the remap table and
/// the number of distinct positions.
std::vector<Index> merge_duplicate_positions(const Mesh& mesh,
                                             std::size_t* distinct = nullptr);

}  // namespace stripmesh
