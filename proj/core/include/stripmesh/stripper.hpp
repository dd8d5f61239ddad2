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

#include <cstdint>
#include <vector>

#include "stripmesh/mesh.hpp"
#include "stripmesh/quantizer.hpp"

namespace stripmesh {

enum class UpAxis : std::uint8_t { kX = 0, kY = 1, kZ = 2 };

/// Total order on grid coordinates: the up axis is most significant, then the
/// two remaining axes in cyclic order. For the default +y this is (y, z, x).
struct VertexKeyOrder {
  UpAxis up = UpAxis::kY;

  std::array<std::uint16_t, 3> sort_tuple(GridCoord g) const;
  bool operator()(GridCoord a, GridCoord b) const {
    return sort_tuple(a) < sort_tuple(b);
  }
};

/// rank[k] is the position of vertex key k in ascending VertexKeyOrder.
std::vector<Index> vertex_key_ranks(const QuantizedMesh& q,
                                    VertexKeyOrder order = {});

/// Faces of one island ordered by their rank-sorted vertex tuples.
std::vector<Index> seed_order(const QuantizedMesh& q, Index island,
                              VertexKeyOrder order = {});

struct Strip {
  std::vector<Index> keys;
  Index island = 0;
  int stride = 1;
};

struct StripSet {
  std::vector<Strip> strips;
  std::vector<GridCoord> vertex_keys;
  std::vector<Index> islands_in_order;
  int stride = 1;
  std::size_t face_count = 0;
  Transform transform;

  std::size_t vertex_count() const;
};

/// Greedy zipper growth from the lowest unvisited seed, island by island.
/// stride 1 requires triangles, stride 2 requires quads.
StripSet extract_strips(const QuantizedMesh& q, int stride,
                        VertexKeyOrder order = {});

/// Faces implied by a strip: parity-corrected triangles for stride 1; quads
/// (v2i, v2i+1, v2i+3, v2i+2) plus an optional trailing triangle for stride 2.
std::vector<Face> strip_faces(const Strip& s);
std::vector<Face> strip_faces(std::span<const Index> keys, int stride);

}  // namespace stripmesh
