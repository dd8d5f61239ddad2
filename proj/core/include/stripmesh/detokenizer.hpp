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

#include "stripmesh/quantizer.hpp"
#include "stripmesh/tokenizer.hpp"

namespace stripmesh {

enum class EventKind : std::uint8_t { kStartStrip, kStartIsland, kVertex };

struct VertexEvent {
  EventKind kind = EventKind::kVertex;
  HierCode code;
  /// Tokens spent on this vertex (1 to 3).
  std::uint8_t token_count = 0;
};

struct VertexStream {
  std::vector<VertexEvent> events;
  std::size_t discarded = 0;
};

/// Expands prefix-shared tokens into full codes. Never fails: tokens that do
/// not fit the grammar are dropped and counted in `discarded`.
VertexStream parse_tokens(const std::vector<Token>& tokens);

struct DecodeReport {
  std::size_t total_tokens = 0;
  std::size_t discarded_tokens = 0;
  /// Strips with fewer than three vertices and the tokens they consumed.
  std::size_t dropped_strips = 0;
  std::size_t dropped_strip_tokens = 0;
  /// Tokens belonging to vertices of strips that produced faces.
  std::size_t consumed_tokens = 0;
  std::size_t degenerate_faces = 0;
  std::size_t duplicate_faces = 0;
  /// Vertex occurrences merged onto an earlier vertex of the same island.
  std::size_t welded_vertices = 0;
  std::size_t emptied_islands = 0;

  bool clean() const {
    return discarded_tokens == 0 && dropped_strips == 0 &&
           degenerate_faces == 0 && duplicate_faces == 0;
  }
};

struct DecodedMesh {
  /// Keys are welded globally; island membership lives in `partition` and
  /// is materialized as separate vertices by to_mesh(..., true).
  QuantizedMesh mesh;
  IslandPartition partition;
  DecodeReport report;
};

DecodedMesh decode(const VertexStream& stream, int stride,
                   const Transform& transform);

/// parse_tokens + decode with the header transform.
DecodedMesh decode(const TokenSequence& seq, int stride);

/// Stride-1 decoding equals the stride-2 decoding with every quad
/// (v0,v1,v3,v2) split into (v0,v1,v2) and (v1,v3,v2).
bool dual_decode_check(const TokenSequence& seq);

}  // namespace stripmesh
