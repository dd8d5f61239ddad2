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

#include <string>
#include <vector>

#include "stripmesh/detokenizer.hpp"
#include "stripmesh/mesh.hpp"
#include "stripmesh/quantizer.hpp"
#include "stripmesh/stripper.hpp"
#include "stripmesh/tokenizer.hpp"

namespace stripmesh {

struct EncodeOptions {
  int stride = 1;
  bool uv_mode = false;
  VertexKeyOrder order{};
};

struct Encoded {
  QuantizedMesh quantized;
  StripSet strips;
  TokenSequence tokens;
  std::vector<std::string> warnings;
};

/// quantize -> extract_strips -> serialize. In uv mode a mesh without uv
/// indices falls back to a single island and records a warning.
Encoded encode_mesh(const Mesh& mesh, const EncodeOptions& options);

/// True when every edge shared by two faces is traversed in opposite
/// directions by them.
bool consistently_oriented(const QuantizedMesh& q);

struct RoundTrip {
  bool passed = false;
  /// Empty on success, otherwise the first failed comparison.
  std::string first_divergence;
  bool source_oriented = false;
  std::size_t winding_mismatches = 0;
  DecodeReport report;
};

/// Decodes `encoded.tokens` with `stride` and compares against the quantized
/// source: face multiset, welded vertex set per island, island partition
/// (uv mode) and, for consistently oriented sources, face winding.
RoundTrip verify_round_trip(const Encoded& encoded, int stride);

}  // namespace stripmesh
