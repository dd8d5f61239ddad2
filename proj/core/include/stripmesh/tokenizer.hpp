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
#include <filesystem>
#include <string>
#include <vector>

#include "stripmesh/quantizer.hpp"
#include "stripmesh/stripper.hpp"

namespace stripmesh {

using Token = std::uint16_t;

/// Vocabulary id layout. The three c1 blocks are parallel copies of the
/// coarse codebook: plain geometry, strip start, and island start.
struct VocabLayout {
  static constexpr Token kC1Geo = 0;
  static constexpr Token kC1Strip = 64;
  static constexpr Token kC1Island = 128;
  static constexpr Token kC2 = 192;
  static constexpr Token kC3 = 704;
  static constexpr Token kSize = 4800;
};

enum class TokenClass : std::uint8_t { kC1Geo, kC1Strip, kC1Island, kC2, kC3 };

/// Throws kTokenRange for ids >= 4800.
TokenClass classify(Token t);
inline bool is_c1(TokenClass c) {
  return c == TokenClass::kC1Geo || c == TokenClass::kC1Strip ||
         c == TokenClass::kC1Island;
}
/// Offset of `t` inside its class block.
std::uint16_t token_value(Token t);

struct TokenHeader {
  bool uv_mode = false;
  int source_stride = 1;
  Transform transform;
  std::uint32_t face_count = 0;

  friend bool operator==(const TokenHeader&, const TokenHeader&) = default;
};

struct TokenSequence {
  std::vector<Token> tokens;
  TokenHeader header;

  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

/// Strip serialization with prefix sharing. Strip heads carry a C1 marker
/// (island start in uv mode for the first strip of each island, strip start
/// otherwise) and always spell out the full triple.
TokenSequence serialize(const StripSet& strips, bool uv_mode);

/// Face-list reference encoding: 9 tokens per triangle in seed order.
TokenSequence baseline_serialize(const QuantizedMesh& q,
                                 VertexKeyOrder order = {});

/// Every C1 token is followed by C2 then C3; a C2 is followed by C3; the
/// sequence ends on a C3. With `leading_marker`, the first token must be a
/// strip or island marker.
bool check_grammar(const std::vector<Token>& tokens, bool leading_marker);

struct CompressionStats {
  std::size_t token_length = 0;
  std::size_t transitions = 0;
  double comp_rate = 0.0;
  /// Alternative denominator for quad meshes: 12 tokens per quad.
  double comp_rate_per_corner = 0.0;
  /// Fraction of tokens at each level (c1 blocks together, c2, c3).
  std::array<double, 3> level_shares{};
};

CompressionStats compression_stats(const TokenSequence& t);

/// Binary container: "SATO", version 1, flags, then little-endian face count
/// (u32), transform (4 x f64), token count (u32) and u16 tokens.
std::vector<std::uint8_t> encode_token_file(const TokenSequence& t);
TokenSequence decode_token_file(const std::vector<std::uint8_t>& bytes);
void write_tokens(const TokenSequence& t, const std::filesystem::path& path);
TokenSequence read_tokens(const std::filesystem::path& path);

}  // namespace stripmesh
