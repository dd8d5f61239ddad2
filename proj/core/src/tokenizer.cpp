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

#include "stripmesh/tokenizer.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>

#include "stripmesh/error.hpp"

namespace stripmesh {
namespace {

constexpr std::array<char, 4> kMagic{'S', 'A', 'T', 'O'};
constexpr std::uint8_t kVersion = 1;
constexpr std::uint8_t kFlagUv = 0x1;
constexpr std::uint8_t kFlagQuad = 0x2;
constexpr std::size_t kHeaderBytes = 4 + 1 + 1 + 4 + 4 * 8 + 4;

// Emits one vertex against the current sharing context.
class Emitter {
 public:
  explicit Emitter(std::vector<Token>& out) : out_(out) {}

  void head(const HierCode& h, Token marker_base) {
    out_.push_back(static_cast<Token>(marker_base + h.c1));
    out_.push_back(static_cast<Token>(VocabLayout::kC2 + h.c2));
    out_.push_back(static_cast<Token>(VocabLayout::kC3 + h.c3));
    prev_ = h;
  }

  void vertex(const HierCode& h) {
    if (!prev_ || prev_->c1 != h.c1) {
      out_.push_back(static_cast<Token>(VocabLayout::kC1Geo + h.c1));
      out_.push_back(static_cast<Token>(VocabLayout::kC2 + h.c2));
    } else if (prev_->c2 != h.c2) {
      out_.push_back(static_cast<Token>(VocabLayout::kC2 + h.c2));
    }
    out_.push_back(static_cast<Token>(VocabLayout::kC3 + h.c3));
    prev_ = h;
  }

 private:
  std::vector<Token>& out_;
  std::optional<HierCode> prev_;
};

void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_f64(std::vector<std::uint8_t>& b, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
std::uint64_t get_le(const std::uint8_t* p, int n) {
  std::uint64_t v = 0;
  for (int i = 0; i < n; ++i) v |= std::uint64_t{p[i]} << (8 * i);
  return v;
}

}  // namespace

TokenClass classify(Token t) {
  if (t < VocabLayout::kC1Strip) return TokenClass::kC1Geo;
  if (t < VocabLayout::kC1Island) return TokenClass::kC1Strip;
  if (t < VocabLayout::kC2) return TokenClass::kC1Island;
  if (t < VocabLayout::kC3) return TokenClass::kC2;
  if (t < VocabLayout::kSize) return TokenClass::kC3;
  throw Error(ErrorCode::kTokenRange,
              "token id " + std::to_string(t) + " outside vocabulary");
}

std::uint16_t token_value(Token t) {
  switch (classify(t)) {
    case TokenClass::kC1Geo: return t;
    case TokenClass::kC1Strip: return t - VocabLayout::kC1Strip;
    case TokenClass::kC1Island: return t - VocabLayout::kC1Island;
    case TokenClass::kC2: return t - VocabLayout::kC2;
    case TokenClass::kC3: return t - VocabLayout::kC3;
  }
  return 0;
}

TokenSequence serialize(const StripSet& strips, bool uv_mode) {
  if (strips.strips.empty())
    throw Error(ErrorCode::kEmptyMesh, "empty strip set");
  TokenSequence seq;
  seq.header.uv_mode = uv_mode;
  seq.header.source_stride = strips.stride;
  seq.header.transform = strips.transform;
  seq.header.face_count = static_cast<std::uint32_t>(strips.face_count);

  std::vector<HierCode> codes;
  codes.reserve(strips.vertex_keys.size());
  for (const GridCoord& g : strips.vertex_keys) codes.push_back(encode_hier(g));

  seq.tokens.reserve(strips.vertex_count() * 2);
  Emitter emit(seq.tokens);
  std::optional<Index> island;
  for (const Strip& s : strips.strips) {
    const bool new_island = !island || *island != s.island;
    island = s.island;
    const Token marker = uv_mode && new_island ? VocabLayout::kC1Island
                                               : VocabLayout::kC1Strip;
    emit.head(codes[s.keys.front()], marker);
    for (std::size_t i = 1; i < s.keys.size(); ++i) emit.vertex(codes[s.keys[i]]);
  }
  return seq;
}

TokenSequence baseline_serialize(const QuantizedMesh& q, VertexKeyOrder order) {
  if (q.faces.empty()) throw Error(ErrorCode::kEmptyMesh, "empty mesh");
  if (q.degree() != 3)
    throw Error(ErrorCode::kDegreeMismatch,
                "baseline tokenizer expects triangle faces");
  QuantizedMesh flat = q;
  flat.island_of_face.clear();
  TokenSequence seq;
  seq.header.source_stride = 1;
  seq.header.transform = q.transform;
  seq.header.face_count = static_cast<std::uint32_t>(q.faces.size());
  seq.tokens.reserve(q.faces.size() * 9);
  for (Index f : seed_order(flat, 0, order)) {
    for (Index k : q.faces[f]) {
      const HierCode h = encode_hier(q.vertex_keys[k]);
      seq.tokens.push_back(static_cast<Token>(VocabLayout::kC1Geo + h.c1));
      seq.tokens.push_back(static_cast<Token>(VocabLayout::kC2 + h.c2));
      seq.tokens.push_back(static_cast<Token>(VocabLayout::kC3 + h.c3));
    }
  }
  return seq;
}

bool check_grammar(const std::vector<Token>& tokens, bool leading_marker) {
  if (tokens.empty()) return false;
  // Expected next class: 0 = any vertex start or c3 continuation, 1 = C2,
  // 2 = C3.
  int expect = 0;
  bool have_context = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] >= VocabLayout::kSize) return false;
    const TokenClass c = classify(tokens[i]);
    if (i == 0 && leading_marker && c != TokenClass::kC1Strip &&
        c != TokenClass::kC1Island)
      return false;
    switch (expect) {
      case 1:
        if (c != TokenClass::kC2) return false;
        expect = 2;
        break;
      case 2:
        if (c != TokenClass::kC3) return false;
        expect = 0;
        have_context = true;
        break;
      default:
        if (is_c1(c)) expect = 1;
        else if (c == TokenClass::kC2 && have_context) expect = 2;
        else if (c == TokenClass::kC3 && have_context) expect = 0;
        else return false;
    }
  }
  return expect == 0;
}

CompressionStats compression_stats(const TokenSequence& t) {
  if (t.header.face_count == 0)
    throw Error(ErrorCode::kZeroFaces, "sequence header reports zero faces");
  CompressionStats s;
  s.token_length = t.tokens.size();
  std::array<std::size_t, 3> level{};
  for (Token tok : t.tokens) {
    const TokenClass c = classify(tok);
    if (c == TokenClass::kC1Strip || c == TokenClass::kC1Island) ++s.transitions;
    if (is_c1(c)) ++level[0];
    else if (c == TokenClass::kC2) ++level[1];
    else ++level[2];
  }
  const double faces = t.header.face_count;
  s.comp_rate = static_cast<double>(s.token_length) / (9.0 * faces);
  const double per_face = t.header.source_stride == 2 ? 12.0 : 9.0;
  s.comp_rate_per_corner = static_cast<double>(s.token_length) / (per_face * faces);
  if (s.token_length > 0)
    for (int i = 0; i < 3; ++i)
      s.level_shares[i] =
          static_cast<double>(level[i]) / static_cast<double>(s.token_length);
  return s;
}

std::vector<std::uint8_t> encode_token_file(const TokenSequence& t) {
  std::vector<std::uint8_t> b;
  b.reserve(kHeaderBytes + t.tokens.size() * 2);
  b.insert(b.end(), kMagic.begin(), kMagic.end());
  b.push_back(kVersion);
  std::uint8_t flags = 0;
  if (t.header.uv_mode) flags |= kFlagUv;
  if (t.header.source_stride == 2) flags |= kFlagQuad;
  b.push_back(flags);
  put_u32(b, t.header.face_count);
  put_f64(b, t.header.transform.center[0]);
  put_f64(b, t.header.transform.center[1]);
  put_f64(b, t.header.transform.center[2]);
  put_f64(b, t.header.transform.scale);
  put_u32(b, static_cast<std::uint32_t>(t.tokens.size()));
  for (Token tok : t.tokens) {
    if (tok >= VocabLayout::kSize)
      throw Error(ErrorCode::kTokenRange,
                  "token id " + std::to_string(tok) + " outside vocabulary");
    b.push_back(static_cast<std::uint8_t>(tok & 0xff));
    b.push_back(static_cast<std::uint8_t>(tok >> 8));
  }
  return b;
}

TokenSequence decode_token_file(const std::vector<std::uint8_t>& b) {
  if (b.size() < 4 || !std::equal(kMagic.begin(), kMagic.end(), b.begin()))
    throw Error(ErrorCode::kBadMagic, "not a token file (bad magic)");
  if (b.size() < kHeaderBytes)
    throw Error(ErrorCode::kTruncated, "token file header truncated");
  if (b[4] != kVersion)
    throw Error(ErrorCode::kUnsupportedVersion,
                "unsupported token file version " + std::to_string(b[4]));
  const std::uint8_t flags = b[5];
  if (flags & ~(kFlagUv | kFlagQuad))
    throw Error(ErrorCode::kUnsupportedVersion, "unknown token file flags");
  TokenSequence t;
  t.header.uv_mode = flags & kFlagUv;
  t.header.source_stride = (flags & kFlagQuad) ? 2 : 1;
  const std::uint8_t* p = b.data() + 6;
  t.header.face_count = static_cast<std::uint32_t>(get_le(p, 4));
  p += 4;
  for (int i = 0; i < 3; ++i, p += 8)
    t.header.transform.center[i] = std::bit_cast<double>(get_le(p, 8));
  t.header.transform.scale = std::bit_cast<double>(get_le(p, 8));
  p += 8;
  const std::uint64_t count = get_le(p, 4);
  p += 4;
  const std::size_t payload = b.size() - kHeaderBytes;
  if (payload < count * 2)
    throw Error(ErrorCode::kTruncated, "token payload truncated");
  if (payload > count * 2)
    throw Error(ErrorCode::kTruncated, "trailing bytes after token payload");
  t.tokens.resize(count);
  for (std::size_t i = 0; i < count; ++i, p += 2) {
    const auto tok = static_cast<Token>(get_le(p, 2));
    if (tok >= VocabLayout::kSize)
      throw Error(ErrorCode::kTokenRange, "token id " + std::to_string(tok) +
                                              " at position " +
                                              std::to_string(i) +
                                              " outside vocabulary");
    t.tokens[i] = tok;
  }
  return t;
}

void write_tokens(const TokenSequence& t, const std::filesystem::path& path) {
  const auto bytes = encode_token_file(t);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

TokenSequence read_tokens(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_token_file(bytes);
}

}  // namespace stripmesh
