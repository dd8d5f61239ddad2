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

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stripmesh/detokenizer.hpp"
#include "stripmesh/mesh_io.hpp"
#include "stripmesh/shapes.hpp"
#include "test_util.hpp"

using namespace stripmesh;

namespace {

constexpr GridCoord kA{0, 0, 0}, kB{1, 0, 0}, kC{0, 1, 0}, kD{1, 1, 0}, kE{0, 2, 0};

std::vector<Token> strip(const std::vector<GridCoord>& coords, Token marker_base = 64) {
  return oracle::strip_tokens(coords, marker_base);
}

std::vector<Token> concat(std::initializer_list<std::vector<Token>> parts) {
  std::vector<Token> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<GridCoord> face_coords(const QuantizedMesh& q, const Face& f) {
  std::vector<GridCoord> out;
  for (Index k : f) out.push_back(q.vertex_keys[k]);
  return out;
}

}  // namespace

TEST(ParseTokens, InverseOfSerializeExample) {
  const std::vector<Token> t = strip({kA, kB, kC, kD});
  ASSERT_EQ(t.size(), 6u);
  const VertexStream v = parse_tokens(t);
  EXPECT_EQ(v.discarded, 0u);
  ASSERT_EQ(v.events.size(), 4u);
  EXPECT_EQ(v.events[0].kind, EventKind::kStartStrip);
  EXPECT_EQ(v.events[0].token_count, 3);
  const GridCoord want[] = {kA, kB, kC, kD};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(decode_hier(v.events[i].code), want[i]);
    if (i) {
      EXPECT_EQ(v.events[i].kind, EventKind::kVertex);
      EXPECT_EQ(v.events[i].token_count, 1);
    }
  }
}

TEST(ParseTokens, LeadingBareC3IsDiscarded) {
  const VertexStream v = parse_tokens(concat({{704 + 3}, strip({kA, kB, kC})}));
  EXPECT_EQ(v.discarded, 1u);
  EXPECT_EQ(v.events.size(), 3u);
}

TEST(ParseTokens, ConsecutiveMarkersKeepTheSecond) {
  const VertexStream v = parse_tokens(concat({{64 + 9}, strip({kA, kB, kC})}));
  EXPECT_EQ(v.discarded, 1u);
  ASSERT_EQ(v.events.size(), 3u);
  EXPECT_EQ(decode_hier(v.events[0].code), kA);
  EXPECT_EQ(v.events[0].kind, EventKind::kStartStrip);
}

TEST(ParseTokens, OtherMalformations) {
  EXPECT_EQ(parse_tokens({192}).discarded, 1u);                 // c2 without context
  EXPECT_EQ(parse_tokens(concat({strip({kA, kB, kC}), {64}})).discarded, 1u);
  EXPECT_EQ(parse_tokens(concat({strip({kA, kB, kC}), {64, 192}})).discarded, 2u);
  EXPECT_EQ(parse_tokens(concat({strip({kA, kB, kC}), {200}})).discarded, 1u);
  // A marker with no c2 loses its context; the following c3 has none either.
  EXPECT_EQ(parse_tokens({64, 704}).discarded, 2u);
  EXPECT_EQ(parse_tokens({5000, 64, 192, 704}).discarded, 1u);
  EXPECT_EQ(parse_tokens({}).discarded, 0u);
}

TEST(ParseTokens, GeoHeadIsAPlainVertex) {
  const VertexStream v = parse_tokens(concat({strip({kA, kB, kC}), {0, 192, 704}}));
  ASSERT_EQ(v.events.size(), 4u);
  EXPECT_EQ(v.events[3].kind, EventKind::kVertex);
  EXPECT_EQ(v.events[3].token_count, 3);
}

TEST(Decode, ParityWinding) {
  const DecodedMesh d = decode(parse_tokens(strip({kA, kB, kC, kD})), 1, Transform{});
  ASSERT_EQ(d.mesh.faces.size(), 2u);
  EXPECT_EQ(face_coords(d.mesh, d.mesh.faces[0]), (std::vector<GridCoord>{kA, kB, kC}));
  EXPECT_EQ(face_coords(d.mesh, d.mesh.faces[1]), (std::vector<GridCoord>{kB, kD, kC}));
  EXPECT_TRUE(d.report.clean());
  EXPECT_EQ(d.partition.island_count, 1u);
}

TEST(Decode, QuadAssembly) {
  const DecodedMesh d = decode(parse_tokens(strip({kA, kB, kC, kD})), 2, Transform{});
  ASSERT_EQ(d.mesh.faces.size(), 1u);
  EXPECT_EQ(face_coords(d.mesh, d.mesh.faces[0]), (std::vector<GridCoord>{kA, kB, kD, kC}));
}

TEST(Decode, WeldsWithinAnIsland) {
  const auto t = concat({strip({kA, kB, kC}), strip({kC, kD, kE})});
  const DecodedMesh d = decode(parse_tokens(t), 1, Transform{});
  EXPECT_EQ(d.mesh.faces.size(), 2u);
  EXPECT_EQ(d.mesh.vertex_keys.size(), 5u);
  EXPECT_EQ(d.report.welded_vertices, 1u);
  check_invariants(d.mesh);
}

TEST(Decode, IslandsStaySeparable) {
  const auto t = concat({strip({kA, kB, kC}, 128), strip({kC, kD, kE}, 128)});
  const DecodedMesh d = decode(parse_tokens(t), 1, Transform{});
  EXPECT_EQ(d.partition.island_count, 2u);
  EXPECT_EQ(d.partition.island_of_face, (std::vector<Index>{0, 1}));
  EXPECT_EQ(d.report.welded_vertices, 0u);
  // Shared coordinate is materialized once per island.
  EXPECT_EQ(to_mesh(d.mesh, true).positions.size(), 6u);
}

TEST(Decode, StreamStartOpensIslandZero) {
  const auto t = concat({strip({kA, kB, kC}, 128), strip({kB, kD, kC}, 64)});
  const DecodedMesh d = decode(parse_tokens(t), 1, Transform{});
  EXPECT_EQ(d.partition.island_of_face, (std::vector<Index>{0, 0}));
  const auto u = concat({strip({kA, kB, kC}, 64), strip({kB, kD, kC}, 128)});
  EXPECT_EQ(decode(parse_tokens(u), 1, Transform{}).partition.island_of_face,
            (std::vector<Index>{0, 1}));
}

TEST(Decode, ShortStripsAreDroppedAndCounted) {
  const auto t = concat({strip({kA, kB}, 128), strip({kA, kB, kC}, 128), strip({kD}, 64)});
  const DecodedMesh d = decode(parse_tokens(t), 1, Transform{});
  EXPECT_EQ(d.report.dropped_strips, 2u);
  EXPECT_EQ(d.report.dropped_strip_tokens, 4u + 3u);
  EXPECT_EQ(d.report.emptied_islands, 1u);
  EXPECT_EQ(d.partition.island_count, 1u);
  EXPECT_EQ(d.partition.island_of_face, std::vector<Index>{0});
  EXPECT_FALSE(d.report.clean());
  EXPECT_EQ(d.report.total_tokens, t.size());
}

TEST(Decode, DegenerateAndDuplicateFaces) {
  const auto t = concat({strip({kA, kB, kA, kC}), strip({kA, kB, kC})});
  const DecodedMesh d = decode(parse_tokens(t), 1, Transform{});
  // (a,b,a) and (b,c,a) from the first strip: one degenerate; second strip
  // repeats (a,b,c) as a key set.
  EXPECT_EQ(d.report.degenerate_faces, 1u);
  EXPECT_EQ(d.report.duplicate_faces, 1u);
  EXPECT_EQ(d.mesh.faces.size(), 1u);
  check_invariants(d.mesh);
}

TEST(Decode, InvalidStride) {
  EXPECT_ERROR_CODE(decode(VertexStream{}, 3, Transform{}), ErrorCode::kInvalidArgument);
}

TEST(Decode, EmptyStream) {
  const DecodedMesh d = decode(VertexStream{}, 1, Transform{});
  EXPECT_TRUE(d.mesh.faces.empty());
  EXPECT_EQ(d.partition.island_count, 0u);
}

TEST(Decode, CorruptedTokenIsDiscardedNotFatal) {
  const QuantizedMesh q = quantize_mesh(shapes::torus(12, 6, false));
  TokenSequence t = serialize(extract_strips(q, 1), false);
  std::size_t i = 3;
  while (classify(t.tokens[i]) != TokenClass::kC2) ++i;
  t.tokens[i] = 0;  // c2 replaced by a plain c1 id
  const DecodedMesh d = decode(t, 1);
  EXPECT_GT(d.report.discarded_tokens, 0u);
  EXPECT_GT(d.mesh.faces.size(), 0u);
  check_invariants(d.mesh);
}

TEST(DualDecode, Examples) {
  TokenSequence single;
  single.header.source_stride = 2;
  single.header.face_count = 1;
  single.tokens = strip({kA, kB, kC, kD});
  EXPECT_TRUE(dual_decode_check(single));

  TokenSequence odd = single;
  odd.tokens = strip({kA, kB, kC, kD, kE});
  EXPECT_TRUE(dual_decode_check(odd));
  const DecodedMesh quad = decode(odd, 2);
  ASSERT_EQ(quad.mesh.faces.size(), 2u);
  EXPECT_EQ(quad.mesh.faces[1].degree, 3);
  const DecodedMesh tri = decode(odd, 1);
  EXPECT_EQ(face_coords(tri.mesh, tri.mesh.faces.back()),
            face_coords(quad.mesh, quad.mesh.faces.back()));

  for (int cells : {1, 4, 9, 100}) {
    const QuantizedMesh q = quantize_mesh(shapes::ribbon(cells, true));
    EXPECT_TRUE(dual_decode_check(serialize(extract_strips(q, 2), false))) << cells;
  }
}

TEST(DualDecode, SplitRule) {
  // Stride-1 faces of a quad strip are (v0,v1,v2) and (v1,v3,v2).
  const DecodedMesh tri = decode(parse_tokens(strip({kA, kB, kC, kD})), 1, Transform{});
  ASSERT_EQ(tri.mesh.faces.size(), 2u);
  EXPECT_EQ(face_coords(tri.mesh, tri.mesh.faces[0]), (std::vector<GridCoord>{kA, kB, kC}));
  EXPECT_EQ(face_coords(tri.mesh, tri.mesh.faces[1]), (std::vector<GridCoord>{kB, kD, kC}));
}

TEST(DecodeFuzz, TotalAndAccounted) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> any(0, VocabLayout::kSize - 1);
  std::uniform_int_distribution<int> len(0, 512);
  for (int iter = 0; iter < 20000; ++iter) {
    std::vector<Token> t(static_cast<std::size_t>(len(rng)));
    for (Token& x : t) x = static_cast<Token>(any(rng));
    const VertexStream v = parse_tokens(t);
    for (int stride : {1, 2}) {
      const DecodedMesh d = decode(v, stride, Transform{});
      const DecodeReport& r = d.report;
      ASSERT_EQ(r.total_tokens, t.size());
      ASSERT_EQ(r.discarded_tokens + r.dropped_strip_tokens + r.consumed_tokens, t.size());
      ASSERT_NO_THROW(check_invariants(d.mesh));
      ASSERT_EQ(d.partition.island_of_face.size(), d.mesh.faces.size());
    }
  }
}
