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

#include "stripmesh/detokenizer.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "stripmesh/error.hpp"
#include "stripmesh/stripper.hpp"

namespace stripmesh {
namespace {

// A vertex whose tokens have started but not yet reached its c3.
struct Partial {
  EventKind kind = EventKind::kVertex;
  std::uint16_t c1 = 0;
  std::uint16_t c2 = 0;
  bool has_c2 = false;
  std::uint8_t tokens = 0;
};

EventKind event_kind(TokenClass c) {
  switch (c) {
    case TokenClass::kC1Strip: return EventKind::kStartStrip;
    case TokenClass::kC1Island: return EventKind::kStartIsland;
    default: return EventKind::kVertex;
  }
}

struct RawStrip {
  Index island = 0;
  std::vector<GridCoord> coords;
  std::size_t tokens = 0;
};

std::vector<RawStrip> segment(const VertexStream& stream) {
  std::vector<RawStrip> strips;
  Index island = 0;
  for (const VertexEvent& e : stream.events) {
    const bool starts = e.kind != EventKind::kVertex;
    if (strips.empty() || starts) {
      if (!strips.empty() && e.kind == EventKind::kStartIsland) ++island;
      strips.push_back({island, {}, 0});
    }
    strips.back().coords.push_back(decode_hier(e.code));
    strips.back().tokens += e.token_count;
  }
  return strips;
}

struct FaceSetHash {
  std::size_t operator()(const std::array<Index, 4>& k) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (Index v : k) h = (h ^ v) * 0x100000001b3ull;
    return h;
  }
};

}  // namespace

VertexStream parse_tokens(const std::vector<Token>& tokens) {
  VertexStream out;
  out.events.reserve(tokens.size() / 2 + 1);
  std::optional<Partial> partial;
  std::optional<std::pair<std::uint16_t, std::uint16_t>> cache;

  auto drop_partial = [&] {
    if (partial) out.discarded += partial->tokens;
    partial.reset();
  };
  auto emit = [&](EventKind kind, std::uint16_t c1, std::uint16_t c2,
                  std::uint16_t c3, std::uint8_t count) {
    out.events.push_back({kind, HierCode{c1, c2, c3}, count});
    cache = std::pair{c1, c2};
  };

  for (Token tok : tokens) {
    if (tok >= VocabLayout::kSize) {
      // Foreign ids are treated like any other malformed token.
      drop_partial();
      ++out.discarded;
      continue;
    }
    const TokenClass cls = classify(tok);
    const std::uint16_t value = token_value(tok);
    if (is_c1(cls)) {
      drop_partial();
      cache.reset();
      partial = Partial{event_kind(cls), value, 0, false, 1};
    } else if (cls == TokenClass::kC2) {
      if (partial && !partial->has_c2) {
        partial->c2 = value;
        partial->has_c2 = true;
        ++partial->tokens;
        continue;
      }
      drop_partial();
      if (cache) partial = Partial{EventKind::kVertex, cache->first, value, true, 1};
      else ++out.discarded;
    } else {
      if (partial && partial->has_c2) {
        emit(partial->kind, partial->c1, partial->c2, value,
             static_cast<std::uint8_t>(partial->tokens + 1));
        partial.reset();
        continue;
      }
      drop_partial();
      if (cache) emit(EventKind::kVertex, cache->first, cache->second, value, 1);
      else ++out.discarded;
    }
  }
  drop_partial();
  return out;
}

DecodedMesh decode(const VertexStream& stream, int stride,
                   const Transform& transform) {
  if (stride != 1 && stride != 2)
    throw Error(ErrorCode::kInvalidArgument, "stride must be 1 or 2");
  DecodedMesh out;
  DecodeReport& rep = out.report;
  rep.discarded_tokens = stream.discarded;
  rep.total_tokens = stream.discarded;
  for (const VertexEvent& e : stream.events) rep.total_tokens += e.token_count;

  std::unordered_map<GridCoord, Index, GridCoordHash> key_index;
  std::vector<GridCoord> keys;
  std::set<std::pair<Index, Index>> island_vertices;
  std::unordered_set<std::array<Index, 4>, FaceSetHash> seen_faces;
  std::vector<Face> faces;
  std::vector<Index> labels;

  const auto strips = segment(stream);
  Index island_total = strips.empty() ? 0 : strips.back().island + 1;
  for (const RawStrip& s : strips) {
    if (s.coords.size() < 3) {
      ++rep.dropped_strips;
      rep.dropped_strip_tokens += s.tokens;
      continue;
    }
    rep.consumed_tokens += s.tokens;
    std::vector<Index> idx;
    idx.reserve(s.coords.size());
    for (const GridCoord& g : s.coords) {
      auto [it, inserted] =
          key_index.try_emplace(g, static_cast<Index>(keys.size()));
      if (inserted) keys.push_back(g);
      if (!island_vertices.insert({s.island, it->second}).second)
        ++rep.welded_vertices;
      idx.push_back(it->second);
    }
    for (const Face& f : strip_faces(idx, stride)) {
      const auto sk = sorted_key(f);
      bool degenerate = false;
      for (std::size_t i = 1; i < f.degree; ++i) degenerate |= sk[i] == sk[i - 1];
      if (degenerate) {
        ++rep.degenerate_faces;
        continue;
      }
      if (!seen_faces.insert(sk).second) {
        ++rep.duplicate_faces;
        continue;
      }
      faces.push_back(f);
      labels.push_back(s.island);
    }
  }

  // Keep only keys that ended up in a face.
  constexpr Index kUnused = std::numeric_limits<Index>::max();
  std::vector<Index> remap(keys.size(), kUnused);
  QuantizedMesh& q = out.mesh;
  q.transform = transform;
  for (Face& f : faces)
    for (Index& k : f.view()) {
      if (remap[k] == kUnused) {
        remap[k] = static_cast<Index>(q.vertex_keys.size());
        q.vertex_keys.push_back(keys[k]);
      }
      k = remap[k];
    }
  q.faces = std::move(faces);

  // Islands left without faces disappear; labels stay in stream order.
  std::map<Index, Index> dense;
  for (Index l : labels) dense.emplace(l, 0);
  Index next = 0;
  for (auto& [from, to] : dense) to = next++;
  rep.emptied_islands = island_total - dense.size();
  out.partition.island_count = next;
  out.partition.island_of_face.reserve(labels.size());
  for (Index l : labels) out.partition.island_of_face.push_back(dense[l]);
  q.island_of_face = out.partition.island_of_face;
  return out;
}

DecodedMesh decode(const TokenSequence& seq, int stride) {
  return decode(parse_tokens(seq.tokens), stride, seq.header.transform);
}

bool dual_decode_check(const TokenSequence& seq) {
  using CoordFace = std::vector<GridCoord>;
  auto coords = [](const QuantizedMesh& q, std::span<const Index> f) {
    CoordFace out;
    for (Index k : f) out.push_back(q.vertex_keys[k]);
    return out;
  };
  // Quads are stored as (v0, v1, v3, v2).
  auto split = [](const Face& f, std::vector<std::array<Index, 3>>& out) {
    if (f.degree == 4) {
      out.push_back({f[0], f[1], f[3]});
      out.push_back({f[1], f[2], f[3]});
    } else {
      out.push_back({f[0], f[1], f[2]});
    }
  };

  const VertexStream stream = parse_tokens(seq.tokens);

  // Strip level: the two face rules over the same vertex runs.
  for (const RawStrip& s : segment(stream)) {
    std::vector<Index> idx(s.coords.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<Index>(i);
    std::vector<std::array<Index, 3>> expected;
    for (const Face& f : strip_faces(idx, 2)) split(f, expected);
    const auto tris = strip_faces(idx, 1);
    if (tris.size() != expected.size()) return false;
    for (std::size_t i = 0; i < tris.size(); ++i)
      if (tris[i][0] != expected[i][0] || tris[i][1] != expected[i][1] ||
          tris[i][2] != expected[i][2])
        return false;
  }

  // Mesh level: the decoded triangle mesh is the split quad mesh.
  const DecodedMesh tri = decode(stream, 1, seq.header.transform);
  const DecodedMesh quad = decode(stream, 2, seq.header.transform);
  std::vector<CoordFace> want;
  for (const Face& f : quad.mesh.faces) {
    std::vector<std::array<Index, 3>> parts;
    split(f, parts);
    for (const auto& t : parts) want.push_back(coords(quad.mesh, t));
  }
  if (want.size() != tri.mesh.faces.size()) return false;
  for (std::size_t i = 0; i < want.size(); ++i)
    if (coords(tri.mesh, tri.mesh.faces[i].view()) != want[i]) return false;
  return tri.partition.island_of_face.size() == want.size();
}

}  // namespace stripmesh
