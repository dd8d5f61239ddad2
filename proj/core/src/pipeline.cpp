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

#include "stripmesh/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "stripmesh/error.hpp"
#include "stripmesh/mesh_io.hpp"

namespace stripmesh {
namespace {

using CoordFace = std::vector<GridCoord>;

CoordFace coord_face(const QuantizedMesh& q, const Face& f) {
  CoordFace c;
  for (Index k : f) c.push_back(q.vertex_keys[k]);
  return c;
}

CoordFace canonical(CoordFace c) {
  std::sort(c.begin(), c.end());
  return c;
}

bool same_cycle(const CoordFace& a, const CoordFace& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t s = 0; s < a.size(); ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) ok = a[i] == b[(i + s) % a.size()];
    if (ok) return true;
  }
  return false;
}

}  // namespace

Encoded encode_mesh(const Mesh& mesh, const EncodeOptions& options) {
  Encoded out;
  IslandPartition partition;
  const IslandPartition* islands = nullptr;
  if (options.uv_mode) {
    if (mesh.has_uvs()) {
      partition = uv_islands(mesh);
      islands = &partition;
    } else {
      out.warnings.push_back("no uv data; encoding as a single island");
    }
  }
  out.quantized = quantize_mesh(mesh, islands);
  out.strips = extract_strips(out.quantized, options.stride, options.order);
  out.tokens = serialize(out.strips, options.uv_mode);
  return out;
}

bool consistently_oriented(const QuantizedMesh& q) {
  std::map<std::pair<Index, Index>, int> directed;
  for (const Face& f : q.faces)
    for (std::size_t c = 0; c < f.degree; ++c)
      if (++directed[{f[c], f[(c + 1) % f.degree]}] > 1) return false;
  return true;
}

RoundTrip verify_round_trip(const Encoded& encoded, int stride) {
  RoundTrip rt;
  const QuantizedMesh& src = encoded.quantized;
  const DecodedMesh dec = decode(encoded.tokens, stride);
  rt.report = dec.report;
  rt.source_oriented = consistently_oriented(src);
  auto fail = [&](std::string why) {
    rt.passed = false;
    rt.first_divergence = std::move(why);
    return rt;
  };

  if (dec.report.discarded_tokens) return fail("discarded tokens");
  if (dec.report.dropped_strips) return fail("dropped strips");
  if (dec.report.degenerate_faces) return fail("degenerate decoded faces");
  if (dec.report.duplicate_faces) return fail("duplicate decoded faces");
  if (dec.mesh.faces.size() != src.faces.size())
    return fail("face count " + std::to_string(dec.mesh.faces.size()) +
                " != " + std::to_string(src.faces.size()));

  // Decoded island k is the k-th island in traversal order.
  const bool uv = encoded.tokens.header.uv_mode;
  auto source_island = [&](std::size_t f) -> Index {
    return uv ? src.island(f) : 0;
  };
  std::vector<Index> decoded_to_source(dec.partition.island_count, 0);
  if (uv) {
    if (dec.partition.island_count != encoded.strips.islands_in_order.size())
      return fail("island count " + std::to_string(dec.partition.island_count) +
                  " != " + std::to_string(encoded.strips.islands_in_order.size()));
    decoded_to_source = encoded.strips.islands_in_order;
  }

  std::map<std::pair<Index, CoordFace>, CoordFace> source_faces;
  for (std::size_t f = 0; f < src.faces.size(); ++f) {
    const CoordFace c = coord_face(src, src.faces[f]);
    source_faces.emplace(std::pair{source_island(f), canonical(c)}, c);
  }
  std::set<std::pair<Index, GridCoord>> source_vertices, decoded_vertices;
  for (std::size_t f = 0; f < src.faces.size(); ++f)
    for (Index k : src.faces[f])
      source_vertices.insert({source_island(f), src.vertex_keys[k]});

  for (std::size_t f = 0; f < dec.mesh.faces.size(); ++f) {
    const Index island = decoded_to_source[dec.partition.island_of_face[f]];
    const CoordFace c = coord_face(dec.mesh, dec.mesh.faces[f]);
    auto it = source_faces.find({island, canonical(c)});
    if (it == source_faces.end())
      return fail("decoded face " + std::to_string(f) +
                  " has no source counterpart in island " + std::to_string(island));
    if (!same_cycle(c, it->second)) ++rt.winding_mismatches;
    for (const GridCoord& g : c) decoded_vertices.insert({island, g});
  }
  if (source_vertices != decoded_vertices)
    return fail("welded vertex sets differ");
  if (rt.source_oriented && rt.winding_mismatches)
    return fail(std::to_string(rt.winding_mismatches) + " faces changed winding");
  rt.passed = true;
  return rt;
}

}  // namespace stripmesh
