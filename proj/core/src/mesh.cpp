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

#include "stripmesh/mesh.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>

#include "stripmesh/error.hpp"

namespace stripmesh {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kMixedDegree: return "mixed_degree";
    case ErrorCode::kIndexOutOfRange: return "index_out_of_range";
    case ErrorCode::kEmptyMesh: return "empty_mesh";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kMissingUv: return "missing_uv";
    case ErrorCode::kDegenerateExtent: return "degenerate_extent";
    case ErrorCode::kOutOfRange: return "out_of_range";
    case ErrorCode::kAllFacesDegenerate: return "all_faces_degenerate";
    case ErrorCode::kDegreeMismatch: return "degree_mismatch";
    case ErrorCode::kBadMagic: return "bad_magic";
    case ErrorCode::kUnsupportedVersion: return "unsupported_version";
    case ErrorCode::kTruncated: return "truncated";
    case ErrorCode::kTokenRange: return "token_range";
    case ErrorCode::kZeroFaces: return "zero_faces";
    case ErrorCode::kZeroArea: return "zero_area";
    case ErrorCode::kEmptySet: return "empty_set";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
  }
  return "unknown";
}

Face::Face(std::initializer_list<Index> v) {
  if (v.size() < 3 || v.size() > 4)
    throw Error(ErrorCode::kInvalidArgument, "face degree must be 3 or 4");
  std::copy(v.begin(), v.end(), idx.begin());
  degree = static_cast<std::uint8_t>(v.size());
}

bool same_winding(const Face& a, const Face& b) {
  if (a.degree != b.degree) return false;
  const std::size_t n = a.degree;
  for (std::size_t shift = 0; shift < n; ++shift) {
    bool match = true;
    for (std::size_t i = 0; i < n && match; ++i)
      match = a.idx[i] == b.idx[(i + shift) % n];
    if (match) return true;
  }
  return false;
}

std::array<Index, 4> sorted_key(const Face& f) {
  std::array<Index, 4> k;
  k.fill(std::numeric_limits<Index>::max());
  std::copy(f.begin(), f.end(), k.begin());
  std::sort(k.begin(), k.begin() + f.degree);
  return k;
}

IslandPartition single_island(std::size_t face_count) {
  IslandPartition p;
  p.island_of_face.assign(face_count, 0);
  p.island_count = face_count == 0 ? 0 : 1;
  return p;
}

IslandPartition densify(std::span<const Index> labels) {
  IslandPartition p;
  std::unordered_map<Index, Index> remap;
  p.island_of_face.reserve(labels.size());
  for (Index l : labels) {
    auto [it, inserted] = remap.try_emplace(l, static_cast<Index>(remap.size()));
    p.island_of_face.push_back(it->second);
  }
  p.island_count = static_cast<Index>(remap.size());
  return p;
}

void validate(const Mesh& mesh, bool allow_mixed) {
  const int deg = mesh.degree();
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& face = mesh.faces[f];
    if (face.degree != 3 && face.degree != 4)
      throw Error(ErrorCode::kInvalidArgument,
                  "face " + std::to_string(f) + " has unsupported degree");
    if (face.degree != deg && !allow_mixed)
      throw Error(ErrorCode::kMixedDegree, "mixed triangle/quad faces");
    for (Index v : face)
      if (v >= mesh.positions.size())
        throw Error(ErrorCode::kIndexOutOfRange,
                    "face " + std::to_string(f) + " references vertex " +
                        std::to_string(v) + " out of range");
  }
  if (mesh.face_uvs.empty()) return;
  if (mesh.face_uvs.size() != mesh.faces.size())
    throw Error(ErrorCode::kInvalidArgument, "face_uvs not aligned with faces");
  for (std::size_t f = 0; f < mesh.face_uvs.size(); ++f) {
    if (mesh.face_uvs[f].degree != mesh.faces[f].degree)
      throw Error(ErrorCode::kInvalidArgument,
                  "face " + std::to_string(f) + " uv arity mismatch");
    for (Index t : mesh.face_uvs[f])
      if (t >= mesh.uv_coords.size())
        throw Error(ErrorCode::kIndexOutOfRange,
                    "face " + std::to_string(f) + " references uv " +
                        std::to_string(t) + " out of range");
  }
}

}  // namespace stripmesh
