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

#include "stripmesh/mesh_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "stripmesh/error.hpp"

namespace stripmesh {
namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParse,
              "obj line " + std::to_string(line) + ": " + what);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Splits on blanks without allocating per token.
std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_double(std::string_view s, std::size_t line) {
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    parse_fail(line, "bad number '" + std::string(s) + "'");
  return value;
}

// Resolves a 1-based or negative OBJ index against `count` elements.
Index resolve_index(std::string_view s, std::size_t count, std::size_t line,
                    const char* what) {
  long long raw = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), raw);
  if (ec != std::errc() || ptr != s.data() + s.size() || raw == 0)
    parse_fail(line, std::string("bad ") + what + " index '" + std::string(s) +
                         "'");
  long long resolved = raw > 0 ? raw - 1 : static_cast<long long>(count) + raw;
  if (resolved < 0 || resolved >= static_cast<long long>(count))
    throw Error(ErrorCode::kIndexOutOfRange,
                "obj line " + std::to_string(line) + ": " + what + " index " +
                    std::string(s) + " out of range");
  return static_cast<Index>(resolved);
}

void append_number(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

}  // namespace

Mesh parse_obj(std::string_view text) {
  Mesh mesh;
  std::optional<bool> faces_have_uv;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    auto fields = split_fields(line);
    if (fields.empty() || fields[0].front() == '#') continue;
    const std::string_view tag = fields[0];

    if (tag == "v") {
      if (fields.size() < 4) parse_fail(line_no, "vertex needs 3 coordinates");
      mesh.positions.push_back({parse_double(fields[1], line_no),
                                parse_double(fields[2], line_no),
                                parse_double(fields[3], line_no)});
    } else if (tag == "vt") {
      if (fields.size() < 3) parse_fail(line_no, "vt needs 2 coordinates");
      mesh.uv_coords.push_back(
          {parse_double(fields[1], line_no), parse_double(fields[2], line_no)});
    } else if (tag == "f") {
      const std::size_t n = fields.size() - 1;
      if (n < 3) parse_fail(line_no, "face needs at least 3 corners");
      if (n > 4)
        throw Error(ErrorCode::kParse, "obj line " + std::to_string(line_no) +
                                           ": polygon of degree " +
                                           std::to_string(n) +
                                           " is not supported");
      Face face;
      Face uv;
      face.degree = uv.degree = static_cast<std::uint8_t>(n);
      bool corner_uv = false;
      for (std::size_t c = 0; c < n; ++c) {
        std::string_view corner = fields[c + 1];
        const auto slash = corner.find('/');
        face[c] = resolve_index(corner.substr(0, slash),
                                mesh.positions.size(), line_no, "vertex");
        bool has_vt = false;
        if (slash != std::string_view::npos) {
          std::string_view rest = corner.substr(slash + 1);
          std::string_view vt = rest.substr(0, rest.find('/'));
          if (!vt.empty()) {
            uv[c] = resolve_index(vt, mesh.uv_coords.size(), line_no, "uv");
            has_vt = true;
          }
        }
        if (c == 0) corner_uv = has_vt;
        else if (has_vt != corner_uv)
          parse_fail(line_no, "face mixes corners with and without uv");
      }
      if (!faces_have_uv) faces_have_uv = corner_uv;
      else if (*faces_have_uv != corner_uv)
        parse_fail(line_no, "some faces carry uv indices and others do not");
      if (!mesh.faces.empty() && mesh.faces.front().degree != face.degree)
        throw Error(ErrorCode::kMixedDegree,
                    "obj line " + std::to_string(line_no) +
                        ": mixed triangle/quad faces");
      mesh.faces.push_back(face);
      if (corner_uv) mesh.face_uvs.push_back(uv);
    }
  }
  return mesh;
}

Mesh load_obj(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_obj(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_obj(std::ostream& out, const Mesh& mesh,
               const IslandPartition* partition) {
  if (mesh.faces.empty()) throw Error(ErrorCode::kEmptyMesh, "empty mesh");
  validate(mesh, /*allow_mixed=*/true);
  if (partition && partition->island_of_face.size() != mesh.faces.size())
    throw Error(ErrorCode::kInvalidArgument,
                "partition does not match face count");

  std::string buf;
  buf.reserve(mesh.positions.size() * 40 + mesh.faces.size() * 24);
  for (const Vec3& p : mesh.positions) {
    buf += "v ";
    append_number(buf, p[0]);
    buf += ' ';
    append_number(buf, p[1]);
    buf += ' ';
    append_number(buf, p[2]);
    buf += '\n';
  }
  for (const Vec2& t : mesh.uv_coords) {
    buf += "vt ";
    append_number(buf, t[0]);
    buf += ' ';
    append_number(buf, t[1]);
    buf += '\n';
  }
  auto emit_face = [&](std::size_t f) {
    buf += 'f';
    for (std::size_t c = 0; c < mesh.faces[f].degree; ++c) {
      buf += ' ';
      buf += std::to_string(mesh.faces[f][c] + 1);
      if (mesh.has_uvs()) {
        buf += '/';
        buf += std::to_string(mesh.face_uvs[f][c] + 1);
      }
    }
    buf += '\n';
  };
  if (partition) {
    std::vector<std::vector<std::size_t>> by_island(partition->island_count);
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
      const Index id = partition->island_of_face[f];
      if (id >= partition->island_count)
        throw Error(ErrorCode::kInvalidArgument, "island label out of range");
      by_island[id].push_back(f);
    }
    for (std::size_t id = 0; id < by_island.size(); ++id) {
      buf += "g island_" + std::to_string(id) + '\n';
      for (std::size_t f : by_island[id]) emit_face(f);
    }
  } else {
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) emit_face(f);
  }
  out << buf;
  if (!out) throw Error(ErrorCode::kIo, "write failed");
}

std::string to_obj_string(const Mesh& mesh, const IslandPartition* partition) {
  std::ostringstream ss;
  write_obj(ss, mesh, partition);
  return ss.str();
}

void write_obj(const Mesh& mesh, const IslandPartition* partition,
               const std::filesystem::path& path) {
  // Validate before touching the file system.
  std::string text = to_obj_string(mesh, partition);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

IslandPartition uv_islands(const Mesh& mesh) {
  if (!mesh.has_uvs())
    throw Error(ErrorCode::kMissingUv, "mesh has no uv indices");
  validate(mesh);

  const std::size_t nf = mesh.faces.size();
  std::vector<Index> parent(nf);
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };

  // Half-edge record keyed by the undirected position edge; uvs are stored in
  // (low position, high position) order so both sides compare directly.
  struct Side {
    Index face;
    Index uv_lo;
    Index uv_hi;
  };
  std::unordered_map<std::uint64_t, std::vector<Side>> edges;
  edges.reserve(nf * 2);
  for (Index f = 0; f < nf; ++f) {
    const Face& face = mesh.faces[f];
    const Face& uv = mesh.face_uvs[f];
    for (std::size_t c = 0; c < face.degree; ++c) {
      const std::size_t d = (c + 1) % face.degree;
      Index a = face[c], b = face[d];
      Index ua = uv[c], ub = uv[d];
      if (a == b) continue;
      if (a > b) {
        std::swap(a, b);
        std::swap(ua, ub);
      }
      const std::uint64_t key = (std::uint64_t{a} << 32) | b;
      auto& sides = edges[key];
      for (const Side& s : sides)
        if (s.uv_lo == ua && s.uv_hi == ub) unite(s.face, f);
      sides.push_back({f, ua, ub});
    }
  }

  std::vector<Index> roots(nf);
  for (Index f = 0; f < nf; ++f) roots[f] = find(f);
  return densify(roots);
}

std::vector<Index> merge_duplicate_positions(const Mesh& mesh,
                                             std::size_t* distinct) {
  // Bitwise comparison: -0.0 and 0.0 are distinct, NaN payloads compare raw.
  std::map<std::array<std::uint64_t, 3>, Index> seen;
  std::vector<Index> remap(mesh.positions.size());
  for (std::size_t i = 0; i < mesh.positions.size(); ++i) {
    std::array<std::uint64_t, 3> bits;
    std::memcpy(bits.data(), mesh.positions[i].data(), sizeof bits);
    auto [it, inserted] = seen.try_emplace(bits, static_cast<Index>(seen.size()));
    remap[i] = it->second;
  }
  if (distinct) *distinct = seen.size();
  return remap;
}

FilterVerdict corpus_filter(const Mesh& mesh, const IslandPartition* partition,
                            const FilterLimits& limits) {
  FilterVerdict v;
  std::size_t distinct = 0;
  const auto remap = merge_duplicate_positions(mesh, &distinct);
  v.merged_vertices = distinct;

  std::unordered_map<std::uint64_t, int> edge_use;
  edge_use.reserve(mesh.faces.size() * 2);
  bool manifold = true;
  for (const Face& face : mesh.faces) {
    for (std::size_t c = 0; c < face.degree && manifold; ++c) {
      Index a = remap[face[c]], b = remap[face[(c + 1) % face.degree]];
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if (++edge_use[(std::uint64_t{a} << 32) | b] > 2) manifold = false;
    }
  }
  if (!manifold) {
    v.reason = "manifold";
    return v;
  }
  const std::size_t nf = mesh.faces.size();
  if (nf < limits.min_faces || nf > limits.max_faces) {
    v.reason = "face_count";
    return v;
  }
  if (static_cast<double>(distinct) >
      limits.max_vertex_face_ratio * static_cast<double>(nf)) {
    v.reason = "vertex_face_ratio";
    return v;
  }
  if (partition && (partition->island_count < limits.min_islands ||
                    partition->island_count > limits.max_islands)) {
    v.reason = "island_count";
    return v;
  }
  v.accepted = true;
  return v;
}

}  // namespace stripmesh
