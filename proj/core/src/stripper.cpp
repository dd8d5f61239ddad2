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

#include "stripmesh/stripper.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "stripmesh/error.hpp"

namespace stripmesh {
namespace {

constexpr Index kNone = std::numeric_limits<Index>::max();

std::uint64_t edge_key(Index a, Index b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

// Face vertices mapped to ranks and sorted; the lexicographic seed key.
std::array<Index, 4> rank_tuple(const Face& f, const std::vector<Index>& rank) {
  std::array<Index, 4> t;
  t.fill(kNone);
  for (std::size_t i = 0; i < f.degree; ++i) t[i] = rank[f[i]];
  std::sort(t.begin(), t.begin() + f.degree);
  return t;
}

class Zipper {
 public:
  Zipper(const QuantizedMesh& q, int stride, VertexKeyOrder order)
      : q_(q), stride_(stride), rank_(vertex_key_ranks(q, order)) {
    const std::size_t nf = q.faces.size();
    tuples_.reserve(nf);
    for (const Face& f : q.faces) tuples_.push_back(rank_tuple(f, rank_));

    // Global traversal order: islands by their lowest face tuple, faces by
    // tuple inside each island.
    std::vector<Index> faces(nf);
    std::iota(faces.begin(), faces.end(), Index{0});
    std::sort(faces.begin(), faces.end(), [&](Index a, Index b) {
      return tuples_[a] < tuples_[b];
    });
    const Index islands = q.island_count();
    std::vector<Index> first_face(islands, kNone);
    for (Index f : faces)
      if (first_face[q.island(f)] == kNone) first_face[q.island(f)] = f;
    island_order_.resize(islands);
    std::iota(island_order_.begin(), island_order_.end(), Index{0});
    std::sort(island_order_.begin(), island_order_.end(), [&](Index a, Index b) {
      return tuples_[first_face[a]] < tuples_[first_face[b]];
    });
    std::vector<Index> island_pos(islands);
    for (Index i = 0; i < islands; ++i) island_pos[island_order_[i]] = i;
    std::stable_sort(faces.begin(), faces.end(), [&](Index a, Index b) {
      return island_pos[q.island(a)] < island_pos[q.island(b)];
    });
    order_ = std::move(faces);
    face_rank_.resize(nf);
    for (Index i = 0; i < nf; ++i) face_rank_[order_[i]] = i;

    e2f_.reserve(nf * 2);
    for (Index f = 0; f < nf; ++f) {
      const Face& face = q.faces[f];
      for (std::size_t c = 0; c < face.degree; ++c)
        e2f_[edge_key(face[c], face[(c + 1) % face.degree])].push_back(f);
    }
  }

  StripSet run() {
    StripSet out;
    out.stride = stride_;
    out.vertex_keys = q_.vertex_keys;
    out.islands_in_order = island_order_;
    out.face_count = q_.faces.size();
    out.transform = q_.transform;
    visited_.assign(q_.faces.size(), false);
    for (Index seed : order_) {
      if (visited_[seed]) continue;
      out.strips.push_back(grow(seed));
    }
    return out;
  }

 private:
  Strip grow(Index seed) {
    Strip s;
    s.island = q_.island(seed);
    s.stride = stride_;
    s.keys = seed_vertices(q_.faces[seed]);
    visited_[seed] = true;
    while (true) {
      const Index a = s.keys[s.keys.size() - 2];
      const Index b = s.keys.back();
      const Index next = next_face(a, b, s.island);
      if (next == kNone) break;
      visited_[next] = true;
      const Face& face = q_.faces[next];
      if (stride_ == 1) {
        for (Index v : face)
          if (v != a && v != b) s.keys.push_back(v);
      } else {
        std::size_t p = 0;
        while (face[p] != a) ++p;
        const Index adj =
            face[(p + 1) % 4] == b ? face[(p + 3) % 4] : face[(p + 1) % 4];
        Index other = kNone;
        for (Index v : face)
          if (v != a && v != b && v != adj) other = v;
        s.keys.push_back(adj);
        s.keys.push_back(other);
      }
    }
    return s;
  }

  std::vector<Index> seed_vertices(const Face& face) const {
    if (stride_ == 1) {
      std::array<Index, 3> v{face[0], face[1], face[2]};
      std::sort(v.begin(), v.end(),
                [&](Index x, Index y) { return rank_[x] < rank_[y]; });
      // Keep the source winding; the frontier stays on the two largest keys.
      if (!same_winding(Face{v[0], v[1], v[2]}, face)) std::swap(v[1], v[2]);
      return {v.begin(), v.end()};
    }
    std::size_t lo = 0;
    for (std::size_t i = 1; i < 4; ++i)
      if (rank_[face[i]] < rank_[face[lo]]) lo = i;
    std::vector<Index> v(4);
    for (std::size_t i = 0; i < 4; ++i) v[i] = face[(lo + i) % 4];
    std::swap(v[2], v[3]);
    return v;
  }

  Index next_face(Index a, Index b, Index island) const {
    auto it = e2f_.find(edge_key(a, b));
    if (it == e2f_.end()) return kNone;
    Index best = kNone;
    for (Index f : it->second) {
      if (visited_[f] || q_.island(f) != island) continue;
      if (best == kNone || face_rank_[f] < face_rank_[best]) best = f;
    }
    return best;
  }

  const QuantizedMesh& q_;
  int stride_;
  std::vector<Index> rank_;
  std::vector<std::array<Index, 4>> tuples_;
  std::vector<Index> island_order_;
  std::vector<Index> order_;
  std::vector<Index> face_rank_;
  std::unordered_map<std::uint64_t, std::vector<Index>> e2f_;
  std::vector<bool> visited_;
};

}  // namespace

std::array<std::uint16_t, 3> VertexKeyOrder::sort_tuple(GridCoord g) const {
  const int u = static_cast<int>(up);
  return {g[u], g[(u + 1) % 3], g[(u + 2) % 3]};
}

std::vector<Index> vertex_key_ranks(const QuantizedMesh& q,
                                    VertexKeyOrder order) {
  std::vector<Index> idx(q.vertex_keys.size());
  std::iota(idx.begin(), idx.end(), Index{0});
  std::sort(idx.begin(), idx.end(), [&](Index a, Index b) {
    return order(q.vertex_keys[a], q.vertex_keys[b]);
  });
  std::vector<Index> rank(idx.size());
  for (Index i = 0; i < idx.size(); ++i) rank[idx[i]] = i;
  return rank;
}

std::vector<Index> seed_order(const QuantizedMesh& q, Index island,
                              VertexKeyOrder order) {
  const auto rank = vertex_key_ranks(q, order);
  std::vector<Index> faces;
  for (Index f = 0; f < q.faces.size(); ++f)
    if (q.island(f) == island) faces.push_back(f);
  std::vector<std::array<Index, 4>> tuples(q.faces.size());
  for (Index f : faces) tuples[f] = rank_tuple(q.faces[f], rank);
  std::sort(faces.begin(), faces.end(),
            [&](Index a, Index b) { return tuples[a] < tuples[b]; });
  return faces;
}

std::size_t StripSet::vertex_count() const {
  std::size_t n = 0;
  for (const Strip& s : strips) n += s.keys.size();
  return n;
}

StripSet extract_strips(const QuantizedMesh& q, int stride,
                        VertexKeyOrder order) {
  if (stride != 1 && stride != 2)
    throw Error(ErrorCode::kInvalidArgument, "stride must be 1 or 2");
  if (q.faces.empty()) throw Error(ErrorCode::kEmptyMesh, "empty mesh");
  const int want = stride == 1 ? 3 : 4;
  if (std::any_of(q.faces.begin(), q.faces.end(),
                  [&](const Face& f) { return f.degree != want; }))
    throw Error(ErrorCode::kDegreeMismatch,
                "stride " + std::to_string(stride) + " requires " +
                    (stride == 1 ? "triangle" : "quad") + " faces");
  return Zipper(q, stride, order).run();
}

std::vector<Face> strip_faces(std::span<const Index> v, int stride) {
  std::vector<Face> faces;
  const std::size_t m = v.size();
  if (m < 3) return faces;
  if (stride == 1) {
    faces.reserve(m - 2);
    for (std::size_t j = 0; j + 2 < m; ++j) {
      if (j % 2 == 0) faces.push_back({v[j], v[j + 1], v[j + 2]});
      else faces.push_back({v[j], v[j + 2], v[j + 1]});
    }
    return faces;
  }
  for (std::size_t i = 0; 2 * i + 3 < m; ++i)
    faces.push_back({v[2 * i], v[2 * i + 1], v[2 * i + 3], v[2 * i + 2]});
  if (m % 2 == 1) faces.push_back({v[m - 3], v[m - 2], v[m - 1]});
  return faces;
}

std::vector<Face> strip_faces(const Strip& s) {
  return strip_faces(s.keys, s.stride);
}

}  // namespace stripmesh
