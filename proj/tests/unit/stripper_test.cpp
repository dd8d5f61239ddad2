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

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stripmesh/mesh_io.hpp"
#include "stripmesh/shapes.hpp"
#include "stripmesh/stripper.hpp"
#include "test_util.hpp"

using namespace stripmesh;

namespace {

using Coords = std::vector<GridCoord>;

Coords coords(const StripSet& s, std::span<const Index> keys) {
  Coords out;
  for (Index k : keys) out.push_back(s.vertex_keys[k]);
  return out;
}

std::vector<Coords> strip_coords(const StripSet& s) {
  std::vector<Coords> out;
  for (const Strip& strip : s.strips) out.push_back(coords(s, strip.keys));
  return out;
}

std::vector<Coords> covered_face_sets(const StripSet& s) {
  std::vector<Coords> out;
  for (const Strip& strip : s.strips)
    for (const Face& f : strip_faces(strip)) {
      Coords c = coords(s, f.view());
      std::sort(c.begin(), c.end());
      out.push_back(std::move(c));
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool cyclic_equal(const Coords& a, const Coords& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t r = 0; r < a.size(); ++r) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) ok = a[i] == b[(i + r) % a.size()];
    if (ok) return true;
  }
  return false;
}

struct Case {
  std::string name;
  QuantizedMesh q;
  int stride;
};

std::vector<Case> corpus_cases(bool with_islands) {
  std::vector<Case> out;
  for (int stride : {1, 2})
    for (const auto& s : stride == 1 ? shapes::triangle_corpus() : shapes::quad_corpus()) {
      if (!with_islands) {
        out.push_back({s.name, quantize_mesh(s.mesh), stride});
        continue;
      }
      const auto charts = s.charts.empty() ? shapes::axis_charts(s.mesh) : s.charts;
      const Mesh m = shapes::with_chart_uvs(s.mesh, charts);
      const IslandPartition p = uv_islands(m);
      out.push_back({s.name + "/uv", quantize_mesh(m, &p), stride});
    }
  return out;
}

QuantizedMesh two_triangles() {
  QuantizedMesh q;
  q.vertex_keys = {{0, 0, 0}, {10, 0, 0}, {0, 10, 0}, {10, 10, 0}};
  q.faces = {{0, 1, 2}, {1, 3, 2}};
  return q;
}

}  // namespace

TEST(VertexKeyOrder, Examples) {
  const VertexKeyOrder order;
  EXPECT_TRUE(order(GridCoord{0, 0, 0}, GridCoord{0, 0, 1}));
  // Sort tuple (y, z, x) = (0, 5, 9) precedes (1, 0, 0): y dominates.
  EXPECT_TRUE(order(GridCoord{9, 0, 5}, GridCoord{0, 1, 0}));
  EXPECT_FALSE(order(GridCoord{0, 1, 0}, GridCoord{9, 0, 5}));
  // Axis priority y, then z, then x.
  EXPECT_TRUE(order(GridCoord{5, 0, 0}, GridCoord{0, 0, 1}));
}

TEST(VertexKeyOrder, UpAxisSelectsMostSignificant) {
  EXPECT_EQ((VertexKeyOrder{UpAxis::kX}.sort_tuple({1, 2, 3})),
            (std::array<std::uint16_t, 3>{1, 2, 3}));
  EXPECT_EQ((VertexKeyOrder{UpAxis::kY}.sort_tuple({1, 2, 3})),
            (std::array<std::uint16_t, 3>{2, 3, 1}));
  EXPECT_EQ((VertexKeyOrder{UpAxis::kZ}.sort_tuple({1, 2, 3})),
            (std::array<std::uint16_t, 3>{3, 1, 2}));
}

TEST(VertexKeyRanks, IsAPermutationInOrder) {
  const QuantizedMesh q = quantize_mesh(shapes::icosphere(1));
  const auto rank = vertex_key_ranks(q);
  std::vector<Index> sorted(rank);
  std::sort(sorted.begin(), sorted.end());
  std::vector<Index> iota(rank.size());
  std::iota(iota.begin(), iota.end(), Index{0});
  EXPECT_EQ(sorted, iota);
  for (std::size_t a = 0; a < rank.size(); ++a)
    for (std::size_t b = 0; b < rank.size(); ++b)
      ASSERT_EQ(rank[a] < rank[b], VertexKeyOrder{}(q.vertex_keys[a], q.vertex_keys[b]));
}

TEST(SeedOrder, SingleFace) {
  QuantizedMesh q;
  q.vertex_keys = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  q.faces = {{0, 1, 2}};
  EXPECT_EQ(seed_order(q, 0), std::vector<Index>{0});
}

TEST(SeedOrder, TieOnLowestVertexUsesSecond) {
  QuantizedMesh q;
  // Both faces contain key 0 (lowest); face 1's second key is lower.
  q.vertex_keys = {{0, 0, 0}, {5, 0, 0}, {0, 9, 0}, {2, 0, 0}, {0, 8, 0}};
  q.faces = {{0, 1, 2}, {0, 3, 4}};
  EXPECT_EQ(seed_order(q, 0), (std::vector<Index>{1, 0}));
}

TEST(SeedOrder, InvariantUnderFacePermutation) {
  QuantizedMesh q = quantize_mesh(shapes::torus(12, 6, false));
  const auto coords_of = [](const QuantizedMesh& m) {
    std::vector<Coords> out;
    for (Index f : seed_order(m, 0)) {
      Coords c;
      for (Index k : m.faces[f]) c.push_back(m.vertex_keys[k]);
      out.push_back(c);
    }
    return out;
  };
  const auto want = coords_of(q);
  std::mt19937 rng(1);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(q.faces.begin(), q.faces.end(), rng);
    EXPECT_EQ(coords_of(q), want);
  }
}

TEST(SeedOrder, RestrictsToIsland) {
  QuantizedMesh q = two_triangles();
  q.island_of_face = {1, 0};
  EXPECT_EQ(seed_order(q, 0), std::vector<Index>{1});
  EXPECT_EQ(seed_order(q, 1), std::vector<Index>{0});
}

TEST(ExtractStrips, TwoTrianglesMakeOneStrip) {
  const StripSet s = extract_strips(two_triangles(), 1);
  ASSERT_EQ(s.strips.size(), 1u);
  EXPECT_EQ(s.strips[0].keys.size(), 4u);
  const auto faces = strip_faces(s.strips[0]);
  ASSERT_EQ(faces.size(), 2u);
  const QuantizedMesh q = two_triangles();
  EXPECT_TRUE(same_winding(faces[0], q.faces[0]) || same_winding(faces[0], q.faces[1]));
  EXPECT_TRUE(same_winding(faces[1], q.faces[0]) || same_winding(faces[1], q.faces[1]));
}

TEST(ExtractStrips, RibbonIsOneStripMatchingHandSimulation) {
  for (int cells : {1, 2, 5, 8, 50, 100}) {
    const QuantizedMesh q = quantize_mesh(shapes::ribbon(cells, false));
    const StripSet s = extract_strips(q, 1);
    ASSERT_EQ(s.strips.size(), 1u) << cells;
    EXPECT_EQ(s.strips[0].keys.size(), static_cast<std::size_t>(2 * cells + 2));
    EXPECT_EQ(coords(s, s.strips[0].keys), oracle::ribbon_strip(cells)) << cells;
  }
}

TEST(ExtractStrips, QuadRibbonIsOneStrip) {
  for (int cells : {1, 3, 8, 100}) {
    const QuantizedMesh q = quantize_mesh(shapes::ribbon(cells, true));
    const StripSet s = extract_strips(q, 2);
    ASSERT_EQ(s.strips.size(), 1u) << cells;
    EXPECT_EQ(s.strips[0].keys.size(), static_cast<std::size_t>(2 * cells + 2));
  }
}

TEST(ExtractStrips, StrideDegreeMismatch) {
  const QuantizedMesh tri = quantize_mesh(shapes::grid(2, 2, false));
  const QuantizedMesh quad = quantize_mesh(shapes::grid(2, 2, true));
  EXPECT_ERROR_CODE(extract_strips(tri, 2), ErrorCode::kDegreeMismatch);
  EXPECT_ERROR_CODE(extract_strips(quad, 1), ErrorCode::kDegreeMismatch);
  EXPECT_ERROR_CODE(extract_strips(tri, 3), ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(extract_strips(QuantizedMesh{}, 1), ErrorCode::kEmptyMesh);
}

TEST(StripFaces, Examples) {
  const std::vector<Index> abcd{10, 11, 12, 13};
  EXPECT_EQ(strip_faces(abcd, 1), (std::vector<Face>{{10, 11, 12}, {11, 13, 12}}));
  EXPECT_EQ(strip_faces(abcd, 2), (std::vector<Face>{{10, 11, 13, 12}}));
  const std::vector<Index> five{0, 1, 2, 3, 4};
  EXPECT_EQ(strip_faces(five, 2), (std::vector<Face>{{0, 1, 3, 2}, {2, 3, 4}}));
  EXPECT_EQ(strip_faces(five, 1),
            (std::vector<Face>{{0, 1, 2}, {1, 3, 2}, {2, 3, 4}}));
  EXPECT_TRUE(strip_faces(std::vector<Index>{0, 1}, 1).empty());
}

TEST(StripFaces, CountsFollowStride) {
  for (std::size_t m = 3; m < 20; ++m) {
    std::vector<Index> v(m);
    std::iota(v.begin(), v.end(), Index{0});
    EXPECT_EQ(strip_faces(v, 1).size(), m - 2);
    EXPECT_EQ(strip_faces(v, 2).size(), (m - 2) / 2 + (m % 2));
  }
}

TEST(ExtractStripsProperty, CoverageIsAnExactPartition) {
  for (bool islands : {false, true})
    for (const Case& c : corpus_cases(islands)) {
      const StripSet s = extract_strips(c.q, c.stride);
      EXPECT_EQ(covered_face_sets(s), oracle::face_sets(c.q)) << c.name;
      EXPECT_LE(s.strips.size(), c.q.faces.size()) << c.name;
      EXPECT_EQ(s.face_count, c.q.faces.size());
    }
}

TEST(ExtractStripsProperty, WindingIsPreserved) {
  for (bool islands : {false, true})
    for (const Case& c : corpus_cases(islands)) {
      const StripSet s = extract_strips(c.q, c.stride);
      std::map<Coords, Coords> source;
      for (const Face& f : c.q.faces) {
        Coords cyc;
        for (Index k : f) cyc.push_back(c.q.vertex_keys[k]);
        Coords key = cyc;
        std::sort(key.begin(), key.end());
        source[key] = cyc;
      }
      std::size_t bad = 0;
      for (const Strip& strip : s.strips)
        for (const Face& f : strip_faces(strip)) {
          const Coords cyc = coords(s, f.view());
          Coords key = cyc;
          std::sort(key.begin(), key.end());
          bad += !cyclic_equal(cyc, source.at(key));
        }
      EXPECT_EQ(bad, 0u) << c.name;
    }
}

TEST(ExtractStripsProperty, ConsecutiveFacesShareTheFrontier) {
  for (const Case& c : corpus_cases(false)) {
    const StripSet s = extract_strips(c.q, c.stride);
    for (const Strip& strip : s.strips) {
      const auto faces = strip_faces(strip);
      for (std::size_t i = 1; i < faces.size(); ++i) {
        std::set<Index> a(faces[i - 1].begin(), faces[i - 1].end());
        std::set<Index> b(faces[i].begin(), faces[i].end());
        std::vector<Index> shared;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(shared));
        ASSERT_EQ(shared.size(), 2u) << c.name;
        // The shared pair is the frontier at the time the face was added.
        const std::size_t end = c.stride == 1 ? i + 1 : 2 * i + 1;
        std::vector<Index> frontier{strip.keys[end - 1], strip.keys[end]};
        std::sort(frontier.begin(), frontier.end());
        ASSERT_EQ(shared, frontier) << c.name;
      }
    }
  }
}

TEST(ExtractStripsProperty, IslandsAreContiguousAndOrdered) {
  for (const Case& c : corpus_cases(true)) {
    const StripSet s = extract_strips(c.q, c.stride);
    std::vector<Index> seen;
    for (const Strip& strip : s.strips) {
      if (seen.empty() || seen.back() != strip.island) seen.push_back(strip.island);
      for (const Face& f : strip_faces(strip)) {
        // Every face in the strip belongs to the strip's island.
        Coords key = coords(s, f.view());
        std::sort(key.begin(), key.end());
        bool found = false;
        for (std::size_t g = 0; g < c.q.faces.size() && !found; ++g) {
          if (c.q.island(g) != strip.island) continue;
          Coords other;
          for (Index k : c.q.faces[g]) other.push_back(c.q.vertex_keys[k]);
          std::sort(other.begin(), other.end());
          found = other == key;
        }
        ASSERT_TRUE(found) << c.name;
      }
    }
    EXPECT_EQ(seen, s.islands_in_order) << c.name;
    std::set<Index> unique(seen.begin(), seen.end());
    EXPECT_EQ(unique.size(), seen.size()) << c.name;
    // Bottom to top: island minimum vertex keys are non-decreasing.
    const VertexKeyOrder order;
    std::vector<GridCoord> lowest;
    for (Index isl : s.islands_in_order) {
      GridCoord best{};
      bool first = true;
      for (std::size_t f = 0; f < c.q.faces.size(); ++f) {
        if (c.q.island(f) != isl) continue;
        for (Index k : c.q.faces[f])
          if (first || order(c.q.vertex_keys[k], best)) {
            best = c.q.vertex_keys[k];
            first = false;
          }
      }
      lowest.push_back(best);
    }
    for (std::size_t i = 1; i < lowest.size(); ++i)
      EXPECT_FALSE(order(lowest[i], lowest[i - 1])) << c.name;
  }
}

TEST(ExtractStripsProperty, InvariantToFaceAndVertexOrder) {
  std::mt19937 rng(2024);
  for (const Case& c : corpus_cases(true)) {
    const auto want = strip_coords(extract_strips(c.q, c.stride));
    QuantizedMesh shuffled = c.q;
    // Permute faces together with their island labels.
    std::vector<std::size_t> perm(c.q.faces.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      shuffled.faces[i] = c.q.faces[perm[i]];
      if (!c.q.island_of_face.empty())
        shuffled.island_of_face[i] = c.q.island_of_face[perm[i]];
    }
    // Permute the key table.
    std::vector<Index> kperm(c.q.vertex_keys.size());
    std::iota(kperm.begin(), kperm.end(), Index{0});
    std::shuffle(kperm.begin(), kperm.end(), rng);
    for (std::size_t k = 0; k < kperm.size(); ++k)
      shuffled.vertex_keys[kperm[k]] = c.q.vertex_keys[k];
    for (Face& f : shuffled.faces)
      for (Index& k : f.view()) k = kperm[k];
    EXPECT_EQ(strip_coords(extract_strips(shuffled, c.stride)), want) << c.name;
  }
}

TEST(ExtractStrips, NonManifoldFinIsCovered) {
  const QuantizedMesh q = quantize_mesh(parse_obj(oracle::nonmanifold_fin_obj()));
  const StripSet s = extract_strips(q, 1);
  EXPECT_EQ(covered_face_sets(s), oracle::face_sets(q));
}

TEST(ExtractStrips, UpAxisChangesTraversal) {
  const QuantizedMesh q = quantize_mesh(shapes::icosphere(1));
  std::vector<std::vector<std::vector<GridCoord>>> per_axis;
  for (UpAxis up : {UpAxis::kX, UpAxis::kY, UpAxis::kZ}) {
    const VertexKeyOrder order{up};
    const StripSet s = extract_strips(q, 1, order);
    EXPECT_EQ(covered_face_sets(s), covered_face_sets(extract_strips(q, 1)));
    // The first strip starts at the lowest vertex along the chosen axis.
    const GridCoord lowest =
        *std::min_element(q.vertex_keys.begin(), q.vertex_keys.end(), order);
    EXPECT_EQ(s.vertex_keys[s.strips.front().keys.front()], lowest);
    per_axis.push_back(strip_coords(s));
  }
  EXPECT_NE(per_axis[0], per_axis[1]);
  EXPECT_NE(per_axis[1], per_axis[2]);
}
