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

#include "stripmesh/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "stripmesh/error.hpp"

namespace stripmesh {
namespace {

constexpr std::uint32_t kLeafSize = 16;

struct Triangle {
  Vec3 a, b, c;
};

template <typename F>
void for_each_triangle(const Mesh& mesh, F&& fn) {
  for (const Face& f : mesh.faces) {
    const auto& p = mesh.positions;
    fn(Triangle{p[f[0]], p[f[1]], p[f[2]]});
    if (f.degree == 4) fn(Triangle{p[f[0]], p[f[2]], p[f[3]]});
  }
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double dist2(const Vec3& a, const Vec3& b) {
  const Vec3 d = a - b;
  return dot(d, d);
}

void require_nonempty(const SampleSet& a, const SampleSet& b) {
  if (a.empty() || b.empty())
    throw Error(ErrorCode::kEmptySet, "metric needs non-empty sample sets");
}

}  // namespace

double surface_area(const Mesh& mesh) {
  double total = 0.0;
  for_each_triangle(mesh, [&](const Triangle& t) {
    const Vec3 n = cross(t.b - t.a, t.c - t.a);
    total += 0.5 * std::sqrt(dot(n, n));
  });
  return total;
}

SampleSet sample_surface(const Mesh& mesh, std::size_t n, std::uint64_t seed) {
  std::vector<Triangle> tris;
  std::vector<Vec3> normals;
  std::vector<double> cumulative;
  double total = 0.0;
  for_each_triangle(mesh, [&](const Triangle& t) {
    const Vec3 c = cross(t.b - t.a, t.c - t.a);
    const double len = std::sqrt(dot(c, c));
    if (!(len > 0.0)) return;
    tris.push_back(t);
    normals.push_back(c * (1.0 / len));
    total += 0.5 * len;
    cumulative.push_back(total);
  });
  if (tris.empty() || !(total > 0.0))
    throw Error(ErrorCode::kZeroArea, "mesh has zero surface area");

  SampleSet out;
  out.points.reserve(n);
  out.normals.reserve(n);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double pick = uniform01(rng) * total;
    std::size_t t = static_cast<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), pick) -
        cumulative.begin());
    t = std::min(t, tris.size() - 1);
    const double r1 = std::sqrt(uniform01(rng));
    const double r2 = uniform01(rng);
    const Triangle& tri = tris[t];
    const double wa = 1.0 - r1;
    const double wb = r1 * (1.0 - r2);
    const double wc = r1 * r2;
    out.points.push_back(tri.a * wa + tri.b * wb + tri.c * wc);
    out.normals.push_back(normals[t]);
  }
  return out;
}

KdTree::KdTree(std::span<const Vec3> points)
    : points_(points.begin(), points.end()), order_(points.size()) {
  std::iota(order_.begin(), order_.end(), 0u);
  if (!points_.empty()) {
    nodes_.reserve(2 * points_.size() / kLeafSize + 1);
    build(0, static_cast<std::uint32_t>(points_.size()), 0);
  }
}

int KdTree::build(std::uint32_t begin, std::uint32_t end, int depth) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({begin, end, -1, -1, -1, 0.0});
  if (end - begin <= kLeafSize) return id;

  Vec3 lo = points_[order_[begin]], hi = lo;
  for (std::uint32_t i = begin; i < end; ++i)
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], points_[order_[i]][a]);
      hi[a] = std::max(hi[a], points_[order_[i]][a]);
    }
  int axis = 0;
  for (int a = 1; a < 3; ++a)
    if (hi[a] - lo[a] > hi[axis] - lo[axis]) axis = a;
  if (hi[axis] - lo[axis] <= 0.0) return id;  // all points coincide

  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid,
                   order_.begin() + end, [&](std::uint32_t x, std::uint32_t y) {
                     return points_[x][axis] < points_[y][axis];
                   });
  const double split = points_[order_[mid]][axis];
  const int left = build(begin, mid, depth + 1);
  const int right = build(mid, end, depth + 1);
  nodes_[id].axis = axis;
  nodes_[id].split = split;
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

void KdTree::search(int node_id, const Vec3& q, Hit& best) const {
  const Node& node = nodes_[node_id];
  if (node.axis < 0) {
    for (std::uint32_t i = node.begin; i < node.end; ++i) {
      const std::uint32_t idx = order_[i];
      const double d = dist2(points_[idx], q);
      if (d < best.dist2 || (d == best.dist2 && idx < best.index))
        best = {idx, d};
    }
    return;
  }
  // Left holds coordinates <= split, right holds coordinates >= split.
  const double diff = q[node.axis] - node.split;
  const int near = diff <= 0.0 ? node.left : node.right;
  const int far = diff <= 0.0 ? node.right : node.left;
  search(near, q, best);
  // Equality keeps ties reachable so the lowest index wins.
  if (diff * diff <= best.dist2) search(far, q, best);
}

KdTree::Hit KdTree::nearest(const Vec3& q) const {
  Hit best{0, std::numeric_limits<double>::infinity()};
  if (!nodes_.empty()) search(0, q, best);
  return best;
}

DirectedNeighbours nearest_neighbours(const SampleSet& from,
                                      const SampleSet& to) {
  require_nonempty(from, to);
  const KdTree tree(to.points);
  DirectedNeighbours out;
  out.dist.resize(from.size());
  out.index.resize(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    const auto hit = tree.nearest(from.points[i]);
    out.dist[i] = std::sqrt(hit.dist2);
    out.index[i] = hit.index;
  }
  return out;
}

namespace {

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double max_of(const std::vector<double>& v) {
  return *std::max_element(v.begin(), v.end());
}

// |cos| via dot / sqrt(|a|^2 |b|^2); exactly 1 for identical vectors.
double abs_cosine(const Vec3& a, const Vec3& b) {
  const double d = dot(a, b);
  const double denom = std::sqrt(dot(a, a) * dot(b, b));
  if (!(denom > 0.0)) return 0.0;
  return std::min(1.0, std::abs(d) / denom);
}

double directed_nc(const SampleSet& from, const SampleSet& to,
                   const DirectedNeighbours& nn) {
  double sum = 0.0;
  for (std::size_t i = 0; i < from.size(); ++i)
    sum += abs_cosine(from.normals[i], to.normals[nn.index[i]]);
  return sum / static_cast<double>(from.size());
}

double fraction_within(const std::vector<double>& d, double tau) {
  std::size_t hits = 0;
  for (double x : d) hits += x <= tau;
  return static_cast<double>(hits) / static_cast<double>(d.size());
}

double harmonic(double p, double r) {
  return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

}  // namespace

ChamferHausdorff chamfer_hausdorff(const SampleSet& a, const SampleSet& b) {
  const auto ab = nearest_neighbours(a, b);
  const auto ba = nearest_neighbours(b, a);
  return {(mean(ab.dist) + mean(ba.dist)) / 2.0,
          std::max(max_of(ab.dist), max_of(ba.dist))};
}

double normal_consistency(const SampleSet& a, const SampleSet& b) {
  const auto ab = nearest_neighbours(a, b);
  const auto ba = nearest_neighbours(b, a);
  return (directed_nc(a, b, ab) + directed_nc(b, a, ba)) / 2.0;
}

double f_score(const SampleSet& a, const SampleSet& b, double tau) {
  if (!(tau > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "tau must be positive");
  const auto ab = nearest_neighbours(a, b);
  const auto ba = nearest_neighbours(b, a);
  return harmonic(fraction_within(ab.dist, tau), fraction_within(ba.dist, tau));
}

GeometryMetrics geometry_metrics(const SampleSet& a, const SampleSet& b,
                                 double tau) {
  if (!(tau > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "tau must be positive");
  const auto ab = nearest_neighbours(a, b);
  const auto ba = nearest_neighbours(b, a);
  GeometryMetrics m;
  m.nc = (directed_nc(a, b, ab) + directed_nc(b, a, ba)) / 2.0;
  m.cd = (mean(ab.dist) + mean(ba.dist)) / 2.0;
  m.hd = std::max(max_of(ab.dist), max_of(ba.dist));
  m.f1 = harmonic(fraction_within(ab.dist, tau), fraction_within(ba.dist, tau));
  return m;
}

}  // namespace stripmesh
