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

#include <cstdint>
#include <span>
#include <vector>

#include "stripmesh/mesh.hpp"

namespace stripmesh {

struct SampleSet {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Area-weighted uniform samples with the owning face's unit normal. Quads
/// are split along (v0, v2). Deterministic for a given seed.
SampleSet sample_surface(const Mesh& mesh, std::size_t n, std::uint64_t seed);

/// Total surface area with the same quad split as sample_surface.
double surface_area(const Mesh& mesh);

/// Exact nearest-neighbour index over a fixed point set. Ties resolve to the
/// lowest point index so results match a brute-force scan.
class KdTree {
 public:
  explicit KdTree(std::span<const Vec3> points);

  struct Hit {
    std::size_t index = 0;
    double dist2 = 0.0;
  };
  Hit nearest(const Vec3& q) const;

 private:
  struct Node {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    int axis = -1;
    double split = 0.0;
  };

  int build(std::uint32_t begin, std::uint32_t end, int depth);
  void search(int node, const Vec3& q, Hit& best) const;

  std::vector<Vec3> points_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
};

struct DirectedNeighbours {
  /// Distance from each point of `from` to its nearest point of `to`.
  std::vector<double> dist;
  std::vector<std::size_t> index;
};

DirectedNeighbours nearest_neighbours(const SampleSet& from, const SampleSet& to);

struct ChamferHausdorff {
  double cd = 0.0;
  double hd = 0.0;
};

/// cd averages the two directed mean distances; hd is the larger directed max.
ChamferHausdorff chamfer_hausdorff(const SampleSet& a, const SampleSet& b);

/// Mean |n(p) . n(NN(p))| over both directions, averaged. Absolute value makes
/// the score independent of face winding.
double normal_consistency(const SampleSet& a, const SampleSet& b);

/// Harmonic mean of precision (a within tau of b) and recall (b within tau
/// of a); 0 when both are 0.
double f_score(const SampleSet& a, const SampleSet& b, double tau = 0.003);

struct GeometryMetrics {
  double nc = 0.0;
  double cd = 0.0;
  double hd = 0.0;
  double f1 = 0.0;
};

/// All four scores from one pair of sample sets; NN searches run once per
/// direction.
GeometryMetrics geometry_metrics(const SampleSet& a, const SampleSet& b,
                                 double tau = 0.003);

struct MetricReport {
  GeometryMetrics geometry;
  double comp_rate = 0.0;
  std::size_t transitions = 0;
  std::size_t strip_count = 0;
  std::size_t token_length = 0;
};

}  // namespace stripmesh
