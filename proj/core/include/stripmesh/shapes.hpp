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

#include <string>
#include <vector>

#include "stripmesh/mesh.hpp"

namespace stripmesh::shapes {

/// A generated surface and an optional chart label per face.
struct Shape {
  std::string name;
  Mesh mesh;
  std::vector<Index> charts;
};

/// nx by ny cells in the z = 0 plane, counter-clockwise seen from +z.
/// Triangles split each cell along its (x+1, y) - (x, y+1) diagonal.
Mesh grid(int nx, int ny, bool quads);

/// A single column of `cells` cells running along +y.
Mesh ribbon(int cells, bool quads);

/// Unit icosahedron refined `subdivisions` times, outward winding.
Mesh icosphere(int subdivisions);

/// Torus around the y axis with outward winding.
Mesh torus(int major_segments, int minor_segments, bool quads,
           double major_radius = 1.0, double minor_radius = 0.35);

/// Closed surface of an L made of three unit cubes, every cube face cut into
/// res x res cells.
Mesh l_solid(int res, bool quads);

/// Cube with subdivided faces projected onto the unit sphere (quads).
Mesh quad_sphere(int res);

/// Chart label per face from the dominant axis of its normal (six charts).
std::vector<Index> axis_charts(const Mesh& mesh);

/// Chart label per face from `bands` equal slabs of the centroid along `axis`.
std::vector<Index> band_charts(const Mesh& mesh, int bands, int axis);

/// Gives every (chart, vertex) pair its own uv index so that uv_islands
/// recovers the connected pieces of each chart.
Mesh with_chart_uvs(const Mesh& mesh, const std::vector<Index>& charts);

/// Fixed synthetic corpora: grids, ribbons, icospheres, tori and the L solid
/// as triangles; grids, ribbons, tori, quad spheres and the L solid as quads.
std::vector<Shape> triangle_corpus();
std::vector<Shape> quad_corpus();

}  // namespace stripmesh::shapes
