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

#include "stripmesh/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <string>

#include "stripmesh/error.hpp"

namespace stripmesh::shapes {
namespace {

Vec3 normalized(const Vec3& v) { return v * (1.0 / std::sqrt(dot(v, v))); }

Vec3 centroid(const Mesh& m, const Face& f) {
  Vec3 c{0, 0, 0};
  for (Index v : f) c = c + m.positions[v];
  return c * (1.0 / f.degree);
}

Vec3 face_normal(const Mesh& m, const Face& f) {
  // Newell's method; exact for planar polygons, stable for slightly bent quads.
  Vec3 n{0, 0, 0};
  for (std::size_t i = 0; i < f.degree; ++i) {
    const Vec3& a = m.positions[f[i]];
    const Vec3& b = m.positions[f[(i + 1) % f.degree]];
    n[0] += (a[1] - b[1]) * (a[2] + b[2]);
    n[1] += (a[2] - b[2]) * (a[0] + b[0]);
    n[2] += (a[0] - b[0]) * (a[1] + b[1]);
  }
  return n;
}

void reverse(Face& f) { std::reverse(f.idx.begin(), f.idx.begin() + f.degree); }

// Flips faces whose normal points against `outward(centroid)`.
template <typename F>
void orient(Mesh& m, F&& outward) {
  for (Face& f : m.faces)
    if (dot(face_normal(m, f), outward(centroid(m, f))) < 0.0) reverse(f);
}

// Emits a quad (a, b, c, d) or its two triangles split along b-d.
void emit_cell(Mesh& m, bool quads, Index a, Index b, Index c, Index d) {
  if (quads) {
    m.faces.push_back({a, b, c, d});
  } else {
    m.faces.push_back({a, b, d});
    m.faces.push_back({b, c, d});
  }
}

void require_positive(int v, const char* what) {
  if (v <= 0)
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be > 0");
}

}  // namespace

Mesh grid(int nx, int ny, bool quads) {
  require_positive(nx, "nx");
  require_positive(ny, "ny");
  Mesh m;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      m.positions.push_back({double(i), double(j), 0.0});
  auto at = [&](int i, int j) { return static_cast<Index>(j * (nx + 1) + i); };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      emit_cell(m, quads, at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1));
  return m;
}

Mesh ribbon(int cells, bool quads) { return grid(1, cells, quads); }

Mesh icosphere(int subdivisions) {
  if (subdivisions < 0)
    throw Error(ErrorCode::kInvalidArgument, "subdivisions must be >= 0");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  Mesh m;
  for (Vec3 p : std::vector<Vec3>{{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
                                  {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
                                  {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}})
    m.positions.push_back(normalized(p));
  const int tris[20][3] = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10},
                           {0, 10, 11}, {1, 5, 9}, {5, 11, 4},  {11, 10, 2},
                           {10, 7, 6}, {7, 1, 8},  {3, 9, 4},   {3, 4, 2},
                           {3, 2, 6},  {3, 6, 8},  {3, 8, 9},   {4, 9, 5},
                           {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (const auto& f : tris)
    m.faces.push_back({Index(f[0]), Index(f[1]), Index(f[2])});

  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<Index, Index>, Index> mid;
    auto midpoint = [&](Index a, Index b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      const Index id = static_cast<Index>(m.positions.size());
      m.positions.push_back(normalized(m.positions[a] + m.positions[b]));
      mid.emplace(key, id);
      return id;
    };
    std::vector<Face> next;
    next.reserve(m.faces.size() * 4);
    for (const Face& f : m.faces) {
      const Index a = midpoint(f[0], f[1]);
      const Index b = midpoint(f[1], f[2]);
      const Index c = midpoint(f[2], f[0]);
      next.push_back({f[0], a, c});
      next.push_back({f[1], b, a});
      next.push_back({f[2], c, b});
      next.push_back({a, b, c});
    }
    m.faces = std::move(next);
  }
  orient(m, [](const Vec3& c) { return c; });
  return m;
}

Mesh torus(int major_segments, int minor_segments, bool quads,
           double major_radius, double minor_radius) {
  require_positive(major_segments - 2, "major_segments - 2");
  require_positive(minor_segments - 2, "minor_segments - 2");
  Mesh m;
  const double two_pi = 2.0 * std::numbers::pi;
  for (int i = 0; i < major_segments; ++i) {
    const double u = two_pi * i / major_segments;
    for (int j = 0; j < minor_segments; ++j) {
      const double v = two_pi * j / minor_segments;
      const double r = major_radius + minor_radius * std::cos(v);
      m.positions.push_back(
          {r * std::cos(u), minor_radius * std::sin(v), r * std::sin(u)});
    }
  }
  auto at = [&](int i, int j) {
    return static_cast<Index>((i % major_segments) * minor_segments +
                              (j % minor_segments));
  };
  for (int i = 0; i < major_segments; ++i)
    for (int j = 0; j < minor_segments; ++j)
      emit_cell(m, quads, at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1));
  orient(m, [&](const Vec3& c) {
    const double len = std::hypot(c[0], c[2]);
    const Vec3 ring{c[0] / len * major_radius, 0.0, c[2] / len * major_radius};
    return c - ring;
  });
  return m;
}

namespace {

// Boundary of a voxel set, each unit face split into res x res cells with
// outward winding. Lattice points are welded by integer coordinate.
Mesh voxel_surface(const std::set<std::array<int, 3>>& voxels, int res,
                   bool quads, bool project_to_sphere) {
  Mesh m;
  std::map<std::array<int, 3>, Index> lattice;
  auto vertex = [&](std::array<int, 3> p) {
    auto [it, inserted] =
        lattice.try_emplace(p, static_cast<Index>(m.positions.size()));
    if (inserted)
      m.positions.push_back({double(p[0]) / res, double(p[1]) / res,
                             double(p[2]) / res});
    return it->second;
  };
  for (const auto& vox : voxels) {
    for (int axis = 0; axis < 3; ++axis) {
      for (int sign : {-1, 1}) {
        auto nb = vox;
        nb[axis] += sign;
        if (voxels.count(nb)) continue;
        const int u = (axis + 1) % 3;
        const int v = (axis + 2) % 3;
        for (int p = 0; p < res; ++p) {
          for (int q = 0; q < res; ++q) {
            auto corner = [&](int du, int dv) {
              std::array<int, 3> c{};
              c[axis] = (vox[axis] + (sign > 0 ? 1 : 0)) * res;
              c[u] = vox[u] * res + p + du;
              c[v] = vox[v] * res + q + dv;
              return vertex(c);
            };
            const Index a = corner(0, 0), b = corner(1, 0), c = corner(1, 1),
                        d = corner(0, 1);
            if (sign > 0) emit_cell(m, quads, a, b, c, d);
            else emit_cell(m, quads, a, d, c, b);
          }
        }
      }
    }
  }
  if (project_to_sphere)
    for (Vec3& p : m.positions) p = normalized(p - Vec3{0.5, 0.5, 0.5});
  return m;
}

}  // namespace

Mesh l_solid(int res, bool quads) {
  require_positive(res, "res");
  return voxel_surface({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, res, quads, false);
}

Mesh quad_sphere(int res) {
  require_positive(res, "res");
  return voxel_surface({{0, 0, 0}}, res, true, true);
}

std::vector<Index> axis_charts(const Mesh& mesh) {
  std::vector<Index> charts;
  charts.reserve(mesh.faces.size());
  for (const Face& f : mesh.faces) {
    const Vec3 n = face_normal(mesh, f);
    int axis = 0;
    for (int a = 1; a < 3; ++a)
      if (std::abs(n[a]) > std::abs(n[axis])) axis = a;
    charts.push_back(static_cast<Index>(2 * axis + (n[axis] > 0 ? 1 : 0)));
  }
  return charts;
}

std::vector<Index> band_charts(const Mesh& mesh, int bands, int axis) {
  require_positive(bands, "bands");
  double lo = mesh.positions.front()[axis], hi = lo;
  for (const Vec3& p : mesh.positions) {
    lo = std::min(lo, p[axis]);
    hi = std::max(hi, p[axis]);
  }
  const double width = hi > lo ? (hi - lo) / bands : 1.0;
  std::vector<Index> charts;
  for (const Face& f : mesh.faces) {
    const int b = static_cast<int>((centroid(mesh, f)[axis] - lo) / width);
    charts.push_back(static_cast<Index>(std::clamp(b, 0, bands - 1)));
  }
  return charts;
}

Mesh with_chart_uvs(const Mesh& mesh, const std::vector<Index>& charts) {
  if (charts.size() != mesh.faces.size())
    throw Error(ErrorCode::kInvalidArgument, "one chart label per face needed");
  Mesh out = mesh;
  out.uv_coords.clear();
  out.face_uvs.clear();
  std::map<std::pair<Index, Index>, Index> uv_of;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    Face uv = mesh.faces[f];
    for (Index& v : uv.view()) {
      auto [it, inserted] = uv_of.try_emplace(
          {charts[f], v}, static_cast<Index>(out.uv_coords.size()));
      if (inserted) {
        const Vec3& p = mesh.positions[v];
        out.uv_coords.push_back({p[0] + 4.0 * charts[f], p[1] + p[2]});
      }
      v = it->second;
    }
    out.face_uvs.push_back(uv);
  }
  return out;
}

namespace {

Shape make(std::string name, Mesh mesh, std::vector<Index> charts) {
  return Shape{std::move(name), std::move(mesh), std::move(charts)};
}

}  // namespace

std::vector<Shape> triangle_corpus() {
  std::vector<Shape> out;
  for (int n : {2, 3, 4, 6, 8, 12, 16, 24, 32}) {
    Mesh m = grid(n, n, false);
    auto charts = band_charts(m, std::min(n, 4), 0);
    out.push_back(make("grid_" + std::to_string(n) + "x" + std::to_string(n),
                       std::move(m), std::move(charts)));
  }
  for (auto [nx, ny] : {std::pair{3, 7}, std::pair{12, 5}}) {
    Mesh m = grid(nx, ny, false);
    auto charts = band_charts(m, 3, 1);
    out.push_back(make("grid_" + std::to_string(nx) + "x" + std::to_string(ny),
                       std::move(m), std::move(charts)));
  }
  for (int n : {8, 32, 50, 100}) {
    Mesh m = ribbon(n, false);
    auto charts = band_charts(m, 2, 1);
    out.push_back(make("ribbon_" + std::to_string(n), std::move(m), std::move(charts)));
  }
  for (int s : {1, 2, 3}) {
    Mesh m = icosphere(s);
    auto charts = axis_charts(m);
    out.push_back(make("icosphere_" + std::to_string(s), std::move(m), std::move(charts)));
  }
  for (auto [a, b] : {std::pair{12, 6}, std::pair{24, 8}, std::pair{32, 12},
                      std::pair{48, 16}}) {
    Mesh m = torus(a, b, false);
    auto charts = band_charts(m, 4, 0);
    out.push_back(make("torus_" + std::to_string(a) + "x" + std::to_string(b),
                       std::move(m), std::move(charts)));
  }
  for (int r : {1, 2, 4, 8}) {
    Mesh m = l_solid(r, false);
    auto charts = axis_charts(m);
    out.push_back(make("l_solid_" + std::to_string(r), std::move(m), std::move(charts)));
  }
  return out;
}

std::vector<Shape> quad_corpus() {
  std::vector<Shape> out;
  for (int n : {2, 4, 8, 16, 32}) {
    Mesh m = grid(n, n, true);
    auto charts = band_charts(m, std::min(n, 4), 0);
    out.push_back(make("qgrid_" + std::to_string(n) + "x" + std::to_string(n),
                       std::move(m), std::move(charts)));
  }
  {
    Mesh m = grid(3, 7, true);
    auto charts = band_charts(m, 3, 1);
    out.push_back(make("qgrid_3x7", std::move(m), std::move(charts)));
  }
  for (int n : {8, 32, 100}) {
    Mesh m = ribbon(n, true);
    auto charts = band_charts(m, 2, 1);
    out.push_back(make("qribbon_" + std::to_string(n), std::move(m), std::move(charts)));
  }
  for (auto [a, b] : {std::pair{12, 6}, std::pair{24, 8}, std::pair{48, 16}}) {
    Mesh m = torus(a, b, true);
    auto charts = band_charts(m, 4, 0);
    out.push_back(make("qtorus_" + std::to_string(a) + "x" + std::to_string(b),
                       std::move(m), std::move(charts)));
  }
  for (int r : {2, 4, 8}) {
    Mesh m = quad_sphere(r);
    auto charts = axis_charts(m);
    out.push_back(make("qsphere_" + std::to_string(r), std::move(m), std::move(charts)));
  }
  for (int r : {1, 2, 4}) {
    Mesh m = l_solid(r, true);
    auto charts = axis_charts(m);
    out.push_back(make("ql_solid_" + std::to_string(r), std::move(m), std::move(charts)));
  }
  return out;
}

}  // namespace stripmesh::shapes
