// Copyright 2026 The viewbayes Authors
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

#include "viewbayes/procedural.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <utility>
#include <vector>

#include "viewbayes/error.hpp"

namespace viewbayes {
namespace {

Mesh assemble(const std::vector<Eigen::Vector3d>& verts, const std::vector<Eigen::Vector3i>& tris,
              std::string name) {
  Mesh mesh;
  mesh.name = std::move(name);
  mesh.vertices.resize(3, static_cast<Eigen::Index>(verts.size()));
  for (std::size_t i = 0; i < verts.size(); ++i) mesh.vertices.col(static_cast<Eigen::Index>(i)) = verts[i];
  mesh.triangles.resize(3, static_cast<Eigen::Index>(tris.size()));
  for (std::size_t i = 0; i < tris.size(); ++i) mesh.triangles.col(static_cast<Eigen::Index>(i)) = tris[i];
  return mesh;
}

}  // namespace

Mesh make_icosphere(int subdivisions) {
  if (subdivisions < 0 || subdivisions > 7) {
    throw ContractError("icosphere subdivision level must be in [0, 7]");
  }
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> verts = {
      {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
      {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
      {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1},
  };
  for (auto& v : verts) v.normalize();
  std::vector<Eigen::Vector3i> tris = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };

  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<int, int>, int> midpoints;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      if (auto it = midpoints.find(key); it != midpoints.end()) return it->second;
      verts.push_back((verts[static_cast<std::size_t>(a)] + verts[static_cast<std::size_t>(b)]).normalized());
      const int idx = static_cast<int>(verts.size()) - 1;
      midpoints.emplace(key, idx);
      return idx;
    };
    std::vector<Eigen::Vector3i> next;
    next.reserve(tris.size() * 4);
    for (const auto& f : tris) {
      const int ab = midpoint(f(0), f(1));
      const int bc = midpoint(f(1), f(2));
      const int ca = midpoint(f(2), f(0));
      next.emplace_back(f(0), ab, ca);
      next.emplace_back(f(1), bc, ab);
      next.emplace_back(f(2), ca, bc);
      next.emplace_back(ab, bc, ca);
    }
    tris = std::move(next);
  }
  return assemble(verts, tris, "icosphere:" + std::to_string(subdivisions));
}

Mesh make_cube() {
  std::vector<Eigen::Vector3d> verts;
  for (int i = 0; i < 8; ++i) {
    verts.emplace_back(i & 1 ? 1.0 : -1.0, i & 2 ? 1.0 : -1.0, i & 4 ? 1.0 : -1.0);
  }
  const std::vector<Eigen::Vector3i> tris = {
      {0, 2, 3}, {0, 3, 1},  // z = -1
      {4, 5, 7}, {4, 7, 6},  // z = +1
      {0, 1, 5}, {0, 5, 4},  // y = -1
      {2, 6, 7}, {2, 7, 3},  // y = +1
      {0, 4, 6}, {0, 6, 2},  // x = -1
      {1, 3, 7}, {1, 7, 5},  // x = +1
  };
  return assemble(verts, tris, "cube");
}

Mesh make_lbracket() {
  // L profile in the xy plane, extruded along z. Vertex 0 sees every other
  // profile vertex, so a fan triangulates the cap.
  const std::array<Eigen::Vector2d, 6> profile = {{
      {0.0, 0.0}, {2.0, 0.0}, {2.0, 0.6}, {0.6, 0.6}, {0.6, 1.4}, {0.0, 1.4},
  }};
  constexpr double depth = 0.8;
  const int n = static_cast<int>(profile.size());

  std::vector<Eigen::Vector3d> verts;
  for (const auto& p : profile) verts.emplace_back(p.x(), p.y(), 0.0);
  for (const auto& p : profile) verts.emplace_back(p.x(), p.y(), depth);

  std::vector<Eigen::Vector3i> tris;
  for (int i = 1; i + 1 < n; ++i) {
    tris.emplace_back(0, i + 1, i);
    tris.emplace_back(n, n + i, n + i + 1);
  }
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    tris.emplace_back(i, j, n + j);
    tris.emplace_back(i, n + j, n + i);
  }
  return assemble(verts, tris, "lbracket");
}

std::optional<Mesh> procedural_mesh(std::string_view name) {
  if (name == "cube") return make_cube();
  if (name == "lbracket") return make_lbracket();
  constexpr std::string_view prefix = "icosphere";
  if (name.substr(0, prefix.size()) == prefix) {
    auto rest = name.substr(prefix.size());
    if (rest.empty()) return make_icosphere(3);
    if (rest.front() != ':') return std::nullopt;
    rest.remove_prefix(1);
    int level = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), level);
    if (ec != std::errc() || ptr != rest.data() + rest.size()) {
      throw ContractError("bad icosphere level in '" + std::string(name) + "'");
    }
    return make_icosphere(level);
  }
  return std::nullopt;
}

Mesh resolve_mesh(const std::string& source) {
  if (auto mesh = procedural_mesh(source)) return normalize_to_unit_sphere(*mesh);
  std::ifstream in(source);
  if (!in) throw Error("cannot open mesh file '" + source + "'");
  return normalize_to_unit_sphere(load_mesh(in, source));
}

}  // namespace viewbayes
