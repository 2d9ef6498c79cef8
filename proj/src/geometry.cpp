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

#include "viewbayes/geometry.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "viewbayes/error.hpp"

namespace viewbayes {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Number of steps of `increment` in `span` degrees; throws unless exact.
int steps_in(double span, double increment_deg) {
  if (!std::isfinite(increment_deg) || increment_deg <= 0.0) {
    throw InvalidIncrementError("increment must be a positive finite number of degrees");
  }
  const double ratio = span / increment_deg;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(rounded * increment_deg - span) > 1e-9) {
    std::ostringstream msg;
    msg << "increment " << increment_deg << " does not divide " << span << " degrees";
    throw InvalidIncrementError(msg.str());
  }
  return static_cast<int>(rounded);
}

bool parse_double(std::string_view token, double& out) {
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool parse_int(std::string_view token, long& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

}  // namespace

void validate_mesh(const Mesh& mesh) {
  if (mesh.triangle_count() == 0) {
    throw ContractError("mesh '" + mesh.name + "' has no triangles");
  }
  const Eigen::Index n = mesh.vertex_count();
  for (Eigen::Index t = 0; t < mesh.triangle_count(); ++t) {
    const auto tri = mesh.triangles.col(t);
    for (int c = 0; c < 3; ++c) {
      if (tri(c) < 0 || tri(c) >= n) {
        throw ContractError("triangle " + std::to_string(t) + " references a missing vertex");
      }
    }
    if (tri(0) == tri(1) || tri(1) == tri(2) || tri(0) == tri(2)) {
      throw ContractError("triangle " + std::to_string(t) + " repeats a vertex index");
    }
  }
}

double max_vertex_norm(const Mesh& mesh) {
  if (mesh.vertex_count() == 0) return 0.0;
  return mesh.vertices.colwise().norm().maxCoeff();
}

Viewpoint ring_viewpoint(double angle_deg) {
  const double a = angle_deg * kDegToRad;
  Viewpoint vp;
  vp.direction = Eigen::Vector3d(std::sin(a), 0.0, std::cos(a));
  vp.up = Eigen::Vector3d::UnitY();
  vp.ring_angle = angle_deg;
  return vp;
}

Mesh load_mesh(std::istream& source, std::string name) {
  std::vector<Eigen::Vector3d> verts;
  std::vector<Eigen::Vector3i> tris;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(source, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag)) continue;

    if (tag == "v") {
      Eigen::Vector3d p;
      std::string tok;
      for (int c = 0; c < 3; ++c) {
        if (!(fields >> tok) || !parse_double(tok, p(c)) || !std::isfinite(p(c))) {
          throw ParseError(line_no, "vertex needs three finite coordinates");
        }
      }
      // An optional w component is allowed and ignored.
      verts.push_back(p);
    } else if (tag == "f") {
      std::vector<int> poly;
      std::string tok;
      while (fields >> tok) {
        // "i", "i/t", "i//n", "i/t/n": only the position index matters.
        const std::string_view head(tok.data(), std::min(tok.find('/'), tok.size()));
        long idx = 0;
        if (!parse_int(head, idx) || idx == 0) {
          throw ParseError(line_no, "bad face index '" + tok + "'");
        }
        const long count = static_cast<long>(verts.size());
        const long zero_based = idx > 0 ? idx - 1 : count + idx;
        if (zero_based < 0 || zero_based >= count) {
          throw ParseError(line_no, "face index " + std::to_string(idx) + " out of range (" +
                                        std::to_string(count) + " vertices so far)");
        }
        poly.push_back(static_cast<int>(zero_based));
      }
      if (poly.size() < 3) throw ParseError(line_no, "face needs at least three vertices");
      for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
        const Eigen::Vector3i tri(poly[0], poly[i], poly[i + 1]);
        if (tri(0) == tri(1) || tri(1) == tri(2) || tri(0) == tri(2)) {
          throw ParseError(line_no, "face repeats a vertex index");
        }
        tris.push_back(tri);
      }
    }
    // vn, vt, usemtl, o, g, s, ... are ignored.
  }

  if (tris.empty()) throw EmptyMeshError("mesh '" + name + "' has no faces");

  Mesh mesh;
  mesh.name = std::move(name);
  mesh.vertices.resize(3, static_cast<Eigen::Index>(verts.size()));
  for (std::size_t i = 0; i < verts.size(); ++i) mesh.vertices.col(static_cast<Eigen::Index>(i)) = verts[i];
  mesh.triangles.resize(3, static_cast<Eigen::Index>(tris.size()));
  for (std::size_t i = 0; i < tris.size(); ++i) mesh.triangles.col(static_cast<Eigen::Index>(i)) = tris[i];
  return mesh;
}

Mesh normalize_to_unit_sphere(const Mesh& mesh) {
  if (mesh.vertex_count() == 0 || mesh.triangle_count() == 0) {
    throw EmptyMeshError("cannot normalize an empty mesh");
  }
  Mesh out = mesh;
  const Eigen::Vector3d centroid = mesh.vertices.rowwise().mean();
  out.vertices.colwise() -= centroid;
  const double radius = out.vertices.colwise().norm().maxCoeff();
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DegenerateMeshError("all vertices of mesh '" + mesh.name + "' coincide");
  }
  out.vertices /= radius;
  return out;
}

ViewRing ring_viewpoints(double increment_deg) {
  const int count = steps_in(360.0, increment_deg);
  ViewRing ring;
  ring.increment_deg = increment_deg;
  ring.viewpoints.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) ring.viewpoints.push_back(ring_viewpoint(i * increment_deg));
  return ring;
}

std::vector<WeightedViewpoint> sphere_viewpoints(double increment_deg) {
  const int longitudes = steps_in(360.0, increment_deg);
  const int bands = steps_in(180.0, increment_deg);

  std::vector<WeightedViewpoint> out;
  out.reserve(static_cast<std::size_t>((bands - 1) * longitudes + 2));

  // A pole stands for the polar cap down to half a step away.
  const double cap = (1.0 - std::sin((90.0 - increment_deg / 2.0) * kDegToRad)) / 2.0;

  Viewpoint south;
  south.direction = -Eigen::Vector3d::UnitY();
  south.up = Eigen::Vector3d::UnitZ();
  out.push_back({south, cap});

  for (int b = 1; b < bands; ++b) {
    const double lat = -90.0 + b * increment_deg;
    const double lo = (lat - increment_deg / 2.0) * kDegToRad;
    const double hi = (lat + increment_deg / 2.0) * kDegToRad;
    const double band_weight = (std::sin(hi) - std::sin(lo)) / 2.0;
    const double phi = lat * kDegToRad;
    for (int l = 0; l < longitudes; ++l) {
      const double lambda = l * increment_deg * kDegToRad;
      Viewpoint vp;
      vp.direction = Eigen::Vector3d(std::cos(phi) * std::sin(lambda), std::sin(phi),
                                     std::cos(phi) * std::cos(lambda));
      vp.up = (Eigen::Vector3d::UnitY() - vp.direction.y() * vp.direction).normalized();
      out.push_back({vp, band_weight / longitudes});
    }
  }

  Viewpoint north;
  north.direction = Eigen::Vector3d::UnitY();
  north.up = -Eigen::Vector3d::UnitZ();
  out.push_back({north, cap});
  return out;
}

}  // namespace viewbayes
