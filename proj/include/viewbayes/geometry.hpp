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

#ifndef VIEWBAYES_GEOMETRY_HPP
#define VIEWBAYES_GEOMETRY_HPP

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace viewbayes {

using Vertices = Eigen::Matrix<double, 3, Eigen::Dynamic>;
using Triangles = Eigen::Matrix<int, 3, Eigen::Dynamic>;

/// Triangle mesh. Columns of `vertices` are points, columns of `triangles`
/// are 0-based vertex indices.
struct Mesh {
  Vertices vertices;
  Triangles triangles;
  std::string name;

  Eigen::Index vertex_count() const { return vertices.cols(); }
  Eigen::Index triangle_count() const { return triangles.cols(); }
};

/// Throws ContractError unless every index is in range, no triangle repeats
/// an index and there is at least one triangle.
void validate_mesh(const Mesh& mesh);

/// Largest vertex distance from the origin.
double max_vertex_norm(const Mesh& mesh);

/// Camera placed on the view sphere at `direction`, looking at the origin.
/// The image's vertical axis is `up`.
struct Viewpoint {
  Eigen::Vector3d direction;
  Eigen::Vector3d up;
  std::optional<double> ring_angle;  // degrees, [0, 360)
};

/// Viewpoint on the ground-plane ring (y = 0) at `angle_deg`, up = +y.
/// Angle 0 looks from +z, angle 90 from +x.
Viewpoint ring_viewpoint(double angle_deg);

struct ViewRing {
  double increment_deg = 0.0;
  std::vector<Viewpoint> viewpoints;

  std::size_t size() const { return viewpoints.size(); }
};

struct WeightedViewpoint {
  Viewpoint viewpoint;
  double weight;  // share of the sphere's area
};

/// Parses the `v`/`f` subset of Wavefront OBJ. Polygon faces are split into
/// triangle fans. Negative (relative) indices are accepted.
Mesh load_mesh(std::istream& source, std::string name = "mesh");

/// Translates the vertex centroid to the origin and scales so the farthest
/// vertex lies on the unit sphere.
Mesh normalize_to_unit_sphere(const Mesh& mesh);

ViewRing ring_viewpoints(double increment_deg);

/// Latitude-longitude grid with both poles. Weights are the spherical area of
/// the latitude band each sample stands for, split evenly across longitudes.
std::vector<WeightedViewpoint> sphere_viewpoints(double increment_deg);

}  // namespace viewbayes

#endif  // VIEWBAYES_GEOMETRY_HPP
