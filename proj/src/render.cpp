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

#include "viewbayes/render.hpp"

#include <algorithm>
#include <cmath>

#include "viewbayes/error.hpp"

namespace viewbayes {
namespace {

inline double edge(const Eigen::Vector2d& a, const Eigen::Vector2d& b, double px, double py) {
  return (b.x() - a.x()) * (py - a.y()) - (b.y() - a.y()) * (px - a.x());
}

}  // namespace

AspectImage render_silhouette(const Mesh& mesh, const Viewpoint& viewpoint, int resolution) {
  if (resolution < 16) throw ContractError("resolution must be at least 16 pixels");
  validate_mesh(mesh);
  if (max_vertex_norm(mesh) > 1.0 + 1e-6) {
    throw ContractError("mesh '" + mesh.name + "' is not normalized into the unit sphere");
  }

  const Eigen::Vector3d dir = viewpoint.direction.normalized();
  const Eigen::Vector3d up = viewpoint.up.normalized();
  const Eigen::Vector3d right = up.cross(dir);

  // Rows of `basis` project a point onto the image's (u, v) axes.
  Eigen::Matrix<double, 2, 3> basis;
  basis.row(0) = right.transpose();
  basis.row(1) = up.transpose();
  const Eigen::Matrix<double, 2, Eigen::Dynamic> projected = basis * mesh.vertices;

  AspectImage image;
  image.viewpoint = viewpoint;
  image.pixels = Occupancy::Zero(resolution, resolution);

  const double step = 2.0 / resolution;
  const auto to_col = [&](double u) { return (u + 1.0) / step - 0.5; };
  const auto to_row = [&](double v) { return (1.0 - v) / step - 0.5; };

  for (Eigen::Index t = 0; t < mesh.triangle_count(); ++t) {
    const Eigen::Vector2d a = projected.col(mesh.triangles(0, t));
    const Eigen::Vector2d b = projected.col(mesh.triangles(1, t));
    const Eigen::Vector2d c = projected.col(mesh.triangles(2, t));
    const double area = edge(a, b, c.x(), c.y());
    if (std::abs(area) < 1e-14) continue;  // edge-on
    const double sign = area > 0.0 ? 1.0 : -1.0;

    const double umin = std::min({a.x(), b.x(), c.x()});
    const double umax = std::max({a.x(), b.x(), c.x()});
    const double vmin = std::min({a.y(), b.y(), c.y()});
    const double vmax = std::max({a.y(), b.y(), c.y()});
    const int c0 = std::max(0, static_cast<int>(std::ceil(to_col(umin))));
    const int c1 = std::min(resolution - 1, static_cast<int>(std::floor(to_col(umax))));
    const int r0 = std::max(0, static_cast<int>(std::ceil(to_row(vmax))));
    const int r1 = std::min(resolution - 1, static_cast<int>(std::floor(to_row(vmin))));

    for (int r = r0; r <= r1; ++r) {
      const double py = 1.0 - (r + 0.5) * step;
      for (int col = c0; col <= c1; ++col) {
        if (image.pixels(r, col)) continue;
        const double px = -1.0 + (col + 0.5) * step;
        if (sign * edge(a, b, px, py) >= 0.0 && sign * edge(b, c, px, py) >= 0.0 &&
            sign * edge(c, a, px, py) >= 0.0) {
          image.pixels(r, col) = 1;
        }
      }
    }
  }
  return image;
}

ViewDescriptor extract_descriptor(const AspectImage& image, int grid_size) {
  if (grid_size < 4 || grid_size > 32) throw ContractError("grid_size must be in [4, 32]");
  const int w = image.width();
  const int h = image.height();
  if (w != h || w < 16) throw ContractError("aspect image must be square and at least 16 pixels");

  const double step = 2.0 / w;
  double count = 0.0;
  double su = 0.0;
  double sv = 0.0;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!image.pixels(r, c)) continue;
      count += 1.0;
      su += -1.0 + (c + 0.5) * step;
      sv += 1.0 - (r + 0.5) * step;
    }
  }
  if (count == 0.0) throw EmptySilhouetteError("silhouette has no set pixels");
  const double cu = su / count;
  const double cv = sv / count;

  const int cells = grid_size * grid_size;
  ViewDescriptor desc;
  desc.grid_size = grid_size;
  desc.values = Eigen::VectorXd::Zero(cells + kMomentFeatures);

  const double cell = 2.0 / grid_size;
  double m20 = 0.0, m02 = 0.0, m11 = 0.0;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!image.pixels(r, c)) continue;
      const double du = -1.0 + (c + 0.5) * step - cu;
      const double dv = 1.0 - (r + 0.5) * step - cv;
      m20 += du * du;
      m02 += dv * dv;
      m11 += du * dv;
      const int gc = static_cast<int>(std::floor((du + 1.0) / cell));
      const int gr = static_cast<int>(std::floor((1.0 - dv) / cell));
      if (gc >= 0 && gc < grid_size && gr >= 0 && gr < grid_size) {
        desc.values(gr * grid_size + gc) += 1.0;
      }
    }
  }
  const double pixels_per_cell = static_cast<double>(w) * w / cells;
  desc.values.head(cells) = (desc.values.head(cells) / pixels_per_cell).cwiseMin(1.0);

  // Scale-normalized central moments: eta_pq = mu_pq / A^2 for p + q = 2.
  const double norm = count * count * step * step;
  desc.values(cells + 0) = count / (static_cast<double>(w) * h);
  desc.values(cells + 1) = (m20 + m02) / norm;
  desc.values(cells + 2) = std::abs(m20 - m02) / norm;
  desc.values(cells + 3) = std::abs(m11) / norm;
  return desc;
}

double descriptor_distance(const ViewDescriptor& a, const ViewDescriptor& b) {
  if (a.size() != b.size() || a.size() == 0) {
    throw ContractError("descriptor lengths differ (" + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()) + ")");
  }
  return (a.values - b.values).norm() / std::sqrt(static_cast<double>(a.size()));
}

void write_pgm(std::ostream& out, const AspectImage& image) {
  out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
  for (int r = 0; r < image.height(); ++r) {
    for (int c = 0; c < image.width(); ++c) {
      out.put(image.pixels(r, c) ? static_cast<char>(255) : '\0');
    }
  }
}

}  // namespace viewbayes
