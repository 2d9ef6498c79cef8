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

#ifndef VIEWBAYES_RENDER_HPP
#define VIEWBAYES_RENDER_HPP

#include <cstdint>
#include <ostream>

#include <Eigen/Core>

#include "viewbayes/geometry.hpp"

namespace viewbayes {

using Occupancy = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr int kDefaultResolution = 256;
inline constexpr int kDefaultGridSize = 8;
inline constexpr int kMomentFeatures = 4;

/// Binary silhouette. Row 0 is the top of the image (+up); column 0 is the
/// left edge. The viewport spans [-1, 1] on both axes.
struct AspectImage {
  Occupancy pixels;
  Viewpoint viewpoint;

  int width() const { return static_cast<int>(pixels.cols()); }
  int height() const { return static_cast<int>(pixels.rows()); }
  Eigen::Index set_count() const { return pixels.cast<Eigen::Index>().sum(); }
  double fill_fraction() const {
    return static_cast<double>(set_count()) / static_cast<double>(pixels.size());
  }
};

/// grid_size^2 occupancy fractions (row-major, centred on the silhouette
/// centroid) followed by four moment features: area fraction, eta20+eta02,
/// |eta20-eta02| and |eta11|.
struct ViewDescriptor {
  Eigen::VectorXd values;
  int grid_size = 0;

  Eigen::Index size() const { return values.size(); }
};

/// Orthographic silhouette of a normalized mesh. A pixel is set iff its
/// centre lies inside (or on the edge of) some projected triangle.
AspectImage render_silhouette(const Mesh& mesh, const Viewpoint& viewpoint,
                              int resolution = kDefaultResolution);

ViewDescriptor extract_descriptor(const AspectImage& image, int grid_size = kDefaultGridSize);

/// Euclidean distance divided by sqrt(D).
double descriptor_distance(const ViewDescriptor& a, const ViewDescriptor& b);

/// Binary PGM (P5), set pixels written as 255.
void write_pgm(std::ostream& out, const AspectImage& image);

}  // namespace viewbayes

#endif  // VIEWBAYES_RENDER_HPP
