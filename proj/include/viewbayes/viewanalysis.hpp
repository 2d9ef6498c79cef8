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

#ifndef VIEWBAYES_VIEWANALYSIS_HPP
#define VIEWBAYES_VIEWANALYSIS_HPP

#include <ostream>
#include <vector>

#include <Eigen/Core>

#include "viewbayes/geometry.hpp"
#include "viewbayes/render.hpp"

namespace viewbayes {

inline constexpr double kDefaultViewEpsilon = 0.05;
inline constexpr double kDefaultBoundaryQuantile = 0.9;
/// Successive distances at or below this are treated as rasterization noise
/// and never start an aspect.
inline constexpr double kDefaultMinBoundaryDistance = 0.01;

/// Per-view stability and likelihood around a view ring.
struct ViewProfile {
  ViewRing ring;
  std::vector<ViewDescriptor> descriptors;
  Eigen::VectorXd successive_distance;  // d(i, i+1 mod N)
  Eigen::VectorXd stability;            // 1 / (1 + mean neighbour distance)
  Eigen::VectorXd likelihood;           // #{j : d(i,j) <= eps} / N

  std::size_t size() const { return ring.size(); }
};

/// Cyclic run of ring indices [first, first + count) mod N.
struct AspectRange {
  int first = 0;
  int count = 0;

  bool contains(int index, int ring_size) const {
    return ((index - first) % ring_size + ring_size) % ring_size < count;
  }
};

struct AspectPartition {
  std::vector<int> boundaries;  // boundary lies between view i and i+1
  std::vector<AspectRange> aspects;
  std::vector<int> prototypes;  // one per aspect

  /// Aspect id of every ring view.
  std::vector<int> aspect_of(int ring_size) const;
};

/// Fills stability and likelihood from precomputed descriptors.
ViewProfile profile_from_descriptors(ViewRing ring, std::vector<ViewDescriptor> descriptors,
                                     double epsilon = kDefaultViewEpsilon);

ViewProfile build_profile(const Mesh& mesh, const ViewRing& ring, int resolution = kDefaultResolution,
                          double epsilon = kDefaultViewEpsilon, int grid_size = kDefaultGridSize);

/// Linear-interpolation sample quantile (type 7).
double sample_quantile(const Eigen::VectorXd& values, double q);

/// Places a boundary after view i when successive_distance[i] is a cyclic
/// peak (strictly above its left neighbour, at least its right one), exceeds
/// the `boundary_quantile` sample quantile and exceeds `min_distance`.
/// The prototype of each aspect is its most stable view, first in aspect
/// order on ties.
AspectPartition partition_aspects(const Eigen::VectorXd& successive_distance,
                                  const Eigen::VectorXd& stability,
                                  double boundary_quantile = kDefaultBoundaryQuantile,
                                  double min_distance = kDefaultMinBoundaryDistance);

AspectPartition partition_aspects(const ViewProfile& profile,
                                  double boundary_quantile = kDefaultBoundaryQuantile,
                                  double min_distance = kDefaultMinBoundaryDistance);

/// Columns: ring_angle, successive_distance, stability, likelihood,
/// aspect_id, is_prototype, is_boundary.
void write_profile_csv(std::ostream& out, const ViewProfile& profile, const AspectPartition& partition);

}  // namespace viewbayes

#endif  // VIEWBAYES_VIEWANALYSIS_HPP
