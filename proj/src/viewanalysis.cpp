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

#include "viewbayes/viewanalysis.hpp"

#include <algorithm>
#include <cmath>

#include "viewbayes/error.hpp"
#include "viewbayes/format.hpp"
#include "parallel.hpp"

namespace viewbayes {

std::vector<int> AspectPartition::aspect_of(int ring_size) const {
  std::vector<int> ids(static_cast<std::size_t>(ring_size), 0);
  for (std::size_t a = 0; a < aspects.size(); ++a) {
    for (int k = 0; k < aspects[a].count; ++k) {
      ids[static_cast<std::size_t>((aspects[a].first + k) % ring_size)] = static_cast<int>(a);
    }
  }
  return ids;
}

ViewProfile profile_from_descriptors(ViewRing ring, std::vector<ViewDescriptor> descriptors,
                                     double epsilon) {
  if (!(epsilon > 0.0)) throw ContractError("view-likelihood epsilon must be positive");
  const auto n = static_cast<Eigen::Index>(ring.size());
  if (n == 0 || static_cast<Eigen::Index>(descriptors.size()) != n) {
    throw ContractError("need exactly one descriptor per ring view");
  }

  Eigen::MatrixXd dist(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    dist(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      dist(i, j) = dist(j, i) = descriptor_distance(descriptors[static_cast<std::size_t>(i)],
                                                    descriptors[static_cast<std::size_t>(j)]);
    }
  }

  ViewProfile p;
  p.ring = std::move(ring);
  p.descriptors = std::move(descriptors);
  p.successive_distance.resize(n);
  p.stability.resize(n);
  p.likelihood.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index next = (i + 1) % n;
    const Eigen::Index prev = (i + n - 1) % n;
    p.successive_distance(i) = dist(i, next);
    p.stability(i) = 1.0 / (1.0 + 0.5 * (dist(i, prev) + dist(i, next)));
    p.likelihood(i) = static_cast<double>((dist.row(i).array() <= epsilon).count()) / static_cast<double>(n);
  }
  return p;
}

ViewProfile build_profile(const Mesh& mesh, const ViewRing& ring, int resolution, double epsilon,
                          int grid_size) {
  if (!(epsilon > 0.0)) throw ContractError("view-likelihood epsilon must be positive");
  const std::size_t n = ring.size();
  std::vector<ViewDescriptor> descriptors(n);

  detail::parallel_for(n, [&](std::size_t i) {
    descriptors[i] = extract_descriptor(render_silhouette(mesh, ring.viewpoints[i], resolution), grid_size);
  });

  return profile_from_descriptors(ring, std::move(descriptors), epsilon);
}

double sample_quantile(const Eigen::VectorXd& values, double q) {
  if (values.size() == 0) throw ContractError("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw ContractError("quantile level must lie in [0, 1]");
  std::vector<double> sorted(values.data(), values.data() + values.size());
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

AspectPartition partition_aspects(const Eigen::VectorXd& successive_distance,
                                  const Eigen::VectorXd& stability, double boundary_quantile,
                                  double min_distance) {
  if (!(boundary_quantile > 0.0 && boundary_quantile < 1.0)) {
    throw ContractError("boundary quantile must lie in (0, 1)");
  }
  const int n = static_cast<int>(successive_distance.size());
  if (n == 0 || stability.size() != n) throw ContractError("profile lists must be nonempty and equal length");

  const double threshold = sample_quantile(successive_distance, boundary_quantile);
  AspectPartition part;
  for (int i = 0; i < n; ++i) {
    const double d = successive_distance(i);
    const double left = successive_distance((i + n - 1) % n);
    const double right = successive_distance((i + 1) % n);
    if (d > left && d >= right && d > threshold && d > min_distance) part.boundaries.push_back(i);
  }

  const auto m = part.boundaries.size();
  if (m == 0) {
    part.aspects.push_back({0, n});
  } else {
    // Aspect j ends at boundary j, so aspect 0 always holds view 0.
    for (std::size_t j = 0; j < m; ++j) {
      const int prev = part.boundaries[(j + m - 1) % m];
      const int first = (prev + 1) % n;
      const int count = m == 1 ? n : ((part.boundaries[j] - prev) % n + n) % n;
      part.aspects.push_back({first, count});
    }
  }

  for (const auto& aspect : part.aspects) {
    int best = aspect.first;
    for (int k = 1; k < aspect.count; ++k) {
      const int idx = (aspect.first + k) % n;
      if (stability(idx) > stability(best)) best = idx;
    }
    part.prototypes.push_back(best);
  }
  return part;
}

AspectPartition partition_aspects(const ViewProfile& profile, double boundary_quantile,
                                  double min_distance) {
  return partition_aspects(profile.successive_distance, profile.stability, boundary_quantile,
                           min_distance);
}

void write_profile_csv(std::ostream& out, const ViewProfile& profile, const AspectPartition& partition) {
  const int n = static_cast<int>(profile.size());
  const auto ids = partition.aspect_of(n);
  out << "ring_angle,successive_distance,stability,likelihood,aspect_id,is_prototype,is_boundary\n";
  for (int i = 0; i < n; ++i) {
    const auto& vp = profile.ring.viewpoints[static_cast<std::size_t>(i)];
    const bool proto = std::find(partition.prototypes.begin(), partition.prototypes.end(), i) !=
                       partition.prototypes.end();
    const bool boundary = std::find(partition.boundaries.begin(), partition.boundaries.end(), i) !=
                          partition.boundaries.end();
    out << format_number(vp.ring_angle.value_or(0.0)) << ',' << format_number(profile.successive_distance(i))
        << ',' << format_number(profile.stability(i)) << ',' << format_number(profile.likelihood(i)) << ','
        << ids[static_cast<std::size_t>(i)] << ',' << (proto ? 1 : 0) << ',' << (boundary ? 1 : 0) << '\n';
  }
}

}  // namespace viewbayes
