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

#ifndef VIEWBAYES_RECOGNIZE_HPP
#define VIEWBAYES_RECOGNIZE_HPP

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "viewbayes/geometry.hpp"
#include "viewbayes/inference.hpp"
#include "viewbayes/render.hpp"

namespace viewbayes {

inline constexpr double kDefaultTau = 0.2;
inline constexpr double kDefaultJitterDeg = 2.5;
inline constexpr int kLibraryFormatVersion = 1;

struct LabeledMesh {
  std::string label;
  Mesh mesh;  // normalized
};

/// Settings a library was rendered with; queries must match them.
struct LibraryFingerprint {
  int resolution = kDefaultResolution;
  int grid_size = kDefaultGridSize;
  double increment_deg = 5.0;

  Eigen::Index descriptor_length() const { return Eigen::Index{grid_size} * grid_size + kMomentFeatures; }
  bool operator==(const LibraryFingerprint&) const = default;
};

struct LibraryEntry {
  std::string label;
  Viewpoint viewpoint;
  ViewDescriptor descriptor;
};

/// Remembered views of known objects, in mesh order then ring order.
struct ViewLibrary {
  std::vector<LibraryEntry> entries;
  LibraryFingerprint fingerprint;

  std::size_t size() const { return entries.size(); }
};

struct Match {
  std::string label;
  double distance;
  std::size_t entry;
};

struct SimulatedSource {
  double p_success;
  std::uint64_t seed;
};

struct RenderedSource {
  std::uint64_t seed;
};

struct TrialBatch {
  std::vector<bool> outcomes;
  std::variant<RenderedSource, SimulatedSource> source;

  std::int64_t n() const { return static_cast<std::int64_t>(outcomes.size()); }
  std::int64_t k() const;
  BinomialObservation observation() const { return {n(), k()}; }
};

ViewLibrary build_library(const std::vector<LabeledMesh>& meshes, double increment_deg = 5.0,
                          int resolution = kDefaultResolution, int grid_size = kDefaultGridSize);

/// Nearest library entry, lowest index on ties; nullopt when the nearest
/// distance exceeds tau.
std::optional<Match> classify(const ViewLibrary& library, const ViewDescriptor& query, double tau);

/// n probes at uniformly chosen ring views, each rotated by a uniform jitter
/// in [-jitter_deg, jitter_deg]. A trial succeeds iff the probe classifies
/// as `target_label`.
TrialBatch run_trial_batch(const ViewLibrary& library, const std::string& target_label, const Mesh& mesh,
                           int n, double jitter_deg, double tau, std::uint64_t seed);

/// n seeded Bernoulli(p_success) draws, bypassing rendering.
TrialBatch simulate_trial_batch(int n, double p_success, std::uint64_t seed);

/// Text format, one entry per line:
///   viewbayes-library <version>
///   resolution <r>
///   grid_size <g>
///   increment <deg>
///   entries <count>
///   <label> TAB <ring_angle> TAB <v_1> <v_2> ... <v_D>
void save_library(std::ostream& out, const ViewLibrary& library);
ViewLibrary load_library(std::istream& in);

}  // namespace viewbayes

#endif  // VIEWBAYES_RECOGNIZE_HPP
