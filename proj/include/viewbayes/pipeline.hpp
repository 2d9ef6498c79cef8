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

// End-to-end runs: mesh -> views -> recognition trials -> chained inference,
// with every result written as CSV/JSON under an output directory.

#ifndef VIEWBAYES_PIPELINE_HPP
#define VIEWBAYES_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "viewbayes/inference.hpp"
#include "viewbayes/recognize.hpp"
#include "viewbayes/report.hpp"
#include "viewbayes/viewanalysis.hpp"

namespace viewbayes {

/// Environment variable that overrides the configured output directory.
inline constexpr const char* kOutputDirEnv = "VIEWBAYES_OUTPUT_DIR";

struct RunConfig {
  std::string mesh = "icosphere:3";
  std::vector<std::string> distractors = {"cube"};
  double increment_deg = 5.0;
  int resolution = kDefaultResolution;
  int grid_size = kDefaultGridSize;
  double tau = kDefaultTau;
  double jitter_deg = kDefaultJitterDeg;
  double view_epsilon = kDefaultViewEpsilon;
  double boundary_quantile = kDefaultBoundaryQuantile;
  double min_boundary_distance = kDefaultMinBoundaryDistance;
  int batch_count = 5;
  int batch_size = 100;
  double prior_alpha = 4.0;
  double prior_beta = 4.0;
  double confirm_threshold = kDefaultConfirmThreshold;
  double epsilon_conv = kDefaultConvergenceEpsilon;
  FusionOperator op = FusionOperator::product;
  int grid_points = kDefaultFusionGridPoints;
  std::uint64_t seed = 42;
  std::string output_dir = "viewbayes-out";
  std::optional<double> simulate;      // Bernoulli channel instead of rendering
  std::optional<std::int64_t> fixed_k; // every batch reports exactly k successes
  std::optional<std::string> library;  // prebuilt library file

  bool operator==(const RunConfig&) const = default;
};

/// Throws ContractError naming the first out-of-range field.
void validate(const RunConfig& config);

Json config_to_json(const RunConfig& config);

/// Missing keys keep their defaults; unknown keys are rejected. A report
/// JSON is accepted too, in which case its embedded "config" is used.
RunConfig config_from_json(const Json& json, RunConfig base = {});

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});

struct AspectsResult {
  ViewProfile profile;
  AspectPartition partition;
};

/// Writes profile.csv and partition.json (plus prototype_<id>.pgm silhouettes
/// when `dump_pgm` is set).
AspectsResult cmd_aspects(const RunConfig& config, bool dump_pgm = false);

/// Builds the library of the target and distractor meshes and writes
/// library.txt.
ViewLibrary cmd_library(const RunConfig& config);

struct BatchRecord {
  BinomialObservation observation;
  std::string source;  // rendered | simulated | fixed
  std::optional<std::uint64_t> seed;
};

struct RecognizeResult {
  std::vector<BatchRecord> batches;
  RecognitionReport report;
  Json json;  // contents of report.json
};

/// Produces the batch counts (rendered, simulated or fixed), chains the
/// inference and writes report.json, frame_<i>.csv and frame_<i>.json.
RecognizeResult cmd_recognize(const RunConfig& config);

/// Pure inference on given batches. Writes the same files as cmd_recognize
/// when `output_dir` is set; non-product operators also get
/// posterior_grid.csv for the final frame.
RecognizeResult cmd_infer(const BetaParams& prior, const std::vector<BinomialObservation>& batches,
                          const SequentialOptions& options, const std::optional<std::filesystem::path>& output_dir);

/// Parses "n:k".
BinomialObservation parse_batch(const std::string& text);

}  // namespace viewbayes

#endif  // VIEWBAYES_PIPELINE_HPP
