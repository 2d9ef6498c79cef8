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

#include "viewbayes/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "viewbayes/error.hpp"
#include "viewbayes/procedural.hpp"
#include "viewbayes/rng.hpp"

namespace viewbayes {
namespace fs = std::filesystem;
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ContractError("invalid config: " + what);
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

fs::path prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

std::string frame_stem(int index) {
  std::string digits = std::to_string(index);
  if (digits.size() < 2) digits.insert(0, 2 - digits.size(), '0');
  return "frame_" + digits;
}

void write_report_files(const fs::path& dir, const RecognizeResult& result) {
  prepare_dir(dir);
  open_output(dir / "report.json") << result.json.dump(2) << '\n';
  for (const auto& frame : result.report.frames) {
    const std::string stem = frame_stem(frame.index);
    auto csv = open_output(dir / (stem + ".csv"));
    write_frame_csv(csv, frame);
    open_output(dir / (stem + ".json")) << frame_to_json(frame).dump(2) << '\n';
  }
  const auto& last = result.report.frames.back();
  if (const auto* grid = std::get_if<GridDensity>(&last.posterior)) {
    auto csv = open_output(dir / "posterior_grid.csv");
    write_grid_csv(csv, *grid);
  }
}

Json batches_to_json(const std::vector<BatchRecord>& batches) {
  Json out = Json::array();
  for (std::size_t i = 0; i < batches.size(); ++i) {
    Json b{{"batch", i + 1}, {"n", batches[i].observation.n()}, {"k", batches[i].observation.k()},
           {"source", batches[i].source}};
    b["seed"] = batches[i].seed ? Json(*batches[i].seed) : Json(nullptr);
    out.push_back(std::move(b));
  }
  return out;
}

Json merge(Json head, const Json& tail) {
  for (const auto& [key, value] : tail.items()) head[key] = value;
  return head;
}

std::vector<LabeledMesh> resolve_meshes(const RunConfig& config) {
  std::vector<LabeledMesh> meshes{{config.mesh, resolve_mesh(config.mesh)}};
  std::set<std::string> seen{config.mesh};
  for (const auto& d : config.distractors) {
    if (!seen.insert(d).second) throw ContractError("mesh '" + d + "' is listed more than once");
    meshes.push_back({d, resolve_mesh(d)});
  }
  return meshes;
}

template <typename T>
void read_field(const Json& json, const char* key, T& field) {
  if (auto it = json.find(key); it != json.end()) field = it->template get<T>();
}

template <typename T>
void read_field(const Json& json, const char* key, std::optional<T>& field) {
  if (auto it = json.find(key); it != json.end()) {
    if (it->is_null()) {
      field.reset();
    } else {
      field = it->template get<T>();
    }
  }
}

}  // namespace

void validate(const RunConfig& c) {
  require(!c.mesh.empty(), "mesh source is empty");
  require(std::isfinite(c.increment_deg) && c.increment_deg > 0.0, "increment_deg must be positive");
  require(c.resolution >= 16, "resolution must be >= 16");
  require(c.grid_size >= 4 && c.grid_size <= 32, "grid_size must be in [4, 32]");
  require(c.tau >= 0.0, "tau must be >= 0");
  require(c.jitter_deg >= 0.0, "jitter_deg must be >= 0");
  require(c.view_epsilon > 0.0, "view_epsilon must be > 0");
  require(c.boundary_quantile > 0.0 && c.boundary_quantile < 1.0, "boundary_quantile must be in (0, 1)");
  require(c.min_boundary_distance >= 0.0, "min_boundary_distance must be >= 0");
  require(c.batch_count >= 1, "batch_count must be >= 1");
  require(c.batch_size >= 1, "batch_size must be >= 1");
  require(c.prior_alpha > 0.0 && std::isfinite(c.prior_alpha), "prior_alpha must be > 0");
  require(c.prior_beta > 0.0 && std::isfinite(c.prior_beta), "prior_beta must be > 0");
  require(c.confirm_threshold >= 0.0 && c.confirm_threshold <= 1.0, "confirm_threshold must be in [0, 1]");
  require(c.epsilon_conv > 0.0, "epsilon_conv must be > 0");
  require(c.grid_points >= 101, "grid_points must be >= 101");
  require(!c.output_dir.empty(), "output_dir is empty");
  if (c.simulate) require(*c.simulate >= 0.0 && *c.simulate <= 1.0, "simulate must be in [0, 1]");
  if (c.fixed_k) require(*c.fixed_k >= 0 && *c.fixed_k <= c.batch_size, "fixed_k must be in [0, batch_size]");
  require(!(c.simulate && c.fixed_k), "simulate and fixed_k are mutually exclusive");
  ring_viewpoints(c.increment_deg);  // throws on non-divisors
}

Json config_to_json(const RunConfig& c) {
  Json j;
  j["mesh"] = c.mesh;
  j["distractors"] = c.distractors;
  j["increment_deg"] = c.increment_deg;
  j["resolution"] = c.resolution;
  j["grid_size"] = c.grid_size;
  j["tau"] = c.tau;
  j["jitter_deg"] = c.jitter_deg;
  j["view_epsilon"] = c.view_epsilon;
  j["boundary_quantile"] = c.boundary_quantile;
  j["min_boundary_distance"] = c.min_boundary_distance;
  j["batch_count"] = c.batch_count;
  j["batch_size"] = c.batch_size;
  j["prior_alpha"] = c.prior_alpha;
  j["prior_beta"] = c.prior_beta;
  j["confirm_threshold"] = c.confirm_threshold;
  j["epsilon_conv"] = c.epsilon_conv;
  j["operator"] = std::string(to_string(c.op));
  j["grid_points"] = c.grid_points;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  j["simulate"] = c.simulate ? Json(*c.simulate) : Json(nullptr);
  j["fixed_k"] = c.fixed_k ? Json(*c.fixed_k) : Json(nullptr);
  j["library"] = c.library ? Json(*c.library) : Json(nullptr);
  return j;
}

RunConfig config_from_json(const Json& json, RunConfig c) {
  if (!json.is_object()) throw ContractError("config must be a JSON object");
  if (json.contains("config") && json.contains("frames")) return config_from_json(json.at("config"), c);

  static const std::set<std::string> known = {
      "mesh", "distractors", "increment_deg", "resolution", "grid_size", "tau", "jitter_deg",
      "view_epsilon", "boundary_quantile", "min_boundary_distance", "batch_count", "batch_size",
      "prior_alpha", "prior_beta", "confirm_threshold", "epsilon_conv", "operator", "grid_points",
      "seed", "output_dir", "simulate", "fixed_k", "library"};
  for (const auto& [key, value] : json.items()) {
    if (!known.count(key)) throw ContractError("unknown config key '" + key + "'");
  }
  try {
    read_field(json, "mesh", c.mesh);
    read_field(json, "distractors", c.distractors);
    read_field(json, "increment_deg", c.increment_deg);
    read_field(json, "resolution", c.resolution);
    read_field(json, "grid_size", c.grid_size);
    read_field(json, "tau", c.tau);
    read_field(json, "jitter_deg", c.jitter_deg);
    read_field(json, "view_epsilon", c.view_epsilon);
    read_field(json, "boundary_quantile", c.boundary_quantile);
    read_field(json, "min_boundary_distance", c.min_boundary_distance);
    read_field(json, "batch_count", c.batch_count);
    read_field(json, "batch_size", c.batch_size);
    read_field(json, "prior_alpha", c.prior_alpha);
    read_field(json, "prior_beta", c.prior_beta);
    read_field(json, "confirm_threshold", c.confirm_threshold);
    read_field(json, "epsilon_conv", c.epsilon_conv);
    if (json.contains("operator")) c.op = parse_fusion_operator(json.at("operator").get<std::string>());
    read_field(json, "grid_points", c.grid_points);
    read_field(json, "seed", c.seed);
    read_field(json, "output_dir", c.output_dir);
    read_field(json, "simulate", c.simulate);
    read_field(json, "fixed_k", c.fixed_k);
    read_field(json, "library", c.library);
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("bad config value: ") + e.what());
  }
  return c;
}

RunConfig load_config_file(const fs::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path.string() + "'");
  Json json;
  try {
    json = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return config_from_json(json, std::move(base));
}

AspectsResult cmd_aspects(const RunConfig& config, bool dump_pgm) {
  validate(config);
  const Mesh mesh = resolve_mesh(config.mesh);
  const ViewRing ring = ring_viewpoints(config.increment_deg);
  AspectsResult result{build_profile(mesh, ring, config.resolution, config.view_epsilon, config.grid_size), {}};
  result.partition = partition_aspects(result.profile, config.boundary_quantile, config.min_boundary_distance);

  const fs::path dir = prepare_dir(config.output_dir);
  {
    auto csv = open_output(dir / "profile.csv");
    write_profile_csv(csv, result.profile, result.partition);
  }
  Json partition = partition_to_json(result.profile, result.partition);
  partition = merge(Json{{"mesh", config.mesh}, {"boundary_quantile", config.boundary_quantile}}, partition);
  open_output(dir / "partition.json") << partition.dump(2) << '\n';

  if (dump_pgm) {
    for (std::size_t a = 0; a < result.partition.prototypes.size(); ++a) {
      const auto& vp = ring.viewpoints[static_cast<std::size_t>(result.partition.prototypes[a])];
      auto pgm = open_output(dir / ("prototype_" + std::to_string(a) + ".pgm"));
      write_pgm(pgm, render_silhouette(mesh, vp, config.resolution));
    }
  }
  return result;
}

ViewLibrary cmd_library(const RunConfig& config) {
  validate(config);
  const ViewLibrary library =
      build_library(resolve_meshes(config), config.increment_deg, config.resolution, config.grid_size);
  const fs::path target = config.library ? fs::path(*config.library) : fs::path(config.output_dir) / "library.txt";
  if (target.has_parent_path()) prepare_dir(target.parent_path());
  auto out = open_output(target);
  save_library(out, library);
  return library;
}

RecognizeResult cmd_recognize(const RunConfig& config) {
  validate(config);
  std::vector<BatchRecord> batches;
  batches.reserve(static_cast<std::size_t>(config.batch_count));

  if (config.simulate) {
    for (int i = 0; i < config.batch_count; ++i) {
      const auto seed = batch_seed(config.seed, static_cast<std::uint64_t>(i));
      batches.push_back({simulate_trial_batch(config.batch_size, *config.simulate, seed).observation(), "simulated", seed});
    }
  } else if (config.fixed_k) {
    for (int i = 0; i < config.batch_count; ++i) {
      batches.push_back({BinomialObservation(config.batch_size, *config.fixed_k), "fixed", std::nullopt});
    }
  } else {
    const auto meshes = resolve_meshes(config);
    ViewLibrary library;
    if (config.library) {
      std::ifstream in(*config.library);
      if (!in) throw Error("cannot open library file '" + *config.library + "'");
      library = load_library(in);
      const LibraryFingerprint expected{config.resolution, config.grid_size, config.increment_deg};
      if (!(library.fingerprint == expected)) {
        throw ContractError("library '" + *config.library + "' was built with different render settings");
      }
    } else {
      library = build_library(meshes, config.increment_deg, config.resolution, config.grid_size);
    }
    for (int i = 0; i < config.batch_count; ++i) {
      const auto seed = batch_seed(config.seed, static_cast<std::uint64_t>(i));
      const TrialBatch batch = run_trial_batch(library, config.mesh, meshes.front().mesh, config.batch_size,
                                               config.jitter_deg, config.tau, seed);
      batches.push_back({batch.observation(), "rendered", seed});
    }
  }

  std::vector<BinomialObservation> observations;
  for (const auto& b : batches) observations.push_back(b.observation);
  SequentialOptions options;
  options.confirm_threshold = config.confirm_threshold;
  options.epsilon_conv = config.epsilon_conv;
  options.op = config.op;
  options.grid_points = config.grid_points;

  RecognizeResult result{std::move(batches),
                         sequential_run(BetaParams(config.prior_alpha, config.prior_beta), observations, options),
                         {}};
  result.json = merge(Json{{"config", config_to_json(config)}, {"batches", batches_to_json(result.batches)}},
                      report_to_json(result.report));
  write_report_files(config.output_dir, result);
  return result;
}

RecognizeResult cmd_infer(const BetaParams& prior, const std::vector<BinomialObservation>& batches,
                          const SequentialOptions& options, const std::optional<fs::path>& output_dir) {
  RecognizeResult result;
  for (const auto& b : batches) result.batches.push_back({b, "given", std::nullopt});
  result.report = sequential_run(prior, batches, options);
  Json head{{"prior", {{"alpha", prior.alpha()}, {"beta", prior.beta()}}},
            {"operator", std::string(to_string(options.op))},
            {"grid_points", options.grid_points},
            {"confirm_threshold", options.confirm_threshold},
            {"epsilon_conv", options.epsilon_conv},
            {"batches", batches_to_json(result.batches)}};
  result.json = merge(std::move(head), report_to_json(result.report));
  if (output_dir) write_report_files(*output_dir, result);
  return result;
}

BinomialObservation parse_batch(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ContractError("batch '" + text + "' must look like n:k");
  std::int64_t n = 0;
  std::int64_t k = 0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  auto r1 = std::from_chars(begin, begin + colon, n);
  auto r2 = std::from_chars(begin + colon + 1, end, k);
  if (r1.ec != std::errc() || r1.ptr != begin + colon || r2.ec != std::errc() || r2.ptr != end) {
    throw ContractError("batch '" + text + "' must look like n:k with integer counts");
  }
  return BinomialObservation(n, k);
}

}  // namespace viewbayes
