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

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>

#include <CLI11.hpp>

#include "viewbayes/error.hpp"
#include "viewbayes/format.hpp"
#include "viewbayes/pipeline.hpp"

namespace viewbayes::cli {
namespace {

// Options parsed into temporaries and applied on top of the config file, so
// only flags the user actually passed override it.
class ConfigFlags {
 public:
  explicit ConfigFlags(CLI::App* app) : app_(app) {
    app_->add_option("--config", config_path_, "JSON config file (or a previous report.json)");
  }

  template <typename T>
  ConfigFlags& bind(const std::string& flag, T RunConfig::*member, const std::string& help) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app_->add_option(flag, *value, help);
    appliers_.push_back([opt, value, member](RunConfig& c) {
      if (opt->count()) c.*member = *value;
    });
    return *this;
  }

  template <typename T>
  ConfigFlags& bind(const std::string& flag, std::optional<T> RunConfig::*member, const std::string& help) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app_->add_option(flag, *value, help);
    appliers_.push_back([opt, value, member](RunConfig& c) {
      if (opt->count()) c.*member = *value;
    });
    return *this;
  }

  ConfigFlags& prior() {
    auto value = std::make_shared<std::vector<double>>();
    CLI::Option* opt = app_->add_option("--prior", *value, "initial Beta prior: ALPHA BETA")->expected(2);
    appliers_.push_back([opt, value](RunConfig& c) {
      if (opt->count()) {
        c.prior_alpha = (*value)[0];
        c.prior_beta = (*value)[1];
      }
    });
    return *this;
  }

  ConfigFlags& op() {
    auto value = std::make_shared<std::string>();
    CLI::Option* opt = app_->add_option("--op", *value, "fusion operator: product|max|min|algebraic_sum");
    appliers_.push_back([opt, value](RunConfig& c) {
      if (opt->count()) c.op = parse_fusion_operator(*value);
    });
    return *this;
  }

  // Precedence: flag > environment > config file > default.
  RunConfig resolve() const {
    RunConfig config = config_path_.empty() ? RunConfig{} : load_config_file(config_path_);
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) config.output_dir = env;
    for (const auto& apply : appliers_) apply(config);
    return config;
  }

 private:
  CLI::App* app_;
  std::string config_path_;
  std::vector<std::function<void(RunConfig&)>> appliers_;
};

void add_render_flags(ConfigFlags& flags) {
  flags.bind("--increment", &RunConfig::increment_deg, "ring increment in degrees (must divide 360)")
      .bind("--resolution", &RunConfig::resolution, "silhouette resolution in pixels")
      .bind("--grid-size", &RunConfig::grid_size, "descriptor occupancy grid side")
      .bind("--out", &RunConfig::output_dir, "output directory");
}

void print_report(std::ostream& out, const Json& report) {
  for (const auto& f : report.at("frames")) {
    const auto& post = f.at("posterior");
    out << "frame " << f.at("index").get<int>() << ": n=" << f.at("n").get<std::int64_t>()
        << " k=" << f.at("k").get<std::int64_t>();
    if (post.at("kind") == "beta") {
      out << " posterior=Beta(" << format_number(post.at("alpha").get<double>()) << ", "
          << format_number(post.at("beta").get<double>()) << ")";
    } else {
      out << " posterior=grid[" << post.at("grid_points").get<int>() << "]";
    }
    const auto& ci = f.at("credible_interval_95");
    out << " mean=" << std::fixed << std::setprecision(4) << f.at("mean").get<double>() << " ci95=["
        << ci.at(0).get<double>() << ", " << ci.at(1).get<double>() << "]" << std::defaultfloat
        << (f.at("confirmed").get<bool>() ? " confirmed" : "") << '\n';
  }
  const auto& conv = report.at("converged_at");
  out << "confirm_fraction=" << format_number(report.at("confirm_fraction").get<double>())
      << " converged_at=" << (conv.is_null() ? std::string("none") : std::to_string(conv.get<int>()))
      << "\ndecision: " << report.at("decision").get<std::string>() << '\n';
}

int decision_exit(const Json& report) {
  return report.at("decision") == "accepted" ? kExitOk : kExitReformulate;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bayesian recognition of 3D objects from their 2D aspects", "viewbayes"};
  app.require_subcommand(1);

  auto* aspects = app.add_subcommand("aspects", "view stability/likelihood profile and aspect partition of a ring");
  ConfigFlags aspects_flags(aspects);
  aspects_flags.bind("--mesh", &RunConfig::mesh, "OBJ path or generator (icosphere:3, cube, lbracket)")
      .bind("--epsilon", &RunConfig::view_epsilon, "descriptor distance for view likelihood")
      .bind("--boundary-quantile", &RunConfig::boundary_quantile, "quantile a boundary peak must exceed")
      .bind("--min-boundary-distance", &RunConfig::min_boundary_distance, "absolute floor for boundary peaks");
  add_render_flags(aspects_flags);
  bool dump_pgm = false;
  aspects->add_flag("--dump-pgm", dump_pgm, "also write prototype silhouettes as PGM");

  auto* library = app.add_subcommand("library", "render and save a labeled view library");
  ConfigFlags library_flags(library);
  library_flags.bind("--mesh", &RunConfig::mesh, "target mesh")
      .bind("--distractor", &RunConfig::distractors, "distractor mesh (repeatable)")
      .bind("--library", &RunConfig::library, "library file to write (default <out>/library.txt)");
  add_render_flags(library_flags);

  auto* recognize = app.add_subcommand("recognize", "run trial batches and chain the Bayesian updates");
  ConfigFlags recognize_flags(recognize);
  recognize_flags.bind("--mesh", &RunConfig::mesh, "target mesh")
      .bind("--distractor", &RunConfig::distractors, "distractor mesh (repeatable)")
      .bind("--tau", &RunConfig::tau, "max descriptor distance for a match")
      .bind("--jitter", &RunConfig::jitter_deg, "probe jitter in degrees")
      .bind("--batches", &RunConfig::batch_count, "number of batches")
      .bind("--batch-size", &RunConfig::batch_size, "trials per batch")
      .bind("--confirm-threshold", &RunConfig::confirm_threshold, "posterior mean that confirms a frame")
      .bind("--epsilon-conv", &RunConfig::epsilon_conv, "convergence tolerance on successive means")
      .bind("--grid", &RunConfig::grid_points, "grid points for non-product fusion")
      .bind("--seed", &RunConfig::seed, "random seed")
      .bind("--simulate", &RunConfig::simulate, "bypass rendering: Bernoulli(p) trials")
      .bind("--fixed-k", &RunConfig::fixed_k, "bypass rendering: every batch has k successes")
      .bind("--library", &RunConfig::library, "load a prebuilt library instead of rendering one")
      .prior()
      .op();
  add_render_flags(recognize_flags);

  auto* infer = app.add_subcommand("infer", "chain Beta-Binomial updates over given n:k batches");
  std::vector<double> infer_prior;
  std::vector<std::string> infer_batches;
  std::string infer_op = "product";
  int infer_grid = kDefaultFusionGridPoints;
  double infer_threshold = kDefaultConfirmThreshold;
  double infer_eps = kDefaultConvergenceEpsilon;
  std::string infer_out;
  infer->add_option("--prior", infer_prior, "initial Beta prior: ALPHA BETA")->expected(2)->required();
  infer->add_option("--batch", infer_batches, "batch as n:k (repeatable)");
  infer->add_option("--op", infer_op, "fusion operator: product|max|min|algebraic_sum");
  infer->add_option("--grid", infer_grid, "grid points for non-product fusion");
  infer->add_option("--confirm-threshold", infer_threshold, "posterior mean that confirms a frame");
  infer->add_option("--epsilon-conv", infer_eps, "convergence tolerance on successive means");
  infer->add_option("--out", infer_out, "also write report and frame files here");

  auto* report = app.add_subcommand("report", "summarize a report.json");
  std::string report_path;
  report->add_option("report", report_path, "path to report.json")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (aspects->parsed()) {
      const RunConfig config = aspects_flags.resolve();
      const auto result = cmd_aspects(config, dump_pgm);
      out << result.profile.size() << " views, " << result.partition.aspects.size() << " aspects, "
          << result.partition.boundaries.size() << " boundaries -> " << config.output_dir << '\n';
      return kExitOk;
    }
    if (library->parsed()) {
      const RunConfig config = library_flags.resolve();
      const auto lib = cmd_library(config);
      out << lib.size() << " library entries written\n";
      return kExitOk;
    }
    if (recognize->parsed()) {
      const RunConfig config = recognize_flags.resolve();
      const auto result = cmd_recognize(config);
      print_report(out, result.json);
      return decision_exit(result.json);
    }
    if (infer->parsed()) {
      if (infer_batches.empty()) {
        err << "error: infer needs at least one --batch n:k\n";
        return kExitUsage;
      }
      std::vector<BinomialObservation> batches;
      for (const auto& b : infer_batches) batches.push_back(parse_batch(b));
      SequentialOptions options;
      options.op = parse_fusion_operator(infer_op);
      options.grid_points = infer_grid;
      options.confirm_threshold = infer_threshold;
      options.epsilon_conv = infer_eps;
      std::optional<std::filesystem::path> dir;
      if (!infer_out.empty()) {
        dir = infer_out;
      } else if (const char* env = std::getenv(kOutputDirEnv); env && *env) {
        dir = env;
      }
      const auto result = cmd_infer(BetaParams(infer_prior[0], infer_prior[1]), batches, options, dir);
      out << result.json.dump(2) << '\n';
      return decision_exit(result.json);
    }
    if (report->parsed()) {
      std::ifstream in(report_path);
      if (!in) {
        err << "error: cannot open report '" << report_path << "'\n";
        return kExitUsage;
      }
      const Json json = Json::parse(in);
      print_report(out, json);
      return decision_exit(json);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace viewbayes::cli
