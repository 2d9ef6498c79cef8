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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <tuple>

#include "cli.hpp"
#include "oracles.hpp"
#include "viewbayes/inference.hpp"
#include "viewbayes/pipeline.hpp"
#include "viewbayes/procedural.hpp"
#include "viewbayes/rng.hpp"
#include "viewbayes/viewanalysis.hpp"

namespace fs = std::filesystem;
using namespace viewbayes;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void check(const std::string& id, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = budget_s <= 0.0 || secs < budget_s;
  const bool pass = o.ok && in_time;
  if (!pass) ++failures;
  std::ostringstream time;
  time << std::fixed << std::setprecision(2) << secs << " s";
  if (budget_s > 0.0) time << " / " << budget_s << " s";
  std::cout << (pass ? "PASS " : "FAIL ") << id << "  " << title << "  [" << time.str() << "]  " << o.detail
            << (in_time ? "" : "  (over time budget)") << std::endl;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "viewbayes");
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str();
  return code;
}

PosteriorFrame synthetic_frame(int index, bool confirmed) {
  return {index, BetaParams(1, 1), BinomialObservation(1, 1), BetaParams(1, 1), 0.5, 0.0, {0.0, 1.0}, confirmed};
}

}  // namespace

int main() {
  check("AC1", "Beta(4,4) + 80 of 100 -> Beta(84,24), library and CLI", 1.0, [] {
    const BetaParams post = posterior_update({4, 4}, {100, 80});
    std::string out;
    const int code = run_cli({"infer", "--prior", "4", "4", "--batch", "100:80"}, &out);
    const Json j = Json::parse(out);
    const Json& p = j.at("frames").at(0).at("posterior");
    const bool ok = post.alpha() == 84.0 && post.beta() == 24.0 && code == 0 && p.at("alpha").get<double>() == 84.0 &&
                    p.at("beta").get<double>() == 24.0;
    return Outcome{ok, "posterior Beta(" + std::to_string(post.alpha()) + ", " + std::to_string(post.beta()) + ")"};
  });

  check("AC2", "decision rule: 5/5 and 4/5 accepted, 3/5 reformulate", 0.0, [] {
    std::string detail;
    bool ok = true;
    for (int confirmed : {5, 4, 3}) {
      std::vector<PosteriorFrame> frames;
      for (int i = 0; i < 5; ++i) frames.push_back(synthetic_frame(i + 1, i < confirmed));
      const auto r = assemble_report(frames, 0.5, 0.02);
      const Decision want = confirmed >= 4 ? Decision::accepted : Decision::reformulate;
      ok = ok && r.decision == want;
      detail += std::to_string(confirmed) + "/5=" + std::string(to_string(r.decision)) + " ";
    }
    return Outcome{ok, detail};
  });

  check("AC3", "simulated p=0.75, 100 seeds: final mean in [0.70,0.80] and converged", 5.0, [] {
    int good = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      std::vector<BinomialObservation> batches;
      for (std::uint64_t i = 0; i < 5; ++i) batches.push_back(simulate_trial_batch(100, 0.75, batch_seed(seed, i)).observation());
      const auto r = sequential_run({4, 4}, batches);
      const double mean = r.frames.back().mean;
      if (mean >= 0.70 && mean <= 0.80 && r.converged_at && *r.converged_at <= 5) ++good;
    }
    return Outcome{good >= 95, std::to_string(good) + "/100 seeds"};
  });

  check("AC4", "product fusion on 10001 points matches conjugate posterior (20 cases)", 10.0, [] {
    const std::tuple<double, double, int, int> cases[] = {
        {4, 4, 100, 80},   {1, 1, 10, 5},      {1, 1, 100, 50}, {2, 2, 20, 3},     {2, 5, 30, 10},
        {10, 10, 500, 375}, {1, 1, 1000, 750}, {3, 7, 40, 40},  {1, 1, 100, 2},    {5, 5, 0, 0},
        {1.5, 2.5, 10, 4}, {4, 4, 1000, 800},  {2, 2, 50, 49},  {1, 1, 5, 2},      {8, 2, 60, 45},
        {20, 20, 100, 30}, {3, 3, 3, 0},       {1, 1, 200, 100}, {6, 1.5, 12, 6},  {1, 1, 10000, 7500}};
    double worst = 0.0;
    for (const auto& [a, b, n, k] : cases) {
      const GridDensity g = fuse_on_grid(BetaParams(a, b), {n, k}, FusionOperator::product, 10001);
      const BetaParams post = posterior_update({a, b}, {n, k});
      for (Eigen::Index i = 0; i < g.grid_points(); ++i) {
        worst = std::max(worst, std::abs(g.values()(i) - beta_pdf(post, SuccessProbability(g.q(i)))));
      }
    }
    std::ostringstream d;
    d << "sup-norm " << std::scientific << std::setprecision(2) << worst;
    return Outcome{worst <= 1e-6, d.str()};
  });

  check("AC5", "normalization: pmf sums, Beta integrals, uniform marginal", 0.0, [] {
    double pmf_err = 0.0, pdf_err = 0.0, marg_err = 0.0;
    for (int n : {0, 1, 2, 5, 100}) {
      for (double q : {0.0, 0.3, 0.75, 1.0}) {
        double s = 0.0;
        for (int k = 0; k <= n; ++k) s += binomial_pmf({n, k}, SuccessProbability(q));
        pmf_err = std::max(pmf_err, std::abs(s - 1.0));
      }
    }
    for (const auto& [a, b] : {std::pair{1.0, 1.0}, std::pair{4.0, 4.0}, std::pair{84.0, 24.0}, std::pair{144.0, 64.0}}) {
      const double integral = oracle::trapezoid([&](double q) { return beta_pdf({a, b}, SuccessProbability(q)); }, 0, 1, 100000);
      pdf_err = std::max(pdf_err, std::abs(integral - 1.0));
    }
    for (int k = 0; k <= 9; ++k) marg_err = std::max(marg_err, std::abs(marginal_likelihood({1, 1}, {9, k}) - 0.1));
    std::ostringstream d;
    d << std::scientific << std::setprecision(2) << "pmf " << pmf_err << ", pdf " << pdf_err << ", marginal " << marg_err;
    return Outcome{pmf_err <= 1e-10 && pdf_err <= 1e-6 && marg_err <= 1e-8, d.str()};
  });

  check("AC6", "Bayes identity at 100 interior points for (4,4,100,80)", 0.0, [] {
    const BetaParams prior(4, 4);
    const BinomialObservation obs(100, 80);
    const BetaParams post = posterior_update(prior, obs);
    const double m = marginal_likelihood(prior, obs);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const SuccessProbability q((i + 0.5) / 100.0);
      const double lhs = binomial_pmf(obs, q) * beta_pdf(prior, q);
      const double rhs = m * beta_pdf(post, q);
      worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
    std::ostringstream d;
    d << "max relative error " << std::scientific << std::setprecision(2) << worst;
    return Outcome{worst <= 1e-8, d.str()};
  });

  check("AC7", "icosphere fill and ring agreement, cube has 4 aspects (256 px)", 30.0, [] {
    const Mesh sphere = resolve_mesh("icosphere:3");
    const ViewRing ring = ring_viewpoints(5);
    double fill_err = 0.0;
    for (const auto& vp : ring.viewpoints) {
      fill_err = std::max(fill_err, std::abs(render_silhouette(sphere, vp, 256).fill_fraction() - std::numbers::pi / 4));
    }
    const ViewProfile p = build_profile(sphere, ring, 256);
    double worst = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j) worst = std::max(worst, descriptor_distance(p.descriptors[i], p.descriptors[j]));
    const auto cube = partition_aspects(build_profile(resolve_mesh("cube"), ring, 256), 0.9);
    std::ostringstream d;
    d << "fill error " << std::setprecision(3) << fill_err << ", max pairwise " << worst << ", cube aspects "
      << cube.aspects.size();
    return Outcome{fill_err <= 0.02 && worst <= 0.05 && cube.aspects.size() == 4, d.str()};
  });

  check("AC8", "recognize twice with the same config and seed: identical bytes", 0.0, [] {
    const fs::path dir = fs::temp_directory_path() / "viewbayes-acceptance" / "determinism";
    fs::remove_all(dir);
    const std::vector<std::string> args = {"recognize", "--seed", "42", "--out", dir.string()};
    const int first = run_cli(args);
    std::vector<std::pair<fs::path, std::string>> snapshot;
    for (const auto& e : fs::directory_iterator(dir)) snapshot.emplace_back(e.path(), slurp(e.path()));
    const int second = run_cli(args);
    bool same = first == second && first != 2 && !snapshot.empty();
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
      (void)e;
      ++files;
    }
    same = same && files == snapshot.size();
    for (const auto& [path, bytes] : snapshot) same = same && slurp(path) == bytes;
    return Outcome{same, std::to_string(snapshot.size()) + " files compared"};
  });

  return failures == 0 ? 0 : 1;
}
