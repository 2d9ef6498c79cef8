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

#include "viewbayes/report.hpp"

#include "viewbayes/error.hpp"
#include "viewbayes/format.hpp"

namespace viewbayes {

void write_frame_csv(std::ostream& out, const PosteriorFrame& frame, int points) {
  if (points < 2) throw ContractError("frame export needs at least two grid points");
  out << "q,prior_pdf,scaled_likelihood,posterior_pdf\n";
  for (int i = 0; i < points; ++i) {
    const double q = static_cast<double>(i) / (points - 1);
    out << format_number(q) << ',' << format_number(belief_density(frame.prior, q)) << ','
        << format_number(scaled_likelihood(frame.observation, q)) << ','
        << format_number(belief_density(frame.posterior, q)) << '\n';
  }
}

void write_grid_csv(std::ostream& out, const GridDensity& density) {
  out << "q,density\n";
  for (Eigen::Index i = 0; i < density.grid_points(); ++i) {
    out << format_number(density.q(i)) << ',' << format_number(density.values()(i)) << '\n';
  }
}

Json belief_to_json(const Belief& belief) {
  if (const auto* beta = std::get_if<BetaParams>(&belief)) {
    return Json{{"kind", "beta"}, {"alpha", beta->alpha()}, {"beta", beta->beta()}};
  }
  const auto& grid = std::get<GridDensity>(belief);
  return Json{{"kind", "grid"}, {"grid_points", grid.grid_points()}};
}

Json frame_to_json(const PosteriorFrame& frame) {
  return Json{
      {"index", frame.index},
      {"prior", belief_to_json(frame.prior)},
      {"n", frame.observation.n()},
      {"k", frame.observation.k()},
      {"posterior", belief_to_json(frame.posterior)},
      {"mean", frame.mean},
      {"variance", frame.variance},
      {"credible_interval_95", {frame.credible_interval_95.lo, frame.credible_interval_95.hi}},
      {"confirmed", frame.confirmed},
  };
}

Json report_to_json(const RecognitionReport& report) {
  Json frames = Json::array();
  for (const auto& f : report.frames) frames.push_back(frame_to_json(f));
  Json out;
  out["frames"] = std::move(frames);
  out["confirm_fraction"] = report.confirm_fraction;
  out["decision"] = std::string(to_string(report.decision));
  out["converged_at"] = report.converged_at ? Json(*report.converged_at) : Json(nullptr);
  return out;
}

Json partition_to_json(const ViewProfile& profile, const AspectPartition& partition) {
  const auto angle = [&](int i) {
    return profile.ring.viewpoints[static_cast<std::size_t>(i)].ring_angle.value_or(0.0);
  };
  Json boundaries = Json::array();
  for (int b : partition.boundaries) {
    boundaries.push_back({{"after_view", b}, {"ring_angle", angle(b)}});
  }
  Json aspects = Json::array();
  for (std::size_t a = 0; a < partition.aspects.size(); ++a) {
    const auto& range = partition.aspects[a];
    const int proto = partition.prototypes[a];
    aspects.push_back({{"id", a},
                       {"first_view", range.first},
                       {"view_count", range.count},
                       {"prototype_view", proto},
                       {"prototype_angle", angle(proto)},
                       {"prototype_stability", profile.stability(proto)}});
  }
  return Json{{"increment_deg", profile.ring.increment_deg},
              {"view_count", profile.size()},
              {"boundaries", std::move(boundaries)},
              {"aspects", std::move(aspects)}};
}

}  // namespace viewbayes
