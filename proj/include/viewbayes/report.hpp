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

#ifndef VIEWBAYES_REPORT_HPP
#define VIEWBAYES_REPORT_HPP

#include <ostream>

#include <json.hpp>

#include "viewbayes/inference.hpp"
#include "viewbayes/viewanalysis.hpp"

namespace viewbayes {

using Json = nlohmann::ordered_json;

inline constexpr int kFrameCsvPoints = 201;

/// Columns q, prior_pdf, scaled_likelihood, posterior_pdf on a uniform grid.
void write_frame_csv(std::ostream& out, const PosteriorFrame& frame, int points = kFrameCsvPoints);

/// Columns q, density over the density's own grid.
void write_grid_csv(std::ostream& out, const GridDensity& density);

Json belief_to_json(const Belief& belief);
Json frame_to_json(const PosteriorFrame& frame);

/// Frames, confirm fraction, decision and convergence frame.
Json report_to_json(const RecognitionReport& report);

Json partition_to_json(const ViewProfile& profile, const AspectPartition& partition);

}  // namespace viewbayes

#endif  // VIEWBAYES_REPORT_HPP
