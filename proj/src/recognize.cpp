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

#include "viewbayes/recognize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "viewbayes/error.hpp"
#include "viewbayes/format.hpp"
#include "viewbayes/rng.hpp"
#include "parallel.hpp"

namespace viewbayes {
namespace {

double wrap_degrees(double angle) {
  double a = std::fmod(angle, 360.0);
  if (a < 0.0) a += 360.0;
  return a == 360.0 ? 0.0 : a;
}

double parse_number(const std::string& token, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
    throw ParseError(line, "expected a number, got '" + token + "'");
  }
  return value;
}

std::string header_value(std::istream& in, const std::string& key, std::size_t& line_no) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(line_no + 1, "missing '" + key + "' header");
  ++line_no;
  std::istringstream fields(line);
  std::string got, value;
  if (!(fields >> got >> value) || got != key) throw ParseError(line_no, "expected '" + key + " <value>'");
  return value;
}

}  // namespace

std::int64_t TrialBatch::k() const { return std::count(outcomes.begin(), outcomes.end(), true); }

ViewLibrary build_library(const std::vector<LabeledMesh>& meshes, double increment_deg, int resolution,
                          int grid_size) {
  if (meshes.empty()) throw ContractError("a view library needs at least one mesh");
  const ViewRing ring = ring_viewpoints(increment_deg);

  ViewLibrary library;
  library.fingerprint = {resolution, grid_size, increment_deg};
  library.entries.resize(meshes.size() * ring.size());
  for (std::size_t m = 0; m < meshes.size(); ++m) {
    if (meshes[m].label.find_first_of("\t\n\r") != std::string::npos || meshes[m].label.empty()) {
      throw ContractError("mesh labels must be nonempty and free of tabs and newlines");
    }
  }
  detail::parallel_for(library.entries.size(), [&](std::size_t i) {
    const auto& labeled = meshes[i / ring.size()];
    const auto& vp = ring.viewpoints[i % ring.size()];
    library.entries[i] = {labeled.label, vp,
                          extract_descriptor(render_silhouette(labeled.mesh, vp, resolution), grid_size)};
  });
  return library;
}

std::optional<Match> classify(const ViewLibrary& library, const ViewDescriptor& query, double tau) {
  if (library.entries.empty()) throw ContractError("cannot classify against an empty library");
  if (query.size() != library.fingerprint.descriptor_length() || query.grid_size != library.fingerprint.grid_size) {
    throw ContractError("query descriptor does not match the library fingerprint");
  }
  std::size_t best = 0;
  double best_distance = descriptor_distance(library.entries[0].descriptor, query);
  for (std::size_t i = 1; i < library.entries.size(); ++i) {
    const double d = descriptor_distance(library.entries[i].descriptor, query);
    if (d < best_distance) {
      best = i;
      best_distance = d;
    }
  }
  if (best_distance > tau) return std::nullopt;
  return Match{library.entries[best].label, best_distance, best};
}

TrialBatch run_trial_batch(const ViewLibrary& library, const std::string& target_label, const Mesh& mesh, int n,
                           double jitter_deg, double tau, std::uint64_t seed) {
  if (n < 1) throw ContractError("a trial batch needs n >= 1");
  if (!(jitter_deg >= 0.0)) throw ContractError("jitter must be non-negative");
  const ViewRing ring = ring_viewpoints(library.fingerprint.increment_deg);

  // Draw every probe angle first so the random stream is independent of
  // rendering order.
  SeededRng rng(seed);
  std::vector<double> angles(static_cast<std::size_t>(n));
  for (auto& angle : angles) {
    const auto view = rng.below(ring.size());
    const double jitter = jitter_deg > 0.0 ? rng.uniform(-jitter_deg, jitter_deg) : 0.0;
    angle = wrap_degrees(*ring.viewpoints[view].ring_angle + jitter);
  }

  TrialBatch batch;
  batch.source = RenderedSource{seed};
  std::vector<char> success(angles.size(), 0);
  detail::parallel_for(angles.size(), [&](std::size_t i) {
    const auto image = render_silhouette(mesh, ring_viewpoint(angles[i]), library.fingerprint.resolution);
    const auto match = classify(library, extract_descriptor(image, library.fingerprint.grid_size), tau);
    success[i] = match && match->label == target_label;
  });
  batch.outcomes.assign(success.begin(), success.end());
  return batch;
}

TrialBatch simulate_trial_batch(int n, double p_success, std::uint64_t seed) {
  if (n < 1) throw ContractError("a trial batch needs n >= 1");
  if (!(p_success >= 0.0 && p_success <= 1.0)) throw ContractError("p_success must lie in [0, 1]");
  SeededRng rng(seed);
  TrialBatch batch;
  batch.source = SimulatedSource{p_success, seed};
  batch.outcomes.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) batch.outcomes.push_back(rng.bernoulli(p_success));
  return batch;
}

void save_library(std::ostream& out, const ViewLibrary& library) {
  const auto& fp = library.fingerprint;
  out << "viewbayes-library " << kLibraryFormatVersion << '\n'
      << "resolution " << fp.resolution << '\n'
      << "grid_size " << fp.grid_size << '\n'
      << "increment " << format_number(fp.increment_deg) << '\n'
      << "entries " << library.entries.size() << '\n';
  for (const auto& e : library.entries) {
    out << e.label << '\t' << format_number(e.viewpoint.ring_angle.value_or(0.0)) << '\t';
    for (Eigen::Index i = 0; i < e.descriptor.size(); ++i) {
      if (i) out << ' ';
      out << format_number(e.descriptor.values(i));
    }
    out << '\n';
  }
}

ViewLibrary load_library(std::istream& in) {
  std::size_t line_no = 0;
  {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "empty library file");
    ++line_no;
    std::istringstream fields(line);
    std::string magic;
    int version = 0;
    if (!(fields >> magic >> version) || magic != "viewbayes-library") {
      throw ParseError(line_no, "not a viewbayes library file");
    }
    if (version != kLibraryFormatVersion) {
      throw ParseError(line_no, "unsupported library version " + std::to_string(version));
    }
  }

  ViewLibrary library;
  auto& fp = library.fingerprint;
  const auto header_number = [&](const std::string& key) {
    const std::string value = header_value(in, key, line_no);
    return parse_number(value, line_no);
  };
  fp.resolution = static_cast<int>(header_number("resolution"));
  fp.grid_size = static_cast<int>(header_number("grid_size"));
  fp.increment_deg = header_number("increment");
  const auto count = static_cast<std::size_t>(header_number("entries"));
  if (fp.grid_size < 4 || fp.grid_size > 32 || fp.resolution < 16) {
    throw ParseError(line_no, "library fingerprint out of range");
  }

  const Eigen::Index length = fp.descriptor_length();
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) throw ParseError(line_no, "entry needs label, angle and descriptor fields");
    LibraryEntry entry;
    entry.label = line.substr(0, tab1);
    entry.viewpoint = ring_viewpoint(parse_number(line.substr(tab1 + 1, tab2 - tab1 - 1), line_no));
    std::istringstream values(line.substr(tab2 + 1));
    std::vector<double> parsed;
    std::string tok;
    while (values >> tok) parsed.push_back(parse_number(tok, line_no));
    if (static_cast<Eigen::Index>(parsed.size()) != length) {
      throw ParseError(line_no, "descriptor has " + std::to_string(parsed.size()) + " values, expected " +
                                    std::to_string(length));
    }
    entry.descriptor.grid_size = fp.grid_size;
    entry.descriptor.values = Eigen::Map<const Eigen::VectorXd>(parsed.data(), length);
    library.entries.push_back(std::move(entry));
  }
  if (library.entries.size() != count) {
    throw ParseError(line_no, "header announces " + std::to_string(count) + " entries, found " +
                                  std::to_string(library.entries.size()));
  }
  if (library.entries.empty()) throw ParseError(line_no, "library has no entries");
  return library;
}

}  // namespace viewbayes
