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

// Beta-Binomial inference over the recognition success rate q.
//
// A batch of n recognition trials with k successes has likelihood
// C(n,k) q^k (1-q)^(n-k). With a Beta(a, b) prior the posterior is
// Beta(a + k, b + n - k); chaining batches with each posterior used as the
// next prior is the empirical-Bayes loop. Besides the product rule, the
// prior and likelihood can be fused with max, min or algebraic sum on a grid.

#ifndef VIEWBAYES_INFERENCE_HPP
#define VIEWBAYES_INFERENCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace viewbayes {

inline constexpr double kDefaultConfirmThreshold = 0.5;
inline constexpr double kDefaultConvergenceEpsilon = 0.02;
inline constexpr int kDefaultFusionGridPoints = 2001;

/// Recognition success probability q in [0, 1].
class SuccessProbability {
 public:
  explicit SuccessProbability(double q);
  double value() const { return q_; }

 private:
  double q_;
};

class BetaParams {
 public:
  BetaParams(double alpha, double beta);
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double total() const { return alpha_ + beta_; }
  bool operator==(const BetaParams&) const = default;

 private:
  double alpha_;
  double beta_;
};

/// k successes out of n trials.
class BinomialObservation {
 public:
  BinomialObservation(std::int64_t n, std::int64_t k);
  std::int64_t n() const { return n_; }
  std::int64_t k() const { return k_; }
  std::int64_t failures() const { return n_ - k_; }
  bool operator==(const BinomialObservation&) const = default;

 private:
  std::int64_t n_;
  std::int64_t k_;
};

/// Non-negative samples on the uniform grid q_i = i / (points - 1).
class GridDensity {
 public:
  GridDensity(Eigen::VectorXd values, bool normalized);
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::Index grid_points() const { return values_.size(); }
  bool normalized() const { return normalized_; }
  double q(Eigen::Index i) const { return static_cast<double>(i) / static_cast<double>(values_.size() - 1); }
  /// Piecewise-linear interpolation at q.
  double at(double q) const;
  /// Copy rescaled to unit trapezoid integral.
  GridDensity normalize() const;

 private:
  Eigen::VectorXd values_;
  bool normalized_;
};

enum class FusionOperator { product, max, min, algebraic_sum };

std::string_view to_string(FusionOperator op);
FusionOperator parse_fusion_operator(std::string_view name);

/// Belief about q: a Beta law, or a tabulated density after non-product fusion.
using Belief = std::variant<BetaParams, GridDensity>;

struct CredibleInterval {
  double lo;
  double hi;
};

struct PosteriorSummary {
  double mean;
  double variance;
  CredibleInterval credible_interval_95;
};

// Closed-form kernels.

double log_binomial_pmf(const BinomialObservation& obs, SuccessProbability q);
double binomial_pmf(const BinomialObservation& obs, SuccessProbability q);
double log_beta_pdf(const BetaParams& params, SuccessProbability q);
double beta_pdf(const BetaParams& params, SuccessProbability q);
double beta_cdf(const BetaParams& params, double x);
double beta_quantile(const BetaParams& params, double p);
BetaParams posterior_update(const BetaParams& prior, const BinomialObservation& obs);
double log_marginal_likelihood(const BetaParams& prior, const BinomialObservation& obs);
double marginal_likelihood(const BetaParams& prior, const BinomialObservation& obs);
PosteriorSummary posterior_summary(const BetaParams& params);

/// Mean, variance and central 95% interval of a tabulated density.
PosteriorSummary posterior_summary(const GridDensity& density);
PosteriorSummary posterior_summary(const Belief& belief);

/// Density of a belief at q. Beta endpoint singularities are returned as +inf.
double belief_density(const Belief& belief, double q);

/// Likelihood q^k (1-q)^(n-k) normalized to unit integral over q; this is
/// the Beta(k + 1, n - k + 1) density.
double scaled_likelihood(const BinomialObservation& obs, double q);

/// Prior and likelihood curves are each rescaled to peak 1 on the grid,
/// combined pointwise by `op` and renormalized to unit trapezoid integral.
GridDensity fuse_on_grid(const Belief& prior, const BinomialObservation& obs, FusionOperator op,
                         int grid_points = kDefaultFusionGridPoints);

/// Pointwise fusion of two log-curves on a shared unit grid: each is shifted
/// to peak 1, combined by `op`, then renormalized by the trapezoid rule.
GridDensity fuse_log_curves(Eigen::VectorXd log_x, Eigen::VectorXd log_y, FusionOperator op);

/// One prior -> posterior step.
struct PosteriorFrame {
  int index;  // 1-based
  Belief prior;
  BinomialObservation observation;
  Belief posterior;
  double mean;
  double variance;
  CredibleInterval credible_interval_95;
  bool confirmed;
};

enum class Decision { accepted, reformulate };

std::string_view to_string(Decision decision);

struct RecognitionReport {
  std::vector<PosteriorFrame> frames;
  double confirm_fraction;
  Decision decision;
  std::optional<int> converged_at;  // 1-based frame index
};

inline constexpr double kAcceptFraction = 0.8;

/// Accepted iff at least 80% of the hypotheses confirm the object.
Decision decide(std::size_t confirmed, std::size_t total);

/// Derives confirm_fraction, decision and converged_at from frames whose
/// means and confirmed flags are already set. Convergence is the first frame
/// whose mean moved less than `epsilon_conv` from the previous one; the
/// initial prior's mean stands in before frame 1.
RecognitionReport assemble_report(std::vector<PosteriorFrame> frames, double initial_mean,
                                  double epsilon_conv);

struct SequentialOptions {
  double confirm_threshold = kDefaultConfirmThreshold;
  double epsilon_conv = kDefaultConvergenceEpsilon;
  FusionOperator op = FusionOperator::product;
  int grid_points = kDefaultFusionGridPoints;
};

/// Chains posterior-as-prior updates. The product operator uses the exact
/// conjugate update; other operators carry a GridDensity between frames.
RecognitionReport sequential_run(const BetaParams& initial_prior,
                                 const std::vector<BinomialObservation>& batches,
                                 const SequentialOptions& options = {});

RecognitionReport sequential_run(const BetaParams& initial_prior,
                                 const std::vector<BinomialObservation>& batches,
                                 double confirm_threshold, double epsilon_conv);

}  // namespace viewbayes

#endif  // VIEWBAYES_INFERENCE_HPP
