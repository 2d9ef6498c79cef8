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

#include "viewbayes/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "viewbayes/error.hpp"
#include "viewbayes/format.hpp"
#include "viewbayes/quadrature.hpp"
#include "viewbayes/special.hpp"

namespace viewbayes {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Log of the unnormalized likelihood q^k (1-q)^(n-k).
double log_likelihood_kernel(const BinomialObservation& obs, double q) {
  return special::xlogy(static_cast<double>(obs.k()), q) +
         special::xlog1my(static_cast<double>(obs.failures()), q);
}

double inverse_cdf(const Eigen::VectorXd& cdf, double p) {
  const Eigen::Index n = cdf.size();
  const double* first = cdf.data();
  const double* it = std::lower_bound(first, first + n, p);
  const Eigen::Index i = it - first;
  if (i == 0) return 0.0;
  if (i >= n) return 1.0;
  const double h = 1.0 / static_cast<double>(n - 1);
  const double span = cdf(i) - cdf(i - 1);
  const double frac = span > 0.0 ? (p - cdf(i - 1)) / span : 0.0;
  return (static_cast<double>(i - 1) + frac) * h;
}

// Scalar libm calls: Eigen's packet exp clamps large negative arguments, so
// exp(-inf) would come back as a denormal instead of 0.
const auto exact_exp = [](double x) { return std::exp(x); };
const auto exact_log = [](double x) { return std::log(x); };

}  // namespace

SuccessProbability::SuccessProbability(double q) : q_(q) {
  if (!(q >= 0.0 && q <= 1.0)) throw ContractError("success probability must lie in [0, 1], got " + format_number(q));
}

BetaParams::BetaParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw ContractError("Beta parameters must be positive and finite, got (" + format_number(alpha) + ", " +
                        format_number(beta) + ")");
  }
}

BinomialObservation::BinomialObservation(std::int64_t n, std::int64_t k) : n_(n), k_(k) {
  if (n < 0 || k < 0 || k > n) {
    throw ContractError("observation needs 0 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
}

GridDensity::GridDensity(Eigen::VectorXd values, bool normalized)
    : values_(std::move(values)), normalized_(normalized) {
  if (values_.size() < 3) throw ContractError("grid density needs at least 3 points");
  if (!values_.allFinite() || (values_.array() < 0.0).any()) {
    throw ContractError("grid density values must be finite and non-negative");
  }
}

double GridDensity::at(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) throw ContractError("grid density queried outside [0, 1]");
  const Eigen::Index last = values_.size() - 1;
  const double pos = q * static_cast<double>(last);
  const auto i = std::min<Eigen::Index>(static_cast<Eigen::Index>(std::floor(pos)), last - 1);
  const double frac = pos - static_cast<double>(i);
  return (1.0 - frac) * values_(i) + frac * values_(i + 1);
}

GridDensity GridDensity::normalize() const {
  const double mass = trapezoid(values_);
  if (!(mass > 0.0) || !std::isfinite(mass)) throw DegenerateFusionError("grid density has no mass to normalize");
  return GridDensity(values_ / mass, true);
}

std::string_view to_string(FusionOperator op) {
  switch (op) {
    case FusionOperator::product: return "product";
    case FusionOperator::max: return "max";
    case FusionOperator::min: return "min";
    case FusionOperator::algebraic_sum: return "algebraic_sum";
  }
  return "product";
}

FusionOperator parse_fusion_operator(std::string_view name) {
  if (name == "product") return FusionOperator::product;
  if (name == "max") return FusionOperator::max;
  if (name == "min") return FusionOperator::min;
  if (name == "algebraic_sum" || name == "algebraic-sum" || name == "sum") return FusionOperator::algebraic_sum;
  throw ContractError("unknown fusion operator '" + std::string(name) + "'");
}

std::string_view to_string(Decision decision) {
  return decision == Decision::accepted ? "accepted" : "reformulate";
}

double log_binomial_pmf(const BinomialObservation& obs, SuccessProbability q) {
  return special::log_choose<double>(obs.n(), obs.k()) + log_likelihood_kernel(obs, q.value());
}

double binomial_pmf(const BinomialObservation& obs, SuccessProbability q) {
  return std::exp(log_binomial_pmf(obs, q));
}

double log_beta_pdf(const BetaParams& params, SuccessProbability q) {
  const double x = q.value();
  const double a = params.alpha();
  const double b = params.beta();
  if ((x == 0.0 && a < 1.0) || (x == 1.0 && b < 1.0)) {
    throw SingularDensityError("Beta(" + format_number(a) + ", " + format_number(b) +
                               ") density is infinite at q=" + format_number(x));
  }
  return special::xlogy(a - 1.0, x) + special::xlog1my(b - 1.0, x) - special::log_beta(a, b);
}

double beta_pdf(const BetaParams& params, SuccessProbability q) { return std::exp(log_beta_pdf(params, q)); }

double beta_cdf(const BetaParams& params, double x) {
  return special::incomplete_beta(params.alpha(), params.beta(), x);
}

double beta_quantile(const BetaParams& params, double p) {
  return special::incomplete_beta_inverse(params.alpha(), params.beta(), p);
}

BetaParams posterior_update(const BetaParams& prior, const BinomialObservation& obs) {
  return BetaParams(prior.alpha() + static_cast<double>(obs.k()), prior.beta() + static_cast<double>(obs.failures()));
}

double log_marginal_likelihood(const BetaParams& prior, const BinomialObservation& obs) {
  const BetaParams post = posterior_update(prior, obs);
  return special::log_choose<double>(obs.n(), obs.k()) + special::log_beta(post.alpha(), post.beta()) -
         special::log_beta(prior.alpha(), prior.beta());
}

double marginal_likelihood(const BetaParams& prior, const BinomialObservation& obs) {
  if (obs.n() == 0) return 1.0;
  return std::exp(log_marginal_likelihood(prior, obs));
}

PosteriorSummary posterior_summary(const BetaParams& params) {
  const double a = params.alpha();
  const double b = params.beta();
  const double s = a + b;
  return {a / s, a * b / (s * s * (s + 1.0)), {beta_quantile(params, 0.025), beta_quantile(params, 0.975)}};
}

PosteriorSummary posterior_summary(const GridDensity& density) {
  const Eigen::VectorXd q = unit_grid(density.grid_points());
  const Eigen::VectorXd& f = density.values();
  const double mass = trapezoid(f);
  if (!(mass > 0.0)) throw DegenerateFusionError("grid density has no mass");
  const double mean = trapezoid(q.cwiseProduct(f)) / mass;
  const double variance = trapezoid((q.array() - mean).square().matrix().cwiseProduct(f)) / mass;
  const Eigen::VectorXd cdf = cumulative_trapezoid(f) / mass;
  return {mean, variance, {inverse_cdf(cdf, 0.025), inverse_cdf(cdf, 0.975)}};
}

PosteriorSummary posterior_summary(const Belief& belief) {
  return std::visit([](const auto& b) { return posterior_summary(b); }, belief);
}

double belief_density(const Belief& belief, double q) {
  if (const auto* beta = std::get_if<BetaParams>(&belief)) {
    try {
      return beta_pdf(*beta, SuccessProbability(q));
    } catch (const SingularDensityError&) {
      return kInf;
    }
  }
  const auto& grid = std::get<GridDensity>(belief);
  return grid.normalized() ? grid.at(q) : grid.at(q) / trapezoid(grid.values());
}

double scaled_likelihood(const BinomialObservation& obs, double q) {
  const BetaParams shape(static_cast<double>(obs.k()) + 1.0, static_cast<double>(obs.failures()) + 1.0);
  return beta_pdf(shape, SuccessProbability(q));
}

GridDensity fuse_on_grid(const Belief& prior, const BinomialObservation& obs, FusionOperator op, int grid_points) {
  if (grid_points < 101) throw ContractError("fusion grid needs at least 101 points");
  const Eigen::Index n = grid_points;
  const Eigen::VectorXd q = unit_grid(n);

  Eigen::VectorXd log_prior(n);
  Eigen::VectorXd log_lik(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (const auto* beta = std::get_if<BetaParams>(&prior)) {
      log_prior(i) = log_beta_pdf(*beta, SuccessProbability(q(i)));
    } else {
      log_prior(i) = std::log(std::get<GridDensity>(prior).at(q(i)));
    }
    log_lik(i) = log_likelihood_kernel(obs, q(i));
  }
  return fuse_log_curves(log_prior, log_lik, op);
}

GridDensity fuse_log_curves(Eigen::VectorXd log_x, Eigen::VectorXd log_y, FusionOperator op) {
  const Eigen::Index n = log_x.size();
  if (n < 3 || log_y.size() != n) throw ContractError("fusion curves need equal length of at least 3");
  const double x_peak = log_x.maxCoeff();
  const double y_peak = log_y.maxCoeff();
  if (!std::isfinite(x_peak) || !std::isfinite(y_peak)) throw DegenerateFusionError("operand has no mass on the grid");
  log_x.array() -= x_peak;
  log_y.array() -= y_peak;

  Eigen::VectorXd combined(n);
  switch (op) {
    case FusionOperator::product:
      combined = log_x + log_y;
      break;
    case FusionOperator::min:
      combined = log_x.cwiseMin(log_y);
      break;
    case FusionOperator::max:
      combined = log_x.cwiseMax(log_y);
      break;
    case FusionOperator::algebraic_sum: {
      const Eigen::ArrayXd x = log_x.array().unaryExpr(exact_exp);
      const Eigen::ArrayXd y = log_y.array().unaryExpr(exact_exp);
      combined = (x + y - x * y).unaryExpr(exact_log).matrix();
      break;
    }
  }

  // Constant rescaling leaves the normalized result unchanged and keeps
  // product/min curves away from underflow.
  const double peak = combined.maxCoeff();
  if (!std::isfinite(peak)) throw DegenerateFusionError("fused curve is zero everywhere");
  Eigen::VectorXd values = (combined.array() - peak).unaryExpr(exact_exp).matrix();
  const double mass = trapezoid(values);
  if (!(mass > 0.0)) throw DegenerateFusionError("fused curve integrates to zero");
  return GridDensity(values / mass, true);
}

Decision decide(std::size_t confirmed, std::size_t total) {
  if (total == 0) return Decision::reformulate;
  // Integer form of confirmed / total >= 0.8, exact for 4 of 5.
  return 5 * confirmed >= 4 * total ? Decision::accepted : Decision::reformulate;
}

RecognitionReport assemble_report(std::vector<PosteriorFrame> frames, double initial_mean, double epsilon_conv) {
  RecognitionReport report;
  std::size_t confirmed = 0;
  double previous = initial_mean;
  for (const auto& frame : frames) {
    if (frame.confirmed) ++confirmed;
    if (!report.converged_at && std::abs(frame.mean - previous) < epsilon_conv) report.converged_at = frame.index;
    previous = frame.mean;
  }
  report.confirm_fraction = frames.empty() ? 0.0 : static_cast<double>(confirmed) / static_cast<double>(frames.size());
  report.decision = decide(confirmed, frames.size());
  report.frames = std::move(frames);
  return report;
}

RecognitionReport sequential_run(const BetaParams& initial_prior, const std::vector<BinomialObservation>& batches,
                                 const SequentialOptions& options) {
  if (batches.empty()) throw ContractError("sequential run needs at least one batch");
  if (!(options.epsilon_conv > 0.0)) throw ContractError("convergence epsilon must be positive");

  std::vector<PosteriorFrame> frames;
  frames.reserve(batches.size());
  Belief prior = initial_prior;
  int index = 1;
  for (const auto& obs : batches) {
    Belief posterior = options.op == FusionOperator::product
                           ? Belief(posterior_update(std::get<BetaParams>(prior), obs))
                           : Belief(fuse_on_grid(prior, obs, options.op, options.grid_points));
    const PosteriorSummary s = posterior_summary(posterior);
    frames.push_back({index++, prior, obs, posterior, s.mean, s.variance, s.credible_interval_95,
                      s.mean >= options.confirm_threshold});
    prior = std::move(posterior);
  }
  return assemble_report(std::move(frames), initial_prior.alpha() / initial_prior.total(), options.epsilon_conv);
}

RecognitionReport sequential_run(const BetaParams& initial_prior, const std::vector<BinomialObservation>& batches,
                                 double confirm_threshold, double epsilon_conv) {
  SequentialOptions options;
  options.confirm_threshold = confirm_threshold;
  options.epsilon_conv = epsilon_conv;
  return sequential_run(initial_prior, batches, options);
}

}  // namespace viewbayes
