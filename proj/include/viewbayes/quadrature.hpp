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

#ifndef VIEWBAYES_QUADRATURE_HPP
#define VIEWBAYES_QUADRATURE_HPP

#include <Eigen/Core>

#include "viewbayes/error.hpp"

namespace viewbayes {

/// Uniform grid q_i = i / (points - 1) on [0, 1].
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> unit_grid(Eigen::Index points) {
  if (points < 2) throw ContractError("a grid needs at least two points");
  return Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::LinSpaced(points, Scalar(0), Scalar(1));
}

/// Composite trapezoid rule for samples on the uniform unit grid.
template <typename Derived>
typename Derived::Scalar trapezoid(const Eigen::DenseBase<Derived>& samples) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = samples.size();
  if (n < 2) throw ContractError("trapezoid rule needs at least two samples");
  const Scalar h = Scalar(1) / Scalar(n - 1);
  return h * (samples.sum() - (samples(0) + samples(n - 1)) / Scalar(2));
}

/// Running trapezoid integral; element i holds the integral over [0, q_i].
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> cumulative_trapezoid(
    const Eigen::DenseBase<Derived>& samples) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = samples.size();
  if (n < 2) throw ContractError("trapezoid rule needs at least two samples");
  const Scalar h = Scalar(1) / Scalar(n - 1);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(n);
  out(0) = Scalar(0);
  for (Eigen::Index i = 1; i < n; ++i) out(i) = out(i - 1) + h * (samples(i - 1) + samples(i)) / Scalar(2);
  return out;
}

}  // namespace viewbayes

#endif  // VIEWBAYES_QUADRATURE_HPP
