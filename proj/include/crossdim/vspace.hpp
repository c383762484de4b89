// Copyright 2026 The crossdim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>

#include "crossdim/matrix.hpp"

// Arithmetic on the dimension-free state space: vectors of different
// dimensions are combined by replicating each operand up to the lcm
// dimension. Results are returned at that dimension; canonical reduction is
// a separate, explicit step (see quotient.hpp).

namespace crossdim {

inline CrossVec vscale(double a, const CrossVec& x) {
  std::vector<double> out(x.entries());
  for (double& v : out) v *= a;
  return CrossVec(std::move(out));
}

inline CrossVec vadd(const CrossVec& x, const CrossVec& y) {
  const std::size_t t = lcm(x.dim(), y.dim());
  std::vector<double> out = rep_expand(x, t / x.dim()).entries();
  const CrossVec ye = rep_expand(y, t / y.dim());
  for (std::size_t i = 0; i < t; ++i) out[i] += ye[i];
  return CrossVec(std::move(out));
}

inline CrossVec vsub(const CrossVec& x, const CrossVec& y) { return vadd(x, vscale(-1.0, y)); }

// Dimension-free inner product: expand both operands to the lcm dimension,
// take the standard inner product, divide by that dimension.
inline double vinner(const CrossVec& x, const CrossVec& y) {
  const std::size_t t = lcm(x.dim(), y.dim());
  const CrossVec xe = rep_expand(x, t / x.dim());
  const CrossVec ye = rep_expand(y, t / y.dim());
  double s = 0.0;
  for (std::size_t i = 0; i < t; ++i) s += xe[i] * ye[i];
  return s / static_cast<double>(t);
}

// Equals the Euclidean norm scaled by 1/sqrt(dim); invariant under entry
// replication, which is what makes it a norm on equivalence classes.
inline double vnorm(const CrossVec& x) {
  double s = 0.0;
  for (double v : x.entries()) s += v * v;
  return std::sqrt(s / static_cast<double>(x.dim()));
}

inline double vdist(const CrossVec& x, const CrossVec& y) { return vnorm(vsub(x, y)); }

// Straight-line path between two vectors of arbitrary dimensions:
// lambda*x (+) (1-lambda)*y. Endpoints are the expanded representatives of
// x (lambda=1) and y (lambda=0).
inline CrossVec path(const CrossVec& x, const CrossVec& y, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::domain_error("crossdim: path parameter must lie in [0, 1]");
  }
  return vadd(vscale(lambda, x), vscale(1.0 - lambda, y));
}

}  // namespace crossdim
