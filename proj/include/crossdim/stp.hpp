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

#include "crossdim/matrix.hpp"

// Semi-tensor products: matrix products generalized to arbitrary shapes by
// inflating both factors to a common inner dimension. The first product
// inflates with identity blocks, the second with averaging blocks; both
// reduce to the classical product when the inner dimensions already match.

namespace crossdim {

inline Mat stp1(const Mat& a, const Mat& b) {
  const std::size_t t = lcm(a.cols(), b.rows());
  if (t == a.cols()) {
    // b only needs inflation when its row count divides t strictly
    if (t == b.rows()) return a * b;
    return a * kron(b, Mat::identity(t / b.rows()));
  }
  return kron(a, Mat::identity(t / a.cols())) * kron(b, Mat::identity(t / b.rows()));
}

inline Mat stp2(const Mat& a, const Mat& b) {
  const std::size_t t = lcm(a.cols(), b.rows());
  if (t == a.cols() && t == b.rows()) return a * b;
  return kron(a, j_mat(t / a.cols())) * kron(b, j_mat(t / b.rows()));
}

// Action of an m-by-n matrix on a vector of unrelated dimension r: the matrix
// is inflated with averaging blocks, the vector by entry replication. Output
// dimension is lcm(n, r) * m / n.
inline CrossVec mv2(const Mat& a, const CrossVec& x) {
  const std::size_t t = lcm(a.cols(), x.dim());
  const Mat ai = (t == a.cols()) ? a : kron(a, j_mat(t / a.cols()));
  const CrossVec xe = (t == x.dim()) ? x : rep_expand(x, t / x.dim());
  return CrossVec(ai.apply(xe.entries()));
}

}  // namespace crossdim
