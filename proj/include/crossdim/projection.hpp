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

#include <optional>

#include "crossdim/linalg.hpp"
#include "crossdim/matrix.hpp"
#include "crossdim/vspace.hpp"

// Least-squares projections between Euclidean spaces of different dimensions
// and of whole linear systems. The projector Pi maps R^m to R^n by block
// averaging; it realizes the nearest point in the dimension-free distance.

namespace crossdim {

struct Projector {
  std::size_t m;  // source dimension
  std::size_t n;  // target dimension
  Mat mat;        // n-by-m
};

// Pi = (1/beta) (I_n (x) 1_beta') (I_m (x) 1_alpha) with t = lcm(m, n),
// alpha = t/m, beta = t/n. Every row averages a block of source entries, so
// row sums are 1.
inline Projector pi_matrix(std::size_t m, std::size_t n) {
  const std::size_t t = lcm(m, n);
  const std::size_t alpha = t / m;
  const std::size_t beta = t / n;
  const Mat left = kron(Mat::identity(n), ones_vec(beta).transpose());  // n x t
  const Mat right = kron(Mat::identity(m), ones_vec(alpha));            // t x m
  Mat pi = (1.0 / static_cast<double>(beta)) * (left * right);
  return Projector{m, n, std::move(pi)};
}

// Nearest point of R^n to xi in the dimension-free distance. The residual
// xi (-) x is orthogonal to x in the dimension-free inner product.
inline CrossVec project_vector(const CrossVec& xi, std::size_t n) {
  if (xi.dim() == n) return xi;
  const Projector p = pi_matrix(xi.dim(), n);
  return CrossVec(p.mat.apply(xi.entries()));
}

// Best dimension-n surrogate A_pi of a square A, in the least-squares sense
// of the commutation residual Pi A - A_pi Pi. For m < n the solution is
// constrained to the form Atilde Pi', matching the operator this library
// projects with throughout.
inline Mat project_sysmatrix(const Mat& a, std::size_t n) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("crossdim: project_sysmatrix needs a square matrix");
  }
  const std::size_t m = a.rows();
  if (n == m) return a;
  const Projector p = pi_matrix(m, n);
  const Mat pit = p.mat.transpose();
  if (m > n) {
    const Mat s = p.mat * pit;              // n x n normal matrix
    const Mat num = (p.mat * a) * pit;      // n x n
    return spd_solve(s, num.transpose()).transpose();
  }
  const Mat s = pit * p.mat;                // m x m normal matrix
  const Mat right = spd_solve(s, pit);      // (Pi'Pi)^{-1} Pi', m x n
  return (p.mat * a) * right;
}

// Output-map counterpart: C_pi with C_pi Pi ~ C in the least-squares sense.
inline Mat project_output(const Mat& c, std::size_t n) {
  const std::size_t m = c.cols();
  if (n == m) return c;
  const Projector p = pi_matrix(m, n);
  const Mat pit = p.mat.transpose();
  if (m > n) {
    const Mat s = p.mat * pit;
    const Mat num = p.mat * c.transpose();  // n x p
    return spd_solve(s, num).transpose();
  }
  const Mat s = pit * p.mat;
  return spd_solve(s, c.transpose()).transpose() * pit;
}

enum class TimeKind { discrete, continuous };

// Fixed-dimension linear control system (A, B, C); B and C optional.
struct LinSys {
  Mat A;
  std::optional<Mat> B;
  std::optional<Mat> C;
  TimeKind time_kind = TimeKind::continuous;

  std::size_t order() const { return A.rows(); }
};

inline void validate(const LinSys& s) {
  if (s.A.rows() != s.A.cols()) {
    throw std::invalid_argument("crossdim: system matrix must be square");
  }
  if (s.B && s.B->rows() != s.A.rows()) {
    throw std::invalid_argument("crossdim: input matrix rows must match system order");
  }
  if (s.C && s.C->cols() != s.A.rows()) {
    throw std::invalid_argument("crossdim: output matrix columns must match system order");
  }
}

// Projects a whole system onto R^n: A by the least-squares surrogate, B by
// plain Pi B (no least-squares correction), C by the output-map projection.
inline LinSys project_system(const LinSys& sys, std::size_t n) {
  validate(sys);
  const std::size_t m = sys.order();
  LinSys out{project_sysmatrix(sys.A, n), std::nullopt, std::nullopt, sys.time_kind};
  if (sys.B) {
    out.B = (m == n) ? *sys.B : pi_matrix(m, n).mat * (*sys.B);
  }
  if (sys.C) {
    out.C = project_output(*sys.C, n);
  }
  return out;
}

}  // namespace crossdim
