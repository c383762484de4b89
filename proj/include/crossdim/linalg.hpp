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

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "crossdim/matrix.hpp"

// Factorization-backed utilities. Everything here is deterministic: no
// randomized starts, so repeated runs produce identical results.

namespace crossdim {

namespace detail {

using ERowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline Eigen::Map<const ERowMat> eview(const Mat& m) {
  return Eigen::Map<const ERowMat>(m.data().data(),
                                   static_cast<Eigen::Index>(m.rows()),
                                   static_cast<Eigen::Index>(m.cols()));
}

inline Mat from_eigen(const Eigen::MatrixXd& e) {
  const auto r = static_cast<std::size_t>(e.rows());
  const auto c = static_cast<std::size_t>(e.cols());
  std::vector<double> a(r * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      a[i * c + j] = e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return Mat(r, c, std::move(a));
}

}  // namespace detail

inline std::vector<double> singular_values(const Mat& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd{Eigen::MatrixXd(detail::eview(m))};
  if (svd.info() != Eigen::Success) {
    throw numerical_error("crossdim: singular value decomposition did not converge");
  }
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

// Largest singular value, i.e. sqrt of the top eigenvalue of A'A.
inline double spectral_norm(const Mat& m) { return singular_values(m).front(); }

// Count of singular values above rel_tol times the largest one.
inline std::size_t numeric_rank(const Mat& m, double rel_tol = 1e-9) {
  const std::vector<double> sv = singular_values(m);
  if (sv.empty() || sv.front() <= 0.0) return 0;
  const double cut = rel_tol * sv.front();
  std::size_t r = 0;
  for (double s : sv)
    if (s > cut) ++r;
  return r;
}

// X with S X = RHS for symmetric positive definite S, via Cholesky.
inline Mat spd_solve(const Mat& s, const Mat& rhs) {
  if (s.rows() != s.cols()) throw std::invalid_argument("crossdim: spd_solve needs a square matrix");
  if (rhs.rows() != s.rows()) throw std::invalid_argument("crossdim: spd_solve shape mismatch");
  Eigen::LLT<Eigen::MatrixXd> llt{Eigen::MatrixXd(detail::eview(s))};
  if (llt.info() != Eigen::Success) {
    throw numerical_error("crossdim: normal matrix is not positive definite");
  }
  return detail::from_eigen(llt.solve(Eigen::MatrixXd(detail::eview(rhs))));
}

struct PsdInverse {
  Mat pinv;
  std::size_t rank;
  double lambda_max;
};

// Pseudo-inverse of a symmetric positive semidefinite matrix. Eigenvalues at
// or below rel_tol times the largest are truncated to zero.
inline PsdInverse pinv_psd(const Mat& s, double rel_tol = 1e-12) {
  if (s.rows() != s.cols()) throw std::invalid_argument("crossdim: pinv_psd needs a square matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(detail::eview(s))};
  if (es.info() != Eigen::Success) {
    throw numerical_error("crossdim: symmetric eigendecomposition did not converge");
  }
  const auto& ev = es.eigenvalues();
  const auto& q = es.eigenvectors();
  const double lmax = ev.size() ? ev(ev.size() - 1) : 0.0;
  const double cut = (lmax > 0.0) ? rel_tol * lmax : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cut && ev(i) > 0.0) {
      inv(i) = 1.0 / ev(i);
      ++rank;
    }
  }
  Eigen::MatrixXd p = q * inv.asDiagonal() * q.transpose();
  return PsdInverse{detail::from_eigen(p), rank, lmax};
}

}  // namespace crossdim
