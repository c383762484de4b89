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

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crossdim {

// Thrown when an iterative numeric routine fails to converge or a
// factorization meets an ill-posed input.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cross-dimensional products inflate shapes to least common multiples, so
// every shape product is guarded against wrap-around.
inline std::size_t checked_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    throw std::overflow_error("crossdim: dimension product overflows");
  }
  return a * b;
}

inline std::size_t gcd(std::size_t a, std::size_t b) { return std::gcd(a, b); }

inline std::size_t lcm(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) {
    throw std::invalid_argument("crossdim: lcm needs positive dimensions");
  }
  return checked_mul(a / std::gcd(a, b), b);
}

namespace detail {

inline void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string("crossdim: ") + what +
                                  " contains a non-finite entry");
    }
  }
}

}  // namespace detail

// Dense real matrix, row-major. Constructors reject non-finite entries.
class Mat {
 public:
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(checked_mul(rows, cols), 0.0) {
    require_positive();
  }

  Mat(std::size_t rows, std::size_t cols, std::vector<double> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    require_positive();
    if (a_.size() != rows_ * cols_) {
      throw std::invalid_argument("crossdim: entry count does not match matrix shape");
    }
    detail::require_finite(a_, "matrix");
  }

  static Mat from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    if (rows.size() == 0) {
      throw std::invalid_argument("crossdim: matrix needs at least one row");
    }
    const std::size_t c = rows.begin()->size();
    std::vector<double> a;
    a.reserve(rows.size() * c);
    for (const auto& r : rows) {
      if (r.size() != c) throw std::invalid_argument("crossdim: ragged matrix literal");
      a.insert(a.end(), r.begin(), r.end());
    }
    return Mat(rows.size(), c, std::move(a));
  }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return a_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return a_[i * cols_ + j];
  }

  const std::vector<double>& data() const { return a_; }

  Mat transpose() const {
    std::vector<double> a(a_.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) a[j * rows_ + i] = a_[i * cols_ + j];
    return Mat(cols_, rows_, std::move(a));
  }

  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) {
      throw std::invalid_argument("crossdim: inner dimensions do not conform");
    }
    std::vector<double> a(checked_mul(rows_, o.cols_), 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const double aik = a_[i * cols_ + k];
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          a[i * o.cols_ + j] += aik * o.a_[k * o.cols_ + j];
        }
      }
    }
    return Mat(rows_, o.cols_, std::move(a));
  }

  Mat operator+(const Mat& o) const { return combined(o, +1.0); }
  Mat operator-(const Mat& o) const { return combined(o, -1.0); }

  friend Mat operator*(double s, const Mat& m) {
    std::vector<double> a(m.a_);
    for (double& x : a) x *= s;
    return Mat(m.rows_, m.cols_, std::move(a));
  }

  std::vector<double> apply(const std::vector<double>& x) const {
    if (x.size() != cols_) {
      throw std::invalid_argument("crossdim: vector length does not match column count");
    }
    std::vector<double> y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) s += a_[i * cols_ + j] * x[j];
      y[i] = s;
    }
    return y;
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::abs(x));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
  }

 private:
  Mat combined(const Mat& o, double sign) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw std::invalid_argument("crossdim: shapes do not match");
    }
    std::vector<double> a(a_.size());
    for (std::size_t i = 0; i < a_.size(); ++i) a[i] = a_[i] + sign * o.a_[i];
    return Mat(rows_, cols_, std::move(a));
  }

  void require_positive() const {
    if (rows_ == 0 || cols_ == 0) {
      throw std::invalid_argument("crossdim: matrix dimensions must be positive");
    }
  }

  std::size_t rows_, cols_;
  std::vector<double> a_;
};

inline bool same_shape(const Mat& a, const Mat& b) {
  return a.rows() == b.rows() && a.cols() == b.cols();
}

inline bool mat_equal(const Mat& a, const Mat& b) {
  return same_shape(a, b) && a.data() == b.data();
}

inline double max_abs_diff(const Mat& a, const Mat& b) {
  if (!same_shape(a, b)) throw std::invalid_argument("crossdim: shapes do not match");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  }
  return m;
}

// [A B] side by side.
inline Mat hconcat(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("crossdim: row counts do not match");
  Mat out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

inline Mat kron(const Mat& a, const Mat& b) {
  const std::size_t r = checked_mul(a.rows(), b.rows());
  const std::size_t c = checked_mul(a.cols(), b.cols());
  std::vector<double> out(checked_mul(r, c), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out[(i * b.rows() + k) * c + (j * b.cols() + l)] = aij * b(k, l);
        }
    }
  return Mat(r, c, std::move(out));
}

inline Mat ones_vec(std::size_t n) { return Mat(n, 1, std::vector<double>(n, 1.0)); }

inline Mat ones_mat(std::size_t n) {
  return Mat(n, n, std::vector<double>(checked_mul(n, n), 1.0));
}

// Averaging block: the k-by-k matrix with every entry 1/k.
inline Mat j_mat(std::size_t k) {
  if (k == 0) throw std::invalid_argument("crossdim: averaging block needs k >= 1");
  return Mat(k, k, std::vector<double>(checked_mul(k, k), 1.0 / static_cast<double>(k)));
}

// A real vector tagged with its dimension; an element of the dimension-free
// state space. Immutable once built; constructors reject non-finite entries.
class CrossVec {
 public:
  explicit CrossVec(std::vector<double> entries) : v_(std::move(entries)) {
    if (v_.empty()) throw std::invalid_argument("crossdim: vector dimension must be positive");
    detail::require_finite(v_, "vector");
  }
  CrossVec(std::initializer_list<double> entries)
      : CrossVec(std::vector<double>(entries)) {}

  std::size_t dim() const { return v_.size(); }
  double operator[](std::size_t i) const {
    assert(i < v_.size());
    return v_[i];
  }
  const std::vector<double>& entries() const { return v_; }

 private:
  std::vector<double> v_;
};

// x replicated entrywise k times: the representative of x one level up.
inline CrossVec rep_expand(const CrossVec& x, std::size_t k) {
  if (k == 0) throw std::invalid_argument("crossdim: replication factor must be positive");
  std::vector<double> out;
  out.reserve(checked_mul(x.dim(), k));
  for (std::size_t i = 0; i < x.dim(); ++i) out.insert(out.end(), k, x[i]);
  return CrossVec(std::move(out));
}

inline Mat col_mat(const CrossVec& x) { return Mat(x.dim(), 1, x.entries()); }

inline CrossVec to_crossvec(const Mat& column) {
  if (column.cols() != 1) throw std::invalid_argument("crossdim: expected a column matrix");
  return CrossVec(column.data());
}

inline bool vec_equal(const CrossVec& a, const CrossVec& b) {
  return a.entries() == b.entries();
}

}  // namespace crossdim
