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
#include <string>

#include "crossdim/dynamics.hpp"
#include "crossdim/matrix.hpp"
#include "crossdim/projection.hpp"
#include "crossdim/stp.hpp"
#include "crossdim/vspace.hpp"

// Equivalence classes of vectors (equal after entry replication) and of
// matrices (equal after averaging-block inflation), stored as canonical
// minimal representatives. Exact reductions compare entries bitwise and copy
// the common value, so reduce-then-lift round trips are identities; the
// epsilon variants accept simulation noise and record the deviation they
// absorbed.

namespace crossdim {

struct VecClass {
  CrossVec rep;
};

struct MatClass {
  Mat rep;
};

// Minimal representative under row-replication equivalence B = C (x) 1_s.
struct VecMatClass {
  Mat rep;
};

struct VecReduction {
  VecClass cls;
  double deviation;
};

struct MatReduction {
  MatClass cls;
  double deviation;
};

struct VecMatReduction {
  VecMatClass cls;
  double deviation;
};

// Smallest z with x = z (x) 1_{dim(x)/dim(z)}: try each divisor of dim(x) in
// ascending order and take the first whose consecutive blocks are constant.
inline VecClass reduce_vector(const CrossVec& x) {
  const std::size_t nd = x.dim();
  for (std::size_t d = 1; d <= nd; ++d) {
    if (nd % d != 0) continue;
    const std::size_t len = nd / d;
    bool ok = true;
    for (std::size_t i = 0; i < d && ok; ++i) {
      for (std::size_t j = 1; j < len; ++j) {
        if (x[i * len + j] != x[i * len]) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      std::vector<double> rep(d);
      for (std::size_t i = 0; i < d; ++i) rep[i] = x[i * len];
      return VecClass{CrossVec(std::move(rep))};
    }
  }
  return VecClass{x};  // unreachable: d = dim always succeeds
}

// Epsilon reduction for floating data: a block counts as constant when no
// entry deviates from the block mean by more than eps. Representative
// entries are the block means; the maximal absorbed deviation is reported.
inline VecReduction reduce_vector_eps(const CrossVec& x, double eps = 1e-9) {
  const std::size_t nd = x.dim();
  for (std::size_t d = 1; d <= nd; ++d) {
    if (nd % d != 0) continue;
    const std::size_t len = nd / d;
    std::vector<double> rep(d);
    double dev = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < d && ok; ++i) {
      double mean = 0.0;
      for (std::size_t j = 0; j < len; ++j) mean += x[i * len + j];
      mean /= static_cast<double>(len);
      rep[i] = mean;
      for (std::size_t j = 0; j < len; ++j) {
        const double e = std::abs(x[i * len + j] - mean);
        if (e > eps) {
          ok = false;
          break;
        }
        dev = std::max(dev, e);
      }
    }
    if (ok) return VecReduction{VecClass{CrossVec(std::move(rep))}, dev};
  }
  return VecReduction{VecClass{x}, 0.0};
}

inline bool vec_equivalent(const CrossVec& x, const CrossVec& y) {
  return vec_equal(reduce_vector(x).rep, reduce_vector(y).rep);
}

inline bool vec_equivalent_eps(const CrossVec& x, const CrossVec& y, double eps = 1e-9) {
  const CrossVec rx = reduce_vector_eps(x, eps).cls.rep;
  const CrossVec ry = reduce_vector_eps(y, eps).cls.rep;
  if (rx.dim() != ry.dim()) return false;
  for (std::size_t i = 0; i < rx.dim(); ++i) {
    if (std::abs(rx[i] - ry[i]) > eps) return false;
  }
  return true;
}

// Smallest L with A = L (x) J_s: try factors s of gcd(rows, cols) in
// descending order; a factor works when every s-by-s tile is constant, and
// then L_ij is s times the tile value.
inline MatClass reduce_matrix(const Mat& a) {
  const std::size_t g = gcd(a.rows(), a.cols());
  for (std::size_t s = g; s >= 1; --s) {
    if (g % s != 0) continue;
    const std::size_t r = a.rows() / s;
    const std::size_t c = a.cols() / s;
    bool ok = true;
    for (std::size_t bi = 0; bi < r && ok; ++bi) {
      for (std::size_t bj = 0; bj < c && ok; ++bj) {
        const double v = a(bi * s, bj * s);
        for (std::size_t i = 0; i < s && ok; ++i) {
          for (std::size_t j = 0; j < s; ++j) {
            if (a(bi * s + i, bj * s + j) != v) {
              ok = false;
              break;
            }
          }
        }
      }
    }
    if (ok) {
      Mat rep(r, c);
      for (std::size_t bi = 0; bi < r; ++bi) {
        for (std::size_t bj = 0; bj < c; ++bj) {
          rep(bi, bj) = static_cast<double>(s) * a(bi * s, bj * s);
        }
      }
      return MatClass{std::move(rep)};
    }
  }
  return MatClass{a};  // unreachable: s = 1 always succeeds
}

inline MatReduction reduce_matrix_eps(const Mat& a, double eps = 1e-9) {
  const std::size_t g = gcd(a.rows(), a.cols());
  for (std::size_t s = g; s >= 1; --s) {
    if (g % s != 0) continue;
    const std::size_t r = a.rows() / s;
    const std::size_t c = a.cols() / s;
    Mat rep(r, c);
    double dev = 0.0;
    bool ok = true;
    for (std::size_t bi = 0; bi < r && ok; ++bi) {
      for (std::size_t bj = 0; bj < c && ok; ++bj) {
        double mean = 0.0;
        for (std::size_t i = 0; i < s; ++i)
          for (std::size_t j = 0; j < s; ++j) mean += a(bi * s + i, bj * s + j);
        mean /= static_cast<double>(s * s);
        rep(bi, bj) = static_cast<double>(s) * mean;
        for (std::size_t i = 0; i < s && ok; ++i) {
          for (std::size_t j = 0; j < s; ++j) {
            const double e = std::abs(a(bi * s + i, bj * s + j) - mean);
            if (e > eps) {
              ok = false;
              break;
            }
            dev = std::max(dev, e);
          }
        }
      }
    }
    if (ok) return MatReduction{MatClass{std::move(rep)}, dev};
  }
  return MatReduction{MatClass{a}, 0.0};
}

inline bool mat_equivalent(const Mat& a, const Mat& b) {
  return mat_equal(reduce_matrix(a).rep, reduce_matrix(b).rep);
}

inline bool mat_equivalent_eps(const Mat& a, const Mat& b, double eps = 1e-9) {
  const Mat ra = reduce_matrix_eps(a, eps).cls.rep;
  const Mat rb = reduce_matrix_eps(b, eps).cls.rep;
  return same_shape(ra, rb) && max_abs_diff(ra, rb) <= eps;
}

// Smallest C with B = C (x) 1_s: consecutive blocks of s rows must agree,
// all columns simultaneously.
inline VecMatClass reduce_vecmat(const Mat& b) {
  for (std::size_t s = b.rows(); s >= 1; --s) {
    if (b.rows() % s != 0) continue;
    const std::size_t r = b.rows() / s;
    bool ok = true;
    for (std::size_t bi = 0; bi < r && ok; ++bi) {
      for (std::size_t i = 1; i < s && ok; ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
          if (b(bi * s + i, j) != b(bi * s, j)) {
            ok = false;
            break;
          }
        }
      }
    }
    if (ok) {
      Mat rep(r, b.cols());
      for (std::size_t bi = 0; bi < r; ++bi)
        for (std::size_t j = 0; j < b.cols(); ++j) rep(bi, j) = b(bi * s, j);
      return VecMatClass{std::move(rep)};
    }
  }
  return VecMatClass{b};
}

inline VecMatReduction reduce_vecmat_eps(const Mat& b, double eps = 1e-9) {
  for (std::size_t s = b.rows(); s >= 1; --s) {
    if (b.rows() % s != 0) continue;
    const std::size_t r = b.rows() / s;
    Mat rep(r, b.cols());
    double dev = 0.0;
    bool ok = true;
    for (std::size_t bi = 0; bi < r && ok; ++bi) {
      for (std::size_t j = 0; j < b.cols() && ok; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < s; ++i) mean += b(bi * s + i, j);
        mean /= static_cast<double>(s);
        rep(bi, j) = mean;
        for (std::size_t i = 0; i < s; ++i) {
          const double e = std::abs(b(bi * s + i, j) - mean);
          if (e > eps) {
            ok = false;
            break;
          }
          dev = std::max(dev, e);
        }
      }
    }
    if (ok) return VecMatReduction{VecMatClass{std::move(rep)}, dev};
  }
  return VecMatReduction{VecMatClass{b}, 0.0};
}

// Class arithmetic: compute on representatives, then reduce. The results do
// not depend on which member of a class the inputs were built from.
inline VecClass class_add(const VecClass& x, const VecClass& y) {
  return reduce_vector(vadd(x.rep, y.rep));
}

inline VecClass class_sub(const VecClass& x, const VecClass& y) {
  return reduce_vector(vsub(x.rep, y.rep));
}

inline VecClass class_scale(double a, const VecClass& x) {
  return reduce_vector(vscale(a, x.rep));
}

inline double class_norm(const VecClass& x) { return vnorm(x.rep); }

inline double class_dist(const VecClass& x, const VecClass& y) { return vdist(x.rep, y.rep); }

inline MatClass class_mul(const MatClass& a, const MatClass& b) {
  return reduce_matrix(stp2(a.rep, b.rep));
}

inline VecClass class_action(const MatClass& a, const VecClass& x) {
  return reduce_vector(mv2(a.rep, x.rep));
}

inline double class_opnorm(const MatClass& a) { return operator_vnorm(a.rep); }

namespace detail {

inline std::size_t lift_factor(std::size_t rep_dim, std::size_t n, const char* what) {
  if (n == 0 || n % rep_dim != 0) {
    throw std::domain_error(std::string("crossdim: no ") + what + " lift at dimension " +
                            std::to_string(n) + "; admissible dimensions are multiples of " +
                            std::to_string(rep_dim));
  }
  return n / rep_dim;
}

}  // namespace detail

inline CrossVec lift_vector(const VecClass& x, std::size_t n) {
  return rep_expand(x.rep, detail::lift_factor(x.rep.dim(), n, "vector"));
}

inline Mat lift_matrix(const MatClass& a, std::size_t n) {
  if (a.rep.rows() != a.rep.cols()) {
    throw std::invalid_argument("crossdim: lift_matrix expects a square representative");
  }
  const std::size_t k = detail::lift_factor(a.rep.rows(), n, "matrix");
  return k == 1 ? a.rep : kron(a.rep, j_mat(k));
}

// Linear control system on the quotient space, stored through canonical
// representatives: the state map under averaging-block equivalence, the
// input map under row-replication equivalence.
struct SysClass {
  MatClass A;
  std::optional<VecMatClass> B;
  std::optional<MatClass> C;
  TimeKind time_kind = TimeKind::continuous;
};

inline SysClass reduce_system(const LinSys& s) {
  validate(s);
  SysClass out{reduce_matrix(s.A), std::nullopt, std::nullopt, s.time_kind};
  if (s.B) out.B = reduce_vecmat(*s.B);
  if (s.C) out.C = reduce_matrix(*s.C);
  return out;
}

// Member of the class system living on R^n: A and C inflate with averaging
// blocks, B with row replication.
inline LinSys lift_system(const SysClass& s, std::size_t n) {
  const std::size_t k = detail::lift_factor(s.A.rep.rows(), n, "system");
  LinSys out{lift_matrix(s.A, n), std::nullopt, std::nullopt, s.time_kind};
  if (s.B) out.B = (k == 1) ? s.B->rep : kron(s.B->rep, ones_vec(k));
  if (s.C) out.C = (k == 1) ? s.C->rep : kron(s.C->rep, j_mat(k));
  return out;
}

// Two systems are equivalent exactly when they are liftings of one system on
// the quotient space, i.e. when their canonical representatives coincide.
inline bool systems_equivalent(const LinSys& s1, const LinSys& s2) {
  validate(s1);
  validate(s2);
  if (s1.time_kind != s2.time_kind) return false;
  if (s1.B.has_value() != s2.B.has_value()) return false;
  if (s1.C.has_value() != s2.C.has_value()) return false;
  if (!mat_equal(reduce_matrix(s1.A).rep, reduce_matrix(s2.A).rep)) return false;
  if (s1.B && !mat_equal(reduce_vecmat(*s1.B).rep, reduce_vecmat(*s2.B).rep)) return false;
  if (s1.C && !mat_equal(reduce_matrix(*s1.C).rep, reduce_matrix(*s2.C).rep)) return false;
  return true;
}

inline bool systems_equivalent_eps(const LinSys& s1, const LinSys& s2, double eps = 1e-9) {
  validate(s1);
  validate(s2);
  if (s1.time_kind != s2.time_kind) return false;
  if (s1.B.has_value() != s2.B.has_value()) return false;
  if (s1.C.has_value() != s2.C.has_value()) return false;
  const auto close = [eps](const Mat& a, const Mat& b) {
    return same_shape(a, b) && max_abs_diff(a, b) <= eps;
  };
  if (!close(reduce_matrix_eps(s1.A, eps).cls.rep, reduce_matrix_eps(s2.A, eps).cls.rep)) {
    return false;
  }
  if (s1.B &&
      !close(reduce_vecmat_eps(*s1.B, eps).cls.rep, reduce_vecmat_eps(*s2.B, eps).cls.rep)) {
    return false;
  }
  if (s1.C &&
      !close(reduce_matrix_eps(*s1.C, eps).cls.rep, reduce_matrix_eps(*s2.C, eps).cls.rep)) {
    return false;
  }
  return true;
}

}  // namespace crossdim
