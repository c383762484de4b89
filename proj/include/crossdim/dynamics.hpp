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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "crossdim/linalg.hpp"
#include "crossdim/matrix.hpp"
#include "crossdim/stp.hpp"
#include "crossdim/vspace.hpp"

// Simulation of cross-dimensional linear systems: discrete iteration with
// dimension tracking, restriction to invariant dimensions, and classical
// fixed-step RK4 for continuous flows on a fixed dimension.

namespace crossdim {

struct Trajectory {
  std::vector<double> times;
  std::vector<CrossVec> states;
  std::vector<std::string> labels;  // phase tag per entry; may be empty strings

  void push(double t, CrossVec state, std::string label = {}) {
    if (!times.empty() && !(t > times.back())) {
      throw std::invalid_argument("crossdim: trajectory times must be strictly increasing");
    }
    times.push_back(t);
    states.push_back(std::move(state));
    labels.push_back(std::move(label));
  }

  std::size_t size() const { return times.size(); }

  std::size_t max_dim() const {
    std::size_t d = 0;
    for (const auto& s : states) d = std::max(d, s.dim());
    return d;
  }
};

inline CrossVec step_discrete(const Mat& a, const CrossVec& x) { return mv2(a, x); }

// Dimension of mv2(A, x) for A m-by-n and x of dimension r.
inline std::size_t mv2_output_dim(std::size_t m, std::size_t n, std::size_t r) {
  return checked_mul(lcm(n, r) / n, m);
}

struct DimOrbit {
  std::vector<std::size_t> dims;  // visited dimensions, ending at the first repeat
  bool cycle_found = false;
  std::size_t preperiod = 0;  // index of the first occurrence of the repeated dimension
  std::size_t period = 0;
};

// Iterates the dimension map r -> lcm(n, r) * m / n and reports the first
// repeated dimension. Whether every orbit eventually cycles is not known in
// general; orbits with no repeat within max_steps are reported open.
inline DimOrbit dimension_orbit(const Mat& a, std::size_t r0, std::size_t max_steps = 64) {
  if (r0 == 0) throw std::invalid_argument("crossdim: starting dimension must be positive");
  DimOrbit orbit;
  orbit.dims.push_back(r0);
  for (std::size_t step = 0; step < max_steps; ++step) {
    const std::size_t next = mv2_output_dim(a.rows(), a.cols(), orbit.dims.back());
    for (std::size_t i = 0; i < orbit.dims.size(); ++i) {
      if (orbit.dims[i] == next) {
        orbit.dims.push_back(next);
        orbit.cycle_found = true;
        orbit.preperiod = i;
        orbit.period = orbit.dims.size() - 1 - i;
        return orbit;
      }
    }
    orbit.dims.push_back(next);
  }
  return orbit;  // open orbit
}

inline bool dimension_invariant(const Mat& a, std::size_t d) {
  return mv2_output_dim(a.rows(), a.cols(), d) == d;
}

// Square matrix A_* with A_* x = mv2(A, x) for every x of the invariant
// dimension d.
inline Mat restricted_matrix(const Mat& a, std::size_t d) {
  if (!dimension_invariant(a, d)) {
    throw std::domain_error("crossdim: dimension is not invariant under the action");
  }
  const std::size_t t = lcm(a.cols(), d);
  const Mat ai = (t == a.cols()) ? a : kron(a, j_mat(t / a.cols()));
  const Mat expand = (t == d) ? Mat::identity(d) : kron(Mat::identity(d), ones_vec(t / d));
  return ai * expand;
}

// Iterates x(t+1) = mv2(A, x(t)). Once the state dimension becomes invariant
// the cached restricted matrix drives the iteration; the trajectory is the
// same either way.
inline Trajectory simulate_discrete(const Mat& a, const CrossVec& x0, std::size_t steps) {
  Trajectory traj;
  traj.push(0.0, x0);
  CrossVec x = x0;
  std::map<std::size_t, Mat> restricted;
  for (std::size_t k = 0; k < steps; ++k) {
    const std::size_t r = x.dim();
    if (dimension_invariant(a, r)) {
      auto it = restricted.find(r);
      if (it == restricted.end()) it = restricted.emplace(r, restricted_matrix(a, r)).first;
      x = CrossVec(it->second.apply(x.entries()));
    } else {
      x = mv2(a, x);
    }
    traj.push(static_cast<double>(k + 1), x);
  }
  return traj;
}

// Operator norm of x -> mv2(A, x) on the dimension-free space:
// sqrt(n/m) times the spectral norm of the m-by-n matrix A.
inline double operator_vnorm(const Mat& a) {
  return std::sqrt(static_cast<double>(a.cols()) / static_cast<double>(a.rows())) *
         spectral_norm(a);
}

namespace detail {

inline std::vector<double> axpy(const std::vector<double>& x, double h,
                                const std::vector<double>& k) {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + h * k[i];
  return y;
}

}  // namespace detail

// One classical RK4 update of x' = f(t, x).
template <typename Deriv>
std::vector<double> rk4_step(Deriv&& f, double t, const std::vector<double>& x, double h) {
  const auto k1 = f(t, x);
  const auto k2 = f(t + 0.5 * h, detail::axpy(x, 0.5 * h, k1));
  const auto k3 = f(t + 0.5 * h, detail::axpy(x, 0.5 * h, k2));
  const auto k4 = f(t + h, detail::axpy(x, h, k3));
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = x[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return y;
}

// Number of uniform steps covering [t0, te]; dt is snapped so the steps
// divide the window evenly and the endpoint is hit exactly.
inline std::size_t step_count(double t0, double te, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("crossdim: dt must be positive");
  if (te < t0) throw std::invalid_argument("crossdim: te must not precede t0");
  if (te == t0) return 0;
  const auto n = static_cast<std::size_t>(std::llround((te - t0) / dt));
  return n == 0 ? 1 : n;
}

template <typename Deriv>
Trajectory integrate_rk4(Deriv&& f, const CrossVec& x0, double t0, double te, double dt,
                         const std::string& label = {}) {
  const std::size_t n = step_count(t0, te, dt);
  const double h = n ? (te - t0) / static_cast<double>(n) : 0.0;
  Trajectory traj;
  traj.push(t0, x0, label);
  std::vector<double> x = x0.entries();
  for (std::size_t k = 0; k < n; ++k) {
    x = rk4_step(f, t0 + static_cast<double>(k) * h, x, h);
    const double t = (k + 1 == n) ? te : t0 + static_cast<double>(k + 1) * h;
    traj.push(t, CrossVec(x), label);
  }
  return traj;
}

// Fixed-step RK4 for x' = A x on a fixed dimension. Cross-dimensional flows
// must be restricted to an invariant dimension first.
inline Trajectory simulate_continuous(const Mat& a_sq, const CrossVec& x0, double t0, double te,
                                      double dt) {
  if (a_sq.rows() != a_sq.cols()) {
    throw std::invalid_argument(
        "crossdim: continuous simulation needs a square matrix; restrict the action first");
  }
  if (x0.dim() != a_sq.rows()) {
    throw std::invalid_argument("crossdim: state dimension does not match the matrix");
  }
  return integrate_rk4([&](double, const std::vector<double>& x) { return a_sq.apply(x); }, x0,
                       t0, te, dt);
}

}  // namespace crossdim
