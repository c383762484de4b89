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
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crossdim/dynamics.hpp"
#include "crossdim/linalg.hpp"
#include "crossdim/matrix.hpp"
#include "crossdim/projection.hpp"
#include "crossdim/quotient.hpp"

// Dimension-varying transients: project the pre and post models into the lcm
// dimension, blend them with a constant or linearly decaying weight, and
// design an open-loop minimum-energy control that drives the blended state
// into the lifted image of the post model's state space.

namespace crossdim {

// Constant blending weight from formal masses, by momentum conservation.
inline double mu_from_masses(double m1, double m2) {
  if (!(m1 > 0.0) || !(m2 > 0.0)) {
    throw std::invalid_argument("crossdim: masses must be positive");
  }
  return m1 / (m1 + m2);
}

struct MuSchedule {
  enum class Kind { constant, linear };

  Kind kind;
  double value;   // constant weight on the pre model, strictly inside (0, 1)
  double t0, te;  // linear window endpoints

  static MuSchedule constant(double mu) {
    if (!(mu > 0.0 && mu < 1.0)) {
      throw std::invalid_argument("crossdim: constant mu must lie strictly inside (0, 1)");
    }
    return MuSchedule{Kind::constant, mu, 0.0, 0.0};
  }

  static MuSchedule linear(double t0, double te) {
    if (!(te > t0)) {
      throw std::invalid_argument("crossdim: linear mu schedule needs te > t0");
    }
    return MuSchedule{Kind::linear, 0.0, t0, te};
  }

  // Weight on the pre model: 1 at t0 decaying to 0 at te under the linear law.
  double at(double t) const {
    if (kind == Kind::constant) return value;
    return std::clamp((te - t) / (te - t0), 0.0, 1.0);
  }
};

struct TransientTarget {
  bool subspace = false;      // free target: nearest lifted post-model state
  std::optional<CrossVec> z;  // explicit target point in R^n

  static TransientTarget explicit_point(CrossVec target) {
    return TransientTarget{false, std::move(target)};
  }
  static TransientTarget nearest_subspace() { return TransientTarget{true, std::nullopt}; }
};

struct TransientScenario {
  LinSys sigma1;  // pre model on R^p
  LinSys sigma2;  // post model on R^q
  double t0, te;
  MuSchedule mu;
  CrossVec x_t0;  // pre-model state at t0
  TransientTarget target;
  double dt = 1e-3;
  double tol = 1e-6;  // endpoint tolerance for a realized transience

  std::size_t p() const { return sigma1.order(); }
  std::size_t q() const { return sigma2.order(); }
  std::size_t n() const { return lcm(p(), q()); }

  void validate() const {
    crossdim::validate(sigma1);
    crossdim::validate(sigma2);
    if (!sigma1.B || !sigma2.B) {
      throw std::invalid_argument("crossdim: both transient models need input matrices");
    }
    if (!(te >= t0)) throw std::invalid_argument("crossdim: te must not precede t0");
    if (mu.kind == MuSchedule::Kind::linear && !(te > t0)) {
      throw std::invalid_argument("crossdim: linear mu schedule needs a nondegenerate window");
    }
    if (!(dt > 0.0)) throw std::invalid_argument("crossdim: dt must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("crossdim: tol must be positive");
    if (x_t0.dim() != p()) {
      throw std::invalid_argument("crossdim: x_t0 dimension must match the pre model");
    }
    if (!target.subspace) {
      if (!target.z) throw std::invalid_argument("crossdim: explicit target needs a point");
      if (target.z->dim() != n()) {
        throw std::invalid_argument("crossdim: target dimension must be lcm(p, q)");
      }
      const auto red = reduce_vector_eps(*target.z, 1e-12);
      if (q() % red.cls.rep.dim() != 0) {
        throw std::invalid_argument(
            "crossdim: target does not lie in the lifted post-model subspace");
      }
    }
  }
};

// The blended transient system on R^n. A_at produces
// mu(t) A1 + (1 - mu(t)) A2; the joint input matrix stacks the two weighted
// input maps side by side.
struct Blend {
  Mat A1, A2;  // pre and post system matrices projected onto R^n
  Mat B1, B2;  // projected input maps
  MuSchedule mu;
  std::size_t n, m1, m2;

  Mat A_at(double t) const {
    const double u = mu.at(t);
    return u * A1 + (1.0 - u) * A2;
  }
  Mat B1_at(double t) const { return mu.at(t) * B1; }
  Mat B2_at(double t) const { return (1.0 - mu.at(t)) * B2; }
  Mat B_at(double t) const { return hconcat(B1_at(t), B2_at(t)); }
};

inline Blend build_blend(const TransientScenario& sc) {
  sc.validate();
  const std::size_t n = sc.n();
  Mat a1 = project_sysmatrix(sc.sigma1.A, n);
  Mat a2 = project_sysmatrix(sc.sigma2.A, n);
  Mat b1 = (n == sc.p()) ? *sc.sigma1.B : pi_matrix(sc.p(), n).mat * (*sc.sigma1.B);
  Mat b2 = (n == sc.q()) ? *sc.sigma2.B : pi_matrix(sc.q(), n).mat * (*sc.sigma2.B);
  const std::size_t m1 = b1.cols();
  const std::size_t m2 = b2.cols();
  return Blend{std::move(a1), std::move(a2), std::move(b1), std::move(b2), sc.mu, n, m1, m2};
}

// Disengaged/engaged clutch pair: two decoupled inertias versus one lumped
// inertia, both driven by the torque pair (tau_i, tau_o), together with
// their projections onto the two-dimensional space.
struct ClutchModels {
  LinSys sigma1;
  LinSys sigma2;
  Mat A1_proj, B1_proj, A2_proj, B2_proj;
};

inline ClutchModels clutch_models(double ji, double jo, double di, double do_) {
  if (!(ji > 0.0) || !(jo > 0.0)) {
    throw std::invalid_argument("crossdim: inertias must be positive");
  }
  if (di < 0.0 || do_ < 0.0) {
    throw std::invalid_argument("crossdim: friction coefficients must be nonnegative");
  }
  LinSys s1{Mat::from_rows({{-di / ji, 0.0}, {0.0, -do_ / jo}}),
            Mat::from_rows({{1.0 / ji, 0.0}, {0.0, -1.0 / jo}}), std::nullopt,
            TimeKind::continuous};
  LinSys s2{Mat::from_rows({{-(di + do_) / (ji + jo)}}),
            Mat::from_rows({{1.0 / (ji + jo), -1.0 / (ji + jo)}}), std::nullopt,
            TimeKind::continuous};
  LinSys p1 = project_system(s1, 2);
  LinSys p2 = project_system(s2, 2);
  return ClutchModels{std::move(s1), std::move(s2), p1.A, *p1.B, p2.A, *p2.B};
}

struct Controllability {
  bool controllable;
  std::size_t rank;
};

// Kalman test: rank of [B, AB, ..., A^{n-1}B] from a rank-revealing
// factorization, with the tolerance taken relative to the largest singular
// value.
inline Controllability is_controllable(const Mat& a, const Mat& b, double rel_tol = 1e-9) {
  if (a.rows() != a.cols()) throw std::invalid_argument("crossdim: state matrix must be square");
  if (b.rows() != a.rows()) {
    throw std::invalid_argument("crossdim: input matrix rows must match the state dimension");
  }
  Mat block = b;
  Mat power = b;
  for (std::size_t k = 1; k < a.rows(); ++k) {
    power = a * power;
    block = hconcat(block, power);
  }
  const std::size_t r = numeric_rank(block, rel_tol);
  return Controllability{r == a.rows(), r};
}

namespace detail {

template <typename DerivM>
Mat rk4_mat_step(DerivM&& f, double t, const Mat& x, double h) {
  const Mat k1 = f(t, x);
  const Mat k2 = f(t + 0.5 * h, x + (0.5 * h) * k1);
  const Mat k3 = f(t + 0.5 * h, x + (0.5 * h) * k2);
  const Mat k4 = f(t + h, x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

inline double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace detail

struct GramianResult {
  Mat W;                     // reachability gramian over [t0, te]
  Mat Phi;                   // state transition from t0 to te
  std::vector<double> grid;  // half-step grid tau_0 .. tau_{2N}
  std::vector<Mat> Psi;      // state transition from tau_j to te, per grid point
  double h;                  // trajectory step; the grid spacing is h/2
};

// Reachability gramian of a general time-varying pair: a backward RK4 pass
// for the transition matrices on a half-step grid, then a composite Simpson
// rule. Design and simulation share the same grid so the realized endpoint
// matches the designed one to the integrator's own order.
template <typename AFn, typename BFn>
GramianResult ltv_gramian(AFn&& a_of_t, BFn&& b_of_t, double t0, double te, double dt) {
  const std::size_t n_steps = step_count(t0, te, dt);
  const double h = n_steps ? (te - t0) / static_cast<double>(n_steps) : 0.0;
  const std::size_t gsize = 2 * n_steps + 1;
  const std::size_t n = a_of_t(t0).rows();
  std::vector<double> grid(gsize);
  for (std::size_t j = 0; j < gsize; ++j) {
    grid[j] = (j + 1 == gsize) ? te : t0 + 0.5 * h * static_cast<double>(j);
  }

  std::vector<Mat> psi;
  psi.reserve(gsize);
  psi.push_back(Mat::identity(n));
  const auto deriv = [&](double t, const Mat& p) { return -1.0 * (p * a_of_t(t)); };
  for (std::size_t j = gsize; j-- > 1;) {
    psi.push_back(detail::rk4_mat_step(deriv, grid[j], psi.back(), grid[j - 1] - grid[j]));
  }
  std::reverse(psi.begin(), psi.end());

  Mat w(n, n);
  if (n_steps > 0) {
    std::vector<Mat> g;
    g.reserve(gsize);
    for (std::size_t j = 0; j < gsize; ++j) {
      const Mat m = psi[j] * b_of_t(grid[j]);
      g.push_back(m * m.transpose());
    }
    for (std::size_t k = 0; k < n_steps; ++k) {
      w = w + (h / 6.0) * (g[2 * k] + 4.0 * g[2 * k + 1] + g[2 * k + 2]);
    }
  }
  return GramianResult{std::move(w), psi.front(), std::move(grid), std::move(psi), h};
}

inline GramianResult gramian(const Blend& bl, double t0, double te, double dt) {
  return ltv_gramian([&bl](double t) { return bl.A_at(t); },
                     [&bl](double t) { return bl.B_at(t); }, t0, te, dt);
}

inline GramianResult gramian(const TransientScenario& sc) {
  return gramian(build_blend(sc), sc.t0, sc.te, sc.dt);
}

// Open-loop control sampled on the design grid; stacked as [u; v].
struct ControlLaw {
  std::vector<double> grid;
  std::vector<std::vector<double>> values;

  std::vector<double> at(double t) const {
    if (grid.empty()) return {};
    if (t <= grid.front()) return values.front();
    if (t >= grid.back()) return values.back();
    const auto it = std::upper_bound(grid.begin(), grid.end(), t);
    const std::size_t hi = static_cast<std::size_t>(it - grid.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - grid[lo]) / (grid[hi] - grid[lo]);
    std::vector<double> out(values[lo].size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = (1.0 - w) * values[lo][i] + w * values[hi][i];
    }
    return out;
  }
};

struct MinEnergyResult {
  ControlLaw control;
  CrossVec z_t0;
  CrossVec z_target;
  CrossVec predicted_z_te;
  double residual;  // Euclidean gap between the predicted endpoint and the target
  double energy;    // integral of |[u; v]|^2 realized by the design
  std::size_t gramian_rank;
  bool feasible;  // residual within the scenario tolerance
};

namespace detail {

inline MinEnergyResult design_min_energy(const TransientScenario& sc, const Blend& bl,
                                         const GramianResult& gr) {
  const std::size_t n = bl.n;
  const CrossVec z0 = (n == sc.p()) ? sc.x_t0 : rep_expand(sc.x_t0, n / sc.p());
  const std::vector<double> free_end = gr.Phi.apply(z0.entries());

  CrossVec z_target = [&]() -> CrossVec {
    if (!sc.target.subspace) return *sc.target.z;
    // Nearest lifted post-model state to the uncontrolled endpoint, by
    // block-average least squares over R^q.
    const CrossVec y = project_vector(CrossVec(free_end), sc.q());
    return (n == sc.q()) ? y : rep_expand(y, n / sc.q());
  }();

  std::vector<double> zeta(n);
  for (std::size_t i = 0; i < n; ++i) zeta[i] = z_target[i] - free_end[i];

  const PsdInverse wi = pinv_psd(gr.W);
  const std::vector<double> eta = wi.pinv.apply(zeta);

  ControlLaw law;
  law.grid = gr.grid;
  law.values.reserve(gr.grid.size());
  for (std::size_t j = 0; j < gr.grid.size(); ++j) {
    const std::vector<double> w = gr.Psi[j].transpose().apply(eta);
    law.values.push_back(bl.B_at(gr.grid[j]).transpose().apply(w));
  }

  const std::vector<double> weta = gr.W.apply(eta);
  std::vector<double> predicted(n);
  double energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    predicted[i] = free_end[i] + weta[i];
    energy += eta[i] * weta[i];
  }
  const double residual = euclid(predicted, z_target.entries());

  const bool feasible = residual <= sc.tol;
  return MinEnergyResult{std::move(law),      z0,       std::move(z_target),
                         CrossVec(predicted), residual, std::max(energy, 0.0),
                         wi.rank,             feasible};
}

}  // namespace detail

// Gramian-based minimum-energy open-loop law steering the blended system
// from the lifted pre-model state toward the target. An infeasible design
// (predicted residual above tolerance) is reported, never silently accepted.
inline MinEnergyResult min_energy_control(const TransientScenario& sc) {
  sc.validate();
  const Blend bl = build_blend(sc);
  const GramianResult gr = gramian(bl, sc.t0, sc.te, sc.dt);
  return detail::design_min_energy(sc, bl, gr);
}

struct TransientResult {
  Trajectory trajectory;
  ControlLaw control;
  CrossVec z_t0;
  CrossVec z_te;
  CrossVec y_te;  // endpoint projected back onto the post-model space
  CrossVec z_target;
  double endpoint_dist;     // dimension-free distance between z(te) and the target
  double endpoint_err;      // Euclidean distance between z(te) and the target
  std::size_t reduced_dim;  // dimension of the eps-reduced endpoint
  bool realized;
  MinEnergyResult design;
};

// Designs the control, simulates the blend under it on the shared grid, and
// checks the endpoint: realized means the reduced endpoint dimension divides
// q and the endpoint sits within tolerance of the target.
inline TransientResult realize_transience(const TransientScenario& sc) {
  sc.validate();
  const Blend bl = build_blend(sc);
  const GramianResult gr = gramian(bl, sc.t0, sc.te, sc.dt);
  MinEnergyResult design = detail::design_min_energy(sc, bl, gr);

  const std::size_t gsize = gr.grid.size();
  const std::size_t n_steps = (gsize - 1) / 2;
  std::vector<std::vector<double>> forced(gsize);
  std::vector<Mat> amats;
  amats.reserve(gsize);
  for (std::size_t j = 0; j < gsize; ++j) {
    forced[j] = bl.B_at(gr.grid[j]).apply(design.control.values[j]);
    amats.push_back(bl.A_at(gr.grid[j]));
  }

  Trajectory traj;
  traj.push(sc.t0, design.z_t0, "transient");
  std::vector<double> z = design.z_t0.entries();
  const double h = gr.h;
  const auto stage = [&](std::size_t j, const std::vector<double>& x) {
    std::vector<double> d = amats[j].apply(x);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += forced[j][i];
    return d;
  };
  for (std::size_t k = 0; k < n_steps; ++k) {
    const std::size_t j0 = 2 * k, jm = 2 * k + 1, j1 = 2 * k + 2;
    const auto k1 = stage(j0, z);
    const auto k2 = stage(jm, detail::axpy(z, 0.5 * h, k1));
    const auto k3 = stage(jm, detail::axpy(z, 0.5 * h, k2));
    const auto k4 = stage(j1, detail::axpy(z, h, k3));
    for (std::size_t i = 0; i < z.size(); ++i) {
      z[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    traj.push(gr.grid[j1], CrossVec(z), "transient");
  }

  CrossVec z_te(z);
  const CrossVec y_te = project_vector(z_te, sc.q());
  const auto red = reduce_vector_eps(z_te, 10.0 * sc.tol);
  const double dist = vdist(z_te, design.z_target);
  const double err = detail::euclid(z, design.z_target.entries());
  const bool realized = (sc.q() % red.cls.rep.dim() == 0) && dist <= sc.tol;

  return TransientResult{std::move(traj),   design.control,  design.z_t0, std::move(z_te),
                         y_te,              design.z_target, dist,        err,
                         red.cls.rep.dim(), realized,        std::move(design)};
}

// Static feedback phase around the transient window: u = -K x + r(t) with a
// reference offset linear in time, r(t) = r0 + (t - t_start) r1.
struct PhaseConfig {
  double t_edge;  // pre phase: start time; post phase: end time
  Mat K;          // feedback gain, inputs by states
  std::vector<double> r0;
  std::vector<double> r1;
  std::optional<CrossVec> x0;  // pre phase initial state
};

namespace detail {

inline Trajectory closed_loop_sim(const LinSys& sys, const Mat& k_gain,
                                  const std::vector<double>& r0, const std::vector<double>& r1,
                                  const CrossVec& x0, double t0, double te, double dt,
                                  const std::string& label) {
  validate(sys);
  if (!sys.B) throw std::invalid_argument("crossdim: feedback phase needs an input matrix");
  const Mat& b = *sys.B;
  if (k_gain.rows() != b.cols() || k_gain.cols() != sys.order()) {
    throw std::invalid_argument("crossdim: gain shape must be inputs by states");
  }
  if (x0.dim() != sys.order()) {
    throw std::invalid_argument("crossdim: phase initial state has the wrong dimension");
  }
  std::vector<double> off0 = r0.empty() ? std::vector<double>(b.cols(), 0.0) : r0;
  std::vector<double> off1 = r1.empty() ? std::vector<double>(b.cols(), 0.0) : r1;
  if (off0.size() != b.cols() || off1.size() != b.cols()) {
    throw std::invalid_argument("crossdim: reference signal width must match the input count");
  }
  const Mat acl = sys.A - b * k_gain;
  const auto deriv = [&](double t, const std::vector<double>& x) {
    std::vector<double> u(off0.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = off0[i] + (t - t0) * off1[i];
    std::vector<double> d = acl.apply(x);
    const std::vector<double> bu = b.apply(u);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += bu[i];
    return d;
  };
  return integrate_rk4(deriv, x0, t0, te, dt, label);
}

}  // namespace detail

struct PhasedResult {
  Trajectory trajectory;  // stitched pre / transient / post run
  TransientResult transient;
  CrossVec pre_end;
  CrossVec post_end;
  double boundary_err;  // gap between the pre-phase endpoint and x_t0
};

// Three-phase run: feedback on the pre model up to t0, the controlled
// transient over [t0, te], feedback on the post model afterwards. Trajectory
// entries keep their native dimensions (p, n, q) and carry phase labels.
inline PhasedResult run_phased(const PhaseConfig& pre, const TransientScenario& sc,
                               const PhaseConfig& post, double boundary_tol = 1e-6) {
  sc.validate();
  if (!pre.x0) throw std::invalid_argument("crossdim: pre phase needs an initial state");
  if (pre.t_edge > sc.t0) {
    throw std::invalid_argument("crossdim: pre phase must start at or before t0");
  }
  if (post.t_edge < sc.te) {
    throw std::invalid_argument("crossdim: post phase must end at or after te");
  }

  const Trajectory ph1 = detail::closed_loop_sim(sc.sigma1, pre.K, pre.r0, pre.r1, *pre.x0,
                                                 pre.t_edge, sc.t0, sc.dt, "pre");
  const CrossVec pre_end = ph1.states.back();
  const double berr = detail::euclid(pre_end.entries(), sc.x_t0.entries());
  if (berr > boundary_tol) {
    throw numerical_error("crossdim: pre phase ends " + std::to_string(berr) +
                          " away from the declared transient start state");
  }

  TransientResult tr = realize_transience(sc);

  const Trajectory ph3 = detail::closed_loop_sim(sc.sigma2, post.K, post.r0, post.r1, tr.y_te,
                                                 sc.te, post.t_edge, sc.dt, "post");

  Trajectory all = ph1;
  for (std::size_t i = 1; i < tr.trajectory.size(); ++i) {
    all.push(tr.trajectory.times[i], tr.trajectory.states[i], "transient");
  }
  for (std::size_t i = 1; i < ph3.size(); ++i) {
    all.push(ph3.times[i], ph3.states[i], "post");
  }
  const CrossVec post_end = ph3.states.back();
  return PhasedResult{std::move(all), std::move(tr), pre_end, post_end, berr};
}

}  // namespace crossdim
