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

#include <doctest.h>

#include <cmath>
#include <random>

#include "crossdim/transient.hpp"
#include "oracles.hpp"

using namespace crossdim;

namespace {

LinSys double_integrator() {
  return LinSys{Mat::from_rows({{0, 1}, {0, 0}}), Mat(2, 1, {0, 1}), std::nullopt,
                TimeKind::continuous};
}

LinSys three_state_loop() {
  return LinSys{Mat::from_rows({{0, 0, 1}, {0, 0, 0}, {0, 1, 0}}), Mat(3, 1, {0, 1, 0}),
                std::nullopt, TimeKind::continuous};
}

TransientScenario handover_scenario() {
  return TransientScenario{double_integrator(),
                           three_state_loop(),
                           10.0,
                           11.0,
                           MuSchedule::constant(0.5),
                           CrossVec{1, -1},
                           TransientTarget::explicit_point(CrossVec{1, 1, 2, 2, 1, 1})};
}

}  // namespace

TEST_SUITE_BEGIN("transient");

TEST_CASE("blending weight rules") {
  CHECK(mu_from_masses(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  std::mt19937 rng(601);
  std::uniform_real_distribution<double> mass(0.1, 10.0);
  for (int c = 0; c < 100; ++c) {
    const double m1 = mass(rng), m2 = mass(rng);
    CHECK(mu_from_masses(m1, m2) + mu_from_masses(m2, m1) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(mu_from_masses(0.0, 1.0), std::invalid_argument);

  CHECK_THROWS_AS(MuSchedule::constant(0.0), std::invalid_argument);
  CHECK_THROWS_AS(MuSchedule::constant(1.0), std::invalid_argument);
  CHECK_THROWS_AS(MuSchedule::linear(1.0, 1.0), std::invalid_argument);

  const MuSchedule lin = MuSchedule::linear(2.0, 4.0);
  CHECK(lin.at(2.0) == 1.0);
  CHECK(lin.at(4.0) == 0.0);
  CHECK(lin.at(3.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("scenario validation") {
  TransientScenario sc = handover_scenario();
  CHECK_NOTHROW(sc.validate());

  TransientScenario bad_x = sc;
  bad_x.x_t0 = CrossVec{1, 2, 3};
  CHECK_THROWS_AS(bad_x.validate(), std::invalid_argument);

  TransientScenario bad_target = sc;
  bad_target.target = TransientTarget::explicit_point(CrossVec{1, 2, 3, 4, 5, 6});
  CHECK_THROWS_AS(bad_target.validate(), std::invalid_argument);

  TransientScenario bad_window = sc;
  bad_window.te = 9.0;
  CHECK_THROWS_AS(bad_window.validate(), std::invalid_argument);

  TransientScenario no_input = sc;
  no_input.sigma1.B.reset();
  CHECK_THROWS_AS(no_input.validate(), std::invalid_argument);
}

TEST_CASE("blend reproduces the printed transient matrices") {
  const TransientScenario sc = handover_scenario();
  const Blend bl = build_blend(sc);
  CHECK(bl.n == 6);

  const double s6 = 1.0 / 6.0, f12 = 5.0 / 12.0, q4 = 0.25;
  const Mat a_star(6, 6, {0, 0, 0,  s6, f12, f12, 0, 0, 0,  s6, f12, f12,
                          0, 0, 0,  s6, s6,  s6,  0, 0, 0,  0,  0,   0,
                          0, 0, q4, q4, 0,   0,   0, 0, q4, q4, 0,   0});
  CHECK(max_abs_diff(bl.A_at(10.0), a_star) <= 1e-12);
  CHECK(max_abs_diff(bl.B1_at(10.0), Mat(6, 1, {0, 0, 0, .5, .5, .5})) <= 1e-12);
  CHECK(max_abs_diff(bl.B2_at(10.0), Mat(6, 1, {0, 0, .5, .5, 0, 0})) <= 1e-12);
  CHECK(bl.B_at(10.0).cols() == 2);
}

TEST_CASE("linear schedule hits the pure models at the window ends") {
  TransientScenario sc = handover_scenario();
  sc.mu = MuSchedule::linear(sc.t0, sc.te);
  const Blend bl = build_blend(sc);
  CHECK(max_abs_diff(bl.A_at(sc.t0), bl.A1) == 0.0);
  CHECK(max_abs_diff(bl.A_at(sc.te), bl.A2) == 0.0);
  CHECK(bl.B2_at(sc.t0).max_abs() == 0.0);
  CHECK(bl.B1_at(sc.te).max_abs() == 0.0);
}

TEST_CASE("clutch models match their closed forms") {
  const double ji = 0.2, jo = 0.7753, di = 0.03, do_ = 0.03;
  const ClutchModels cm = clutch_models(ji, jo, di, do_);

  CHECK(max_abs_diff(cm.A1_proj, Mat::from_rows({{-di / ji, 0}, {0, -do_ / jo}})) <= 1e-12);
  CHECK(max_abs_diff(cm.B1_proj, Mat::from_rows({{1 / ji, 0}, {0, -1 / jo}})) <= 1e-12);
  const double a2 = -(di + do_) / (2.0 * (ji + jo));
  CHECK(max_abs_diff(cm.A2_proj, Mat::from_rows({{a2, a2}, {a2, a2}})) <= 1e-12);
  const double b2 = 1.0 / (ji + jo);
  CHECK(max_abs_diff(cm.B2_proj, Mat::from_rows({{b2, -b2}, {b2, -b2}})) <= 1e-12);

  // frictionless axes drift freely
  const ClutchModels free = clutch_models(ji, jo, 0.0, 0.0);
  CHECK(free.A1_proj.max_abs() == 0.0);
  CHECK(free.A2_proj.max_abs() == 0.0);

  CHECK_THROWS_AS(clutch_models(0.0, 1.0, 0.1, 0.1), std::invalid_argument);
}

TEST_CASE("controllability rank test") {
  const auto di = double_integrator();
  const auto full = is_controllable(di.A, *di.B);
  CHECK(full.controllable);
  CHECK(full.rank == 2);

  const auto none = is_controllable(di.A, Mat(2, 1));
  CHECK_FALSE(none.controllable);
  CHECK(none.rank == 0);

  const Blend bl = build_blend(handover_scenario());
  const auto blended = is_controllable(bl.A_at(10.0), bl.B_at(10.0));
  CHECK(blended.rank == 4);
  CHECK_FALSE(blended.controllable);
}

TEST_CASE("gramian trivial cases") {
  // zero drift with identity input over a unit window
  const auto id3 = [](double) { return Mat(3, 3); };
  const auto b3 = [](double) { return Mat::identity(3); };
  const GramianResult g = ltv_gramian(id3, b3, 0.0, 1.0, 1e-2);
  CHECK(max_abs_diff(g.W, Mat::identity(3)) <= 1e-12);
  CHECK(max_abs_diff(g.Phi, Mat::identity(3)) <= 1e-12);

  // scalar integrator driven directly
  const auto a1 = [](double) { return Mat(1, 1); };
  const auto b1 = [](double) { return Mat::identity(1); };
  CHECK(ltv_gramian(a1, b1, 0.0, 1.0, 1e-2).W(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gramian is symmetric positive semidefinite and matches finer quadrature") {
  const TransientScenario sc = handover_scenario();
  const Blend bl = build_blend(sc);
  const GramianResult coarse = gramian(bl, sc.t0, sc.te, 1e-2);
  const GramianResult fine = gramian(bl, sc.t0, sc.te, 1e-3);
  CHECK(max_abs_diff(coarse.W, coarse.W.transpose()) <= 1e-12 * coarse.W.max_abs());
  CHECK(max_abs_diff(coarse.W, fine.W) <= 1e-6 * fine.W.max_abs());

  std::mt19937 rng(607);
  for (int c = 0; c < 100; ++c) {
    const std::vector<double> x = oracle::rand_vec(rng, 6).entries();
    const std::vector<double> wx = coarse.W.apply(x);
    double q = 0.0;
    for (std::size_t i = 0; i < 6; ++i) q += x[i] * wx[i];
    CHECK(q >= -1e-12 * coarse.W.max_abs());
  }

  // the transition endpoint agrees with the exponential for the constant blend
  const Mat phi_ref = oracle::expm(bl.A_at(sc.t0), sc.te - sc.t0);
  CHECK(max_abs_diff(coarse.Phi, phi_ref) <= 1e-9);
}

TEST_CASE("minimum energy control degenerate cases") {
  // already at the target: the law is zero
  const LinSys scalar{Mat(1, 1), Mat::identity(1), std::nullopt, TimeKind::continuous};
  TransientScenario still{scalar,
                          scalar,
                          0.0,
                          1.0,
                          MuSchedule::constant(0.5),
                          CrossVec{2.0},
                          TransientTarget::explicit_point(CrossVec{2.0})};
  const MinEnergyResult me = min_energy_control(still);
  CHECK(me.feasible);
  CHECK(me.residual <= 1e-12);
  CHECK(me.energy <= 1e-12);
  for (const auto& u : me.control.values) {
    for (double v : u) CHECK(std::abs(v) <= 1e-12);
  }

  // dead input with a moved target cannot be steered
  TransientScenario dead = still;
  dead.sigma1.B = Mat(1, 1);
  dead.sigma2.B = Mat(1, 1);
  dead.target = TransientTarget::explicit_point(CrossVec{3.0});
  const MinEnergyResult bad = min_energy_control(dead);
  CHECK_FALSE(bad.feasible);
  CHECK(bad.residual == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(bad.gramian_rank == 0);
  const TransientResult run = realize_transience(dead);
  CHECK_FALSE(run.realized);
}

TEST_CASE("handover transience is realized") {
  const TransientScenario sc = handover_scenario();
  const TransientResult tr = realize_transience(sc);
  CHECK(tr.realized);
  CHECK(tr.endpoint_err <= 1e-9);
  CHECK(tr.endpoint_dist <= 1e-9);
  CHECK(tr.reduced_dim == 3);
  CHECK(oracle::max_abs_diff_vec(tr.y_te.entries(), {1.0, 2.0, 1.0}) <= 1e-9);
  CHECK(vec_equal(tr.z_t0, CrossVec{1, 1, 1, -1, -1, -1}));
  CHECK(tr.trajectory.times.front() == sc.t0);
  CHECK(tr.trajectory.times.back() == sc.te);
  CHECK(tr.design.gramian_rank == 4);

  // the endpoint joins the lifted post-model subspace
  CHECK(vec_equivalent_eps(tr.z_te, rep_expand(tr.y_te, 2), 1e-5));
}

TEST_CASE("simulation reproduces the designed endpoint at the integrator order") {
  TransientScenario sc = handover_scenario();
  for (const double dt : {1e-2, 5e-3}) {
    sc.dt = dt;
    const TransientResult tr = realize_transience(sc);
    const double gap =
        oracle::max_abs_diff_vec(tr.z_te.entries(), tr.design.predicted_z_te.entries());
    CHECK(gap <= 100.0 * dt * dt * dt * dt);
  }
}

TEST_CASE("subspace targets pick the nearest lifted state") {
  TransientScenario sc = handover_scenario();
  sc.target = TransientTarget::nearest_subspace();
  const TransientResult tr = realize_transience(sc);
  CHECK(tr.realized);
  CHECK(tr.z_target.dim() == 6);
  // the chosen target is itself a lifted three-state point
  const auto red = reduce_vector_eps(tr.z_target, 1e-9);
  CHECK(3 % red.cls.rep.dim() == 0);
}

TEST_CASE("degenerate window realizes only an already-lifted state") {
  const LinSys pre = double_integrator();
  const LinSys post{Mat::from_rows({{0.0}}), Mat(1, 1, {1.0}), std::nullopt,
                    TimeKind::continuous};
  // p = 2, q = 1: membership asks for equal components
  TransientScenario flat{pre,
                         post,
                         5.0,
                         5.0,
                         MuSchedule::constant(0.5),
                         CrossVec{3, 3},
                         TransientTarget::explicit_point(CrossVec{3, 3})};
  const TransientResult ok = realize_transience(flat);
  CHECK(ok.realized);
  CHECK(ok.trajectory.size() == 1);

  TransientScenario off = flat;
  off.x_t0 = CrossVec{3, 4};
  const TransientResult miss = realize_transience(off);
  CHECK_FALSE(miss.realized);
}

TEST_CASE("clutch engagement steers to the synchronized speed") {
  const ClutchModels cm = clutch_models(0.2, 0.7753, 0.03, 0.03);
  TransientScenario sc{cm.sigma1,
                       cm.sigma2,
                       0.0,
                       0.86,
                       MuSchedule::linear(0.0, 0.86),
                       CrossVec{150, 0},
                       TransientTarget::explicit_point(CrossVec{25, 25})};
  const TransientResult tr = realize_transience(sc);
  CHECK(tr.realized);
  CHECK(tr.endpoint_err <= 1e-9);
  CHECK(std::abs(tr.z_te[0] - tr.z_te[1]) <= 1e-9);
  CHECK(tr.y_te.dim() == 1);
  CHECK(tr.y_te[0] == doctest::Approx(25.0).epsilon(1e-9));
  CHECK(tr.design.gramian_rank == 2);
}

TEST_CASE("three-phase run tracks, hands over and stabilizes") {
  const TransientScenario sc = handover_scenario();
  const PhaseConfig pre{0.0, Mat(1, 2, {10, 5}), {105.0}, {-10.0}, CrossVec{0, 0}};
  const PhaseConfig post{25.0, Mat(1, 3, {8, 6, 12}), {}, {}, std::nullopt};
  const PhasedResult ph = run_phased(pre, sc, post);

  // the tracking phase parks the pre model on the declared handover state
  CHECK(ph.boundary_err <= 1e-6);
  CHECK(oracle::max_abs_diff_vec(ph.pre_end.entries(), {1.0, -1.0}) <= 1e-6);

  CHECK(ph.transient.realized);

  // the stabilizing phase decays toward the origin
  CHECK(col_mat(ph.post_end).max_abs() <= 1e-6);

  // stitched trajectory: strictly increasing times, labeled phases,
  // native dimensions per phase
  CHECK(ph.trajectory.labels.front() == "pre");
  CHECK(ph.trajectory.labels.back() == "post");
  CHECK(ph.trajectory.times.front() == 0.0);
  CHECK(ph.trajectory.times.back() == 25.0);
  bool saw_transient = false;
  for (std::size_t k = 0; k < ph.trajectory.size(); ++k) {
    const auto& label = ph.trajectory.labels[k];
    const std::size_t d = ph.trajectory.states[k].dim();
    if (label == "pre") CHECK(d == 2);
    if (label == "transient") {
      CHECK(d == 6);
      saw_transient = true;
    }
    if (label == "post") CHECK(d == 3);
    if (k > 0) CHECK(ph.trajectory.times[k] > ph.trajectory.times[k - 1]);
  }
  CHECK(saw_transient);

  // closed-loop poles of the stabilized phase sit in the left half plane
  const Mat acl = three_state_loop().A - (*three_state_loop().B) * Mat(1, 3, {8, 6, 12});
  // characteristic polynomial s^3 + 6 s^2 + 12 s + 8 = (s + 2)^3
  const Mat p1 = acl * acl;
  const Mat p2 = p1 * acl + 6.0 * p1 + 12.0 * acl + 8.0 * Mat::identity(3);
  CHECK(p2.max_abs() <= 1e-12);
}

TEST_CASE("zero-length phases collapse to the pure transience") {
  const TransientScenario sc = handover_scenario();
  const PhaseConfig pre{sc.t0, Mat(1, 2, {0, 0}), {}, {}, CrossVec{1, -1}};
  const PhaseConfig post{sc.te, Mat(1, 3, {0, 0, 0}), {}, {}, std::nullopt};
  const PhasedResult ph = run_phased(pre, sc, post);
  CHECK(ph.transient.realized);
  CHECK(ph.trajectory.times.front() == sc.t0);
  CHECK(ph.trajectory.times.back() == sc.te);
  CHECK(vec_equal(ph.post_end, ph.transient.y_te));
}

TEST_CASE("phase boundary mismatches are reported") {
  const TransientScenario sc = handover_scenario();
  // a do-nothing pre phase ends far from the declared handover state
  const PhaseConfig pre{0.0, Mat(1, 2, {0, 0}), {}, {}, CrossVec{0, 0}};
  const PhaseConfig post{25.0, Mat(1, 3, {8, 6, 12}), {}, {}, std::nullopt};
  CHECK_THROWS_AS(run_phased(pre, sc, post), numerical_error);
}

TEST_SUITE_END();
