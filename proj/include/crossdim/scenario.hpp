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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "crossdim/csv.hpp"
#include "crossdim/dynamics.hpp"
#include "crossdim/projection.hpp"
#include "crossdim/quotient.hpp"
#include "crossdim/transient.hpp"

// Scenario files: schema-versioned JSON driving one run per invocation.
// Parsing validates structure and dimensions up front and reports every
// problem it finds, not just the first.

namespace crossdim {

inline bool log_enabled() {
  static const bool on = [] {
    const char* v = std::getenv("CROSSDIM_LOG");
    if (v == nullptr) return false;
    const std::string_view s(v);
    return !s.empty() && s != "0" && s != "off";
  }();
  return on;
}

inline void log_line(const std::string& msg) {
  if (log_enabled()) std::fputs(("crossdim: " + msg + "\n").c_str(), stderr);
}

enum class Mode { project, simulate, transient, phased, reduce, norm };

inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::project: return "project";
    case Mode::simulate: return "simulate";
    case Mode::transient: return "transient";
    case Mode::phased: return "phased";
    case Mode::reduce: return "reduce";
    case Mode::norm: return "norm";
  }
  return "?";
}

class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<std::string> errs)
      : std::runtime_error(joined(errs)), errors(std::move(errs)) {}

  std::vector<std::string> errors;

 private:
  static std::string joined(const std::vector<std::string>& errs) {
    std::string out = "scenario validation failed:";
    for (const auto& e : errs) out += "\n  - " + e;
    return out;
  }
};

struct ScenarioFile {
  int schema_version = 1;
  Mode mode = Mode::norm;
  std::string name;
  std::optional<std::string> out_dir;  // output directory; the CLI flag wins

  // project
  std::optional<LinSys> system;  // shared with simulate
  std::optional<std::size_t> to_dim;
  std::optional<CrossVec> vector;

  // simulate
  std::optional<CrossVec> x0;
  std::optional<std::size_t> steps;
  std::optional<double> t0, te, dt;

  // transient / phased
  std::optional<TransientScenario> transient;
  std::optional<PhaseConfig> pre, post;
  double boundary_tol = 1e-6;

  // reduce
  std::optional<CrossVec> reduce_vec;
  std::optional<Mat> reduce_mat;
  std::optional<Mat> reduce_vecmat_block;
  std::optional<double> epsilon;

  // norm
  std::optional<Mat> norm_mat;
};

namespace detail {

using json = nlohmann::json;

struct Collector {
  std::vector<std::string> errors;
  void fail(const std::string& where, const std::string& what) {
    errors.push_back(where + ": " + what);
  }
  bool ok() const { return errors.empty(); }
};

inline std::optional<double> get_number(const json& j, const std::string& key,
                                        const std::string& path, Collector& c, bool required) {
  if (!j.contains(key)) {
    if (required) c.fail(path + "." + key, "missing required number");
    return std::nullopt;
  }
  if (!j[key].is_number()) {
    c.fail(path + "." + key, "expected a number");
    return std::nullopt;
  }
  const double v = j[key].get<double>();
  if (!std::isfinite(v)) {
    c.fail(path + "." + key, "value must be finite");
    return std::nullopt;
  }
  return v;
}

inline std::optional<std::size_t> get_count(const json& j, const std::string& key,
                                            const std::string& path, Collector& c,
                                            bool required) {
  const auto v = get_number(j, key, path, c, required);
  if (!v) return std::nullopt;
  if (*v < 0.0 || *v != std::floor(*v)) {
    c.fail(path + "." + key, "expected a nonnegative integer");
    return std::nullopt;
  }
  return static_cast<std::size_t>(*v);
}

inline std::optional<std::string> get_string(const json& j, const std::string& key,
                                             const std::string& path, Collector& c,
                                             bool required) {
  if (!j.contains(key)) {
    if (required) c.fail(path + "." + key, "missing required string");
    return std::nullopt;
  }
  if (!j[key].is_string()) {
    c.fail(path + "." + key, "expected a string");
    return std::nullopt;
  }
  return j[key].get<std::string>();
}

inline std::optional<std::vector<double>> get_array(const json& node, const std::string& path,
                                                    Collector& c) {
  if (!node.is_array() || node.empty()) {
    c.fail(path, "expected a nonempty array of numbers");
    return std::nullopt;
  }
  std::vector<double> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number()) {
      c.fail(path, "entry " + std::to_string(i + 1) + " is not a number");
      return std::nullopt;
    }
    const double v = node[i].get<double>();
    if (!std::isfinite(v)) {
      c.fail(path, "entry " + std::to_string(i + 1) + " is not finite");
      return std::nullopt;
    }
    out.push_back(v);
  }
  return out;
}

inline std::optional<CrossVec> get_vector(const json& j, const std::string& key,
                                          const std::string& path, Collector& c, bool required) {
  if (!j.contains(key)) {
    if (required) c.fail(path + "." + key, "missing required vector");
    return std::nullopt;
  }
  auto arr = get_array(j[key], path + "." + key, c);
  if (!arr) return std::nullopt;
  return CrossVec(std::move(*arr));
}

inline std::optional<Mat> get_matrix(const json& j, const std::string& key,
                                     const std::string& path, Collector& c, bool required) {
  if (!j.contains(key)) {
    if (required) c.fail(path + "." + key, "missing required matrix");
    return std::nullopt;
  }
  const json& node = j[key];
  const std::string where = path + "." + key;
  if (!node.is_array() || node.empty()) {
    c.fail(where, "expected a nonempty array of rows");
    return std::nullopt;
  }
  std::size_t cols = 0;
  std::vector<double> entries;
  for (std::size_t i = 0; i < node.size(); ++i) {
    auto row = get_array(node[i], where + " row " + std::to_string(i + 1), c);
    if (!row) return std::nullopt;
    if (i == 0) {
      cols = row->size();
    } else if (row->size() != cols) {
      c.fail(where, "row " + std::to_string(i + 1) + " has " + std::to_string(row->size()) +
                        " entries, expected " + std::to_string(cols));
      return std::nullopt;
    }
    entries.insert(entries.end(), row->begin(), row->end());
  }
  return Mat(node.size(), cols, std::move(entries));
}

inline std::optional<LinSys> get_system(const json& j, const std::string& key,
                                        const std::string& path, Collector& c, bool required,
                                        bool need_square) {
  if (!j.contains(key)) {
    if (required) c.fail(path + "." + key, "missing required system block");
    return std::nullopt;
  }
  const json& node = j[key];
  const std::string where = path + "." + key;
  if (!node.is_object()) {
    c.fail(where, "expected an object with at least an A matrix");
    return std::nullopt;
  }
  auto a = get_matrix(node, "A", where, c, true);
  if (!a) return std::nullopt;
  if (need_square && a->rows() != a->cols()) {
    c.fail(where + ".A", "matrix must be square");
    return std::nullopt;
  }
  std::optional<Mat> b = get_matrix(node, "B", where, c, false);
  std::optional<Mat> cm = get_matrix(node, "C", where, c, false);
  TimeKind kind = TimeKind::continuous;
  if (auto tk = get_string(node, "time_kind", where, c, false)) {
    if (*tk == "discrete") {
      kind = TimeKind::discrete;
    } else if (*tk == "continuous") {
      kind = TimeKind::continuous;
    } else {
      c.fail(where + ".time_kind", "must be \"discrete\" or \"continuous\"");
    }
  }
  LinSys sys{std::move(*a), std::move(b), std::move(cm), kind};
  if (need_square || sys.A.rows() == sys.A.cols()) {
    try {
      validate(sys);
    } catch (const std::invalid_argument& e) {
      c.fail(where, e.what());
      return std::nullopt;
    }
  }
  return sys;
}

inline std::optional<MuSchedule> get_mu(const json& j, const std::string& path, Collector& c,
                                        double t0, double te) {
  if (!j.contains("mu")) {
    c.fail(path + ".mu", "missing required schedule");
    return std::nullopt;
  }
  const json& node = j["mu"];
  const std::string where = path + ".mu";
  auto kind = get_string(node, "kind", where, c, true);
  if (!kind) return std::nullopt;
  try {
    if (*kind == "constant") {
      if (node.contains("masses")) {
        auto masses = get_array(node["masses"], where + ".masses", c);
        if (!masses) return std::nullopt;
        if (masses->size() != 2) {
          c.fail(where + ".masses", "expected exactly two masses");
          return std::nullopt;
        }
        return MuSchedule::constant(mu_from_masses((*masses)[0], (*masses)[1]));
      }
      auto v = get_number(node, "value", where, c, true);
      if (!v) return std::nullopt;
      return MuSchedule::constant(*v);
    }
    if (*kind == "linear") {
      return MuSchedule::linear(t0, te);
    }
  } catch (const std::invalid_argument& e) {
    c.fail(where, e.what());
    return std::nullopt;
  }
  c.fail(where + ".kind", "must be \"constant\" or \"linear\"");
  return std::nullopt;
}

inline std::optional<TransientTarget> get_target(const json& j, const std::string& path,
                                                 Collector& c) {
  if (!j.contains("target")) {
    c.fail(path + ".target", "missing required target block");
    return std::nullopt;
  }
  const json& node = j["target"];
  const std::string where = path + ".target";
  auto kind = get_string(node, "kind", where, c, true);
  if (!kind) return std::nullopt;
  if (*kind == "explicit") {
    auto z = get_vector(node, "z", where, c, true);
    if (!z) return std::nullopt;
    return TransientTarget::explicit_point(std::move(*z));
  }
  if (*kind == "subspace") return TransientTarget::nearest_subspace();
  c.fail(where + ".kind", "must be \"explicit\" or \"subspace\"");
  return std::nullopt;
}

inline std::optional<PhaseConfig> get_phase(const json& j, const std::string& key,
                                            const std::string& path, Collector& c,
                                            bool is_pre) {
  if (!j.contains(key)) {
    c.fail(path + "." + key, "missing required phase block");
    return std::nullopt;
  }
  const json& node = j[key];
  const std::string where = path + "." + key;
  auto edge = get_number(node, is_pre ? "t_start" : "t_end", where, c, true);
  auto k = get_matrix(node, "K", where, c, true);
  std::optional<CrossVec> x0;
  if (is_pre) x0 = get_vector(node, "x0", where, c, true);
  std::vector<double> r0, r1;
  if (node.contains("r0")) {
    auto arr = get_array(node["r0"], where + ".r0", c);
    if (arr) r0 = std::move(*arr);
  }
  if (node.contains("r1")) {
    auto arr = get_array(node["r1"], where + ".r1", c);
    if (arr) r1 = std::move(*arr);
  }
  if (!edge || !k || (is_pre && !x0)) return std::nullopt;
  return PhaseConfig{*edge, std::move(*k), std::move(r0), std::move(r1), std::move(x0)};
}

inline void check_phase_dims(const std::optional<PhaseConfig>& phase, const LinSys& model,
                             std::size_t order, double boundary, bool is_pre,
                             const std::string& path, Collector& c) {
  if (!phase) return;
  const std::string where = path + (is_pre ? ".pre" : ".post");
  const std::size_t inputs = model.B ? model.B->cols() : 0;
  if (phase->K.rows() != inputs || phase->K.cols() != order) {
    c.fail(where + ".K", "gain must be " + std::to_string(inputs) + "x" +
                             std::to_string(order) + " (inputs by states)");
  }
  if (!phase->r0.empty() && phase->r0.size() != inputs) {
    c.fail(where + ".r0", "reference width must match the input count");
  }
  if (!phase->r1.empty() && phase->r1.size() != inputs) {
    c.fail(where + ".r1", "reference width must match the input count");
  }
  if (phase->x0 && phase->x0->dim() != order) {
    c.fail(where + ".x0", "dimension must match the phase model order");
  }
  if (is_pre && phase->t_edge > boundary) {
    c.fail(where + ".t_start", "must not be later than t0");
  }
  if (!is_pre && phase->t_edge < boundary) {
    c.fail(where + ".t_end", "must not be earlier than te");
  }
}

}  // namespace detail

inline ScenarioFile parse_scenario_text(const std::string& text, const std::string& origin) {
  detail::Collector c;
  detail::json root;
  try {
    root = detail::json::parse(text);
  } catch (const std::exception& e) {
    c.fail(origin, std::string("not valid JSON: ") + e.what());
    throw ScenarioError(std::move(c.errors));
  }
  if (!root.is_object()) {
    c.fail(origin, "top level must be an object");
    throw ScenarioError(std::move(c.errors));
  }

  ScenarioFile sc;
  const std::string path = origin;

  if (auto ver = detail::get_count(root, "schema_version", path, c, true)) {
    if (*ver != 1) c.fail(path + ".schema_version", "unsupported version (this build reads 1)");
    sc.schema_version = static_cast<int>(*ver);
  }

  auto mode_str = detail::get_string(root, "mode", path, c, true);
  if (!mode_str) throw ScenarioError(std::move(c.errors));
  if (*mode_str == "project") {
    sc.mode = Mode::project;
  } else if (*mode_str == "simulate") {
    sc.mode = Mode::simulate;
  } else if (*mode_str == "transient") {
    sc.mode = Mode::transient;
  } else if (*mode_str == "phased") {
    sc.mode = Mode::phased;
  } else if (*mode_str == "reduce") {
    sc.mode = Mode::reduce;
  } else if (*mode_str == "norm") {
    sc.mode = Mode::norm;
  } else {
    c.fail(path + ".mode", "unknown mode \"" + *mode_str + "\"");
    throw ScenarioError(std::move(c.errors));
  }

  if (auto name = detail::get_string(root, "name", path, c, false)) sc.name = *name;
  if (sc.name.empty()) sc.name = mode_name(sc.mode);
  if (auto out = detail::get_string(root, "out", path, c, false)) sc.out_dir = *out;

  switch (sc.mode) {
    case Mode::project: {
      sc.vector = detail::get_vector(root, "vector", path, c, false);
      sc.system = detail::get_system(root, "system", path, c, false, true);
      sc.to_dim = detail::get_count(root, "to_dim", path, c, true);
      if (sc.to_dim && *sc.to_dim == 0) c.fail(path + ".to_dim", "must be positive");
      if (!sc.vector && !sc.system) {
        c.fail(path, "project mode needs a \"vector\" or a \"system\" block");
      }
      break;
    }
    case Mode::simulate: {
      sc.system = detail::get_system(root, "system", path, c, true, false);
      sc.x0 = detail::get_vector(root, "x0", path, c, true);
      if (sc.system && sc.system->time_kind == TimeKind::discrete) {
        sc.steps = detail::get_count(root, "steps", path, c, true);
      } else if (sc.system) {
        if (sc.system->A.rows() != sc.system->A.cols()) {
          c.fail(path + ".system.A",
                 "continuous simulation needs a square matrix; use time_kind \"discrete\" for "
                 "cross-dimensional iteration");
        }
        sc.t0 = detail::get_number(root, "t0", path, c, true);
        sc.te = detail::get_number(root, "te", path, c, true);
        sc.dt = detail::get_number(root, "dt", path, c, true);
        if (sc.x0 && sc.system->A.rows() == sc.system->A.cols() &&
            sc.x0->dim() != sc.system->A.rows()) {
          c.fail(path + ".x0", "dimension must match the system order");
        }
      }
      break;
    }
    case Mode::transient:
    case Mode::phased: {
      auto s1 = detail::get_system(root, "sigma1", path, c, true, true);
      auto s2 = detail::get_system(root, "sigma2", path, c, true, true);
      auto t0 = detail::get_number(root, "t0", path, c, true);
      auto te = detail::get_number(root, "te", path, c, true);
      auto dt = detail::get_number(root, "dt", path, c, false);
      auto tol = detail::get_number(root, "tol", path, c, false);
      auto x_t0 = detail::get_vector(root, "x_t0", path, c, true);
      std::optional<MuSchedule> mu;
      if (t0 && te) mu = detail::get_mu(root, path, c, *t0, *te);
      auto target = detail::get_target(root, path, c);
      if (sc.mode == Mode::phased) {
        sc.pre = detail::get_phase(root, "pre", path, c, true);
        sc.post = detail::get_phase(root, "post", path, c, false);
        if (auto bt = detail::get_number(root, "boundary_tol", path, c, false)) {
          sc.boundary_tol = *bt;
        }
      }
      if (s1 && s2 && t0 && te && mu && x_t0 && target) {
        TransientScenario tr{std::move(*s1), std::move(*s2), *t0,
                             *te,            *mu,            std::move(*x_t0),
                             std::move(*target)};
        if (dt) tr.dt = *dt;
        if (tol) tr.tol = *tol;
        try {
          tr.validate();
          if (sc.mode == Mode::phased) {
            detail::check_phase_dims(sc.pre, tr.sigma1, tr.p(), tr.t0, true, path, c);
            detail::check_phase_dims(sc.post, tr.sigma2, tr.q(), tr.te, false, path, c);
          }
          sc.transient = std::move(tr);
        } catch (const std::invalid_argument& e) {
          c.fail(path, e.what());
        }
      }
      break;
    }
    case Mode::reduce: {
      sc.reduce_vec = detail::get_vector(root, "vector", path, c, false);
      sc.reduce_mat = detail::get_matrix(root, "matrix", path, c, false);
      sc.reduce_vecmat_block = detail::get_matrix(root, "vecmat", path, c, false);
      const int given = (sc.reduce_vec ? 1 : 0) + (sc.reduce_mat ? 1 : 0) +
                        (sc.reduce_vecmat_block ? 1 : 0);
      if (given != 1) {
        c.fail(path, "reduce mode needs exactly one of \"vector\", \"matrix\", \"vecmat\"");
      }
      sc.epsilon = detail::get_number(root, "epsilon", path, c, false);
      if (sc.epsilon && *sc.epsilon < 0.0) {
        c.fail(path + ".epsilon", "must be nonnegative");
      }
      break;
    }
    case Mode::norm: {
      sc.norm_mat = detail::get_matrix(root, "matrix", path, c, true);
      break;
    }
  }

  if (!c.ok()) throw ScenarioError(std::move(c.errors));
  return sc;
}

inline ScenarioFile parse_scenario(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ScenarioError({file + ": cannot open file"});
  std::ostringstream buf;
  buf << in.rdbuf();
  ScenarioFile sc = parse_scenario_text(buf.str(), file);
  if (sc.name == mode_name(sc.mode)) {
    sc.name = std::filesystem::path(file).stem().string();
  }
  return sc;
}

struct RunOptions {
  std::string out_dir = ".";
  std::optional<double> dt_override;
  std::optional<double> tol_override;
};

struct RunResult {
  int exit_code = 0;
  std::string report;
  std::vector<std::string> files;
};

namespace detail {

inline std::string format_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

inline void print_matrix(std::ostringstream& os, const std::string& label, const Mat& m) {
  os << label << " (" << m.rows() << "x" << m.cols() << ")\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "  ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      os << (j ? " " : "") << format_num(m(i, j));
    }
    os << "\n";
  }
}

inline std::string format_vec(const CrossVec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) out += ", ";
    out += format_num(v[i]);
  }
  return out + ")";
}

inline std::string write_file(const RunOptions& opt, const std::string& name,
                              const std::string& contents) {
  const std::filesystem::path dir(opt.out_dir);
  std::filesystem::create_directories(dir);
  const std::filesystem::path target = dir / name;
  std::ofstream out(target, std::ios::binary);
  if (!out) throw std::runtime_error("crossdim: cannot write " + target.string());
  out << contents;
  return target.string();
}

}  // namespace detail

inline RunResult run_scenario(ScenarioFile sc, const RunOptions& opt = {}) {
  std::ostringstream rep;
  RunResult result;
  rep << "crossdim run report\n";
  rep << "scenario: " << sc.name << " (" << mode_name(sc.mode) << ")\n";
  log_line(std::string("running ") + sc.name);

  std::optional<Trajectory> traj;
  std::optional<ControlLaw> controls;

  switch (sc.mode) {
    case Mode::project: {
      const std::size_t n = *sc.to_dim;
      if (sc.vector) {
        const CrossVec y = project_vector(*sc.vector, n);
        rep << "vector " << detail::format_vec(*sc.vector) << " projected to dim " << n << "\n";
        rep << "result: " << detail::format_vec(y) << "\n";
        rep << "residual V-dist: " << detail::format_num(vdist(*sc.vector, y)) << "\n";
      }
      if (sc.system) {
        const LinSys proj = project_system(*sc.system, n);
        detail::print_matrix(rep, "A_pi", proj.A);
        if (proj.B) detail::print_matrix(rep, "B_pi", *proj.B);
        if (proj.C) detail::print_matrix(rep, "C_pi", *proj.C);
      }
      break;
    }
    case Mode::simulate: {
      const LinSys& sys = *sc.system;
      if (sys.time_kind == TimeKind::discrete) {
        traj = simulate_discrete(sys.A, *sc.x0, *sc.steps);
        const DimOrbit orbit = dimension_orbit(sys.A, sc.x0->dim());
        rep << "discrete steps: " << *sc.steps << "\n";
        rep << "dimension orbit:";
        for (std::size_t d : orbit.dims) rep << " " << d;
        if (orbit.cycle_found) {
          rep << " (preperiod " << orbit.preperiod << ", period " << orbit.period << ")\n";
        } else {
          rep << " (open orbit)\n";
        }
      } else {
        const double dt = opt.dt_override.value_or(*sc.dt);
        traj = simulate_continuous(sys.A, *sc.x0, *sc.t0, *sc.te, dt);
        rep << "continuous window: [" << detail::format_num(*sc.t0) << ", "
            << detail::format_num(*sc.te) << "] dt " << detail::format_num(dt) << "\n";
      }
      rep << "final state: " << detail::format_vec(traj->states.back()) << "\n";
      break;
    }
    case Mode::transient:
    case Mode::phased: {
      TransientScenario ts = *sc.transient;
      if (opt.dt_override) ts.dt = *opt.dt_override;
      if (opt.tol_override) ts.tol = *opt.tol_override;
      rep << "state dims: p=" << ts.p() << " q=" << ts.q() << " n=" << ts.n() << "\n";
      rep << "window: [" << detail::format_num(ts.t0) << ", " << detail::format_num(ts.te)
          << "] dt " << detail::format_num(ts.dt) << "\n";
      rep << "mu: " << (ts.mu.kind == MuSchedule::Kind::constant
                            ? "constant " + detail::format_num(ts.mu.value)
                            : std::string("linear"))
          << "\n";

      const TransientResult* tr = nullptr;
      std::optional<TransientResult> own;
      std::optional<PhasedResult> phased;
      if (sc.mode == Mode::phased) {
        phased = run_phased(*sc.pre, ts, *sc.post, sc.boundary_tol);
        tr = &phased->transient;
        traj = phased->trajectory;
        rep << "pre phase boundary gap: " << detail::format_num(phased->boundary_err) << "\n";
        rep << "post phase end: " << detail::format_vec(phased->post_end) << "\n";
      } else {
        own = realize_transience(ts);
        tr = &*own;
        traj = tr->trajectory;
      }
      controls = tr->control;

      if (ts.mu.kind == MuSchedule::Kind::constant) {
        const Blend bl = build_blend(ts);
        const auto ct = is_controllable(bl.A_at(ts.t0), bl.B_at(ts.t0));
        rep << "kalman rank of the blended pair: " << ct.rank << " / " << ts.n() << "\n";
      }
      rep << "gramian rank: " << tr->design.gramian_rank << " / " << ts.n() << "\n";
      rep << "design residual: " << detail::format_num(tr->design.residual) << "\n";
      rep << "control energy: " << detail::format_num(tr->design.energy) << "\n";
      rep << "z(t0) = " << detail::format_vec(tr->z_t0) << "\n";
      rep << "z(te) = " << detail::format_vec(tr->z_te) << "\n";
      rep << "target = " << detail::format_vec(tr->z_target) << "\n";
      rep << "endpoint error: " << detail::format_num(tr->endpoint_err)
          << " (V-dist " << detail::format_num(tr->endpoint_dist) << ")\n";
      rep << "reduced endpoint dim: " << tr->reduced_dim << " (divides q: "
          << (ts.q() % tr->reduced_dim == 0 ? "yes" : "no") << ")\n";
      rep << "y(te) = " << detail::format_vec(tr->y_te) << "\n";
      rep << "verdict: " << (tr->realized ? "realized" : "not realized") << "\n";
      if (!tr->realized) result.exit_code = 3;
      break;
    }
    case Mode::reduce: {
      if (sc.reduce_vec) {
        if (sc.epsilon) {
          const auto r = reduce_vector_eps(*sc.reduce_vec, *sc.epsilon);
          rep << "rep = " << detail::format_vec(r.cls.rep) << ", factor "
              << sc.reduce_vec->dim() / r.cls.rep.dim() << "\n";
          rep << "absorbed deviation: " << detail::format_num(r.deviation) << "\n";
        } else {
          const VecClass r = reduce_vector(*sc.reduce_vec);
          rep << "rep = " << detail::format_vec(r.rep) << ", factor "
              << sc.reduce_vec->dim() / r.rep.dim() << "\n";
        }
      } else if (sc.reduce_mat) {
        const Mat r = sc.epsilon ? reduce_matrix_eps(*sc.reduce_mat, *sc.epsilon).cls.rep
                                 : reduce_matrix(*sc.reduce_mat).rep;
        detail::print_matrix(rep, "rep", r);
        rep << "factor " << sc.reduce_mat->rows() / r.rows() << "\n";
      } else {
        const Mat r = sc.epsilon ? reduce_vecmat_eps(*sc.reduce_vecmat_block, *sc.epsilon).cls.rep
                                 : reduce_vecmat(*sc.reduce_vecmat_block).rep;
        detail::print_matrix(rep, "rep", r);
        rep << "factor " << sc.reduce_vecmat_block->rows() / r.rows() << "\n";
      }
      break;
    }
    case Mode::norm: {
      const Mat& m = *sc.norm_mat;
      rep << "shape: " << m.rows() << "x" << m.cols() << "\n";
      rep << "operator V-norm: " << detail::format_num(operator_vnorm(m)) << "\n";
      rep << "spectral norm: " << detail::format_num(spectral_norm(m)) << "\n";
      break;
    }
  }

  if (traj) {
    std::ostringstream csv;
    write_trajectory_csv(csv, *traj);
    result.files.push_back(detail::write_file(opt, sc.name + ".csv", csv.str()));
  }
  if (controls) {
    std::ostringstream csv;
    write_controls_csv(csv, *controls);
    result.files.push_back(detail::write_file(opt, sc.name + "_controls.csv", csv.str()));
  }
  rep << "files:";
  if (result.files.empty()) rep << " (report only)";
  for (const auto& f : result.files) rep << " " << std::filesystem::path(f).filename().string();
  rep << "\n";

  result.files.push_back(detail::write_file(opt, sc.name + "_report.txt", rep.str()));
  result.report = rep.str();
  return result;
}

}  // namespace crossdim
