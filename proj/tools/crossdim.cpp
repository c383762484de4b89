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

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crossdim/crossdim.hpp"

namespace {

// Inline literals for quick checks: rows split by ';', entries by ','.
crossdim::Mat parse_inline_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::string row;
  std::istringstream in(text);
  while (std::getline(in, row, ';')) {
    std::vector<double> entries;
    std::istringstream rs(row);
    std::string cell;
    while (std::getline(rs, cell, ',')) {
      std::size_t used = 0;
      const double v = std::stod(cell, &used);
      while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
      if (used != cell.size()) throw std::invalid_argument("bad entry \"" + cell + "\"");
      entries.push_back(v);
    }
    if (entries.empty()) throw std::invalid_argument("empty matrix row");
    rows.push_back(std::move(entries));
  }
  if (rows.empty()) throw std::invalid_argument("empty matrix literal");
  const std::size_t cols = rows.front().size();
  std::vector<double> flat;
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("ragged matrix literal");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return crossdim::Mat(rows.size(), cols, std::move(flat));
}

crossdim::CrossVec parse_inline_vector(const std::string& text) {
  const crossdim::Mat m = parse_inline_matrix(text);
  if (m.rows() != 1) throw std::invalid_argument("expected a single row of entries");
  return crossdim::CrossVec(m.data());
}

void print_matrix(const std::string& label, const crossdim::Mat& m) {
  std::printf("%s (%zux%zu)\n", label.c_str(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::printf(" ");
    for (std::size_t j = 0; j < m.cols(); ++j) std::printf(" %.12g", m(i, j));
    std::printf("\n");
  }
}

void print_vector(const std::string& label, const crossdim::CrossVec& v) {
  std::printf("%s = (", label.c_str());
  for (std::size_t i = 0; i < v.dim(); ++i) std::printf(i ? ", %.12g" : "%.12g", v[i]);
  std::printf(")\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crossdim: cross-dimensional linear systems toolkit"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run a scenario file and write CSV + report");
  std::string scenario_path;
  std::string out_dir = ".";
  double dt_opt = 0.0, tol_opt = 0.0;
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--out", out_dir, "output directory (default: current)");
  auto* dt_flag = run->add_option("--dt", dt_opt, "override integration step");
  auto* tol_flag = run->add_option("--tol", tol_opt, "override endpoint tolerance");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "canonical minimal representative");
  std::string reduce_vec_arg, reduce_mat_arg, reduce_vecmat_arg;
  double reduce_eps = 0.0;
  reduce->add_option("vector", reduce_vec_arg, "vector entries, e.g. 1,1,2,2");
  reduce->add_option("--mat", reduce_mat_arg, "matrix literal, e.g. \"1,0;0,1\"");
  reduce->add_option("--vecmat", reduce_vecmat_arg, "matrix reduced by row replication");
  auto* reduce_eps_flag = reduce->add_option("--eps", reduce_eps, "tolerance for noisy data");

  // project
  auto* project = app.add_subcommand("project", "least-squares projection to another dimension");
  std::string project_vec_arg, project_a_arg, project_b_arg, project_c_arg;
  std::size_t project_to = 0;
  project->add_option("--vec", project_vec_arg, "vector to project");
  project->add_option("--a", project_a_arg, "square system matrix");
  project->add_option("--b", project_b_arg, "input matrix (with --a)");
  project->add_option("--c", project_c_arg, "output matrix (with --a)");
  project->add_option("--to", project_to, "target dimension")->required();

  // norm
  auto* norm = app.add_subcommand("norm", "operator norm of a matrix action");
  std::string norm_arg;
  norm->add_option("matrix", norm_arg, "matrix literal, e.g. \"1,0,-1,0;0,-1,0,1\"")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const crossdim::ScenarioFile sc = crossdim::parse_scenario(scenario_path);
      crossdim::RunOptions opt;
      opt.out_dir = out_dir;
      if (run->count("--out") == 0 && sc.out_dir) opt.out_dir = *sc.out_dir;
      if (dt_flag->count() > 0) opt.dt_override = dt_opt;
      if (tol_flag->count() > 0) opt.tol_override = tol_opt;
      const crossdim::RunResult res = crossdim::run_scenario(sc, opt);
      std::fputs(res.report.c_str(), stdout);
      return res.exit_code;
    }

    if (reduce->parsed()) {
      const int given = (reduce_vec_arg.empty() ? 0 : 1) + (reduce_mat_arg.empty() ? 0 : 1) +
                        (reduce_vecmat_arg.empty() ? 0 : 1);
      if (given != 1) {
        std::fprintf(stderr, "reduce: give exactly one of a vector, --mat, --vecmat\n");
        return 2;
      }
      const bool use_eps = reduce_eps_flag->count() > 0;
      if (!reduce_vec_arg.empty()) {
        const crossdim::CrossVec x = parse_inline_vector(reduce_vec_arg);
        const crossdim::CrossVec rep = use_eps
                                           ? crossdim::reduce_vector_eps(x, reduce_eps).cls.rep
                                           : crossdim::reduce_vector(x).rep;
        print_vector("rep", rep);
        std::printf("factor %zu\n", x.dim() / rep.dim());
      } else if (!reduce_mat_arg.empty()) {
        const crossdim::Mat m = parse_inline_matrix(reduce_mat_arg);
        const crossdim::Mat rep = use_eps ? crossdim::reduce_matrix_eps(m, reduce_eps).cls.rep
                                          : crossdim::reduce_matrix(m).rep;
        print_matrix("rep", rep);
        std::printf("factor %zu\n", m.rows() / rep.rows());
      } else {
        const crossdim::Mat m = parse_inline_matrix(reduce_vecmat_arg);
        const crossdim::Mat rep = use_eps ? crossdim::reduce_vecmat_eps(m, reduce_eps).cls.rep
                                          : crossdim::reduce_vecmat(m).rep;
        print_matrix("rep", rep);
        std::printf("factor %zu\n", m.rows() / rep.rows());
      }
      return 0;
    }

    if (project->parsed()) {
      if (project_to == 0) {
        std::fprintf(stderr, "project: target dimension must be positive\n");
        return 2;
      }
      if (!project_vec_arg.empty()) {
        const crossdim::CrossVec x = parse_inline_vector(project_vec_arg);
        print_vector("projection", crossdim::project_vector(x, project_to));
        return 0;
      }
      if (project_a_arg.empty()) {
        std::fprintf(stderr, "project: give --vec or --a\n");
        return 2;
      }
      crossdim::LinSys sys{parse_inline_matrix(project_a_arg), std::nullopt, std::nullopt,
                           crossdim::TimeKind::continuous};
      if (!project_b_arg.empty()) sys.B = parse_inline_matrix(project_b_arg);
      if (!project_c_arg.empty()) sys.C = parse_inline_matrix(project_c_arg);
      const crossdim::LinSys proj = crossdim::project_system(sys, project_to);
      print_matrix("A_pi", proj.A);
      if (proj.B) print_matrix("B_pi", *proj.B);
      if (proj.C) print_matrix("C_pi", *proj.C);
      return 0;
    }

    if (norm->parsed()) {
      const crossdim::Mat m = parse_inline_matrix(norm_arg);
      std::printf("operator V-norm: %.12g\n", crossdim::operator_vnorm(m));
      std::printf("spectral norm:   %.12g\n", crossdim::spectral_norm(m));
      return 0;
    }
  } catch (const crossdim::ScenarioError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const crossdim::numerical_error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 3;
  }
  return 0;
}
