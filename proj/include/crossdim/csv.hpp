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

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "crossdim/dynamics.hpp"
#include "crossdim/transient.hpp"

// Flat CSV layout for varying-dimension trajectories:
//   t,phase,dim,x1..xD
// where D is the largest dimension in the run; rows with a smaller dimension
// leave the trailing columns empty. Values are printed with 17 significant
// digits so a written double reads back bit-exactly.

namespace crossdim {

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const std::size_t d = traj.max_dim();
  os << "t,phase,dim";
  for (std::size_t i = 1; i <= d; ++i) os << ",x" << i;
  os << "\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const CrossVec& s = traj.states[k];
    os << format_g17(traj.times[k]) << ',' << traj.labels[k] << ',' << s.dim();
    for (std::size_t i = 0; i < d; ++i) {
      os << ',';
      if (i < s.dim()) os << format_g17(s[i]);
    }
    os << "\n";
  }
}

inline void write_controls_csv(std::ostream& os, const ControlLaw& law) {
  const std::size_t m = law.values.empty() ? 0 : law.values.front().size();
  os << "t";
  for (std::size_t i = 1; i <= m; ++i) os << ",u" << i;
  os << "\n";
  for (std::size_t k = 0; k < law.grid.size(); ++k) {
    os << format_g17(law.grid[k]);
    for (std::size_t i = 0; i < m; ++i) os << ',' << format_g17(law.values[k][i]);
    os << "\n";
  }
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

inline Trajectory read_trajectory_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("crossdim: empty trajectory CSV");
  Trajectory traj;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = detail::split_csv_line(line);
    if (cells.size() < 3) throw std::invalid_argument("crossdim: malformed trajectory CSV row");
    const double t = std::stod(cells[0]);
    const auto dim = static_cast<std::size_t>(std::stoul(cells[2]));
    if (cells.size() < 3 + dim) {
      throw std::invalid_argument("crossdim: trajectory CSV row shorter than its dimension");
    }
    std::vector<double> state(dim);
    for (std::size_t i = 0; i < dim; ++i) state[i] = std::stod(cells[3 + i]);
    traj.push(t, CrossVec(std::move(state)), cells[1]);
  }
  return traj;
}

}  // namespace crossdim
