// Copyright 2026 The Qollide Authors
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

#include "qollide/figures.hpp"

#include "qollide/dynamics.hpp"
#include "qollide/io.hpp"

namespace qollide {

namespace {

struct Column {
  std::string name;
  std::vector<double> values;
};

std::string to_csv(const std::vector<double>& grid, const std::vector<Column>& columns) {
  std::string out = "mu_t";
  for (const auto& c : columns) out += ',' + c.name;
  out += '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out += format_double(grid[i]);
    for (const auto& c : columns) out += ',' + format_double(c.values[i]);
    out += '\n';
  }
  return out;
}

std::vector<double> decay_curve(const MeqCoefficients& c, const std::vector<double>& grid) {
  const double steady = c.r_e / (c.r_e + c.r_d);
  const Trajectory traj = analytic_trajectory(QubitState::excited(), c, grid);
  std::vector<double> out;
  for (double ee : traj.excited_pop) out.push_back((ee - steady) / (1.0 - steady));
  return out;
}

}  // namespace

std::vector<FigureDataset> figure_datasets(std::size_t n_points) {
  const CollisionParams unit_mu;  // mu = 1, so t = mu t
  std::vector<FigureDataset> out;

  {
    const auto grid = uniform_grid(0.5, n_points);
    std::vector<Column> cols;
    for (int n : {4, 8}) {
      cols.push_back({"mixed_N" + std::to_string(n), decay_curve(coefficients_product_mixed(n, 0.0, unit_mu), grid)});
    }
    for (auto [n, k] : {std::pair{4, 1}, std::pair{8, 2}, std::pair{8, 3}}) {
      cols.push_back({"dicke_N" + std::to_string(n) + "_k" + std::to_string(k),
                      decay_curve(coefficients_dicke(n, k, unit_mu), grid)});
    }
    out.push_back({"fig4_decay.csv", to_csv(grid, cols)});
  }

  {
    const auto grid = uniform_grid(1.5, n_points);
    std::vector<Column> cols;
    for (int n : {4, 8, 12}) {
      const int k = apply_k_rule(KRule::HalfMinusOne, n);
      const MeqCoefficients dicke = coefficients_dicke(n, k, unit_mu);
      const double p_e = dicke.r_e / (dicke.r_e + dicke.r_d);
      const MeqCoefficients mixed = coefficients_product_mixed(n, p_e, unit_mu);
      const double estimate = (n * n + 2.0 * n) / 8.0 - 0.5;
      cols.push_back({"dicke_N" + std::to_string(n) + "_k" + std::to_string(k), temperature_trajectory(dicke, grid)});
      cols.push_back({"mixed_N" + std::to_string(n), temperature_trajectory(mixed, grid)});
      cols.push_back({"estimate_N" + std::to_string(n), std::vector<double>(grid.size(), estimate)});
    }
    out.push_back({"fig5_temperature.csv", to_csv(grid, cols)});
  }
  return out;
}

}  // namespace qollide
