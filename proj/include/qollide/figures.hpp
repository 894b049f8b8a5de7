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

#pragma once

#include <string>
#include <vector>

namespace qollide {

struct FigureDataset {
  std::string name;
  std::string csv;
};

/// Relaxation datasets with mu = 1, on n_points of scaled time:
///  fig4_decay.csv        exp(-t/t_q) for mixed N=4,8 (p_e = 0) and Dicke
///                        (N=4,k=1), (N=8,k=2), (N=8,k=3), mu*t in [0, 0.5]
///  fig5_temperature.csv  temperature of a target started in |g> for Dicke
///                        k=N/2-1 and the product bath with the same steady
///                        temperature, N = 4, 8, 12, plus the large-N
///                        estimate (N^2+2N)/8 - 1/2, mu*t in [0, 1.5]
std::vector<FigureDataset> figure_datasets(std::size_t n_points);

}  // namespace qollide
