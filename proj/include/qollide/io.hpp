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

// Text formats exchanged with the outside world. CSV floats carry 17
// significant digits and LF line endings; non-finite values print as
// inf / -inf / nan.

#include <iosfwd>
#include <string>

#include "qollide/bath_states.hpp"
#include "qollide/dynamics.hpp"
#include "qollide/master_equation.hpp"

namespace qollide {

std::string format_double(double v);

/// {lambda_re, lambda_im, epsilon_re, epsilon_im, r_e, r_d, mu, pg_tau}
std::string coefficients_json(const MeqCoefficients& c);

/// Header: t,mu_t,rho_ee,rho_gg,re_rho_eg,im_rho_eg,temperature,entropy
std::string trajectory_csv(const Trajectory& traj);

/// Header: N,k,r_e,r_d,t_q,T_q (k empty for families without k).
std::string sweep_csv(const SweepTable& table);
/// {"slope_t_q": x|null, "slope_T_q": x|null, "points": n}
std::string sweep_fit_json(const SweepTable& table);

/// Header: t,p_0,...,p_N
std::string ladder_csv(const Preparation& prep);

/// Bath matrix file: first line `N=<n>,basis=excitation-sorted`, then 2^N
/// rows of 2^N complex entries written as interleaved re,im pairs.
std::string bath_matrix_csv(int n, const ComplexMatrix& rho);

struct BathFile {
  int n = 0;
  ComplexMatrix rho;  // storage order
};

/// Accepts basis=excitation-sorted or basis=binary (reordered on load).
BathFile read_bath_csv(std::istream& in);
BathFile read_bath_csv_file(const std::string& path);

/// Block sizes, per-label counts and, when `with_entries`, every entry.
std::string coherence_json(const CoherenceMap& map, const BasisOrdering& basis, bool with_entries);

/// One character per entry: P population, H HEC, D displacement,
/// S squeezing, . ineffective. Block boundaries marked with '|' and '-'.
std::string coherence_text(const CoherenceMap& map, const BasisOrdering& basis);

}  // namespace qollide
