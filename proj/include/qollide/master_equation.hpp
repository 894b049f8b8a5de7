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

// Second-order master equation for a target qubit colliding with an N-qubit
// bath. All coefficients are collective-spin moments of the bath state:
//
//   lambda  = <J->        coherent drive,   H_eff = pg_tau (lambda s+ + lambda* s-)
//   epsilon = <J-^2>      squeezing,        L_s = mu (eps s+ rho s+ + eps* s- rho s-)
//   r_e     = <J+ J->     excitation rate   mu r_e
//   r_d     = <J- J+>     de-excitation rate mu r_d
//
// with mu = p (g tau)^2 and pg_tau = p g tau (hbar = 1, time in 1/[p]).

#include "qollide/bath_states.hpp"
#include "qollide/collective_spin.hpp"
#include "qollide/operator_core.hpp"

namespace qollide {

struct CollisionParams {
  double g = 0.1;      // coupling rate
  double tau = 1.0;    // interaction duration
  double p = 100.0;    // collision rate
  double omega0 = 1.0; // qubit frequency; temperatures are in units of hbar omega0 / k_B

  /// Throws ErrorKind::InvalidArgument naming the offending field.
  void validate() const;
  double mu() const noexcept { return p * (g * tau) * (g * tau); }
  double pg_tau() const noexcept { return p * g * tau; }
  /// g tau beyond which the second-order expansion is questionable.
  bool outside_second_order() const noexcept { return g * tau > 0.3; }
};

struct MeqCoefficients {
  Complex lambda{0.0, 0.0};
  Complex epsilon{0.0, 0.0};
  double r_e = 0.0;
  double r_d = 0.0;
  double mu = 0.0;
  double pg_tau = 0.0;

  /// lambda and epsilon both vanish, so only the thermal dissipator acts.
  bool thermal_only(double tol = 1e-12) const { return std::abs(lambda) <= tol && std::abs(epsilon) <= tol; }
};

/// Tr(op rho) for a sparse operator.
Complex sparse_expectation(const SparseMatrix& op, const ComplexMatrix& rho);

/// Tr(a rho a^dag), evaluated row by row of `a` so the cost is
/// O(dim * nnz_per_row^2) rather than a dense product.
double sandwich_trace(const SparseMatrix& a, const ComplexMatrix& rho);

/// Moments of an arbitrary bath state. r_e and r_d are taken as
/// Tr(J- rho J+) and Tr(J+ rho J-).
MeqCoefficients coefficients_from_state(const DensityMatrix& rho_b, const CollectiveOps& ops,
                                        const CollisionParams& params);

MeqCoefficients coefficients_product_mixed(int n, double p_e, const CollisionParams& params);

/// Closed-form sums over the thermally populated Dicke ladder, valid to N = 64.
MeqCoefficients coefficients_thermal_hec(int n, double n_bar, const CollisionParams& params);

MeqCoefficients coefficients_dicke(int n, int k, const CollisionParams& params);

/// Dispatches on the bath kind; Explicit baths have no closed form and throw.
MeqCoefficients coefficients_closed_form(const BathSpec& spec, const CollisionParams& params);

/// d rho_q / dt for a 2x2 target state in (|e>, |g>) order.
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho_q, const MeqCoefficients& c);

}  // namespace qollide
