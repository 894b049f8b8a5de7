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

#include "qollide/master_equation.hpp"

#include <cmath>

namespace qollide {

void CollisionParams::validate() const {
  auto require = [](bool ok, const char* field, const char* what) {
    if (!ok) throw Error(ErrorKind::InvalidArgument, field, what);
  };
  require(std::isfinite(g) && g >= 0.0, "g", "coupling must be finite and >= 0");
  require(std::isfinite(tau) && tau > 0.0, "tau", "interaction duration must be finite and > 0");
  require(std::isfinite(p) && p > 0.0, "p", "collision rate must be finite and > 0");
  require(std::isfinite(omega0) && omega0 > 0.0, "omega0", "qubit frequency must be finite and > 0");
}

namespace {

MeqCoefficients with_rates(const CollisionParams& params) {
  params.validate();
  MeqCoefficients c;
  c.mu = params.mu();
  c.pg_tau = params.pg_tau();
  return c;
}

}  // namespace

Complex sparse_expectation(const SparseMatrix& op, const ComplexMatrix& rho) {
  if (op.rows() != rho.cols() || op.cols() != rho.rows()) {
    throw Error(ErrorKind::Dimension, "expectation", "operator and state dimensions differ");
  }
  Complex sum = 0.0;
  for (Index r = 0; r < op.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(op, r); it; ++it) sum += it.value() * rho(it.col(), it.row());
  }
  return sum;
}

double sandwich_trace(const SparseMatrix& a, const ComplexMatrix& rho) {
  if (a.cols() != rho.rows() || rho.rows() != rho.cols()) {
    throw Error(ErrorKind::Dimension, "sandwich_trace", "operator and state dimensions differ");
  }
  // Tr(a rho a^dag) = sum_r sum_{i,j} a_ri rho_ij conj(a_rj)
  Complex sum = 0.0;
  for (Index r = 0; r < a.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(a, r); it; ++it) {
      for (SparseMatrix::InnerIterator jt(a, r); jt; ++jt) {
        sum += it.value() * rho(it.col(), jt.col()) * std::conj(jt.value());
      }
    }
  }
  return sum.real();
}

MeqCoefficients coefficients_from_state(const DensityMatrix& rho_b, const CollectiveOps& ops,
                                        const CollisionParams& params) {
  if (rho_b.dim() != ops.dim()) {
    throw Error(ErrorKind::Dimension, "coefficients_from_state",
                "bath state has dimension " + std::to_string(rho_b.dim()) + ", operators " +
                    std::to_string(ops.dim()));
  }
  MeqCoefficients c = with_rates(params);
  c.lambda = sparse_expectation(ops.j_minus, rho_b.matrix());
  c.epsilon = sparse_expectation(ops.j_minus_sq, rho_b.matrix());
  c.r_e = sandwich_trace(ops.j_minus, rho_b.matrix());
  c.r_d = sandwich_trace(ops.j_plus, rho_b.matrix());
  return c;
}

MeqCoefficients coefficients_product_mixed(int n, double p_e, const CollisionParams& params) {
  if (n < 1) throw Error(ErrorKind::Range, "N", "bath size must be >= 1");
  if (!(p_e >= 0.0 && p_e <= 1.0)) throw Error(ErrorKind::Range, "p_e", "probability outside [0, 1]");
  MeqCoefficients c = with_rates(params);
  c.r_e = n * p_e;
  c.r_d = n * (1.0 - p_e);
  return c;
}

MeqCoefficients coefficients_thermal_hec(int n, double n_bar, const CollisionParams& params) {
  if (n < 1 || n > 64) throw Error(ErrorKind::Range, "N", "bath size must be in [1, 64]");
  if (!(n_bar >= 0.0) || !std::isfinite(n_bar)) {
    throw Error(ErrorKind::Range, "n_bar", "mean photon number must be finite and >= 0");
  }
  MeqCoefficients c = with_rates(params);
  const double r = n_bar / (n_bar + 1.0);
  const double norm = (1.0 - r) / (1.0 - std::pow(r, n + 1));
  double up = 0.0, down = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double ladder = static_cast<double>(k) * (n - k + 1);
    const double weight = std::pow(r, k - 1);
    down += weight * ladder;
    up += weight * r * ladder;
  }
  c.r_e = norm * up;
  c.r_d = norm * down;
  return c;
}

MeqCoefficients coefficients_dicke(int n, int k, const CollisionParams& params) {
  if (n < 1) throw Error(ErrorKind::Range, "N", "bath size must be >= 1");
  if (k < 0 || k > n) throw Error(ErrorKind::Range, "k", "excitation count outside [0, N]");
  MeqCoefficients c = with_rates(params);
  c.r_e = static_cast<double>(k) * (n - k + 1);
  c.r_d = static_cast<double>(k + 1) * (n - k);
  return c;
}

MeqCoefficients coefficients_closed_form(const BathSpec& spec, const CollisionParams& params) {
  struct Visitor {
    int n;
    const CollisionParams& params;
    MeqCoefficients operator()(const ProductMixed& b) const { return coefficients_product_mixed(n, b.p_e, params); }
    MeqCoefficients operator()(const ThermalHec& b) const { return coefficients_thermal_hec(n, b.n_bar, params); }
    MeqCoefficients operator()(const DickeBlock& b) const { return coefficients_dicke(n, b.k, params); }
    MeqCoefficients operator()(const Explicit&) const {
      throw Error(ErrorKind::InvalidArgument, "bath", "explicit baths have no closed-form coefficients");
    }
  };
  return std::visit(Visitor{spec.n, params}, spec.kind);
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const MeqCoefficients& c) {
  if (rho.rows() != 2 || rho.cols() != 2) {
    throw Error(ErrorKind::Dimension, "lindblad_rhs", "target state must be 2x2");
  }
  const ComplexMatrix sp = qubit::sigma_plus();
  const ComplexMatrix sm = qubit::sigma_minus();
  const ComplexMatrix h = c.pg_tau * (c.lambda * sp + std::conj(c.lambda) * sm);
  const Complex minus_i(0.0, -1.0);

  ComplexMatrix out = minus_i * (h * rho - rho * h);
  out += c.mu * (c.epsilon * sp * rho * sp + std::conj(c.epsilon) * sm * rho * sm);
  const ComplexMatrix n_e = sp * sm;  // |e><e|
  const ComplexMatrix n_g = sm * sp;  // |g><g|
  out += 0.5 * c.mu * c.r_d * (2.0 * sm * rho * sp - n_e * rho - rho * n_e);
  out += 0.5 * c.mu * c.r_e * (2.0 * sp * rho * sm - n_g * rho - rho * n_g);
  return out;
}

}  // namespace qollide
