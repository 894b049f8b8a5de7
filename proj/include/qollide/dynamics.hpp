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

// Target-qubit dynamics: closed-form relaxation, numerical integration of the
// master equation, exact repeated-collision simulation, thermal preparation
// of the symmetric Dicke ladder, and scaling sweeps over the bath size.
//
// Target basis order is (|e>, |g>). Temperatures are in units of
// hbar omega0 / k_B, entropies in units of k_B.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qollide/bath_states.hpp"
#include "qollide/master_equation.hpp"

namespace qollide {

class QubitState {
 public:
  /// Validates the 2x2 density-matrix invariants.
  explicit QubitState(ComplexMatrix rho, const Tolerances& tol = {});

  static QubitState ground();
  static QubitState excited();
  static QubitState from_populations(double rho_ee, Complex rho_eg = 0.0);

  double rho_ee() const { return rho_(0, 0).real(); }
  double rho_gg() const { return rho_(1, 1).real(); }
  Complex rho_eg() const { return rho_(0, 1); }
  const ComplexMatrix& matrix() const noexcept { return rho_; }

 private:
  struct NoCheck {};
  QubitState(ComplexMatrix rho, NoCheck) : rho_(std::move(rho)) {}
  friend QubitState evolve_analytic(const QubitState&, const MeqCoefficients&, double);

  ComplexMatrix rho_;
};

/// Temperature attributed from populations alone: 1 / ln(rho_gg / rho_ee).
/// Returns 0 for rho_ee = 0, +inf for equal populations, negative values for
/// inversion (-0 when rho_gg = 0).
double population_temperature(double rho_ee, double rho_gg);

/// Von Neumann entropy, 0 ln 0 := 0.
double entropy(const ComplexMatrix& rho);
double entropy(const QubitState& q);

struct Trajectory {
  double mu = 1.0;  // scaled time is mu * t
  std::vector<double> times;
  std::vector<ComplexMatrix> states;
  std::vector<double> excited_pop;
  std::vector<double> temperature;
  std::vector<double> entropy;
  /// Set when any recorded state has |rho_eg| > 1e-6; temperatures still use
  /// populations only.
  bool coherence_flag = false;

  std::size_t size() const noexcept { return times.size(); }
  void append(double t, const ComplexMatrix& rho);
};

/// Uniform grid of n_points on [0, t_end]; n_points = 1 gives {0}, 0 gives {}.
std::vector<double> uniform_grid(double t_end, std::size_t n_points);

/// 1 / (mu (r_e + r_d)); +inf when the bath does not couple.
double thermalization_time(const MeqCoefficients& c);

/// Requires lambda = epsilon = 0.
QubitState evolve_analytic(const QubitState& rho0, const MeqCoefficients& c, double t);
Trajectory analytic_trajectory(const QubitState& rho0, const MeqCoefficients& c, std::span<const double> grid);

/// diag(r_e, r_d) / (r_e + r_d).
QubitState steady_state(const MeqCoefficients& c);

/// -1 / ln(r_e / r_d) with the same sentinels as population_temperature.
double steady_temperature(const MeqCoefficients& c);

struct DickeTemperature {
  double temperature = 0.0;
  bool non_inverted = true;  // r_d > r_e, equivalently k <= ceil(N/2) - 1
};

/// ceil(N/2) - 1.
int max_non_inverted_excitation(int n);
DickeTemperature dicke_temperature(int n, int k);

/// Temperature of a target started in |g>, evaluated as 1 / ln(rho_gg / rho_ee).
std::vector<double> temperature_trajectory(const MeqCoefficients& c, std::span<const double> grid);

/// Fixed-step classical RK4 on the 2x2 master equation. Between consecutive
/// grid points the step is the largest h <= dt that divides the interval.
/// Throws ErrorKind::Numeric on trace drift > 1e-8 or loss of Hermiticity.
Trajectory integrate_master(const QubitState& rho0, const MeqCoefficients& c, std::span<const double> grid,
                            double dt);
/// Records every step on [0, t_end].
Trajectory integrate_master(const QubitState& rho0, const MeqCoefficients& c, double t_end, double dt);

/// Halves dt until two successive runs agree on the grid to `tol` (max entry
/// deviation); returns the finer run.
Trajectory integrate_master_converged(const QubitState& rho0, const MeqCoefficients& c,
                                      std::span<const double> grid, double dt, double tol,
                                      int max_halvings = 16);

enum class CollisionMode { Exact, SecondOrder };

struct CollisionScheme {
  bool stochastic = false;
  std::uint64_t seed = 0;
  std::size_t trajectories = 1000;
};

inline constexpr int kMaxExactQubits = 10;

/// The single-collision map rho_q -> Tr_b[U (rho_q ⊗ rho_b) U^dag] as a 4x4
/// matrix acting on the row-major vectorization (rho_ee, rho_eg, rho_ge, rho_gg).
/// Exact mode uses U = exp(-i H_int tau); second-order mode uses the
/// truncation 1 - i tau H_int - (tau H_int)^2 / 2.
ComplexMatrix collision_superoperator(const DensityMatrix& rho_b, const CollectiveOps& ops,
                                      const CollisionParams& params, CollisionMode mode);

/// Same map assembled literally with kron and partial_trace_bath; slow, for
/// cross-checking.
ComplexMatrix collision_superoperator_reference(const DensityMatrix& rho_b, const CollectiveOps& ops,
                                                const CollisionParams& params, CollisionMode mode);

ComplexMatrix apply_superoperator(const ComplexMatrix& s, const ComplexMatrix& rho);

/// Repeated random collisions. Each step of length h (h <= dt, p h <= 1)
/// either applies the collision map with probability p h or leaves the
/// target untouched. The deterministic scheme applies the convex mixture; the
/// stochastic scheme averages independent Bernoulli trajectories whose random
/// streams are keyed by (seed, trajectory index, step).
Trajectory collision_chain(const QubitState& rho0, const BathSpec& bath, const CollisionParams& params,
                           std::span<const double> grid, double dt, CollisionMode mode,
                           const CollisionScheme& scheme = {});

struct LadderState {
  int n = 0;
  std::vector<double> populations;  // index k = m + N/2
};

struct Preparation {
  std::vector<double> times;
  std::vector<LadderState> ladder;
  DensityMatrix product_state = DensityMatrix::unchecked(ComplexMatrix::Identity(1, 1));
};

/// Collective thermal emission/absorption of N bath qubits started in
/// |g...g>, restricted to the symmetric ladder where it only moves
/// populations. Integrated by RK4 on the (N+1) rate equations with rates
/// gamma0 (n̄+1) k(N-k+1) down and gamma0 n̄ (k+1)(N-k) up.
Preparation prepare_thermal_dicke(int n, double n_bar, double gamma0, std::span<const double> grid, double dt);

/// Product-basis image sum_k P_k |D_k><D_k| of a ladder state.
DensityMatrix ladder_to_product(const LadderState& ladder);

enum class SweepFamily { ProductMixed, ThermalHec, Dicke };
enum class KRule { Quarter, HalfMinusOne };

/// floor(N/4), or ceil(N/2) - 1.
int apply_k_rule(KRule rule, int n);

struct SweepRequest {
  SweepFamily family = SweepFamily::Dicke;
  KRule k_rule = KRule::HalfMinusOne;
  double p_e = 0.2;
  double n_bar = 1.0;
  std::vector<int> ns;
  CollisionParams params;
};

struct SweepRow {
  int n = 0;
  std::optional<int> k;
  double r_e = 0.0;
  double r_d = 0.0;
  double t_q = 0.0;
  double temperature = 0.0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::optional<double> slope_t_q;
  std::optional<double> slope_temperature;
};

/// Least-squares slope of ln y against ln x; empty when fewer than two points
/// or any value is non-positive or non-finite.
std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y);

SweepTable scaling_sweep(const SweepRequest& request);

}  // namespace qollide
