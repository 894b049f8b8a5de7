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

#include "qollide/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qollide/parallel.hpp"

namespace qollide {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDriftTol = 1e-8;

void require_thermal_only(const MeqCoefficients& c, const char* who) {
  if (!c.thermal_only()) {
    throw Error(ErrorKind::InvalidArgument, who, "closed-form evolution needs lambda = epsilon = 0");
  }
}

void check_grid(std::span<const double> grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "grid", "times must be finite and >= 0");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "grid", "times must be strictly increasing");
    }
  }
}

void check_step(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidArgument, "dt", "step must be > 0");
}

// Number of equal sub-steps of length <= dt covering `span`.
std::size_t substeps(double span, double dt) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / dt - 1e-9)));
}

std::vector<double> step_grid(double t_end, double dt) {
  check_step(dt);
  if (!(t_end >= 0.0)) throw Error(ErrorKind::InvalidArgument, "t_end", "end time must be >= 0");
  if (t_end == 0.0) return {0.0};
  const std::size_t steps = substeps(t_end, dt);
  std::vector<double> grid(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) grid[i] = t_end * static_cast<double>(i) / static_cast<double>(steps);
  return grid;
}

void check_state(const ComplexMatrix& rho, double t) {
  const double drift = std::abs(rho.trace() - 1.0);
  if (drift > kDriftTol) {
    throw Error(ErrorKind::Numeric, "trace drift",
                "trace deviates by " + std::to_string(drift) + " at t = " + std::to_string(t));
  }
  const double herm = max_abs(rho - rho.adjoint());
  if (herm > kDriftTol) {
    throw Error(ErrorKind::Numeric, "hermitian", "state lost Hermiticity at t = " + std::to_string(t));
  }
}

ComplexMatrix rk4_step(const ComplexMatrix& rho, const MeqCoefficients& c, double h) {
  const ComplexMatrix k1 = lindblad_rhs(rho, c);
  const ComplexMatrix k2 = lindblad_rhs(rho + 0.5 * h * k1, c);
  const ComplexMatrix k3 = lindblad_rhs(rho + 0.5 * h * k2, c);
  const ComplexMatrix k4 = lindblad_rhs(rho + h * k3, c);
  return rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based uniform in [0, 1): depends only on (seed, stream, counter).
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  const std::uint64_t key = splitmix(seed ^ splitmix(stream));
  return static_cast<double>(splitmix(key + counter) >> 11) * 0x1.0p-53;
}

ComplexVector vectorize(const ComplexMatrix& rho) {
  ComplexVector v(4);
  v << rho(0, 0), rho(0, 1), rho(1, 0), rho(1, 1);
  return v;
}

ComplexMatrix unvectorize(const ComplexVector& v) {
  ComplexMatrix rho(2, 2);
  rho << v(0), v(1), v(2), v(3);
  return rho;
}

ComplexMatrix interaction_hamiltonian(const CollectiveOps& ops, double g) {
  const Index d = ops.dim();
  ComplexMatrix h = ComplexMatrix::Zero(2 * d, 2 * d);
  // g (J+ σ- + J- σ+), target (|e>, |g>) ⊗ bath
  h.block(d, 0, d, d) = g * ComplexMatrix(ops.j_plus);
  h.block(0, d, d, d) = g * ComplexMatrix(ops.j_minus);
  return h;
}

ComplexMatrix collision_propagator(const CollectiveOps& ops, const CollisionParams& params, CollisionMode mode) {
  const ComplexMatrix a = Complex(0.0, -params.tau) * interaction_hamiltonian(ops, params.g);
  if (mode == CollisionMode::Exact) return matrix_exp(a);
  const Index n = a.rows();
  return ComplexMatrix::Identity(n, n) + a + 0.5 * a * a;
}

void check_collision_inputs(const DensityMatrix& rho_b, const CollectiveOps& ops, const CollisionParams& params,
                            CollisionMode mode) {
  params.validate();
  if (rho_b.dim() != ops.dim()) {
    throw Error(ErrorKind::Dimension, "collision", "bath state and operators disagree on N");
  }
  if (mode == CollisionMode::Exact && ops.n > kMaxExactQubits) {
    throw Error(ErrorKind::Range, "N",
                "exact propagator supports N <= " + std::to_string(kMaxExactQubits) + ", got " +
                    std::to_string(ops.n));
  }
}

}  // namespace

QubitState::QubitState(ComplexMatrix rho, const Tolerances& tol) : rho_(std::move(rho)) {
  if (rho_.rows() != 2 || rho_.cols() != 2) {
    throw Error(ErrorKind::Dimension, "qubit state", "target state must be 2x2");
  }
  validate_density(rho_, tol);
}

QubitState QubitState::ground() { return from_populations(0.0); }
QubitState QubitState::excited() { return from_populations(1.0); }

QubitState QubitState::from_populations(double rho_ee, Complex rho_eg) {
  ComplexMatrix m(2, 2);
  m << rho_ee, rho_eg, std::conj(rho_eg), 1.0 - rho_ee;
  return QubitState(std::move(m));
}

double population_temperature(double rho_ee, double rho_gg) {
  if (rho_ee <= 0.0) return 0.0;
  if (rho_gg <= 0.0) return -0.0;
  if (rho_ee == rho_gg) return kInf;
  return 1.0 / std::log(rho_gg / rho_ee);
}

double entropy(const ComplexMatrix& rho) {
  const double a = rho(0, 0).real(), d = rho(1, 1).real();
  const Complex b = 0.5 * (rho(0, 1) + std::conj(rho(1, 0)));
  const double mean = 0.5 * (a + d);
  const double radius = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  double s = 0.0;
  for (double v : {mean + radius, mean - radius}) {
    if (v > 0.0) s -= v * std::log(v);
  }
  return s;
}

double entropy(const QubitState& q) { return entropy(q.matrix()); }

void Trajectory::append(double t, const ComplexMatrix& rho) {
  times.push_back(t);
  states.push_back(rho);
  const double ee = rho(0, 0).real(), gg = rho(1, 1).real();
  excited_pop.push_back(ee);
  temperature.push_back(population_temperature(ee, gg));
  entropy.push_back(qollide::entropy(rho));
  if (std::abs(rho(0, 1)) > 1e-6) coherence_flag = true;
}

std::vector<double> uniform_grid(double t_end, std::size_t n_points) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorKind::InvalidArgument, "t_end", "end time must be finite and >= 0");
  }
  if (n_points == 0) return {};
  if (n_points == 1) return {0.0};
  if (t_end == 0.0) throw Error(ErrorKind::InvalidArgument, "t_end", "more than one point needs t_end > 0");
  std::vector<double> grid(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    grid[i] = t_end * static_cast<double>(i) / static_cast<double>(n_points - 1);
  }
  return grid;
}

double thermalization_time(const MeqCoefficients& c) {
  const double rate = c.mu * (c.r_e + c.r_d);
  return rate > 0.0 ? 1.0 / rate : kInf;
}

QubitState evolve_analytic(const QubitState& rho0, const MeqCoefficients& c, double t) {
  require_thermal_only(c, "evolve_analytic");
  const double sum = c.r_e + c.r_d;
  if (sum <= 0.0 || c.mu <= 0.0 || t == 0.0) return rho0;
  const double t_q = thermalization_time(c);
  const double decay = std::exp(-t / t_q);
  // rho_ee(t) = (r_e + c0 e^{-t/t_q}) / (r_e + r_d), c0 = r_d rho_ee(0) - r_e rho_gg(0),
  // rearranged as a convex combination of rho_ee(0) and the steady value.
  const double ee = rho0.rho_ee() * decay + (c.r_e / sum) * -std::expm1(-t / t_q);
  const Complex eg = rho0.rho_eg() * std::exp(-t / (2.0 * t_q));
  ComplexMatrix m(2, 2);
  m << ee, eg, std::conj(eg), 1.0 - ee;
  return QubitState(std::move(m), QubitState::NoCheck{});
}

Trajectory analytic_trajectory(const QubitState& rho0, const MeqCoefficients& c, std::span<const double> grid) {
  require_thermal_only(c, "evolve_analytic");
  check_grid(grid);
  Trajectory traj;
  traj.mu = c.mu;
  for (double t : grid) traj.append(t, evolve_analytic(rho0, c, t).matrix());
  return traj;
}

QubitState steady_state(const MeqCoefficients& c) {
  const double sum = c.r_e + c.r_d;
  if (!(sum > 0.0)) throw Error(ErrorKind::InvalidArgument, "steady_state", "r_e + r_d must be > 0");
  return QubitState::from_populations(c.r_e / sum);
}

double steady_temperature(const MeqCoefficients& c) {
  if (c.r_e <= 0.0) return 0.0;
  if (c.r_d <= 0.0) return -0.0;
  if (c.r_e == c.r_d) return kInf;
  return -1.0 / std::log(c.r_e / c.r_d);
}

int max_non_inverted_excitation(int n) { return (n + 1) / 2 - 1; }

DickeTemperature dicke_temperature(int n, int k) {
  const MeqCoefficients c = coefficients_dicke(n, k, CollisionParams{});
  return {steady_temperature(c), c.r_d > c.r_e};
}

std::vector<double> temperature_trajectory(const MeqCoefficients& c, std::span<const double> grid) {
  require_thermal_only(c, "temperature_trajectory");
  if (!(c.r_e > 0.0)) throw Error(ErrorKind::InvalidArgument, "r_e", "temperature trajectory needs r_e > 0");
  check_grid(grid);
  std::vector<double> out;
  out.reserve(grid.size());
  const QubitState start = QubitState::ground();
  for (double t : grid) {
    const QubitState q = evolve_analytic(start, c, t);
    out.push_back(population_temperature(q.rho_ee(), q.rho_gg()));
  }
  return out;
}

Trajectory integrate_master(const QubitState& rho0, const MeqCoefficients& c, std::span<const double> grid,
                            double dt) {
  check_step(dt);
  check_grid(grid);
  Trajectory traj;
  traj.mu = c.mu;
  if (grid.empty()) return traj;
  ComplexMatrix rho = rho0.matrix();
  double t = 0.0;
  for (double target : grid) {
    if (target > t) {
      const std::size_t steps = substeps(target - t, dt);
      const double h = (target - t) / static_cast<double>(steps);
      for (std::size_t s = 0; s < steps; ++s) rho = rk4_step(rho, c, h);
      t = target;
    }
    check_state(rho, t);
    traj.append(t, rho);
  }
  return traj;
}

Trajectory integrate_master(const QubitState& rho0, const MeqCoefficients& c, double t_end, double dt) {
  const auto grid = step_grid(t_end, dt);
  return integrate_master(rho0, c, grid, dt);
}

Trajectory integrate_master_converged(const QubitState& rho0, const MeqCoefficients& c,
                                      std::span<const double> grid, double dt, double tol, int max_halvings) {
  // A dt above the grid spacing is never used, so halving it would change nothing.
  double previous = 0.0;
  for (double t : grid) {
    if (t > previous) dt = std::min(dt, t - previous);
    previous = t;
  }
  Trajectory coarse = integrate_master(rho0, c, grid, dt);
  for (int i = 0; i < max_halvings; ++i) {
    dt *= 0.5;
    Trajectory fine = integrate_master(rho0, c, grid, dt);
    double dev = 0.0;
    for (std::size_t j = 0; j < fine.size(); ++j) dev = std::max(dev, max_abs(fine.states[j] - coarse.states[j]));
    if (dev <= tol) return fine;
    coarse = std::move(fine);
  }
  throw Error(ErrorKind::Numeric, "integrate_master",
              "no convergence to " + std::to_string(tol) + " after " + std::to_string(max_halvings) + " halvings");
}

ComplexMatrix collision_superoperator(const DensityMatrix& rho_b, const CollectiveOps& ops,
                                      const CollisionParams& params, CollisionMode mode) {
  check_collision_inputs(rho_b, ops, params, mode);
  const Index d = ops.dim();
  const ComplexMatrix u = collision_propagator(ops, params, mode);
  // Phi(|a><b|)_xy = Tr(U_xa rho_b U_yb^dag) with U_xa the (x, a) bath block.
  ComplexMatrix s(4, 4);
  for (Index a = 0; a < 2; ++a) {
    ComplexMatrix w[2];
    for (Index x = 0; x < 2; ++x) w[x] = u.block(x * d, a * d, d, d) * rho_b.matrix();
    for (Index b = 0; b < 2; ++b) {
      for (Index x = 0; x < 2; ++x) {
        for (Index y = 0; y < 2; ++y) {
          // Tr(W U_yb^dag) = sum_ij W_ij conj(U_yb)_ij
          s(2 * x + y, 2 * a + b) = (w[x].array() * u.block(y * d, b * d, d, d).conjugate().array()).sum();
        }
      }
    }
  }
  return s;
}

ComplexMatrix collision_superoperator_reference(const DensityMatrix& rho_b, const CollectiveOps& ops,
                                                const CollisionParams& params, CollisionMode mode) {
  check_collision_inputs(rho_b, ops, params, mode);
  const ComplexMatrix u = collision_propagator(ops, params, mode);
  ComplexMatrix s(4, 4);
  for (Index a = 0; a < 2; ++a) {
    for (Index b = 0; b < 2; ++b) {
      ComplexMatrix e = ComplexMatrix::Zero(2, 2);
      e(a, b) = 1.0;
      const ComplexMatrix out = partial_trace_bath(u * kron(e, rho_b.matrix()) * u.adjoint(), 2, ops.dim());
      s.col(2 * a + b) = vectorize(out);
    }
  }
  return s;
}

ComplexMatrix apply_superoperator(const ComplexMatrix& s, const ComplexMatrix& rho) {
  return unvectorize(s * vectorize(rho));
}

Trajectory collision_chain(const QubitState& rho0, const BathSpec& bath, const CollisionParams& params,
                           std::span<const double> grid, double dt, CollisionMode mode,
                           const CollisionScheme& scheme) {
  params.validate();
  check_step(dt);
  check_grid(grid);
  if (params.p * dt > 1.0 + 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "dt",
                "collision probability p*dt = " + std::to_string(params.p * dt) + " exceeds 1");
  }
  if (mode == CollisionMode::Exact && bath.n > kMaxExactQubits) {
    throw Error(ErrorKind::Range, "N", "exact propagator supports N <= " + std::to_string(kMaxExactQubits));
  }
  if (scheme.stochastic && scheme.trajectories == 0) {
    throw Error(ErrorKind::InvalidArgument, "trajectories", "stochastic scheme needs at least one trajectory");
  }
  const DensityMatrix rho_b = validate_bath(bath);
  const CollectiveOps ops = build_collective_ops(bath.n);
  const ComplexMatrix s = collision_superoperator(rho_b, ops, params, mode);

  Trajectory traj;
  traj.mu = params.mu();
  if (grid.empty()) return traj;

  // Step lengths per grid interval, shared by both schemes.
  std::vector<std::pair<std::size_t, double>> plan;
  double t = 0.0;
  for (double target : grid) {
    if (target > t) {
      const std::size_t steps = substeps(target - t, dt);
      plan.emplace_back(steps, (target - t) / static_cast<double>(steps));
      t = target;
    } else {
      plan.emplace_back(0, 0.0);
    }
  }

  auto record = [&](const ComplexMatrix& rho, double time) {
    if (mode == CollisionMode::Exact) check_state(rho, time);
    traj.append(time, rho);
  };

  if (!scheme.stochastic) {
    ComplexVector v = vectorize(rho0.matrix());
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const auto [steps, h] = plan[g];
      const double q = params.p * h;
      for (std::size_t k = 0; k < steps; ++k) v = (1.0 - q) * v + q * (s * v);
      record(unvectorize(v), grid[g]);
    }
    return traj;
  }

  // Fixed-size chunks summed in index order keep the average independent of
  // the number of workers.
  constexpr std::size_t kChunk = 64;
  const std::size_t chunks = (scheme.trajectories + kChunk - 1) / kChunk;
  std::vector<std::vector<ComplexVector>> partial(chunks, std::vector<ComplexVector>(grid.size(), ComplexVector::Zero(4)));
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t first = c * kChunk;
    const std::size_t last = std::min(scheme.trajectories, first + kChunk);
    for (std::size_t traj_index = first; traj_index < last; ++traj_index) {
      ComplexVector v = vectorize(rho0.matrix());
      std::uint64_t counter = 0;
      for (std::size_t g = 0; g < grid.size(); ++g) {
        const auto [steps, h] = plan[g];
        const double q = params.p * h;
        for (std::size_t k = 0; k < steps; ++k) {
          if (counter_uniform(scheme.seed, traj_index, counter++) < q) v = s * v;
        }
        partial[c][g] += v;
      }
    }
  });
  for (std::size_t g = 0; g < grid.size(); ++g) {
    ComplexVector sum = ComplexVector::Zero(4);
    for (std::size_t c = 0; c < chunks; ++c) sum += partial[c][g];
    record(unvectorize(sum / static_cast<double>(scheme.trajectories)), grid[g]);
  }
  return traj;
}

namespace {

std::vector<double> ladder_rhs(const std::vector<double>& pop, int n, double down, double up) {
  std::vector<double> out(pop.size(), 0.0);
  for (int k = 0; k <= n; ++k) {
    const double lower = static_cast<double>(k) * (n - k + 1);  // |J- |k>|^2
    const double raise = static_cast<double>(k + 1) * (n - k);  // |J+ |k>|^2
    const auto kk = static_cast<std::size_t>(k);
    out[kk] -= (down * lower + up * raise) * pop[kk];
    if (k > 0) out[kk - 1] += down * lower * pop[kk];
    if (k < n) out[kk + 1] += up * raise * pop[kk];
  }
  return out;
}

std::vector<double> axpy(const std::vector<double>& x, double a, const std::vector<double>& y) {
  std::vector<double> out(x);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * y[i];
  return out;
}

}  // namespace

DensityMatrix ladder_to_product(const LadderState& ladder) {
  if (ladder.populations.size() != static_cast<std::size_t>(ladder.n) + 1) {
    throw Error(ErrorKind::Dimension, "ladder", "expected N+1 populations");
  }
  const ComplexMatrix v = dicke_ladder_transform(ladder.n);
  Eigen::VectorXd p(ladder.n + 1);
  for (int k = 0; k <= ladder.n; ++k) p(k) = ladder.populations[static_cast<std::size_t>(k)];
  return DensityMatrix::unchecked(v * p.asDiagonal() * v.adjoint());
}

Preparation prepare_thermal_dicke(int n, double n_bar, double gamma0, std::span<const double> grid, double dt) {
  if (n < 1 || n > kMaxCollectiveQubits) {
    throw Error(ErrorKind::Range, "N", "bath size must be in [1, " + std::to_string(kMaxCollectiveQubits) + "]");
  }
  if (!(n_bar >= 0.0) || !std::isfinite(n_bar)) {
    throw Error(ErrorKind::Range, "n_bar", "mean photon number must be finite and >= 0");
  }
  if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) {
    throw Error(ErrorKind::InvalidArgument, "gamma0", "emission rate must be > 0");
  }
  check_step(dt);
  check_grid(grid);

  const double down = gamma0 * (n_bar + 1.0);
  const double up = gamma0 * n_bar;
  std::vector<double> pop(static_cast<std::size_t>(n) + 1, 0.0);
  pop[0] = 1.0;

  Preparation out;
  double t = 0.0;
  for (double target : grid) {
    if (target > t) {
      const std::size_t steps = substeps(target - t, dt);
      const double h = (target - t) / static_cast<double>(steps);
      for (std::size_t s = 0; s < steps; ++s) {
        const auto k1 = ladder_rhs(pop, n, down, up);
        const auto k2 = ladder_rhs(axpy(pop, 0.5 * h, k1), n, down, up);
        const auto k3 = ladder_rhs(axpy(pop, 0.5 * h, k2), n, down, up);
        const auto k4 = ladder_rhs(axpy(pop, h, k3), n, down, up);
        for (std::size_t i = 0; i < pop.size(); ++i) pop[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        const double lowest = *std::min_element(pop.begin(), pop.end());
        if (lowest < -1e-12) {
          throw Error(ErrorKind::Numeric, "step too large",
                      "ladder population went negative (" + std::to_string(lowest) + "); reduce dt");
        }
      }
      t = target;
    }
    const double norm = std::accumulate(pop.begin(), pop.end(), 0.0);
    if (std::abs(norm - 1.0) > kDriftTol) {
      throw Error(ErrorKind::Numeric, "normalization", "ladder populations sum to " + std::to_string(norm));
    }
    out.times.push_back(t);
    out.ladder.push_back(LadderState{n, pop});
  }
  out.product_state = ladder_to_product(LadderState{n, pop});
  return out;
}

int apply_k_rule(KRule rule, int n) {
  return rule == KRule::Quarter ? n / 4 : max_non_inverted_excitation(n);
}

std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const std::size_t m = x.size();
  double sx = 0.0, sy = 0.0;
  std::vector<double> lx(m), ly(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i])) return std::nullopt;
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / static_cast<double>(m), my = sy / static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

SweepTable scaling_sweep(const SweepRequest& request) {
  request.params.validate();
  if (request.ns.empty()) throw Error(ErrorKind::InvalidArgument, "N", "sweep needs at least one N");
  for (int n : request.ns) {
    if (n < 1 || n > 64) throw Error(ErrorKind::Range, "N", "sweep sizes must be in [1, 64]");
  }
  SweepTable table;
  table.rows.resize(request.ns.size());
  parallel_for(request.ns.size(), [&](std::size_t i) {
    const int n = request.ns[i];
    SweepRow row;
    row.n = n;
    MeqCoefficients c;
    switch (request.family) {
      case SweepFamily::ProductMixed: c = coefficients_product_mixed(n, request.p_e, request.params); break;
      case SweepFamily::ThermalHec: c = coefficients_thermal_hec(n, request.n_bar, request.params); break;
      case SweepFamily::Dicke:
        row.k = apply_k_rule(request.k_rule, n);
        c = coefficients_dicke(n, *row.k, request.params);
        break;
    }
    row.r_e = c.r_e;
    row.r_d = c.r_d;
    row.t_q = thermalization_time(c);
    row.temperature = steady_temperature(c);
    table.rows[i] = row;
  });
  std::vector<double> ns, tq, temp;
  for (const auto& row : table.rows) {
    ns.push_back(row.n);
    tq.push_back(row.t_q);
    temp.push_back(row.temperature);
  }
  table.slope_t_q = loglog_slope(ns, tq);
  table.slope_temperature = loglog_slope(ns, temp);
  return table;
}

}  // namespace qollide
