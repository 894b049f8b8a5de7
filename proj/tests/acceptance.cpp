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

// Acceptance runner. Prints one PASS/FAIL line per criterion; an optional
// argument selects a single criterion by number.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qollide/bath_states.hpp"
#include "qollide/collective_spin.hpp"
#include "qollide/dynamics.hpp"
#include "qollide/figures.hpp"
#include "qollide/master_equation.hpp"

using namespace qollide;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Scaled difference: absolute below 1, relative above.
double scaled_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// 1. Closed-form coefficients against dense traces over every family and N <= 8.
Outcome coefficient_oracle() {
  const CollisionParams params;
  double worst = 0.0;
  int cases = 0;
  for (int n = 1; n <= 8; ++n) {
    const CollectiveOps ops = build_collective_ops(n);
    const ComplexMatrix jm(ops.j_minus);
    const ComplexMatrix jp(ops.j_plus);
    std::vector<BathSpec> specs;
    for (double pe : {0.0, 0.2, 0.5}) specs.push_back({n, ProductMixed{pe}});
    for (double nb : {0.0, 0.5, 1.0, 2.0}) specs.push_back({n, ThermalHec{nb}});
    for (int k = 0; k <= n; ++k) specs.push_back({n, DickeBlock{k}});
    for (const BathSpec& spec : specs) {
      const ComplexMatrix rho = validate_bath(spec).matrix();
      const MeqCoefficients cf = coefficients_closed_form(spec, params);
      const double r_e = (jm * rho * jp).trace().real();
      const double r_d = (jp * rho * jm).trace().real();
      const Complex lambda = (jm * rho).trace();
      const Complex epsilon = (jm * jm * rho).trace();
      worst = std::max({worst, scaled_diff(cf.r_e, r_e), scaled_diff(cf.r_d, r_d), std::abs(cf.lambda - lambda),
                        std::abs(cf.epsilon - epsilon)});
      ++cases;
    }
  }
  return {worst <= 1e-12, std::to_string(cases) + " baths, max deviation " + fmt(worst) + " (tol 1e-12)"};
}

// 2. Thermal HEC and thermal product baths share the steady temperature; the
// time ratio matches the effective emission rate.
Outcome thermal_equivalence() {
  const CollisionParams params;
  const double mu = params.mu();
  double worst_t = 0.0, worst_ratio = 0.0;
  for (int n = 1; n <= 64; ++n) {
    for (double nb : {0.1, 0.5, 1.0, 2.0}) {
      const double pe = nb / (2.0 * nb + 1.0);
      MeqCoefficients hec = coefficients_thermal_hec(n, nb, params);
      if (n <= 8) hec = coefficients_from_state(thermal_hec_state(n, nb), build_collective_ops(n), params);
      const MeqCoefficients mix = coefficients_product_mixed(n, pe, params);
      worst_t = std::max(worst_t, std::abs(steady_temperature(hec) - steady_temperature(mix)));
      const double gamma_eff = mu * hec.r_e / nb;
      const double predicted = (mu * n) / (gamma_eff * (2.0 * nb + 1.0));
      const double ratio = thermalization_time(hec) / thermalization_time(mix);
      worst_ratio = std::max(worst_ratio, std::abs(ratio / predicted - 1.0));
    }
  }
  return {worst_t <= 1e-10 && worst_ratio <= 1e-10,
          "max |T_hec - T_mix| " + fmt(worst_t) + " (tol 1e-10), max t_q ratio mismatch " + fmt(worst_ratio)};
}

// 3. Log-log slopes over N = 4..64 step 4.
Outcome scaling_slopes() {
  std::vector<int> ns;
  for (int n = 4; n <= 64; n += 4) ns.push_back(n);
  SweepRequest req;
  req.family = SweepFamily::Dicke;
  req.ns = ns;
  req.k_rule = KRule::HalfMinusOne;
  const SweepTable half = scaling_sweep(req);
  req.k_rule = KRule::Quarter;
  const SweepTable quarter = scaling_sweep(req);
  const double s_t = half.slope_temperature.value_or(NAN);
  const double s_tq = half.slope_t_q.value_or(NAN);
  const double s_q = quarter.slope_temperature.value_or(NAN);
  const bool pass = std::abs(s_t - 2.0) <= 0.05 && std::abs(s_tq + 2.0) <= 0.05 && std::abs(s_q - 1.0) <= 0.05;
  return {pass, "T slope " + fmt(s_t) + " (want 2.00+-0.05), t_q slope " + fmt(s_tq) +
                    " (want -2.00+-0.05), T slope k=N/4 " + fmt(s_q) + " (want 1.00+-0.05)"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 4. Decay curves reach 1/e at the listed scaled times; archived CSVs reproduce.
Outcome decay_crossings() {
  const CollisionParams params;
  struct Case {
    BathSpec spec;
    double mu_t;
  };
  const std::vector<Case> cases = {{{4, ProductMixed{0.5}}, 1.0 / 4.0},
                                   {{8, ProductMixed{0.5}}, 1.0 / 8.0},
                                   {{4, DickeBlock{1}}, 1.0 / 10.0},
                                   {{8, DickeBlock{2}}, 1.0 / 32.0},
                                   {{8, DickeBlock{3}}, 1.0 / 38.0}};
  double worst = 0.0;
  for (const Case& c : cases) {
    const MeqCoefficients coeff = coefficients_closed_form(c.spec, params);
    worst = std::max(worst, std::abs(params.mu() * thermalization_time(coeff) - c.mu_t));
    const double ss = steady_state(coeff).rho_ee();
    const double t = c.mu_t / params.mu();
    const double decay = (evolve_analytic(QubitState::excited(), coeff, t).rho_ee() - ss) / (1.0 - ss);
    worst = std::max(worst, std::abs(decay - std::exp(-1.0)));
  }
  bool golden_ok = true;
  for (const FigureDataset& d : figure_datasets(101)) {
    const std::string golden = slurp(std::filesystem::path(QOLLIDE_GOLDEN_DIR) / d.name);
    if (golden.empty() || golden != d.csv) golden_ok = false;
  }
  return {worst <= 1e-10 && golden_ok,
          "max crossing deviation " + fmt(worst) + " (tol 1e-10), archived CSVs " + (golden_ok ? "match" : "differ")};
}

// 5. Temperature asymptotes for k = N/2 - 1.
Outcome temperature_asymptotes() {
  const CollisionParams params;
  const std::vector<int> ns = {4, 8, 12};
  const std::vector<double> estimate = {2.5, 9.5, 20.5};
  double worst_exact = 0.0, worst_est = 0.0;
  std::string values;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const int n = ns[i];
    const int k = n / 2 - 1;
    const MeqCoefficients c = coefficients_from_state(dicke_block_state(n, k), build_collective_ops(n), params);
    const double t_end = 40.0 * thermalization_time(c);
    const auto temps = temperature_trajectory(c, uniform_grid(t_end, 201));
    const double exact = 1.0 / std::log(double((k + 1) * (n - k)) / double(k * (n - k + 1)));
    worst_exact = std::max(worst_exact, std::abs(temps.back() - exact));
    worst_est = std::max(worst_est, std::abs(temps.back() / estimate[i] - 1.0));
    values += (i ? ", " : "") + fmt(temps.back());
  }
  return {worst_exact <= 1e-6 && worst_est <= 0.02, "asymptotes {" + values + "}, max deviation from exact " +
                                                        fmt(worst_exact) + " (tol 1e-6), from estimates " +
                                                        fmt(100.0 * worst_est) + "% (tol 2%)"};
}

// 6. Exact collision chain converges to the closed form quadratically in g tau.
Outcome collision_convergence() {
  const BathSpec bath{4, DickeBlock{1}};
  const auto grid = uniform_grid(1.0, 11);
  std::vector<double> err;
  for (double x : {0.2, 0.1, 0.05}) {
    const CollisionParams p{x, 1.0, 1.0 / (x * x), 1.0};
    const Trajectory chain = collision_chain(QubitState::ground(), bath, p, grid, 0.02 / p.p, CollisionMode::Exact);
    const Trajectory exact = analytic_trajectory(QubitState::ground(), coefficients_dicke(4, 1, p), grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < chain.size(); ++i) worst = std::max(worst, max_abs(chain.states[i] - exact.states[i]));
    err.push_back(worst);
  }
  const double r1 = err[0] / err[1], r2 = err[1] / err[2];
  return {std::abs(r1 - 4.0) <= 1.0 && std::abs(r2 - 4.0) <= 1.0,
          "deviations " + fmt(err[0]) + ", " + fmt(err[1]) + ", " + fmt(err[2]) + "; ratios " + fmt(r1) + ", " +
              fmt(r2) + " (want 4+-1)"};
}

// 7. Ladder preparation reaches the closed-form thermal HEC state.
Outcome preparation_oracle() {
  const double gamma0 = 1.0, t_end = 60.0, dt = 0.01;
  double worst_state = 0.0, worst_ratio = 0.0, worst_conv = 0.0;
  for (int n = 1; n <= 8; ++n) {
    for (double nb : {0.5, 1.0}) {
      const std::vector<double> grid = {t_end};
      const Preparation prep = prepare_thermal_dicke(n, nb, gamma0, grid, dt);
      worst_state = std::max(worst_state, max_abs(prep.product_state.matrix() - thermal_hec_state(n, nb).matrix()));
      const auto& pop = prep.ladder.back().populations;
      for (int k = 0; k < n; ++k) {
        worst_ratio = std::max(worst_ratio, std::abs(pop[k + 1] / pop[k] - nb / (nb + 1.0)));
      }
      // A finer step over a longer window must not move the result.
      const std::vector<double> longer = {2.0 * t_end};
      const Preparation check = prepare_thermal_dicke(n, nb, gamma0, longer, dt / 2.0);
      for (std::size_t k = 0; k < pop.size(); ++k) {
        worst_conv = std::max(worst_conv, std::abs(check.ladder.back().populations[k] - pop[k]));
      }
    }
  }
  return {worst_state <= 1e-6 && worst_ratio <= 1e-6 && worst_conv <= 1e-9,
          "max entry deviation " + fmt(worst_state) + ", max ratio deviation " + fmt(worst_ratio) +
              " (tol 1e-6), step/horizon sensitivity " + fmt(worst_conv)};
}

// 8. Exhaustive labels for N <= 5 and invariance under ineffective perturbations.
Outcome classification_suite() {
  std::mt19937_64 rng(2026);
  std::normal_distribution<double> nd(0.0, 1.0);
  const CollisionParams params;
  std::size_t mislabeled = 0, entries = 0;
  double worst = 0.0;
  for (int n = 1; n <= 5; ++n) {
    const CollectiveOps ops = build_collective_ops(n);
    const BasisOrdering& b = ops.basis;
    const Index dim = ops.dim();
    std::vector<BathSpec> specs = {{n, ProductMixed{0.3}}, {n, ThermalHec{1.0}}};
    for (int k = 0; k <= n; ++k) specs.push_back({n, DickeBlock{k}});
    for (const BathSpec& spec : specs) {
      const DensityMatrix rho = validate_bath(spec);
      const CoherenceMap map = classify_coherences(rho, ops);
      ComplexMatrix delta = ComplexMatrix::Zero(dim, dim);
      for (Index i = 0; i < dim; ++i) {
        for (Index j = 0; j < dim; ++j) {
          ++entries;
          const int diff = std::abs(b.excitation(i) - b.excitation(j));
          const int hamming = __builtin_popcount(b.to_binary(i) ^ b.to_binary(j));
          Coherence want = Coherence::Ineffective;
          if (i == j) want = Coherence::Population;
          else if (diff == 0 && hamming == 2) want = Coherence::Hec;
          else if (diff == 1 && hamming == 1) want = Coherence::Displacement;
          else if (diff == 2 && hamming == 2) want = Coherence::Squeezing;
          if (map.primary(i, j) != want) ++mislabeled;
          if (j > i && want == Coherence::Ineffective) {
            delta(i, j) = Complex(nd(rng), nd(rng));
            delta(j, i) = std::conj(delta(i, j));
          }
        }
      }
      const ComplexMatrix base = 0.5 * rho.matrix() + 0.5 * ComplexMatrix::Identity(dim, dim) / double(dim);
      const double peak = max_abs(delta);
      const double scale = peak > 0.0 ? 0.25 / (double(dim) * double(dim) * peak) : 0.0;
      const MeqCoefficients a = coefficients_from_state(DensityMatrix(base), ops, params);
      const MeqCoefficients c = coefficients_from_state(DensityMatrix(base + scale * delta), ops, params);
      worst = std::max({worst, std::abs(a.lambda - c.lambda), std::abs(a.epsilon - c.epsilon),
                        std::abs(a.r_e - c.r_e), std::abs(a.r_d - c.r_d)});
    }
  }
  return {mislabeled == 0 && worst <= 1e-12, std::to_string(mislabeled) + " of " + std::to_string(entries) +
                                                 " entries mislabeled, perturbation shift " + fmt(worst) +
                                                 " (tol 1e-12)"};
}

// 9. Dicke(8,3) runs hotter than the incoherent bath with the same steady temperature.
Outcome pointwise_advantage() {
  const CollisionParams params;
  const MeqCoefficients dicke = coefficients_dicke(8, 3, params);
  const MeqCoefficients mix = coefficients_product_mixed(8, 18.0 / 38.0, params);
  const double t_half = thermalization_time(mix) / 2.0;
  const std::vector<double> grid = uniform_grid(10.0 * thermalization_time(mix), 401);
  const auto td = temperature_trajectory(dicke, grid);
  const auto tm = temperature_trajectory(mix, grid);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (td[i] < tm[i]) ++violations;
  }
  const std::vector<double> half = {t_half};
  const double rel_half = temperature_trajectory(dicke, half)[0] / temperature_trajectory(mix, half)[0] - 1.0;
  return {violations == 0 && rel_half >= 0.10,
          std::to_string(violations) + " grid points below, steady T " + fmt(steady_temperature(dicke)) + " vs " +
              fmt(steady_temperature(mix)) + ", advantage at t_q/2 " + fmt(100.0 * rel_half) + "% (want >= 10%)"};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"coefficient oracle", coefficient_oracle},
      {"thermal equivalence", thermal_equivalence},
      {"superthermalization scaling", scaling_slopes},
      {"decay regression", decay_crossings},
      {"temperature regression", temperature_asymptotes},
      {"collision convergence", collision_convergence},
      {"preparation oracle", preparation_oracle},
      {"classification", classification_suite},
      {"pointwise advantage", pointwise_advantage},
  };
  std::size_t first = 0, last = criteria.size();
  if (argc > 1) {
    const int which = std::atoi(argv[1]);
    if (which < 1 || which > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: %s [1-%zu]\n", argv[0], criteria.size());
      return 2;
    }
    first = static_cast<std::size_t>(which - 1);
    last = first + 1;
  }
  bool all = true;
  for (std::size_t i = first; i < last; ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
  }
  return all ? 0 : 1;
}
