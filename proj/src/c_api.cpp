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

// extern "C" surface over the C++ core. Every entry point funnels exceptions
// through translate() so no C++ exception crosses the boundary.

#include "qollide/qollide.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "qollide/bath_states.hpp"
#include "qollide/dynamics.hpp"
#include "qollide/figures.hpp"
#include "qollide/io.hpp"
#include "qollide/master_equation.hpp"

struct qollide_bath {
  qollide::BathSpec spec;
  std::string kind;
  std::optional<qollide::DensityMatrix> rho;
};

struct qollide_trajectory {
  qollide::Trajectory traj;
};

struct qollide_sweep {
  qollide::SweepTable table;
};

struct qollide_coherence_map {
  qollide::CoherenceMap map;
  qollide::BasisOrdering basis;
};

struct qollide_preparation {
  qollide::Preparation prep;
};

struct qollide_figures {
  std::vector<qollide::FigureDataset> sets;
};

namespace {

using namespace qollide;

thread_local std::string g_last_error;
thread_local std::string g_last_field;

qollide_status set_error(qollide_status code, std::string field, std::string message) {
  g_last_field = std::move(field);
  g_last_error = std::move(message);
  return code;
}

template <class Fn>
qollide_status translate(Fn&& fn) {
  try {
    fn();
    return QOLLIDE_OK;
  } catch (const Error& e) {
    qollide_status code = QOLLIDE_ERR_INTERNAL;
    switch (e.kind()) {
      case ErrorKind::InvalidArgument: code = QOLLIDE_ERR_INVALID_ARGUMENT; break;
      case ErrorKind::Dimension: code = QOLLIDE_ERR_DIMENSION; break;
      case ErrorKind::Range: code = QOLLIDE_ERR_RANGE; break;
      case ErrorKind::Numeric: code = QOLLIDE_ERR_NUMERIC; break;
      case ErrorKind::Io: code = QOLLIDE_ERR_IO; break;
    }
    return set_error(code, e.check(), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(QOLLIDE_ERR_INTERNAL, "memory", "out of memory");
  } catch (const std::exception& e) {
    return set_error(QOLLIDE_ERR_INTERNAL, "internal", e.what());
  } catch (...) {
    return set_error(QOLLIDE_ERR_INTERNAL, "internal", "unknown failure");
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) throw Error(ErrorKind::InvalidArgument, name, "null pointer");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const std::string& s, char** out) {
  require(out, "out");
  *out = dup_string(s);
}

CollisionParams to_cpp(const qollide_collision_params* p) {
  require(p, "params");
  return CollisionParams{p->g, p->tau, p->p, p->omega0};
}

MeqCoefficients to_cpp(const qollide_coefficients* c) {
  require(c, "coefficients");
  MeqCoefficients m;
  m.lambda = {c->lambda_re, c->lambda_im};
  m.epsilon = {c->epsilon_re, c->epsilon_im};
  m.r_e = c->r_e;
  m.r_d = c->r_d;
  m.mu = c->mu;
  m.pg_tau = c->pg_tau;
  return m;
}

qollide_coefficients to_c(const MeqCoefficients& m) {
  return {m.lambda.real(), m.lambda.imag(), m.epsilon.real(), m.epsilon.imag(), m.r_e, m.r_d, m.mu, m.pg_tau};
}

const DensityMatrix& materialized(const qollide_bath* bath) {
  require(bath, "bath");
  if (!bath->rho) {
    throw Error(ErrorKind::Range, "N",
                "bath with N = " + std::to_string(bath->spec.n) + " has no materialized state (N <= " +
                    std::to_string(kMaxCollectiveQubits) + " required)");
  }
  return *bath->rho;
}

qollide_status make_bath(BathSpec spec, qollide_bath** out) {
  return translate([&] {
    require(out, "out");
    auto bath = std::make_unique<qollide_bath>();
    bath->kind = spec.kind_name();
    if (std::holds_alternative<Explicit>(spec.kind)) {
      bath->rho = validate_bath(spec);
    } else if (spec.n <= kMaxCollectiveQubits) {
      // Family states skip the eigenvalue check.
      bath->rho = std::visit(
          [n = spec.n](const auto& b) -> DensityMatrix {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, ProductMixed>) return product_mixed_state(n, b.p_e);
            else if constexpr (std::is_same_v<T, ThermalHec>) return thermal_hec_state(n, b.n_bar);
            else if constexpr (std::is_same_v<T, DickeBlock>) return dicke_block_state(n, b.k);
            else return DensityMatrix(b.rho);
          },
          spec.kind);
    } else {
      // Too large to materialize; check parameters through the closed forms.
      (void)coefficients_closed_form(spec, CollisionParams{});
    }
    bath->spec = std::move(spec);
    *out = bath.release();
  });
}

}  // namespace

extern "C" {

const char* qollide_version(void) { return "1.0.0"; }
const char* qollide_last_error(void) { return g_last_error.c_str(); }
const char* qollide_last_error_field(void) { return g_last_field.c_str(); }
void qollide_string_free(char* s) { std::free(s); }

qollide_status qollide_bath_product(int n, double p_e, qollide_bath** out) {
  return make_bath(BathSpec{n, ProductMixed{p_e}}, out);
}

qollide_status qollide_bath_thermal_hec(int n, double n_bar, qollide_bath** out) {
  return make_bath(BathSpec{n, ThermalHec{n_bar}}, out);
}

qollide_status qollide_bath_dicke(int n, int k, qollide_bath** out) {
  return make_bath(BathSpec{n, DickeBlock{k}}, out);
}

qollide_status qollide_bath_explicit(int n, const double* re_im, qollide_bath** out) {
  ComplexMatrix rho;
  const qollide_status st = translate([&] {
    require(re_im, "re_im");
    if (n < 1 || n > kMaxCollectiveQubits) throw Error(ErrorKind::Range, "N", "bath size outside [1, 12]");
    const Index dim = Index{1} << n;
    rho.resize(dim, dim);
    for (Index i = 0; i < dim; ++i) {
      for (Index j = 0; j < dim; ++j) rho(i, j) = Complex(re_im[2 * (i * dim + j)], re_im[2 * (i * dim + j) + 1]);
    }
  });
  if (st != QOLLIDE_OK) return st;
  return make_bath(BathSpec{n, Explicit{std::move(rho)}}, out);
}

qollide_status qollide_bath_load_csv(const char* path, qollide_bath** out) {
  BathFile file;
  const qollide_status st = translate([&] {
    require(path, "path");
    file = read_bath_csv_file(path);
  });
  if (st != QOLLIDE_OK) return st;
  return make_bath(BathSpec{file.n, Explicit{std::move(file.rho)}}, out);
}

void qollide_bath_free(qollide_bath* bath) { delete bath; }

int qollide_bath_qubits(const qollide_bath* bath) { return bath ? bath->spec.n : 0; }
const char* qollide_bath_kind(const qollide_bath* bath) { return bath ? bath->kind.c_str() : ""; }
int qollide_bath_has_matrix(const qollide_bath* bath) { return bath && bath->rho ? 1 : 0; }

qollide_status qollide_bath_matrix_csv(const qollide_bath* bath, char** out) {
  return translate([&] { emit(bath_matrix_csv(bath->spec.n, materialized(bath).matrix()), out); });
}

void qollide_collision_params_default(qollide_collision_params* params) {
  if (!params) return;
  const CollisionParams d;
  *params = {d.g, d.tau, d.p, d.omega0};
}

qollide_status qollide_collision_params_validate(const qollide_collision_params* params) {
  return translate([&] { to_cpp(params).validate(); });
}

int qollide_collision_params_outside_second_order(const qollide_collision_params* params) {
  return params && to_cpp(params).outside_second_order() ? 1 : 0;
}

qollide_status qollide_coefficients_from_state(const qollide_bath* bath, const qollide_collision_params* params,
                                               qollide_coefficients* out) {
  return translate([&] {
    require(out, "out");
    const DensityMatrix& rho = materialized(bath);
    const CollectiveOps ops = build_collective_ops(bath->spec.n);
    *out = to_c(coefficients_from_state(rho, ops, to_cpp(params)));
  });
}

qollide_status qollide_coefficients_closed_form(const qollide_bath* bath, const qollide_collision_params* params,
                                                qollide_coefficients* out) {
  return translate([&] {
    require(bath, "bath");
    require(out, "out");
    *out = to_c(coefficients_closed_form(bath->spec, to_cpp(params)));
  });
}

qollide_status qollide_coefficients_json(const qollide_coefficients* c, char** out) {
  return translate([&] { emit(coefficients_json(to_cpp(c)), out); });
}

double qollide_thermalization_time(const qollide_coefficients* c) {
  return c ? thermalization_time(to_cpp(c)) : std::numeric_limits<double>::quiet_NaN();
}

double qollide_steady_temperature(const qollide_coefficients* c) {
  return c ? steady_temperature(to_cpp(c)) : std::numeric_limits<double>::quiet_NaN();
}

void qollide_evolve_options_default(qollide_evolve_options* o) {
  if (!o) return;
  *o = qollide_evolve_options{};
  o->engine = QOLLIDE_ENGINE_ANALYTIC;
  o->t_end = 1.0;
  o->dt = 1e-3;
  o->n_points = 101;
  o->mode = QOLLIDE_MODE_EXACT;
  o->stochastic = 0;
  o->seed = 0;
  o->trajectories = 1000;
}

qollide_status qollide_evolve(const qollide_bath* bath, const qollide_collision_params* params,
                              const qollide_evolve_options* options, qollide_trajectory** out) {
  return translate([&] {
    require(bath, "bath");
    require(options, "options");
    require(out, "out");
    const CollisionParams p = to_cpp(params);
    p.validate();
    if (!(options->rho_ee0 >= 0.0 && options->rho_ee0 <= 1.0)) {
      throw Error(ErrorKind::Range, "rho_ee0", "initial population outside [0, 1]");
    }
    const QubitState rho0 = QubitState::from_populations(options->rho_ee0, {options->rho_eg0_re, options->rho_eg0_im});
    const auto grid = uniform_grid(options->t_end, options->n_points);

    auto result = std::make_unique<qollide_trajectory>();
    switch (options->engine) {
      case QOLLIDE_ENGINE_ANALYTIC:
      case QOLLIDE_ENGINE_ODE: {
        const MeqCoefficients c = bath->rho ? coefficients_from_state(*bath->rho, build_collective_ops(bath->spec.n), p)
                                            : coefficients_closed_form(bath->spec, p);
        if (options->engine == QOLLIDE_ENGINE_ANALYTIC) {
          result->traj = analytic_trajectory(rho0, c, grid);
        } else {
          result->traj = integrate_master(rho0, c, grid, options->dt);
        }
        break;
      }
      case QOLLIDE_ENGINE_COLLISIONS: {
        CollisionScheme scheme;
        scheme.stochastic = options->stochastic != 0;
        scheme.seed = options->seed;
        scheme.trajectories = options->trajectories;
        const CollisionMode mode =
            options->mode == QOLLIDE_MODE_SECOND_ORDER ? CollisionMode::SecondOrder : CollisionMode::Exact;
        result->traj = collision_chain(rho0, bath->spec, p, grid, options->dt, mode, scheme);
        break;
      }
      default:
        throw Error(ErrorKind::InvalidArgument, "engine", "unknown engine");
    }
    *out = result.release();
  });
}

void qollide_trajectory_free(qollide_trajectory* traj) { delete traj; }

size_t qollide_trajectory_size(const qollide_trajectory* traj) { return traj ? traj->traj.size() : 0; }

qollide_status qollide_trajectory_point_at(const qollide_trajectory* traj, size_t index,
                                           qollide_trajectory_point* out) {
  return translate([&] {
    require(traj, "trajectory");
    require(out, "out");
    const Trajectory& t = traj->traj;
    if (index >= t.size()) throw Error(ErrorKind::Range, "index", "trajectory index out of range");
    const ComplexMatrix& rho = t.states[index];
    *out = {t.times[index],     t.mu * t.times[index], rho(0, 0).real(),      rho(1, 1).real(),
            rho(0, 1).real(),   rho(0, 1).imag(),      t.temperature[index], t.entropy[index]};
  });
}

int qollide_trajectory_coherence_flag(const qollide_trajectory* traj) {
  return traj && traj->traj.coherence_flag ? 1 : 0;
}

qollide_status qollide_trajectory_csv(const qollide_trajectory* traj, char** out) {
  return translate([&] {
    require(traj, "trajectory");
    emit(trajectory_csv(traj->traj), out);
  });
}

qollide_status qollide_sweep_run(qollide_family family, qollide_k_rule k_rule, double p_e, double n_bar,
                                 const int* ns, size_t count, const qollide_collision_params* params,
                                 qollide_sweep** out) {
  return translate([&] {
    require(out, "out");
    if (count > 0) require(ns, "ns");
    SweepRequest req;
    switch (family) {
      case QOLLIDE_FAMILY_PRODUCT: req.family = SweepFamily::ProductMixed; break;
      case QOLLIDE_FAMILY_THERMAL_HEC: req.family = SweepFamily::ThermalHec; break;
      case QOLLIDE_FAMILY_DICKE: req.family = SweepFamily::Dicke; break;
      default: throw Error(ErrorKind::InvalidArgument, "family", "unknown family");
    }
    switch (k_rule) {
      case QOLLIDE_KRULE_QUARTER: req.k_rule = KRule::Quarter; break;
      case QOLLIDE_KRULE_HALF_MINUS_ONE: req.k_rule = KRule::HalfMinusOne; break;
      default: throw Error(ErrorKind::InvalidArgument, "krule", "unknown k rule");
    }
    req.p_e = p_e;
    req.n_bar = n_bar;
    req.ns.assign(ns, ns + count);
    req.params = to_cpp(params);
    auto result = std::make_unique<qollide_sweep>();
    result->table = scaling_sweep(req);
    *out = result.release();
  });
}

void qollide_sweep_free(qollide_sweep* sweep) { delete sweep; }

size_t qollide_sweep_size(const qollide_sweep* sweep) { return sweep ? sweep->table.rows.size() : 0; }

int qollide_sweep_slopes(const qollide_sweep* sweep, double* slope_t_q, double* slope_temperature) {
  if (!sweep) return 0;
  int mask = 0;
  if (sweep->table.slope_t_q && slope_t_q) {
    *slope_t_q = *sweep->table.slope_t_q;
    mask |= 1;
  }
  if (sweep->table.slope_temperature && slope_temperature) {
    *slope_temperature = *sweep->table.slope_temperature;
    mask |= 2;
  }
  return mask;
}

qollide_status qollide_sweep_csv(const qollide_sweep* sweep, char** out) {
  return translate([&] {
    require(sweep, "sweep");
    emit(sweep_csv(sweep->table), out);
  });
}

qollide_status qollide_sweep_fit_json(const qollide_sweep* sweep, char** out) {
  return translate([&] {
    require(sweep, "sweep");
    emit(sweep_fit_json(sweep->table), out);
  });
}

qollide_status qollide_classify(const qollide_bath* bath, qollide_coherence_map** out) {
  return translate([&] {
    require(out, "out");
    const DensityMatrix& rho = materialized(bath);
    const CollectiveOps ops = build_collective_ops(bath->spec.n);
    *out = new qollide_coherence_map{classify_coherences(rho, ops), ops.basis};
  });
}

void qollide_coherence_map_free(qollide_coherence_map* map) { delete map; }

size_t qollide_coherence_map_dim(const qollide_coherence_map* map) {
  return map ? static_cast<size_t>(map->map.dim()) : 0;
}

int qollide_coherence_map_label(const qollide_coherence_map* map, size_t i, size_t j) {
  if (!map || i >= qollide_coherence_map_dim(map) || j >= qollide_coherence_map_dim(map)) return 0;
  return static_cast<int>(map->map.primary(static_cast<Index>(i), static_cast<Index>(j)));
}

int qollide_coherence_map_labels(const qollide_coherence_map* map, size_t i, size_t j) {
  if (!map || i >= qollide_coherence_map_dim(map) || j >= qollide_coherence_map_dim(map)) return 0;
  return map->map.labels(static_cast<Index>(i), static_cast<Index>(j));
}

qollide_status qollide_coherence_map_json(const qollide_coherence_map* map, int with_entries, char** out) {
  return translate([&] {
    require(map, "map");
    emit(coherence_json(map->map, map->basis, with_entries != 0), out);
  });
}

qollide_status qollide_coherence_map_text(const qollide_coherence_map* map, char** out) {
  return translate([&] {
    require(map, "map");
    emit(coherence_text(map->map, map->basis), out);
  });
}

qollide_status qollide_prepare(int n, double n_bar, double gamma0, double t_end, double dt, size_t n_points,
                               qollide_preparation** out) {
  return translate([&] {
    require(out, "out");
    // The final ladder is always reported, so a short grid collapses to {t_end}.
    std::vector<double> grid;
    if (n_points <= 1 || t_end == 0.0) {
      (void)uniform_grid(t_end, 1);
      grid = {t_end};
    } else {
      grid = uniform_grid(t_end, n_points);
    }
    auto result = std::make_unique<qollide_preparation>();
    result->prep = prepare_thermal_dicke(n, n_bar, gamma0, grid, dt);
    *out = result.release();
  });
}

void qollide_preparation_free(qollide_preparation* prep) { delete prep; }

size_t qollide_preparation_size(const qollide_preparation* prep) { return prep ? prep->prep.times.size() : 0; }

qollide_status qollide_preparation_population(const qollide_preparation* prep, size_t time_index, int k,
                                              double* out) {
  return translate([&] {
    require(prep, "preparation");
    require(out, "out");
    if (time_index >= prep->prep.times.size()) throw Error(ErrorKind::Range, "index", "time index out of range");
    const auto& pops = prep->prep.ladder[time_index].populations;
    if (k < 0 || static_cast<size_t>(k) >= pops.size()) throw Error(ErrorKind::Range, "k", "ladder index out of range");
    *out = pops[static_cast<size_t>(k)];
  });
}

qollide_status qollide_preparation_ladder_csv(const qollide_preparation* prep, char** out) {
  return translate([&] {
    require(prep, "preparation");
    emit(ladder_csv(prep->prep), out);
  });
}

qollide_status qollide_preparation_matrix_csv(const qollide_preparation* prep, char** out) {
  return translate([&] {
    require(prep, "preparation");
    const int n = prep->prep.ladder.back().n;
    emit(bath_matrix_csv(n, prep->prep.product_state.matrix()), out);
  });
}

qollide_status qollide_figures_generate(size_t n_points, qollide_figures** out) {
  return translate([&] {
    require(out, "out");
    *out = new qollide_figures{figure_datasets(n_points)};
  });
}

void qollide_figures_free(qollide_figures* figs) { delete figs; }

size_t qollide_figures_count(const qollide_figures* figs) { return figs ? figs->sets.size() : 0; }

const char* qollide_figures_name(const qollide_figures* figs, size_t index) {
  return figs && index < figs->sets.size() ? figs->sets[index].name.c_str() : nullptr;
}

const char* qollide_figures_csv(const qollide_figures* figs, size_t index) {
  return figs && index < figs->sets.size() ? figs->sets[index].csv.c_str() : nullptr;
}

}  // extern "C"
