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

// qollide command-line front end. Links only the C API.

#include <qollide/qollide.h>

#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

// Raised for any failure; carries the exit code and the field at fault.
struct Failure {
  int code;
  std::string field;
  std::string message;
};

[[noreturn]] void config_error(const std::string& field, const std::string& message) {
  throw Failure{kExitConfig, field, message};
}

void check(qollide_status status) {
  if (status == QOLLIDE_OK) return;
  const int code = (status == QOLLIDE_ERR_NUMERIC || status == QOLLIDE_ERR_INTERNAL) ? kExitNumeric : kExitConfig;
  const std::string field = qollide_last_error_field();
  std::string message = qollide_last_error();
  if (message.rfind(field + ": ", 0) == 0) message.erase(0, field.size() + 2);
  throw Failure{code, field, message};
}

// Owns a malloc'd string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  qollide_string_free(s);
  return out;
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using BathHandle = Handle<qollide_bath, qollide_bath_free>;
using TrajectoryHandle = Handle<qollide_trajectory, qollide_trajectory_free>;
using SweepHandle = Handle<qollide_sweep, qollide_sweep_free>;
using MapHandle = Handle<qollide_coherence_map, qollide_coherence_map_free>;
using PrepHandle = Handle<qollide_preparation, qollide_preparation_free>;
using FiguresHandle = Handle<qollide_figures, qollide_figures_free>;

struct Options {
  std::string bath;
  std::string n_text;
  std::optional<double> p_e;
  std::optional<double> n_bar;
  std::optional<int> k;
  std::string file;
  qollide_collision_params params{};
  double t_end = 1.0;
  double dt = 1e-3;
  std::size_t n_points = 101;
  std::string engine = "analytic";
  std::string mode = "exact";
  std::string scheme = "deterministic";
  std::uint64_t seed = 0;
  std::size_t trajectories = 1000;
  double rho_ee0 = 0.0;
  std::string out;
  std::string fit_out;
  std::string family = "dicke";
  std::string k_rule = "half-minus-one";
  bool text = false;
  double gamma0 = 1.0;
  std::string matrix_out;
  std::string dir;
};

int parse_int(const std::string& s, const std::string& field) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    config_error(field, "'" + s + "' is not an integer");
  }
  if (used != s.size()) config_error(field, "'" + s + "' is not an integer");
  if (v < -1000000 || v > 1000000) config_error(field, "'" + s + "' is out of range");
  return static_cast<int>(v);
}

int single_n(const std::string& text) {
  if (text.empty()) config_error("N", "--N is required");
  return parse_int(text, "N");
}

// Accepts "a", "a,b,c", "a:b" (unit step) and "a:b:step".
std::vector<int> n_list(const std::string& text) {
  if (text.empty()) config_error("N", "--N is required");
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(parse_int(item, "N"));
    if (parts.size() < 2 || parts.size() > 3) config_error("N", "range must be start:stop or start:stop:step");
    const int step = parts.size() == 3 ? parts[2] : 1;
    if (step <= 0) config_error("N", "range step must be positive");
    if (parts[1] < parts[0]) config_error("N", "range stop is below start");
    for (int n = parts[0]; n <= parts[1]; n += step) out.push_back(n);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_int(item, "N"));
  }
  if (out.empty()) config_error("N", "empty N list");
  return out;
}

template <class T>
T require_value(const std::optional<T>& v, const std::string& field, const std::string& bath) {
  if (!v) config_error(field, "--" + field + " is required for --bath " + bath);
  return *v;
}

void build_bath(const Options& o, BathHandle& bath, json& provenance) {
  provenance["kind"] = o.bath;
  if (o.bath == "product") {
    const int n = single_n(o.n_text);
    const double p_e = require_value(o.p_e, "pe", o.bath);
    check(qollide_bath_product(n, p_e, bath.out()));
    provenance["N"] = n;
    provenance["p_e"] = p_e;
  } else if (o.bath == "thermal-hec") {
    const int n = single_n(o.n_text);
    const double n_bar = require_value(o.n_bar, "nbar", o.bath);
    check(qollide_bath_thermal_hec(n, n_bar, bath.out()));
    provenance["N"] = n;
    provenance["n_bar"] = n_bar;
  } else if (o.bath == "dicke") {
    const int n = single_n(o.n_text);
    const int k = require_value(o.k, "k", o.bath);
    check(qollide_bath_dicke(n, k, bath.out()));
    provenance["N"] = n;
    provenance["k"] = k;
  } else if (o.bath == "explicit") {
    if (o.file.empty()) config_error("file", "--file is required for --bath explicit");
    check(qollide_bath_load_csv(o.file.c_str(), bath.out()));
    const int n = qollide_bath_qubits(bath.get());
    if (!o.n_text.empty() && single_n(o.n_text) != n) {
      config_error("N", "--N disagrees with the qubit count in " + o.file);
    }
    provenance["N"] = n;
    provenance["file"] = o.file;
  } else {
    config_error("bath", "--bath is required (product | thermal-hec | dicke | explicit)");
  }
}

json params_json(const qollide_collision_params& p) {
  return json{{"g", p.g}, {"tau", p.tau}, {"p", p.p}, {"omega0", p.omega0}};
}

void validate_params(const qollide_collision_params& p) {
  check(qollide_collision_params_validate(&p));
  if (qollide_collision_params_outside_second_order(&p)) {
    std::cerr << "warning: g*tau = " << p.g * p.tau << " is outside the second-order regime (> 0.3)\n";
  }
}

// Fails unless `path` can be created or overwritten.
void check_writable(const std::string& path, const std::string& field) {
  if (path.empty()) return;
  const fs::path p(path);
  fs::path parent = p.parent_path();
  if (parent.empty()) parent = ".";
  std::error_code ec;
  if (fs::is_directory(p, ec)) config_error(field, path + " is a directory");
  if (!fs::is_directory(parent, ec)) config_error(field, "directory " + parent.string() + " does not exist");
  if (::access(parent.c_str(), W_OK) != 0) config_error(field, "directory " + parent.string() + " is not writable");
  if (fs::exists(p, ec) && ::access(p.c_str(), W_OK) != 0) config_error(field, path + " is not writable");
}

// Writes through a temporary file so a failed run leaves no partial output.
void write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Failure{kExitConfig, "out", "cannot open " + tmp};
    f << content;
    if (!f.flush()) throw Failure{kExitConfig, "out", "write failed for " + tmp};
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Failure{kExitConfig, "out", "cannot move output into " + path};
  }
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    std::cout.flush();
  } else {
    write_file(path, content);
  }
}

json coefficients_to_json(const qollide_coefficients& c) {
  return json::parse(take([&] {
    char* s = nullptr;
    check(qollide_coefficients_json(&c, &s));
    return s;
  }()));
}

int cmd_coeffs(const Options& o) {
  check_writable(o.out, "out");
  validate_params(o.params);
  BathHandle bath;
  json prov;
  build_bath(o, bath, prov);

  json doc;
  doc["bath"] = prov;
  doc["params"] = params_json(o.params);
  qollide_coefficients c{};
  if (qollide_bath_has_matrix(bath.get())) {
    check(qollide_coefficients_from_state(bath.get(), &o.params, &c));
    doc["source"] = "state";
  } else {
    check(qollide_coefficients_closed_form(bath.get(), &o.params, &c));
    doc["source"] = "closed-form";
  }
  doc["coefficients"] = coefficients_to_json(c);
  if (o.bath != "explicit") {
    qollide_coefficients closed{};
    check(qollide_coefficients_closed_form(bath.get(), &o.params, &closed));
    doc["closed_form"] = coefficients_to_json(closed);
  } else {
    doc["closed_form"] = nullptr;
  }
  // Non-finite values serialize as null.
  doc["t_q"] = qollide_thermalization_time(&c);
  doc["T_q"] = qollide_steady_temperature(&c);
  doc["outside_second_order"] = qollide_collision_params_outside_second_order(&o.params) != 0;
  emit(o.out, doc.dump(2) + "\n");
  return kExitOk;
}

int cmd_evolve(const Options& o) {
  check_writable(o.out, "out");
  validate_params(o.params);
  BathHandle bath;
  json prov;
  build_bath(o, bath, prov);

  qollide_evolve_options opts;
  qollide_evolve_options_default(&opts);
  if (o.engine == "analytic") {
    opts.engine = QOLLIDE_ENGINE_ANALYTIC;
  } else if (o.engine == "ode") {
    opts.engine = QOLLIDE_ENGINE_ODE;
  } else {
    opts.engine = QOLLIDE_ENGINE_COLLISIONS;
  }
  opts.mode = o.mode == "second-order" ? QOLLIDE_MODE_SECOND_ORDER : QOLLIDE_MODE_EXACT;
  opts.stochastic = o.scheme == "stochastic" ? 1 : 0;
  opts.seed = o.seed;
  opts.trajectories = o.trajectories;
  opts.t_end = o.t_end;
  opts.dt = o.dt;
  opts.n_points = o.n_points;
  opts.rho_ee0 = o.rho_ee0;

  TrajectoryHandle traj;
  check(qollide_evolve(bath.get(), &o.params, &opts, traj.out()));
  if (qollide_trajectory_coherence_flag(traj.get())) {
    std::cerr << "warning: target coherence present; temperature column uses populations only\n";
  }
  char* csv = nullptr;
  check(qollide_trajectory_csv(traj.get(), &csv));
  emit(o.out, take(csv));
  return kExitOk;
}

int cmd_sweep(const Options& o) {
  check_writable(o.out, "out");
  check_writable(o.fit_out, "fit-out");
  validate_params(o.params);
  const std::vector<int> ns = n_list(o.n_text);
  qollide_family family = QOLLIDE_FAMILY_DICKE;
  if (o.family == "product") family = QOLLIDE_FAMILY_PRODUCT;
  if (o.family == "thermal-hec") family = QOLLIDE_FAMILY_THERMAL_HEC;
  const qollide_k_rule rule = o.k_rule == "quarter" ? QOLLIDE_KRULE_QUARTER : QOLLIDE_KRULE_HALF_MINUS_ONE;

  SweepHandle sweep;
  check(qollide_sweep_run(family, rule, o.p_e.value_or(0.2), o.n_bar.value_or(1.0), ns.data(), ns.size(), &o.params,
                          sweep.out()));
  char* csv = nullptr;
  check(qollide_sweep_csv(sweep.get(), &csv));
  const std::string table = take(csv);
  char* fit = nullptr;
  check(qollide_sweep_fit_json(sweep.get(), &fit));
  const std::string fit_text = take(fit);

  if (!o.fit_out.empty()) write_file(o.fit_out, fit_text);
  emit(o.out, table);
  if (o.fit_out.empty()) std::cerr << fit_text;
  return kExitOk;
}

int cmd_classify(const Options& o) {
  check_writable(o.out, "out");
  BathHandle bath;
  json prov;
  build_bath(o, bath, prov);
  MapHandle map;
  check(qollide_classify(bath.get(), map.out()));
  char* s = nullptr;
  if (o.text) {
    check(qollide_coherence_map_text(map.get(), &s));
  } else {
    const bool entries = qollide_bath_qubits(bath.get()) <= 6;
    check(qollide_coherence_map_json(map.get(), entries ? 1 : 0, &s));
  }
  emit(o.out, take(s));
  return kExitOk;
}

std::string default_matrix_path(const std::string& out) {
  const fs::path p(out);
  return (p.parent_path() / (p.stem().string() + "_matrix.csv")).string();
}

int cmd_prepare(const Options& o) {
  const std::string matrix_out = !o.matrix_out.empty() ? o.matrix_out : (o.out.empty() ? "" : default_matrix_path(o.out));
  check_writable(o.out, "out");
  check_writable(matrix_out, "matrix-out");
  const int n = single_n(o.n_text);
  if (!o.n_bar) config_error("nbar", "--nbar is required");

  PrepHandle prep;
  check(qollide_prepare(n, *o.n_bar, o.gamma0, o.t_end, o.dt, o.n_points, prep.out()));
  char* ladder = nullptr;
  check(qollide_preparation_ladder_csv(prep.get(), &ladder));
  const std::string ladder_text = take(ladder);
  char* matrix = nullptr;
  check(qollide_preparation_matrix_csv(prep.get(), &matrix));
  const std::string matrix_text = take(matrix);

  if (!matrix_out.empty()) {
    write_file(matrix_out, matrix_text);
  } else {
    std::cerr << "note: final product-basis matrix not written; pass --matrix-out or --out\n";
  }
  emit(o.out, ladder_text);
  return kExitOk;
}

int cmd_figures(const Options& o) {
  if (o.dir.empty()) config_error("dir", "--dir is required");
  const fs::path dir(o.dir);
  std::error_code ec;
  if (fs::exists(dir, ec) && !fs::is_directory(dir, ec)) config_error("dir", o.dir + " is not a directory");
  if (!fs::exists(dir, ec)) {
    fs::path parent = dir.parent_path();
    if (parent.empty()) parent = ".";
    if (!fs::is_directory(parent, ec)) config_error("dir", "directory " + parent.string() + " does not exist");
  }
  if (o.n_points < 2) config_error("n-points", "figures need at least 2 points");

  FiguresHandle figs;
  check(qollide_figures_generate(o.n_points, figs.out()));
  fs::create_directories(dir, ec);
  if (ec) config_error("dir", "cannot create " + o.dir);
  for (std::size_t i = 0; i < qollide_figures_count(figs.get()); ++i) {
    const std::string path = (dir / qollide_figures_name(figs.get(), i)).string();
    check_writable(path, "dir");
    write_file(path, qollide_figures_csv(figs.get(), i));
    std::cerr << "wrote " << path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  qollide_collision_params_default(&o.params);

  CLI::App app{"Collision-model thermalization of a qubit by a collective spin bath"};
  app.set_version_flag("--version", std::string(qollide_version()));
  app.set_config("--config", "", "Flat key = value file; command-line flags take precedence");
  app.allow_config_extras(false);
  app.require_subcommand(1);

  app.add_option("--bath", o.bath, "Bath family")
      ->check(CLI::IsMember({"product", "thermal-hec", "dicke", "explicit"}));
  app.add_option("--N", o.n_text, "Bath qubits; sweep also accepts a,b,c or start:stop[:step]");
  app.add_option("--pe", o.p_e, "Excited probability of each product-bath qubit");
  app.add_option("--nbar", o.n_bar, "Mean thermal occupation");
  app.add_option("--k", o.k, "Dicke excitation number");
  app.add_option("--file", o.file, "Explicit bath matrix CSV");
  app.add_option("--g", o.params.g, "Coupling rate")->capture_default_str();
  app.add_option("--tau", o.params.tau, "Collision duration")->capture_default_str();
  app.add_option("--p", o.params.p, "Collision rate")->capture_default_str();
  app.add_option("--omega0", o.params.omega0, "Qubit frequency")->capture_default_str();
  app.add_option("--t-end", o.t_end, "End time")->capture_default_str();
  app.add_option("--dt", o.dt, "Maximum step")->capture_default_str();
  app.add_option("--n-points", o.n_points, "Output grid points")->capture_default_str();
  app.add_option("--engine", o.engine, "Evolution engine")
      ->check(CLI::IsMember({"analytic", "ode", "collisions"}))
      ->capture_default_str();
  app.add_option("--mode", o.mode, "Collision propagator")
      ->check(CLI::IsMember({"exact", "second-order"}))
      ->capture_default_str();
  app.add_option("--scheme", o.scheme, "Collision scheme")
      ->check(CLI::IsMember({"deterministic", "stochastic"}))
      ->capture_default_str();
  app.add_option("--seed", o.seed, "Random seed")->capture_default_str();
  app.add_option("--trajectories", o.trajectories, "Stochastic trajectories")->capture_default_str();
  app.add_option("--rho-ee0", o.rho_ee0, "Initial excited population")->capture_default_str();
  app.add_option("--out", o.out, "Output file (default stdout)");
  app.add_option("--fit-out", o.fit_out, "Sweep fit JSON file (default stderr)");
  app.add_option("--family", o.family, "Sweep family")
      ->check(CLI::IsMember({"product", "thermal-hec", "dicke"}))
      ->capture_default_str();
  app.add_option("--krule", o.k_rule, "Dicke excitation rule")
      ->check(CLI::IsMember({"quarter", "half-minus-one"}))
      ->capture_default_str();
  app.add_flag("--text", o.text, "Classify: render a text grid instead of JSON");
  app.add_option("--gamma0", o.gamma0, "Preparation emission rate")->capture_default_str();
  app.add_option("--matrix-out", o.matrix_out, "Prepare: final product-basis matrix file");
  app.add_option("--dir", o.dir, "Figures: output directory");

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Command commands[] = {
      {"coeffs", "Master-equation coefficients as JSON", cmd_coeffs},
      {"evolve", "Target-qubit trajectory CSV", cmd_evolve},
      {"sweep", "Scaling sweep CSV and log-log fit JSON", cmd_sweep},
      {"classify", "Coherence map of a bath state", cmd_classify},
      {"prepare", "Thermal preparation of the Dicke ladder", cmd_prepare},
      {"figures", "Relaxation and temperature datasets", cmd_figures},
  };
  int (*selected)(const Options&) = nullptr;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->fallthrough();
    sub->callback([&selected, run = c.run] { selected = run; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    return selected(o);
  } catch (const Failure& f) {
    std::cerr << "error";
    if (!f.field.empty()) std::cerr << " [" << f.field << "]";
    std::cerr << ": " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
