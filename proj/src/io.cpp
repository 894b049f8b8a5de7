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

#include "qollide/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qollide {

namespace {

using nlohmann::json;

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

[[noreturn]] void bad_file(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::InvalidArgument, "bath csv", "line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string coefficients_json(const MeqCoefficients& c) {
  json j;
  j["lambda_re"] = c.lambda.real();
  j["lambda_im"] = c.lambda.imag();
  j["epsilon_re"] = c.epsilon.real();
  j["epsilon_im"] = c.epsilon.imag();
  j["r_e"] = c.r_e;
  j["r_d"] = c.r_d;
  j["mu"] = c.mu;
  j["pg_tau"] = c.pg_tau;
  return j.dump();
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,mu_t,rho_ee,rho_gg,re_rho_eg,im_rho_eg,temperature,entropy\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const ComplexMatrix& rho = traj.states[i];
    const double fields[] = {traj.times[i],        traj.mu * traj.times[i], rho(0, 0).real(), rho(1, 1).real(),
                             rho(0, 1).real(),     rho(0, 1).imag(),        traj.temperature[i],
                             traj.entropy[i]};
    for (std::size_t f = 0; f < std::size(fields); ++f) {
      if (f) out += ',';
      out += format_double(fields[f]);
    }
    out += '\n';
  }
  return out;
}

std::string sweep_csv(const SweepTable& table) {
  std::string out = "N,k,r_e,r_d,t_q,T_q\n";
  for (const auto& row : table.rows) {
    out += std::to_string(row.n) + ',';
    if (row.k) out += std::to_string(*row.k);
    out += ',' + format_double(row.r_e) + ',' + format_double(row.r_d) + ',' + format_double(row.t_q) + ',' +
           format_double(row.temperature) + '\n';
  }
  return out;
}

std::string sweep_fit_json(const SweepTable& table) {
  json j;
  j["points"] = table.rows.size();
  j["slope_t_q"] = table.slope_t_q ? json(*table.slope_t_q) : json(nullptr);
  j["slope_T_q"] = table.slope_temperature ? json(*table.slope_temperature) : json(nullptr);
  return j.dump() + "\n";
}

std::string ladder_csv(const Preparation& prep) {
  const int n = prep.ladder.empty() ? 0 : prep.ladder.front().n;
  std::string out = "t";
  for (int k = 0; k <= n && !prep.ladder.empty(); ++k) out += ",p_" + std::to_string(k);
  out += '\n';
  for (std::size_t i = 0; i < prep.times.size(); ++i) {
    out += format_double(prep.times[i]);
    for (double p : prep.ladder[i].populations) out += ',' + format_double(p);
    out += '\n';
  }
  return out;
}

std::string bath_matrix_csv(int n, const ComplexMatrix& rho) {
  std::string out = "N=" + std::to_string(n) + ",basis=excitation-sorted\n";
  for (Index i = 0; i < rho.rows(); ++i) {
    for (Index j = 0; j < rho.cols(); ++j) {
      if (j) out += ',';
      out += format_double(rho(i, j).real()) + ',' + format_double(rho(i, j).imag());
    }
    out += '\n';
  }
  return out;
}

BathFile read_bath_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (!line.empty()) break;
  }
  if (line.empty()) bad_file(line_no, "missing header `N=<n>,basis=excitation-sorted`");

  BathFile file;
  bool binary = false;
  {
    std::stringstream header(line);
    std::string field;
    bool have_n = false, have_basis = false;
    while (std::getline(header, field, ',')) {
      field = trim(field);
      if (field.rfind("N=", 0) == 0) {
        char* end = nullptr;
        const long v = std::strtol(field.c_str() + 2, &end, 10);
        if (*end != '\0' || v < 1 || v > kMaxCollectiveQubits) bad_file(line_no, "invalid N in header");
        file.n = static_cast<int>(v);
        have_n = true;
      } else if (field == "basis=excitation-sorted") {
        have_basis = true;
      } else if (field == "basis=binary") {
        have_basis = binary = true;
      } else {
        bad_file(line_no, "unknown header field `" + field + "`");
      }
    }
    if (!have_n || !have_basis) bad_file(line_no, "header must name N and basis");
  }

  const Index dim = Index{1} << file.n;
  file.rho.resize(dim, dim);
  Index row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (row >= dim) bad_file(line_no, "more than 2^N rows");
    std::vector<double> values;
    const char* p = line.c_str();
    while (*p) {
      char* end = nullptr;
      const double v = std::strtod(p, &end);
      if (end == p) bad_file(line_no, "malformed number");
      values.push_back(v);
      p = end;
      while (*p == ' ' || *p == '\t') ++p;
      if (*p == ',') ++p;
      else if (*p) bad_file(line_no, "expected ','");
    }
    if (values.size() != static_cast<std::size_t>(2 * dim)) {
      bad_file(line_no, "expected " + std::to_string(2 * dim) + " numbers (re,im pairs), got " +
                            std::to_string(values.size()));
    }
    for (Index j = 0; j < dim; ++j) file.rho(row, j) = Complex(values[2 * j], values[2 * j + 1]);
    ++row;
  }
  if (row != dim) bad_file(line_no, "expected " + std::to_string(dim) + " rows, got " + std::to_string(row));
  if (binary) file.rho = BasisOrdering(file.n).from_binary_order(file.rho);
  return file;
}

BathFile read_bath_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "file", "cannot open `" + path + "`");
  return read_bath_csv(in);
}

std::string coherence_json(const CoherenceMap& map, const BasisOrdering& basis, bool with_entries) {
  json j;
  j["N"] = map.qubits();
  j["basis"] = "excitation-sorted";
  j["block_sizes"] = block_sizes(map.qubits());
  const auto counts = map.counts();
  const auto occupied = map.occupied_counts();
  json c = json::object(), o = json::object();
  for (std::size_t i = 0; i < kAllCoherences.size(); ++i) {
    c[to_string(kAllCoherences[i])] = counts[i];
    o[to_string(kAllCoherences[i])] = occupied[i];
  }
  j["counts"] = c;
  j["occupied_counts"] = o;
  if (with_entries) {
    json entries = json::array();
    for (Index r = 0; r < map.dim(); ++r) {
      for (Index s = 0; s < map.dim(); ++s) {
        json labels = json::array();
        for (Coherence l : kAllCoherences) {
          if (has(map.labels(r, s), l)) labels.push_back(to_string(l));
        }
        const auto [k_i, k_j] = map.block_index(r, s);
        entries.push_back({{"i", r},
                           {"j", s},
                           {"state_i", basis.label(r)},
                           {"state_j", basis.label(s)},
                           {"k_i", k_i},
                           {"k_j", k_j},
                           {"label", to_string(map.primary(r, s))},
                           {"labels", labels},
                           {"occupied", map.occupied(r, s)}});
      }
    }
    j["entries"] = entries;
  }
  return j.dump(2) + "\n";
}

std::string coherence_text(const CoherenceMap& map, const BasisOrdering& basis) {
  auto glyph = [](Coherence c) {
    switch (c) {
      case Coherence::Population: return 'P';
      case Coherence::Hec: return 'H';
      case Coherence::Displacement: return 'D';
      case Coherence::Squeezing: return 'S';
      case Coherence::Ineffective: return '.';
    }
    return '?';
  };
  std::string out;
  for (Index r = 0; r < map.dim(); ++r) {
    if (r > 0 && basis.excitation(r) != basis.excitation(r - 1)) {
      for (Index s = 0; s < map.dim(); ++s) {
        if (s > 0 && basis.excitation(s) != basis.excitation(s - 1)) out += '+';
        out += '-';
      }
      out += '\n';
    }
    for (Index s = 0; s < map.dim(); ++s) {
      if (s > 0 && basis.excitation(s) != basis.excitation(s - 1)) out += '|';
      out += glyph(map.primary(r, s));
    }
    out += "  " + basis.label(r) + '\n';
  }
  return out;
}

}  // namespace qollide
