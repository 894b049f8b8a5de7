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

// End-to-end runs of the command-line tool.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("qollide_cli_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

// Runs the CLI with stderr discarded unless `keep_stderr`.
Run run(const std::string& args, const std::string& env = "", bool keep_stderr = false) {
  const std::string cmd = "cd '" + scratch().string() + "' && " + env + " '" QOLLIDE_CLI_PATH "' " + args +
                          (keep_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<double> row_values(const std::string& line) {
  std::vector<double> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell.empty() ? NAN : std::stod(cell));
  return out;
}

}  // namespace

TEST_CASE("coeffs for a Dicke bath") {
  const Run r = run("coeffs --bath dicke --N 8 --k 3");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["bath"]["kind"] == "dicke");
  CHECK(j["bath"]["N"] == 8);
  CHECK(j["bath"]["k"] == 3);
  CHECK(j["params"]["g"] == 0.1);
  CHECK(j["coefficients"]["r_e"].get<double>() == doctest::Approx(18.0));
  CHECK(j["coefficients"]["r_d"].get<double>() == doctest::Approx(20.0));
  CHECK(j["closed_form"]["r_e"] == 18.0);
  CHECK(j["t_q"].get<double>() == doctest::Approx(1.0 / 38.0));
}

TEST_CASE("coeffs for a product bath") {
  const Run r = run("coeffs --bath product --N 3 --pe 0.2");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["coefficients"]["r_e"].get<double>() == doctest::Approx(0.6));
  CHECK(j["coefficients"]["r_d"].get<double>() == doctest::Approx(2.4));
}

TEST_CASE("coeffs for an explicit maximally mixed bath") {
  std::ofstream(scratch() / "rho.csv") << "N=2,basis=excitation-sorted\n"
                                          "0.25,0,0,0,0,0,0,0\n"
                                          "0,0,0.25,0,0,0,0,0\n"
                                          "0,0,0,0,0.25,0,0,0\n"
                                          "0,0,0,0,0,0,0.25,0\n";
  const Run r = run("coeffs --bath explicit --file rho.csv");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["coefficients"]["r_e"].get<double>() == doctest::Approx(1.0));
  CHECK(j["coefficients"]["r_d"].get<double>() == doctest::Approx(1.0));
  CHECK(j["closed_form"].is_null());
  CHECK(j["bath"]["N"] == 2);
}

TEST_CASE("config errors exit with code 2 and name the field") {
  Run r = run("coeffs --bath dicke --N 8", "", true);
  CHECK(r.code == 2);
  CHECK(r.out.find("[k]") != std::string::npos);

  r = run("coeffs --bath dickey --N 8", "", true);
  CHECK(r.code == 2);
  CHECK(r.out.find("--bath") != std::string::npos);

  r = run("coeffs --bath dicke --N eight --k 1", "", true);
  CHECK(r.code == 2);
  CHECK(r.out.find("[N]") != std::string::npos);

  r = run("coeffs --bath dicke --N 4 --k 9", "", true);
  CHECK(r.code == 2);
  CHECK(r.out.find("[k]") != std::string::npos);

  r = run("coeffs --bath product --N 4 --pe 0.2 --tau 0", "", true);
  CHECK(r.code == 2);
  CHECK(r.out.find("[tau]") != std::string::npos);

  r = run("sweep --family dicke --N 8:4", "", true);
  CHECK(r.code == 2);

  r = run("evolve --bath dicke --N 4 --k 1 --engine collisions --dt 0.1", "", true);
  CHECK(r.code == 2);
  CHECK(r.out.find("[dt]") != std::string::npos);
  CHECK(r.out.find("exceeds 1") != std::string::npos);

  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("coeffs --bath explicit --file missing.csv").code == 2);
}

TEST_CASE("failed runs leave no output files") {
  const fs::path out = scratch() / "never.csv";
  fs::remove(out);
  CHECK(run("evolve --bath dicke --N 4 --out never.csv").code == 2);
  CHECK_FALSE(fs::exists(out));

  // Numeric failure: the ladder step is far too large.
  const Run r = run("prepare --N 8 --nbar 1 --t-end 5 --dt 0.5 --out never.csv", "", true);
  CHECK(r.code == 3);
  CHECK(r.out.find("step too large") != std::string::npos);
  CHECK_FALSE(fs::exists(out));
  CHECK_FALSE(fs::exists(scratch() / "never_matrix.csv"));

  CHECK(run("coeffs --bath dicke --N 4 --k 1 --out /nonexistent-dir/x.json").code == 2);
}

TEST_CASE("help and version succeed") {
  CHECK(run("--help").code == 0);
  CHECK(run("--version").out.find("1.0.0") != std::string::npos);
}

TEST_CASE("evolve with an empty grid prints only the header") {
  const Run r = run("evolve --bath dicke --N 8 --k 3 --n-points 0");
  CHECK(r.code == 0);
  CHECK(r.out == "t,mu_t,rho_ee,rho_gg,re_rho_eg,im_rho_eg,temperature,entropy\n");
}

TEST_CASE("Dicke decay reaches 1/e at the thermalization time") {
  const Run r = run("evolve --bath dicke --N 8 --k 3 --rho-ee0 1 --t-end 0.026315789473684209 --n-points 2");
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 3);
  const auto v = row_values(rows[2]);
  const double ss = 18.0 / 38.0;
  CHECK(v[1] == doctest::Approx(1.0 / 38.0));
  CHECK(std::abs((v[2] - ss) / (1.0 - ss) - std::exp(-1.0)) < 1e-12);
}

TEST_CASE("Dicke temperature approaches its steady value") {
  const Run r = run("evolve --bath dicke --N 12 --k 5 --t-end 1 --n-points 11");
  REQUIRE(r.code == 0);
  const auto v = row_values(lines(r.out).back());
  CHECK(std::abs(v[6] - 1.0 / std::log(42.0 / 40.0)) < 1e-6);
  CHECK(std::abs(v[6] / 20.5 - 1.0) < 0.02);
}

TEST_CASE("engines agree") {
  const std::string base = "evolve --bath dicke --N 4 --k 1 --t-end 0.2 --n-points 5 ";
  const auto a = row_values(lines(run(base + "--engine analytic").out).back());
  const auto o = row_values(lines(run(base + "--engine ode --dt 1e-4").out).back());
  const auto c = row_values(lines(run(base + "--engine collisions --dt 0.002").out).back());
  CHECK(std::abs(a[2] - o[2]) < 1e-10);
  CHECK(std::abs(a[2] - c[2]) < 0.02);
}

TEST_CASE("stochastic output is byte-identical across worker counts") {
  const std::string args =
      "evolve --bath dicke --N 3 --k 1 --engine collisions --scheme stochastic --seed 7 --trajectories 200 "
      "--t-end 0.2 --dt 0.002 --n-points 5";
  const Run one = run(args, "QOLLIDE_THREADS=1");
  const Run three = run(args, "QOLLIDE_THREADS=3");
  REQUIRE(one.code == 0);
  CHECK(one.out == three.out);
  CHECK(one.out == run(args).out);
  CHECK(one.out != run("evolve --bath dicke --N 3 --k 1 --engine collisions --scheme stochastic --seed 8 "
                       "--trajectories 200 --t-end 0.2 --dt 0.002 --n-points 5")
                       .out);
}

TEST_CASE("sweeps report slopes") {
  Run r = run("sweep --family dicke --krule half-minus-one --N 4:64:4 --fit-out fit.json --out sweep.csv");
  REQUIRE(r.code == 0);
  const json fit = json::parse(slurp(scratch() / "fit.json"));
  CHECK(fit["points"] == 16);
  CHECK(std::abs(fit["slope_T_q"].get<double>() - 2.0) < 0.1);
  CHECK(std::abs(fit["slope_t_q"].get<double>() + 2.0) < 0.1);
  const auto rows = lines(slurp(scratch() / "sweep.csv"));
  CHECK(rows.size() == 17);
  CHECK(rows[0] == "N,k,r_e,r_d,t_q,T_q");
  CHECK(rows[1].rfind("4,1,4,6,", 0) == 0);

  r = run("sweep --family product --pe 0.2 --N 2:32:2 --fit-out fit2.json");
  REQUIRE(r.code == 0);
  CHECK(std::abs(json::parse(slurp(scratch() / "fit2.json"))["slope_t_q"].get<double>() + 1.0) < 0.01);

  r = run("sweep --family thermal-hec --nbar 1 --N 2:10");
  REQUIRE(r.code == 0);
  const auto hec = lines(r.out);
  REQUIRE(hec.size() == 10);
  for (std::size_t i = 1; i < hec.size(); ++i) CHECK(row_values(hec[i])[5] == doctest::Approx(1.0 / std::log(2.0)));

  r = run("sweep --family dicke --N 4,8,12");
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).size() == 4);
}

TEST_CASE("sweep output does not depend on the worker count") {
  const std::string args = "sweep --family thermal-hec --nbar 0.5 --N 1:64";
  CHECK(run(args, "QOLLIDE_THREADS=1").out == run(args, "QOLLIDE_THREADS=4").out);
}

TEST_CASE("classify") {
  Run r = run("classify --bath dicke --N 2 --k 1");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["block_sizes"] == json::array({1, 2, 1}));
  int squeezing = 0;
  for (const auto& e : j["entries"]) {
    if (e["label"] == "squeezing") {
      ++squeezing;
      CHECK((std::set<std::string>{e["state_i"], e["state_j"]} == std::set<std::string>{"gg", "ee"}));
    }
  }
  CHECK(squeezing == 2);

  r = run("classify --bath product --N 1 --pe 0.3");
  j = json::parse(r.out);
  CHECK(j["counts"]["hec"] == 0);
  CHECK(j["counts"]["squeezing"] == 0);

  r = run("classify --bath thermal-hec --N 4 --nbar 1");
  j = json::parse(r.out);
  int ineffective_central = 0;
  for (const auto& e : j["entries"]) {
    if (e["k_i"] == 2 && e["k_j"] == 2 && e["label"] == "ineffective") ++ineffective_central;
  }
  CHECK(ineffective_central == 6);

  r = run("classify --bath product --N 7 --pe 0.3");
  CHECK_FALSE(json::parse(r.out).contains("entries"));

  r = run("classify --bath dicke --N 2 --k 1 --text");
  CHECK(r.out.rfind("P|DD|S  gg\n", 0) == 0);
}

TEST_CASE("prepare") {
  Run r = run("prepare --N 4 --nbar 1 --t-end 40 --dt 0.01 --n-points 3 --out ladder.csv");
  REQUIRE(r.code == 0);
  const auto rows = lines(slurp(scratch() / "ladder.csv"));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "t,p_0,p_1,p_2,p_3,p_4");
  CHECK(rows[1] == "0,1,0,0,0,0");
  const auto v = row_values(rows[3]);
  for (int k = 1; k < 4; ++k) CHECK(std::abs(v[k + 1] / v[k] - 0.5) < 1e-6);
  const std::string matrix = slurp(scratch() / "ladder_matrix.csv");
  CHECK(matrix.rfind("N=4,basis=excitation-sorted\n", 0) == 0);

  r = run("prepare --N 1 --nbar 0.5 --t-end 60 --n-points 2");
  REQUIRE(r.code == 0);
  CHECK(row_values(lines(r.out).back())[2] == doctest::Approx(0.25));

  r = run("prepare --N 3 --nbar 1 --t-end 0");
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).back() == "0,1,0,0,0");

  // The prepared state feeds straight back in as an explicit bath.
  r = run("coeffs --bath explicit --file ladder_matrix.csv");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["coefficients"]["r_e"].get<double>() / j["coefficients"]["r_d"].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("config files supply defaults that flags override") {
  std::ofstream(scratch() / "run.cfg") << "# dicke run\nbath = dicke\nN = 8\nk = 2\n";
  Run r = run("coeffs --config run.cfg");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["coefficients"]["r_e"].get<double>() == doctest::Approx(14.0));
  r = run("coeffs --config run.cfg --k 3");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["coefficients"]["r_e"].get<double>() == doctest::Approx(18.0));

  std::ofstream(scratch() / "bad.cfg") << "bath = dicke\nwidth = 3\n";
  CHECK(run("coeffs --config bad.cfg --N 4 --k 1").code == 2);
  CHECK(run("coeffs --config missing.cfg").code == 2);
}

TEST_CASE("figures match the archived datasets byte for byte") {
  const Run r = run("figures --dir figs");
  REQUIRE(r.code == 0);
  for (const char* name : {"fig4_decay.csv", "fig5_temperature.csv"}) {
    const std::string produced = slurp(scratch() / "figs" / name);
    const std::string golden = slurp(fs::path(QOLLIDE_GOLDEN_DIR) / name);
    CHECK(!golden.empty());
    CHECK(produced == golden);
    CHECK(produced.find('\r') == std::string::npos);
  }
  CHECK(run("figures").code == 2);
  CHECK(run("figures --dir figs --n-points 1").code == 2);
}

TEST_CASE("cleanup") { fs::remove_all(scratch()); }
