// Copyright 2026 The dicke-critic Authors
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

// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria (capped at 1).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dicke/baths.hpp"
#include "dicke/cli/commands.hpp"
#include "dicke/critical.hpp"
#include "dicke/exactn.hpp"
#include "dicke/lindblad.hpp"
#include "dicke/sweep.hpp"

using namespace dicke;
using baths::GcMode;
using cplx = std::complex<double>;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double gc_of(const baths::BathSpec& b, double wz, const CavityParams& cav, GcMode mode = GcMode::SelfConsistent) {
  const auto r = baths::closed_form_gc(b, wz, cav, mode);
  return r.has_transition() ? r.g_c() : HUGE_VAL;
}

Verdict ac1() {
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double wz = 0.3 + 0.37 * k;
    const double w0 = 2.5 - 0.21 * k;
    worst = std::max(worst, rel(gc_of(baths::Dephasing{0.0, -0.5}, wz, {w0, 0.0}), 0.5 * std::sqrt(wz * w0)));
  }
  return {worst < 1e-12, "max rel err " + fmt("%.2e", worst) + " over 10 (omega_z, omega0) points"};
}

Verdict ac2() {
  double worst = 0.0;
  const std::vector<baths::BathSpec> set = {baths::Dephasing{0.3, -0.4}, baths::Thermal{0.2, 0.7},
                                            baths::Generalized{0.5, 0.4}};
  for (const auto& b : set) {
    for (double w0 : {0.5, 1.0, 2.3}) {
      const double base = gc_of(b, 1.1, {w0, 0.0});
      for (double kappa : {0.1, 0.5, 1.0, 2.0, 7.0}) {
        const double ratio = gc_of(b, 1.1, {w0, kappa}) / base;
        worst = std::max(worst, rel(ratio, std::sqrt(1.0 + kappa * kappa / (w0 * w0))));
      }
    }
  }
  return {worst < 1e-12, "max rel err " + fmt("%.2e", worst) + " (3 baths x 3 omega0 x 5 kappa)"};
}

Verdict ac3() {
  double worst = 0.0;
  for (double g : {0.05, 0.2, 0.5, 1.0, 3.0}) {
    for (double wz : {0.1, 0.5, 1.0, 2.0, 4.0}) {
      const double sz = -0.3;  // both precession modes carry weight
      const auto model = baths::spin_model(baths::Dephasing{g, sz}, wz);
      const auto s = lindblad::two_time_sx(model, lindblad::steady_state(model).rho, 12.0 / g,
                                           0.02 / std::max(g, wz));
      for (std::size_t k = 0; k < s.values.size(); ++k) {
        const double t = s.time(k);
        const cplx exact =
            0.25 * std::exp(-g * t) * (std::cos(wz * t) - 2.0 * cplx(0.0, 1.0) * sz * std::sin(wz * t));
        worst = std::max(worst, std::abs(s.values[k] - exact));
      }
    }
  }
  return {worst < 1e-10, "max abs err " + fmt("%.2e", worst) + " on 5x5 (gamma_phi, omega_z)"};
}

Verdict ac4() {
  double worst = 0.0;
  const std::vector<baths::BathSpec> set = {
      baths::Dephasing{0.1, -0.5},  baths::Dephasing{0.7, -0.2}, baths::Thermal{0.1, 0.3},
      baths::Thermal{0.5, 2.0},     baths::Generalized{0.2, 0.0}, baths::Generalized{0.5, 0.5},
      baths::Generalized{1.0, 0.8}};
  for (const auto& b : set) {
    for (double wz : {0.6, 1.0, 1.7}) {
      const critical::PointSetup p{b, wz, {1.0, 0.3}};
      const auto numeric = critical::evaluate_point(p, GcMode::SelfConsistent, critical::ChiRoute::Numeric);
      worst = std::max(worst, rel(numeric.chi0, baths::closed_form_chi0(b, wz, GcMode::SelfConsistent)));
    }
  }
  return {worst < 1e-8, "max rel err " + fmt("%.2e", worst) + " (dephasing, thermal, generalized)"};
}

Verdict ac5() {
  // gamma_T and kappa far below every other scale
  const double gamma = 1e-12;
  double worst = 0.0;
  for (double wz : {0.5, 1.0, 2.0}) {
    for (double w0 : {0.7, 1.0, 1.5}) {
      const double g = 0.8 * std::sqrt(wz * w0);  // above the zero-temperature threshold
      auto gc = [&](double T) { return gc_of(baths::Thermal{gamma, T}, wz, {w0, 0.0}); };
      double lo = 1e-3, hi = 1e-3;
      while (gc(hi) < g) hi *= 2.0;
      for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (gc(mid) < g ? lo : hi) = mid;
      }
      const double T = 0.5 * (lo + hi);
      worst = std::max(worst, rel(std::tanh(wz / (2.0 * T)), wz * w0 / (4.0 * g * g)));
    }
  }
  return {worst < 1e-10, "max rel err in tanh(omega_z/2T) " + fmt("%.2e", worst) + " over 9 points"};
}

Verdict ac6() {
  critical::SweepPlan plan;
  plan.bath = baths::Thermal{0.2, 0.1};
  plan.omega_z = 1.0;
  plan.cavity = {1.0, 0.5};
  std::vector<double> temps;
  for (int k = 0; k < 50; ++k) temps.push_back(0.02 + 0.1 * k);
  plan.axes.emplace_back(critical::SweepAxis::Temperature, temps);
  const auto rows = critical::sweep(plan);
  int bad = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (!(rows[k].result.g_c() > rows[k - 1].result.g_c())) ++bad;
  }
  return {bad == 0 && rows.size() == 50, std::to_string(bad) + " non-increasing steps over 50 temperatures in [0.02, 4.92]"};
}

Verdict ac7() {
  const double wz = 1.0;
  const CavityParams cav{1.0, 0.0};
  auto gc = [&](double t) { return gc_of(baths::Generalized{0.5, t}, wz, cav); };
  const double h = 1e-5;
  const double slope = (gc(0.01 + h) - gc(0.01 - h)) / (2.0 * h);
  std::vector<double> curve;
  for (int k = 0; k <= 99; ++k) curve.push_back(gc(0.01 * k));
  const auto argmin = std::min_element(curve.begin(), curve.end()) - curve.begin();
  const bool interior = argmin > 0 && argmin < static_cast<long>(curve.size()) - 1;
  const double ratio = gc(0.999) / gc(0.0);
  const double endpoint = gc(0.0) / critical::polarized_gc(wz, cav);
  const bool ok_slope = slope < 0.0;
  const bool ok_ratio = ratio > 50.0;
  const bool ok_end = rel(endpoint, std::sqrt(1.25)) < 1e-10;
  std::string d = "slope(0.01) " + fmt("%.3e", slope) + (ok_slope ? " ok" : " NOT<0") + "; interior min " +
                  (interior ? "ok" : "absent") + "; g_c(0.999)/g_c(0) " + fmt("%.2f", ratio) +
                  (ok_ratio ? " ok" : " NOT>50") + "; g_c(0)/g_0 - sqrt(1.25) " +
                  fmt("%.1e", endpoint - std::sqrt(1.25)) + (ok_end ? " ok" : " bad");
  return {ok_slope && interior && ok_ratio && ok_end, d};
}

Verdict ac8() {
  bool ok = true;
  for (GcMode mode : {GcMode::SelfConsistent, GcMode::PaperLiteral}) {
    for (const baths::BathSpec& b : {baths::BathSpec{baths::Dephasing{0.3, 0.0}},
                                     baths::BathSpec{baths::Generalized{0.4, 1.0}}}) {
      const auto r = baths::closed_form_gc(b, 1.0, {1.0, 0.5}, mode);
      ok = ok && !r.has_transition() && r.reason() == critical::NoTransitionReason::Unpolarized;
      const auto n = critical::evaluate_point({b, 1.0, {1.0, 0.5}}, mode, critical::ChiRoute::Numeric);
      ok = ok && !n.result.has_transition() && n.result.reason() == critical::NoTransitionReason::Unpolarized;
    }
  }
  return {ok, "dephasing sz=0 and generalized t=1, both modes, closed-form and numeric routes"};
}

Verdict ac9() {
  double worst = 0.0;
  int missing = 0;
  for (const auto& c : cli::oracle_suite()) {
    const auto row = cli::run_oracle_case(c, GcMode::SelfConsistent);
    if (!row.g_star) ++missing;
    else worst = std::max(worst, row.deviation);
  }
  return {missing == 0 && worst < 1e-6, "max |g*-g_c|/g_c " + fmt("%.2e", worst) + " over " +
                                            std::to_string(cli::oracle_suite().size()) + " cases"};
}

Verdict ac10() {
  const CavityParams cav{1.0, 0.5};
  double corr_err = 0.0;
  for (const baths::BathSpec& b : {baths::BathSpec{baths::Dephasing{0.3, -0.4}},
                                   baths::BathSpec{baths::Thermal{0.2, 0.6}},
                                   baths::BathSpec{baths::Generalized{0.3, 0.4}}}) {
    const auto m = baths::spin_model(b, 1.0);
    const auto single = lindblad::two_time_sx(m, lindblad::steady_state(m).rho, 40.0, 0.01);
    exactn::FullSystemSpec s;
    s.n_atoms = 1;
    s.n_photon = 4;
    s.g = 0.0;
    s.cavity = cav;
    s.model = m;
    const auto full = exactn::full_regression_sx(s, 40.0, 0.01);
    for (std::size_t k = 0; k < single.values.size() && k < full.values.size(); ++k) {
      corr_err = std::max(corr_err, std::abs(single.values[k] - full.values[k]));
    }
    if (single.values.size() != full.values.size()) corr_err = HUGE_VAL;
  }

  const baths::Generalized bath{0.2, 0.0};
  const double gc = gc_of(bath, 1.0, cav);
  exactn::FullSystemSpec s;
  s.n_atoms = 3;
  s.n_photon = 10;
  s.cavity = cav;
  s.model = baths::spin_model(bath, 1.0);
  s.g = 0.5 * gc;
  const auto below = exactn::cutoff_check(s);
  s.g = 1.5 * gc;
  const auto above = exactn::cutoff_check(s);
  const double ratio = above.refined.photon_number / below.refined.photon_number;
  const double drift = std::max(below.relative_change, above.relative_change);
  const bool ok = corr_err < 1e-10 && ratio > 5.0 && drift < 0.01;
  return {ok, "N=1 correlator err " + fmt("%.2e", corr_err) + "; N=3 n(1.5g_c)/n(0.5g_c) " +
                  fmt("%.2f", ratio) + "; cutoff 10->14 change " + fmt("%.2e", drift)};
}

Verdict ac11() {
  // the two modes coincide away from the generalized bath
  double same = 0.0;
  for (const baths::BathSpec& b : {baths::BathSpec{baths::Dephasing{0.4, -0.3}},
                                   baths::BathSpec{baths::Thermal{0.3, 0.9}},
                                   baths::BathSpec{baths::Dephasing{1.5, -0.5}},
                                   baths::BathSpec{baths::Thermal{2.0, 0.2}}}) {
    same = std::max(same, rel(baths::closed_form_chi0(b, 1.0, GcMode::PaperLiteral),
                              baths::closed_form_chi0(b, 1.0, GcMode::SelfConsistent)));
  }
  // strong generalized damping at intermediate t
  double literal_min = HUGE_VAL, consistent_max = 0.0;
  const CavityParams cav{1.0, 0.5};
  for (const auto& [gt, t] : std::vector<std::pair<double, double>>{{2.5, 0.3}, {3.0, 0.4}, {4.0, 0.5}, {2.0, 0.2}}) {
    const cli::OracleCase c{baths::Generalized{gt, t}, 1.0, cav};
    literal_min = std::min(literal_min, cli::run_oracle_case(c, GcMode::PaperLiteral).deviation);
    consistent_max = std::max(consistent_max, cli::run_oracle_case(c, GcMode::SelfConsistent).deviation);
  }
  const bool ok = same == 0.0 && literal_min > 1e-3 && consistent_max < 1e-6;
  return {ok, "non-generalized mode difference " + fmt("%.1e", same) + "; generalized deviation from g*: literal >= " +
                  fmt("%.2e", literal_min) + ", self-consistent <= " + fmt("%.2e", consistent_max)};
}

Verdict ac12() {
  namespace fs = std::filesystem;
  const char* env = std::getenv("DICKE_CRITIC_TMP");
  const fs::path dir = env ? fs::path(env) : fs::temp_directory_path();
  auto run_to_file = [&](const std::string& name, std::vector<std::string> args) {
    const std::string path = (dir / name).string();
    args.insert(args.begin(), "dicke-critic");
    args.push_back("--output");
    args.push_back(path);
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const std::vector<std::vector<std::string>> jobs = {
      {"sweep", "--bath", "generalized(gamma=0.5,t=0)", "--sweep", "t", "--grid", "0:0.99:0.01", "--kappa", "0.2"},
      {"sweep", "--bath", "thermal(gamma=0.1,T=0.1)", "--sweep", "T", "--grid", "0.1:3:0.1", "--route", "numeric"},
      {"corr", "--bath", "thermal(gamma=0.2,T=0.5)"},
      {"spectrum", "--bath", "dephasing(gamma=0.2,sz=-0.5)", "--g", "0.3", "--kappa", "0.4"},
      {"oracle"}};
  int differing = 0;
  std::size_t bytes = 0;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const auto a = run_to_file("acceptance_a_" + std::to_string(j) + ".csv", jobs[j]);
    const auto b = run_to_file("acceptance_b_" + std::to_string(j) + ".csv", jobs[j]);
    if (a.empty() || a != b) ++differing;
    bytes += a.size();
  }
  return {differing == 0, std::to_string(jobs.size() - differing) + "/" + std::to_string(jobs.size()) +
                              " commands byte-identical across two runs (" + std::to_string(bytes) + " bytes)"};
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;  ///< 0: no runtime limit
  std::function<Verdict()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> all = {
      {1, "equilibrium limit", 1.0, ac1},
      {2, "cavity-decay scaling", 0.0, ac2},
      {3, "correlator equivalence", 5.0, ac3},
      {4, "self-energy quadrature", 10.0, ac4},
      {5, "thermal equilibrium transition", 0.0, ac5},
      {6, "thermal monotonicity", 0.0, ac6},
      {7, "generalized-bath shape", 0.0, ac7},
      {8, "no-transition classification", 0.0, ac8},
      {9, "mean-field oracle agreement", 60.0, ac9},
      {10, "exact-N oracle", 120.0, ac10},
      {11, "literal vs self-consistent modes", 0.0, ac11},
      {12, "determinism", 0.0, ac12},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0.0 && secs > c.budget_s) {
      v.pass = false;
      v.detail += "; over runtime budget " + fmt("%.0f s", c.budget_s);
    }
    if (!v.pass) ++failed;
    std::printf("AC%-2d %s  %s: %s (%.2f s)\n", c.id, v.pass ? "PASS" : "FAIL", c.title, v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
