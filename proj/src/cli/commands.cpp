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

#include "dicke/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dicke/meanfield.hpp"
#include "dicke/response.hpp"

#ifndef DICKE_CRITIC_VERSION
#define DICKE_CRITIC_VERSION "0.0.0"
#endif

namespace dicke::cli {

using qops::cplx;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kMaxBracketDoublings = 40;
constexpr double kOracleBisectionTol = 1e-10;

// Frequency unit of the output.
double unit(const RunConfig& cfg) { return cfg.raw_units ? 1.0 : std::abs(cfg.omega_z); }

std::vector<std::pair<std::string, std::string>> base_meta(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> meta;
  meta.emplace_back("command", to_string(cfg.command));
  if (cfg.bath) meta.emplace_back("bath", baths::format_bath(*cfg.bath));
  meta.emplace_back("omega_z", format_double(cfg.omega_z));
  meta.emplace_back("omega0", format_double(cfg.cavity.omega0));
  meta.emplace_back("kappa", format_double(cfg.cavity.kappa));
  meta.emplace_back("mode", baths::to_string(cfg.mode));
  meta.emplace_back("route", cfg.route == critical::ChiRoute::Numeric ? "numeric" : "closed-form");
  meta.emplace_back("units", cfg.raw_units ? "raw" : "omega_z");
  return meta;
}

// Frequency-like sweep axes are rescaled with the output unit.
bool is_frequency(critical::SweepAxis axis) {
  return axis != critical::SweepAxis::Sz && axis != critical::SweepAxis::Mixing;
}

std::string status_of(const critical::SweepRow& row, double divergence_ratio) {
  if (!row.result.has_transition()) return critical::to_string(row.result.reason());
  const auto r = row.ratio();
  if (r && *r > divergence_ratio) return "diverging";
  return "ok";
}

std::vector<Cell> gc_cells(const critical::SweepRow& row, const RunConfig& cfg) {
  const double u = unit(cfg);
  const auto gc = row.result.coupling();
  const auto ratio = row.ratio();
  return {row.chi0 * u, gc ? *gc / u : kNaN, ratio ? *ratio : kNaN,
          status_of(row, cfg.divergence_ratio)};
}

std::string csv_field(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_double(*d);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

lindblad::TimeGrid corr_grid(const RunConfig& cfg, const lindblad::SpinModel& model) {
  lindblad::TimeGrid grid = lindblad::default_grid(model);
  if (cfg.tmax) grid.tmax = *cfg.tmax;
  if (cfg.dt) grid.dt = *cfg.dt;
  return grid;
}

std::vector<double> spectrum_grid(const RunConfig& cfg) {
  if (cfg.omega_grid) return *cfg.omega_grid;
  const double w = std::max(std::abs(cfg.cavity.omega0), std::abs(cfg.omega_z));
  const int n = 601;
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = -3.0 * w + 6.0 * w * k / (n - 1);
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const Table& table) {
  out << "# dicke-critic v" << DICKE_CRITIC_VERSION << '\n';
  if (!table.meta.empty()) {
    out << '#';
    for (const auto& [k, v] : table.meta) out << ' ' << k << '=' << v;
    out << '\n';
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["generator"] = std::string("dicke-critic v") + DICKE_CRITIC_VERSION;
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : table.meta) meta[k] = v;
  doc["parameters"] = meta;
  doc["columns"] = table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r = ordered_json::array();
    for (const auto& c : row) {
      if (const double* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d)) r.push_back(*d);
        else r.push_back(nullptr);
      } else {
        r.push_back(std::get<std::string>(c));
      }
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

Report cmd_gc(const RunConfig& cfg) {
  const critical::PointSetup setup{*cfg.bath, cfg.omega_z, cfg.cavity};
  const auto row = critical::evaluate_point(setup, cfg.mode, cfg.route);

  Report rep;
  rep.table.meta = base_meta(cfg);
  rep.table.columns = {"chi0", "g_c", "g_c_over_g0", "status"};
  rep.table.rows.push_back(gc_cells(row, cfg));
  if (!row.result.has_transition()) {
    rep.exit_code = kExitNoTransition;
    rep.notes.push_back(std::string("no transition: ") + critical::to_string(row.result.reason()));
  }
  return rep;
}

Report cmd_sweep(const RunConfig& cfg) {
  critical::SweepPlan plan;
  plan.bath = *cfg.bath;
  plan.omega_z = cfg.omega_z;
  plan.cavity = cfg.cavity;
  plan.mode = cfg.mode;
  plan.route = cfg.route;
  plan.threads = cfg.threads;
  plan.axes.emplace_back(*cfg.sweep_axis, *cfg.grid);
  if (cfg.sweep_axis2) plan.axes.emplace_back(*cfg.sweep_axis2, *cfg.grid2);

  const auto rows = critical::sweep(plan);
  const double u = unit(cfg);

  Report rep;
  rep.table.meta = base_meta(cfg);
  for (const auto& [axis, grid] : plan.axes) rep.table.columns.emplace_back(critical::to_string(axis));
  for (const char* c : {"chi0", "g_c", "g_c_over_g0", "status"}) rep.table.columns.emplace_back(c);
  for (const auto& row : rows) {
    std::vector<Cell> cells;
    for (std::size_t a = 0; a < plan.axes.size(); ++a) {
      cells.emplace_back(is_frequency(plan.axes[a].first) ? row.values[a] / u : row.values[a]);
    }
    for (auto& c : gc_cells(row, cfg)) cells.push_back(std::move(c));
    rep.table.rows.push_back(std::move(cells));
  }
  // a few empty points are normal along a sweep; all of them is worth a distinct code
  const bool none = std::none_of(rows.begin(), rows.end(),
                                 [](const critical::SweepRow& r) { return r.result.has_transition(); });
  if (none) {
    rep.exit_code = kExitNoTransition;
    rep.notes.emplace_back("no transition at any grid point");
  }
  return rep;
}

Report cmd_corr(const RunConfig& cfg) {
  const auto model = baths::spin_model(*cfg.bath, cfg.omega_z);
  const auto steady = lindblad::steady_state(model);
  const auto grid = corr_grid(cfg, model);
  const auto series = lindblad::two_time_sx(model, steady.rho, grid.tmax, grid.dt);
  const double u = unit(cfg);

  Report rep;
  rep.table.meta = base_meta(cfg);
  rep.table.meta.emplace_back("dt", format_double(series.dt * u));
  rep.table.columns = {"t", "re_sx", "im_sx"};
  rep.table.rows.reserve(series.values.size());
  for (std::size_t k = 0; k < series.values.size(); ++k) {
    rep.table.rows.push_back({series.time(k) * u, series.values[k].real(), series.values[k].imag()});
  }
  return rep;
}

Report cmd_spectrum(const RunConfig& cfg) {
  const auto omegas = spectrum_grid(cfg);
  std::vector<cplx> chi(omegas.size());
  if (cfg.route == critical::ChiRoute::Numeric) {
    const auto series = lindblad::two_time_sx(baths::spin_model(*cfg.bath, cfg.omega_z));
    const auto s = response::susceptibility(series, omegas);
    chi = s.chi;
  } else {
    const auto tr = response::transverse_response(*cfg.bath, cfg.omega_z);
    for (std::size_t k = 0; k < omegas.size(); ++k) chi[k] = tr(cplx(omegas[k], 0.0));
  }
  const double u = unit(cfg);

  Report rep;
  rep.table.meta = base_meta(cfg);
  rep.table.meta.emplace_back("g", format_double(cfg.g / u));
  rep.table.columns = {"omega", "re_det", "im_det", "re_chi", "im_chi"};
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    const auto s = response::cavity_det(cplx(omegas[k], 0.0), cfg.cavity, cfg.g, chi[k]);
    rep.table.rows.push_back({omegas[k] / u, s.det.real() / (u * u), s.det.imag() / (u * u),
                              chi[k].real() * u, chi[k].imag() * u});
  }
  return rep;
}

const std::vector<OracleCase>& oracle_suite() {
  static const std::vector<OracleCase> suite = {
      {baths::Dephasing{0.1, -0.5}, 1.0, {1.0, 0.2}},
      {baths::Dephasing{0.5, -0.3}, 1.5, {0.8, 0.5}},
      {baths::Dephasing{1.0, -0.5}, 0.7, {1.2, 1.0}},
      {baths::Thermal{0.1, 0.2}, 1.0, {1.0, 0.2}},
      {baths::Thermal{0.3, 0.8}, 1.2, {1.0, 0.5}},
      {baths::Thermal{0.6, 1.5}, 0.8, {1.3, 0.1}},
      {baths::Generalized{0.2, 0.0}, 1.0, {1.0, 0.3}},
      {baths::Generalized{0.5, 0.3}, 1.0, {1.0, 0.5}},
      {baths::Generalized{0.4, 0.7}, 1.3, {0.9, 0.2}},
  };
  return suite;
}

OracleRow run_oracle_case(const OracleCase& setup, baths::GcMode mode) {
  OracleRow row;
  row.setup = setup;
  row.closed_form = baths::closed_form_gc(setup.bath, setup.omega_z, setup.cavity, mode);
  const auto model = baths::spin_model(setup.bath, setup.omega_z);

  double lo = 0.0;
  double hi = critical::polarized_gc(setup.omega_z, setup.cavity);
  auto th = meanfield::stability_threshold(setup.cavity, model, lo, hi, kOracleBisectionTol);
  for (int k = 0; !th.found() && th.growth_lo <= 0.0 && k < kMaxBracketDoublings; ++k) {
    lo = hi;
    hi *= 2.0;
    th = meanfield::stability_threshold(setup.cavity, model, lo, hi, kOracleBisectionTol);
  }
  row.g_star = th.g_star;

  const auto gc = row.closed_form.coupling();
  row.deviation = (gc && row.g_star) ? std::abs(*row.g_star - *gc) / *gc : kNaN;
  return row;
}

Report cmd_oracle(const RunConfig& cfg) {
  std::vector<OracleCase> cases;
  if (cfg.bath) {
    cases.push_back({*cfg.bath, cfg.omega_z, cfg.cavity});
  } else {
    cases = oracle_suite();
  }

  Report rep;
  rep.table.meta = {{"command", "oracle"},
                    {"mode", baths::to_string(cfg.mode)},
                    {"tol", format_double(cfg.tol)},
                    {"units", cfg.raw_units ? "raw" : "omega_z"}};
  rep.table.columns = {"bath", "omega_z", "omega0", "kappa", "g_c", "g_star", "deviation", "status"};
  for (const auto& c : cases) {
    const auto row = run_oracle_case(c, cfg.mode);
    const double u = cfg.raw_units ? 1.0 : c.omega_z;
    const auto gc = row.closed_form.coupling();
    std::string status;
    if (!gc && !row.g_star) {
      status = "agree";
    } else if (!gc || !row.g_star) {
      status = "disagree";
    } else {
      status = row.deviation <= cfg.tol ? "agree" : "disagree";
    }
    if (status == "disagree") rep.exit_code = kExitOracle;
    rep.table.rows.push_back({baths::format_bath(c.bath), c.omega_z / u, c.cavity.omega0 / u,
                              c.cavity.kappa / u, gc ? *gc / u : kNaN,
                              row.g_star ? *row.g_star / u : kNaN, row.deviation, status});
  }
  if (rep.exit_code == kExitOracle) rep.notes.emplace_back("oracle disagreement above tolerance");
  return rep;
}

namespace {

std::string flag_name(std::string_view key) {
  std::string out = "--";
  for (char c : key) out += c == '_' ? '-' : c;
  return out;
}

const char* key_help(std::string_view key) {
  static const std::map<std::string_view, const char*> text = {
      {"bath", "dephasing(gamma=,sz=) | thermal(gamma=,T=) | generalized(gamma=,t=)"},
      {"omega_z", "atomic splitting (default 1)"},
      {"omega0", "cavity detuning (default 1)"},
      {"kappa", "cavity decay (default 0)"},
      {"mode", "self-consistent | paper-literal"},
      {"route", "closed-form | numeric"},
      {"sweep", "axis: gamma, sz, T, t, omega_z, omega0, kappa"},
      {"grid", "a,b,c or start:stop:step"},
      {"sweep2", "second axis (varies fastest)"},
      {"grid2", "grid for the second axis"},
      {"format", "csv | json"},
      {"output", "write here instead of stdout"},
      {"g", "coupling for spectrum"},
      {"tmax", "correlator window"},
      {"dt", "correlator step"},
      {"omega_grid", "spectrum frequencies"},
      {"tol", "oracle relative tolerance (default 1e-5)"},
      {"divergence_ratio", "g_c/g_0 flagged as diverging (default 5)"},
      {"threads", "sweep workers (0 = auto)"},
  };
  const auto it = text.find(key);
  return it == text.end() ? "" : it->second;
}

Report dispatch(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Gc: return cmd_gc(cfg);
    case Command::Sweep: return cmd_sweep(cfg);
    case Command::Corr: return cmd_corr(cfg);
    case Command::Spectrum: return cmd_spectrum(cfg);
    case Command::Oracle: return cmd_oracle(cfg);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown command");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Critical coupling of the dissipative Dicke model", "dicke-critic"};
  app.set_version_flag("--version", std::string("dicke-critic v") + DICKE_CRITIC_VERSION);
  app.require_subcommand(1);

  const std::vector<std::pair<Command, const char*>> commands = {
      {Command::Gc, "critical coupling at one parameter point"},
      {Command::Sweep, "critical coupling over one or two parameter grids"},
      {Command::Corr, "steady-state correlator S_x(t)"},
      {Command::Spectrum, "cavity determinant and spin susceptibility on a frequency grid"},
      {Command::Oracle, "closed-form g_c against the mean-field instability threshold"},
  };

  std::map<std::string, std::string> values;
  std::string config_path;
  bool raw_units = false;
  std::map<Command, CLI::App*> subs;
  for (const auto& [cmd, help] : commands) {
    CLI::App* sub = app.add_subcommand(to_string(cmd), help);
    sub->add_option("--config", config_path, "key = value settings file");
    for (std::string_view key : known_keys()) {
      if (key == "raw_units") continue;
      sub->add_option(flag_name(key), values[std::string(key)], key_help(key));
    }
    sub->add_flag("--raw-units", raw_units, "report frequencies unscaled");
    subs[cmd] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  RunConfig cfg;
  for (const auto& [cmd, sub] : subs) {
    if (sub->parsed()) cfg.command = cmd;
  }
  CLI::App* sub = subs[cfg.command];

  try {
    if (!config_path.empty()) {
      try {
        for (const auto& s : read_settings_file(config_path)) apply(cfg, s);
      } catch (const ParseError& e) {
        err << "dicke-critic: " << config_path << ':' << e.what() << '\n';
        return kExitUsage;
      }
    }
    for (std::string_view key : known_keys()) {
      if (key == "raw_units") continue;
      if (sub->get_option(flag_name(key))->count() == 0) continue;
      try {
        apply(cfg, Setting{std::string(key), values[std::string(key)], 0, 1});
      } catch (const ParseError& e) {
        err << "dicke-critic: " << flag_name(key) << ": column " << e.column() << ": "
            << e.message() << '\n';
        return kExitUsage;
      }
    }
    if (raw_units) cfg.raw_units = true;
    finalize(cfg);
  } catch (const Error& e) {
    err << "dicke-critic: " << e.what() << '\n';
    return kExitUsage;
  }

  Report rep;
  try {
    rep = dispatch(cfg);
  } catch (const Error& e) {
    err << "dicke-critic: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return kExitUsage;
  }

  std::ostringstream buf;
  if (cfg.format == Format::Json) {
    write_json(buf, rep.table);
  } else {
    write_csv(buf, rep.table);
  }
  if (cfg.output) {
    std::ofstream file(*cfg.output, std::ios::binary);
    if (!file || !(file << buf.str()) || !file.flush()) {
      err << "dicke-critic: cannot write '" << *cfg.output << "'\n";
      return kExitUsage;
    }
  } else {
    out << buf.str();
  }
  for (const auto& note : rep.notes) err << "dicke-critic: " << note << '\n';
  return rep.exit_code;
}

}  // namespace dicke::cli
