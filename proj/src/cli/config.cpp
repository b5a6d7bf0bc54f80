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

#include "dicke/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

namespace dicke::cli {

namespace {

constexpr std::size_t kMaxGridPoints = 1000000;

std::string_view trim(std::string_view s, std::size_t* lead = nullptr) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    if (lead) *lead = s.size();
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  if (lead) *lead = b;
  return s.substr(b, e - b + 1);
}

std::string normalize_key(std::string_view key) {
  std::string out(key);
  std::replace(out.begin(), out.end(), '-', '_');
  return out;
}

bool parse_bool(std::string_view text, int line, int column) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ParseError(line, column, "expected true or false, got '" + std::string(text) + "'");
}

critical::SweepAxis parse_sweep_axis(std::string_view text, int line, int column) {
  try {
    return critical::parse_axis(text);
  } catch (const Error& e) {
    throw ParseError(line, column, e.what());
  }
}

}  // namespace

const char* to_string(Command command) noexcept {
  switch (command) {
    case Command::Gc: return "gc";
    case Command::Sweep: return "sweep";
    case Command::Corr: return "corr";
    case Command::Spectrum: return "spectrum";
    case Command::Oracle: return "oracle";
  }
  return "?";
}

const std::vector<std::string_view>& known_keys() {
  static const std::vector<std::string_view> keys = {
      "bath",  "omega_z", "omega0", "kappa",      "mode",      "route",
      "sweep", "grid",    "sweep2", "grid2",      "format",    "output",
      "raw_units", "g",   "tmax",   "dt",         "omega_grid", "tol",
      "divergence_ratio", "threads"};
  return keys;
}

std::vector<Setting> read_settings(std::istream& in) {
  std::vector<Setting> out;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::size_t lead = 0;
    if (trim(line, &lead).empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, static_cast<int>(lead) + 1, "expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(line_no, static_cast<int>(lead) + 1, "missing key");

    std::size_t vlead = 0;
    const std::string_view value = trim(line.substr(eq + 1), &vlead);
    const int vcol = static_cast<int>(eq + 1 + vlead) + 1;
    if (value.empty()) throw ParseError(line_no, vcol, "missing value for '" + std::string(key) + "'");

    const std::string nkey = normalize_key(key);
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), nkey) == keys.end()) {
      throw ParseError(line_no, static_cast<int>(lead) + 1, "unknown key '" + std::string(key) + "'");
    }
    out.push_back(Setting{nkey, std::string(value), line_no, vcol});
  }
  return out;
}

std::vector<Setting> read_settings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config file '" + path + "'");
  return read_settings(in);
}

double parse_number(std::string_view text, int line, int column) {
  std::size_t lead = 0;
  const std::string_view t = trim(text, &lead);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParseError(line, column + static_cast<int>(lead),
                     "expected a number, got '" + std::string(t) + "'");
  }
  if (!std::isfinite(v)) {
    throw ParseError(line, column + static_cast<int>(lead), "number must be finite");
  }
  return v;
}

std::vector<double> parse_grid(std::string_view text, int line, int column) {
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
      throw ParseError(line, column, "range grid must be start:stop:step");
    }
    const double start = parse_number(text.substr(0, c1), line, column);
    const double stop = parse_number(text.substr(c1 + 1, c2 - c1 - 1), line,
                                     column + static_cast<int>(c1) + 1);
    const double step = parse_number(text.substr(c2 + 1), line, column + static_cast<int>(c2) + 1);
    if (step == 0.0 || (stop - start) * step < 0.0) {
      throw ParseError(line, column + static_cast<int>(c2) + 1, "step does not reach stop");
    }
    const double span = (stop - start) / step;
    if (span + 1.0 > static_cast<double>(kMaxGridPoints)) {
      throw ParseError(line, column, "grid has too many points");
    }
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.push_back(start + static_cast<double>(k) * step);
    return out;
  }

  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    out.push_back(parse_number(item, line, column + static_cast<int>(pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

void apply(RunConfig& cfg, const Setting& s) {
  const std::string key = normalize_key(s.key);
  const int ln = s.line;
  const int col = s.column;
  const std::string_view v = s.value;
  auto num = [&] { return parse_number(v, ln, col); };

  if (key == "bath") {
    try {
      cfg.bath = baths::parse_bath(v);
    } catch (const ParseError& e) {
      throw ParseError(ln, col + e.column() - 1, e.message());
    } catch (const Error& e) {
      throw ParseError(ln, col, e.what());
    }
  } else if (key == "omega_z") {
    cfg.omega_z = num();
  } else if (key == "omega0") {
    cfg.cavity.omega0 = num();
  } else if (key == "kappa") {
    cfg.cavity.kappa = num();
  } else if (key == "mode") {
    try {
      cfg.mode = baths::parse_mode(v);
    } catch (const Error& e) {
      throw ParseError(ln, col, e.what());
    }
  } else if (key == "route") {
    if (v == "closed-form" || v == "closed_form") {
      cfg.route = critical::ChiRoute::ClosedForm;
    } else if (v == "numeric") {
      cfg.route = critical::ChiRoute::Numeric;
    } else {
      throw ParseError(ln, col, "route must be closed-form or numeric");
    }
  } else if (key == "sweep") {
    cfg.sweep_axis = parse_sweep_axis(v, ln, col);
  } else if (key == "grid") {
    cfg.grid = parse_grid(v, ln, col);
  } else if (key == "sweep2") {
    cfg.sweep_axis2 = parse_sweep_axis(v, ln, col);
  } else if (key == "grid2") {
    cfg.grid2 = parse_grid(v, ln, col);
  } else if (key == "format") {
    if (v == "csv") {
      cfg.format = Format::Csv;
    } else if (v == "json") {
      cfg.format = Format::Json;
    } else {
      throw ParseError(ln, col, "format must be csv or json");
    }
  } else if (key == "output") {
    cfg.output = std::string(v);
  } else if (key == "raw_units") {
    cfg.raw_units = parse_bool(v, ln, col);
  } else if (key == "g") {
    cfg.g = num();
  } else if (key == "tmax") {
    cfg.tmax = num();
  } else if (key == "dt") {
    cfg.dt = num();
  } else if (key == "omega_grid") {
    cfg.omega_grid = parse_grid(v, ln, col);
  } else if (key == "tol") {
    cfg.tol = num();
  } else if (key == "divergence_ratio") {
    cfg.divergence_ratio = num();
  } else if (key == "threads") {
    const double n = num();
    if (n < 0.0 || n != std::floor(n) || n > 4096.0) {
      throw ParseError(ln, col, "threads must be a non-negative integer");
    }
    cfg.threads = static_cast<unsigned>(n);
  } else {
    throw ParseError(ln, 1, "unknown key '" + s.key + "'");
  }
}

void finalize(RunConfig& cfg) {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); };

  if (cfg.sweep_axis.has_value() != cfg.grid.has_value()) fail("sweep and grid go together");
  if (cfg.sweep_axis2.has_value() != cfg.grid2.has_value()) fail("sweep2 and grid2 go together");
  if (cfg.sweep_axis2 && !cfg.sweep_axis) fail("sweep2 needs sweep");
  if (cfg.sweep_axis2 && *cfg.sweep_axis2 == *cfg.sweep_axis) fail("sweep axes must differ");
  if (cfg.grid && cfg.grid->empty()) fail("grid is empty");

  const bool sweeping = cfg.sweep_axis.has_value();
  if (cfg.command == Command::Sweep && !sweeping) fail("sweep needs --sweep and --grid");
  if (cfg.command != Command::Sweep && sweeping) {
    fail(std::string(to_string(cfg.command)) + " does not take a sweep axis");
  }
  if (cfg.command != Command::Oracle && !cfg.bath) fail("no bath given");

  if (!(cfg.tol > 0.0)) fail("tol must be > 0");
  if (!(cfg.divergence_ratio > 1.0)) fail("divergence_ratio must be > 1");
  if (cfg.g < 0.0) fail("g must be >= 0");
  if (cfg.tmax && !(*cfg.tmax > 0.0)) fail("tmax must be > 0");
  if (cfg.dt && !(*cfg.dt > 0.0)) fail("dt must be > 0");
  if (!cfg.raw_units && cfg.omega_z == 0.0) {
    fail("output is in units of omega_z, which is zero; pass --raw-units");
  }
  validate(cfg.cavity);
  if (cfg.bath) baths::validate(*cfg.bath);
}

}  // namespace dicke::cli
