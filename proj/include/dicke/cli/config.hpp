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

#pragma once

// Run configuration shared by the subcommands. Settings arrive as
// (key, value) pairs from a `key = value` file and from command-line flags,
// and all of them go through the same strict conversion.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dicke/baths.hpp"
#include "dicke/sweep.hpp"

namespace dicke::cli {

enum class Command { Gc, Sweep, Corr, Spectrum, Oracle };
enum class Format { Csv, Json };

const char* to_string(Command command) noexcept;

/// One raw setting. line = 0 for flags; column is where the value starts.
struct Setting {
  std::string key;
  std::string value;
  int line = 0;
  int column = 1;
};

struct RunConfig {
  Command command = Command::Gc;
  std::optional<baths::BathSpec> bath;
  double omega_z = 1.0;
  CavityParams cavity;
  baths::GcMode mode = baths::GcMode::SelfConsistent;
  critical::ChiRoute route = critical::ChiRoute::ClosedForm;

  std::optional<critical::SweepAxis> sweep_axis;
  std::optional<std::vector<double>> grid;
  std::optional<critical::SweepAxis> sweep_axis2;
  std::optional<std::vector<double>> grid2;

  Format format = Format::Csv;
  std::optional<std::string> output;
  bool raw_units = false;

  double g = 0.0;
  std::optional<double> tmax;
  std::optional<double> dt;
  std::optional<std::vector<double>> omega_grid;

  double tol = 1e-5;  ///< oracle disagreement threshold (relative)
  double divergence_ratio = 5.0;  ///< g_c/g_0 above this is flagged "diverging"
  unsigned threads = 0;
};

/// Keys accepted in config files; flags use the same names with '-'.
const std::vector<std::string_view>& known_keys();

/// Reads `key = value` lines. '#' starts a comment. Throws ParseError.
std::vector<Setting> read_settings(std::istream& in);
std::vector<Setting> read_settings_file(const std::string& path);

/// Finite number; throws ParseError at the setting's position.
double parse_number(std::string_view text, int line = 0, int column = 1);

/// "a,b,c" or "start:stop:step" (inclusive of stop within 1e-9 step).
std::vector<double> parse_grid(std::string_view text, int line = 0, int column = 1);

/// Converts one setting into cfg. Unknown keys throw ParseError.
void apply(RunConfig& cfg, const Setting& setting);

/// Cross-field checks for the chosen command. Throws Error(InvalidArgument).
void finalize(RunConfig& cfg);

}  // namespace dicke::cli
