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

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dicke/cli/config.hpp"

namespace dicke::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNoTransition = 2;
inline constexpr int kExitOracle = 3;

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::pair<std::string, std::string>> meta;  ///< echoed run parameters
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Report {
  Table table;
  int exit_code = kExitOk;
  std::vector<std::string> notes;  ///< diagnostics for stderr
};

/// 17 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double v);

void write_csv(std::ostream& out, const Table& table);
void write_json(std::ostream& out, const Table& table);

Report cmd_gc(const RunConfig& cfg);
Report cmd_sweep(const RunConfig& cfg);
Report cmd_corr(const RunConfig& cfg);
Report cmd_spectrum(const RunConfig& cfg);
Report cmd_oracle(const RunConfig& cfg);

struct OracleCase {
  baths::BathSpec bath;
  double omega_z = 1.0;
  CavityParams cavity;
};

/// Three parameter sets for each of the dephasing, thermal and generalized baths.
const std::vector<OracleCase>& oracle_suite();

struct OracleRow {
  OracleCase setup;
  critical::CriticalResult closed_form = critical::NoTransition{};
  std::optional<double> g_star;  ///< mean-field instability threshold
  double deviation = 0.0;        ///< |g* - g_c| / g_c, NaN when not comparable
};

/// Closed-form g_c in `mode` against the mean-field threshold, which is
/// bracketed by doubling from the fully polarized coupling.
OracleRow run_oracle_case(const OracleCase& setup, baths::GcMode mode);

/// Full command line (argv[0] is the program name).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dicke::cli
