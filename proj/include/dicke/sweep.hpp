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

// Phase-boundary tables over one or two swept parameters.

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "dicke/baths.hpp"
#include "dicke/critical.hpp"

namespace dicke::critical {

enum class SweepAxis {
  Gamma,        ///< the bath's rate (gamma_phi, gamma_T or gamma_t)
  Sz,           ///< dephasing polarization
  Temperature,  ///< thermal T
  Mixing,       ///< generalized t
  OmegaZ,
  Omega0,
  Kappa,
};

/// Accepts "gamma", "sz", "T", "t", "omega_z", "omega0", "kappa".
SweepAxis parse_axis(std::string_view name);
const char* to_string(SweepAxis axis) noexcept;

/// How chi0 is obtained for each grid point.
enum class ChiRoute {
  ClosedForm,  ///< baths::closed_form_chi0 in the plan's mode
  Numeric,     ///< regression-theorem correlator + quadrature
};

struct SweepPlan {
  baths::BathSpec bath;
  double omega_z = 1.0;
  CavityParams cavity;
  baths::GcMode mode = baths::GcMode::SelfConsistent;
  ChiRoute route = ChiRoute::ClosedForm;
  /// One or two axes; the last axis varies fastest.
  std::vector<std::pair<SweepAxis, std::vector<double>>> axes;
  /// 0 = use DICKE_CRITIC_THREADS / hardware concurrency.
  unsigned threads = 0;
};

struct SweepRow {
  std::vector<double> values;  ///< one per axis
  double chi0 = 0.0;
  CriticalResult result = NoTransition{};
  double g0 = 0.0;  ///< fully polarized critical coupling at this point

  std::optional<double> ratio() const;
};

/// Worker count: requested if nonzero, else hardware concurrency; always
/// capped by DICKE_CRITIC_THREADS when that is set to a positive integer.
unsigned worker_count(unsigned requested);

struct PointSetup {
  baths::BathSpec bath;
  double omega_z = 1.0;
  CavityParams cavity;
};

/// Applies one axis value to a setup. Throws InvalidArgument when the axis
/// does not belong to the bath.
void apply_axis(PointSetup& setup, SweepAxis axis, double value);

/// chi0 and critical result for a single point.
SweepRow evaluate_point(const PointSetup& setup, baths::GcMode mode, ChiRoute route);

/// Rows in grid order regardless of scheduling. Throws InvalidArgument on an
/// empty grid or more than two axes.
std::vector<SweepRow> sweep(const SweepPlan& plan);

}  // namespace dicke::critical
