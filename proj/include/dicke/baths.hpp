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

// The single-atom baths: pure dephasing, a thermal decay channel, and the
// generalized Markovian jump L = sigma^- + t sigma^+, plus arbitrary custom
// channel lists. Each named bath has closed forms for its stationary
// polarization, transverse damping and critical coupling.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dicke/cavity.hpp"
#include "dicke/critical.hpp"
#include "dicke/lindblad.hpp"

namespace dicke::baths {

/// sigma^z channel. sz is conserved, so it is part of the bath description.
struct Dephasing {
  double gamma_phi = 0.0;
  double sz = -0.5;
};

/// sigma^- at (1+n_T) gamma_T and sigma^+ at n_T gamma_T.
struct Thermal {
  double gamma_T = 0.0;
  double temperature = 0.0;
};

/// L = sigma^- + t sigma^+ at rate gamma_t, t in [0, 1].
struct Generalized {
  double gamma_t = 0.0;
  double t = 0.0;
};

struct Custom {
  std::vector<qops::LindbladChannel> channels;
  std::optional<double> initial_sz;
};

using BathSpec = std::variant<Dephasing, Thermal, Generalized, Custom>;

void validate(const BathSpec& bath);

/// n_T = 1/(e^{omega_z/T} - 1), with n_T = 0 at T = 0.
double bose_occupation(double omega_z, double temperature);

std::vector<qops::LindbladChannel> channels_of(const BathSpec& bath, double omega_z);

lindblad::SpinModel spin_model(const BathSpec& bath, double omega_z);

/// Heisenberg damping rates of sigma^x and sigma^y:
///   d<sigma^x>/dt = -gamma_x <sigma^x> - omega_z <sigma^y>, and likewise for y.
/// Throws NoClosedForm for Custom.
struct TransverseRates {
  double x = 0.0;
  double y = 0.0;
};
TransverseRates transverse_rates(const BathSpec& bath, double omega_z);

/// sqrt(gamma_x gamma_y): gamma_phi, gamma_T coth(omega_z/2T), gamma_t (1 - t^2).
/// This is the rate entering the static response. Throws NoClosedForm for Custom.
double effective_rate(const BathSpec& bath, double omega_z);

/// Stationary <sigma^z>. Custom baths are solved numerically.
double steady_sz(const BathSpec& bath, double omega_z);

enum class GcMode {
  /// Formulas exactly as originally printed; the generalized bath carries
  /// gamma_t^2 (1-t)^2 in its denominator.
  PaperLiteral,
  /// chi0 = 4 <sigma^z> omega_z / (omega_z^2 + gamma_x gamma_y), the exact
  /// static response of the single-spin master equation.
  SelfConsistent,
};

const char* to_string(GcMode mode) noexcept;
GcMode parse_mode(std::string_view text);

/// Sigma^R(0)/g^2 in the requested mode. Throws NoClosedForm for Custom.
double closed_form_chi0(const BathSpec& bath, double omega_z, GcMode mode);

critical::CriticalResult closed_form_gc(const BathSpec& bath, double omega_z,
                                        const CavityParams& cavity,
                                        GcMode mode = GcMode::SelfConsistent);

/// Canonical text, e.g. "thermal(gamma=0.1, T=0.5)".
std::string format_bath(const BathSpec& bath);

/// Parses "dephasing(gamma=.., sz=..)", "thermal(gamma=.., T=..)" or
/// "generalized(gamma=.., t=..)". Throws ParseError with a 1-based column.
BathSpec parse_bath(std::string_view text);

}  // namespace dicke::baths
