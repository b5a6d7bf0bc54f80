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

#include <optional>
#include <variant>

#include "dicke/cavity.hpp"

namespace dicke::critical {

enum class NoTransitionReason {
  Unpolarized,            ///< chi0 = 0: no static response
  WrongSignPolarization,  ///< chi0 > 0: the critical condition has no real root
};

const char* to_string(NoTransitionReason reason) noexcept;

struct Transition {
  double g_c = 0.0;
};

struct NoTransition {
  NoTransitionReason reason = NoTransitionReason::Unpolarized;
};

class CriticalResult {
 public:
  CriticalResult(Transition t) : v_(t) {}
  CriticalResult(NoTransition n) : v_(n) {}

  bool has_transition() const { return std::holds_alternative<Transition>(v_); }
  std::optional<double> coupling() const;
  /// Throws InvalidArgument when there is no transition.
  double g_c() const;
  /// Throws InvalidArgument when there is a transition.
  NoTransitionReason reason() const;

  const std::variant<Transition, NoTransition>& get() const { return v_; }

 private:
  std::variant<Transition, NoTransition> v_;
};

/// |chi0 * omega0| at or below this is treated as an unpolarized ensemble.
inline constexpr double kZeroChiTol = 1e-12;

/// Solves omega0^2 + kappa^2 + 2 omega0 g^2 chi0 = 0 for g > 0.
CriticalResult solve_gc(double chi0, const CavityParams& cavity);

/// Left-hand side of the critical condition at coupling g.
double critical_residual(double g, double chi0, const CavityParams& cavity);

/// Critical coupling of a fully polarized ensemble,
///   g_0 = (1/2) sqrt(omega_z (omega0^2 + kappa^2) / omega0).
double polarized_gc(double omega_z, const CavityParams& cavity);

/// g_c(kappa) / g_c(0) = sqrt(1 + kappa^2/omega0^2) at fixed chi0.
double kappa_scaling(const CavityParams& cavity);

/// Carries a kappa = 0 result over to the given cavity decay.
CriticalResult kappa_scaled(const CriticalResult& at_zero_kappa, const CavityParams& cavity);

}  // namespace dicke::critical
