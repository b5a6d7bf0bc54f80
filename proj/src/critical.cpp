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

#include "dicke/critical.hpp"

#include <cmath>

#include "dicke/error.hpp"

namespace dicke {

void validate(const CavityParams& cavity) {
  if (!std::isfinite(cavity.omega0) || !(cavity.omega0 > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "cavity omega0 must be positive and finite");
  }
  if (!std::isfinite(cavity.kappa) || cavity.kappa < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "cavity kappa must be non-negative and finite");
  }
}

}  // namespace dicke

namespace dicke::critical {

const char* to_string(NoTransitionReason reason) noexcept {
  switch (reason) {
    case NoTransitionReason::Unpolarized: return "unpolarized";
    case NoTransitionReason::WrongSignPolarization: return "wrong_sign";
  }
  return "unknown";
}

std::optional<double> CriticalResult::coupling() const {
  if (const auto* t = std::get_if<Transition>(&v_)) return t->g_c;
  return std::nullopt;
}

double CriticalResult::g_c() const {
  if (const auto* t = std::get_if<Transition>(&v_)) return t->g_c;
  throw Error(ErrorKind::InvalidArgument, "no transition: critical coupling is undefined");
}

NoTransitionReason CriticalResult::reason() const {
  if (const auto* n = std::get_if<NoTransition>(&v_)) return n->reason;
  throw Error(ErrorKind::InvalidArgument, "result is a transition");
}

CriticalResult solve_gc(double chi0, const CavityParams& cavity) {
  validate(cavity);
  if (!std::isfinite(chi0)) throw Error(ErrorKind::InvalidArgument, "chi0 must be finite");
  if (std::abs(chi0 * cavity.omega0) <= kZeroChiTol) {
    return NoTransition{NoTransitionReason::Unpolarized};
  }
  if (chi0 > 0.0) return NoTransition{NoTransitionReason::WrongSignPolarization};
  const double num = cavity.omega0 * cavity.omega0 + cavity.kappa * cavity.kappa;
  return Transition{std::sqrt(-num / (2.0 * cavity.omega0 * chi0))};
}

double critical_residual(double g, double chi0, const CavityParams& cavity) {
  // Same association as response::cavity_det, so both agree bit for bit.
  const double sigma = g * g * chi0;
  return cavity.omega0 * cavity.omega0 + cavity.kappa * cavity.kappa +
         2.0 * cavity.omega0 * sigma;
}

double polarized_gc(double omega_z, const CavityParams& cavity) {
  validate(cavity);
  if (!(omega_z > 0.0)) throw Error(ErrorKind::InvalidArgument, "omega_z must be positive");
  const double num = cavity.omega0 * cavity.omega0 + cavity.kappa * cavity.kappa;
  return 0.5 * std::sqrt(omega_z * num / cavity.omega0);
}

double kappa_scaling(const CavityParams& cavity) {
  validate(cavity);
  const double r = cavity.kappa / cavity.omega0;
  return std::sqrt(1.0 + r * r);
}

CriticalResult kappa_scaled(const CriticalResult& at_zero_kappa, const CavityParams& cavity) {
  if (!at_zero_kappa.has_transition()) return at_zero_kappa;
  return Transition{at_zero_kappa.g_c() * kappa_scaling(cavity)};
}

}  // namespace dicke::critical
