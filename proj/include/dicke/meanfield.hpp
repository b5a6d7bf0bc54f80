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

// Mean-field cavity + representative-atom dynamics.
//
// With alpha = <a>/sqrt(N) the coupling 2g/sqrt(N) becomes N-independent:
//   d alpha/dt = -(i omega0 + kappa) alpha - 2 i g Tr[sigma^x rho]
//   d rho/dt   = L_atom(rho) - i [2 g (alpha + alpha^*) sigma^x, rho]
// Adiabatic elimination of alpha at omega = 0 gives the static
// self-consistency g*^2 = (omega0^2 + kappa^2) / (-2 omega0 chi0), which is
// the critical condition for the self-energy; the linear instability of the
// normal fixed point (alpha = 0, rho = atomic steady state) therefore sits at
// the same coupling.

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dicke/cavity.hpp"
#include "dicke/lindblad.hpp"

namespace dicke::meanfield {

using qops::cplx;

struct MeanFieldState {
  cplx alpha;
  qops::DensityMatrix rho;
};

struct MeanFieldDerivative {
  cplx alpha;
  qops::OperatorMatrix rho;
};

MeanFieldDerivative mf_derivative(const MeanFieldState& state, const CavityParams& cavity,
                                  const lindblad::SpinModel& model, double g);

/// Forward-difference Jacobian at the normal fixed point in the coordinates
/// (Re alpha, Im alpha, <sigma^x>, <sigma^y>, <sigma^z>).
Eigen::MatrixXd normal_jacobian(const CavityParams& cavity, const lindblad::SpinModel& model,
                                double g, double step = 1e-7);

/// Largest real part of the normal-point Jacobian spectrum.
double max_growth_rate(const CavityParams& cavity, const lindblad::SpinModel& model, double g);

struct ThresholdResult {
  std::optional<double> g_star;  ///< empty: no sign change in the bracket
  double growth_lo = 0.0;
  double growth_hi = 0.0;
  int bisections = 0;

  bool found() const { return g_star.has_value(); }
};

/// Bisection on the sign of the growth rate between g_lo (stable) and g_hi
/// (unstable), to relative tolerance tol. Growth rates within
/// 1e-8 * (largest model frequency) of zero count as stable, which keeps
/// conserved directions (e.g. sigma^z under dephasing) from registering.
ThresholdResult stability_threshold(const CavityParams& cavity, const lindblad::SpinModel& model,
                                    double g_lo, double g_hi, double tol = 1e-8);

struct TrajectorySample {
  double t = 0.0;
  cplx alpha;
  double sx = 0.0;
  double sy = 0.0;
  double sz = 0.0;
  double trace = 1.0;
  double min_eigenvalue = 0.0;
};

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-10;
  double min_step = 1e-12;
};

/// Adaptive Dormand-Prince 5(4) integration, sampled every dt up to duration.
/// Throws StepUnderflow if the step falls below min_step.
std::vector<TrajectorySample> simulate(const MeanFieldState& initial, const CavityParams& cavity,
                                       const lindblad::SpinModel& model, double g,
                                       double duration, double dt,
                                       const IntegratorOptions& options = {});

}  // namespace dicke::meanfield
