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

// Single-spin open-system engine: h = omega_z sigma^z plus Lindblad channels.

#include <optional>
#include <vector>

#include "dicke/propagator.hpp"
#include "dicke/qops.hpp"

namespace dicke::lindblad {

using qops::cplx;

struct SpinModel {
  double omega_z = 0.0;
  std::vector<qops::LindbladChannel> channels;
  /// Designated <sigma^z> when the generator has more than one stationary
  /// state (e.g. pure dephasing). Must be absent otherwise.
  std::optional<double> initial_sz;
};

void validate(const SpinModel& model);

qops::OperatorMatrix hamiltonian(const SpinModel& model);
qops::SuperOperator generator(const SpinModel& model);

/// Number of singular values of the generator below tol * max(1, ||G||).
int null_space_dimension(const qops::SuperOperator& gen, double tol = qops::kSpectralTol);

struct SteadyState {
  qops::DensityMatrix rho;
  int null_dimension = 1;
  bool degenerate() const { return null_dimension > 1; }
};

/// Unique stationary state, or the designated diagonal state with
/// <sigma^z> = initial_sz when the null space is degenerate.
/// Throws DegenerateSteadyState when degenerate and no initial_sz is given,
/// InvalidArgument when initial_sz is given for a unique steady state.
SteadyState steady_state(const SpinModel& model);

/// exp(L t) rho0. Throws InvalidArgument for t < 0.
qops::DensityMatrix propagate(const SpinModel& model, const qops::DensityMatrix& rho0, double t);

/// Operator placement for the regression theorem.
enum class Ordering {
  /// Tr[A e^{Lt}(B rho)] = <A(t) B(0)>
  OperatorLeft,
  /// Tr[A e^{Lt}(rho B)] = <B(0) A(t)>
  OperatorRight,
};

struct TailMode {
  cplx rate;       ///< generator eigenvalue lambda_k
  cplx amplitude;  ///< coefficient of e^{lambda_k t}
};

/// Exact continuation of a correlator beyond the last sample:
/// C(t) = sum_k amplitude_k e^{rate_k t}.
struct CorrelationTail {
  double decay_rate = 0.0;  ///< slowest decay among contributing modes, >= 0
  double frequency = 0.0;   ///< |Im rate| of that mode
  std::vector<TailMode> modes;

  cplx value(double t) const;
};

struct CorrelationSeries {
  double dt = 0.0;
  std::vector<cplx> values;  ///< values[k] = C(k dt)
  CorrelationTail tail;

  double time(std::size_t k) const { return static_cast<double>(k) * dt; }
  double tmax() const { return values.empty() ? 0.0 : time(values.size() - 1); }
};

struct TimeGrid {
  double tmax = 0.0;
  double dt = 0.0;
};

/// 12 e-folds of the slowest coherence (capped), dt = 0.02 / fastest scale.
TimeGrid default_grid(const SpinModel& model);

/// Regression-theorem series w . e^{G t} x0 for an arbitrary generator G
/// (no step-size precondition). Shared by the single-spin and full-system
/// engines.
CorrelationSeries regression_series(const qops::Matrix& generator, const qops::Vector& start,
                                    const Eigen::RowVectorXcd& observable, double tmax,
                                    double dt);

/// General two-time correlator sampled on [0, tmax] with step <= dt. The
/// step is shrunk so that the interval count is a multiple of 4.
CorrelationSeries two_time(const SpinModel& model, const qops::DensityMatrix& rho,
                           const qops::OperatorMatrix& a, const qops::OperatorMatrix& b,
                           Ordering ordering, double tmax, double dt);

/// S_x(t) = Tr[sigma^x e^{Lt}(rho sigma^x)].
///
/// For pure dephasing this equals
///   (1/4) e^{-gamma t} (cos(omega_z t) - 2i <sigma^z> sin(omega_z t)).
/// The OperatorLeft ordering gives its complex conjugate, i.e. S_x(-t).
/// Requires 0 < dt <= 0.1 / max(|omega_z|, fastest decay rate).
CorrelationSeries two_time_sx(const SpinModel& model, const qops::DensityMatrix& rho,
                              double tmax, double dt);

/// Steady state and default grid.
CorrelationSeries two_time_sx(const SpinModel& model);

}  // namespace dicke::lindblad
