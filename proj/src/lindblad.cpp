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

#include "dicke/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dicke::lindblad {

using qops::Axis;
using qops::DensityMatrix;
using qops::Index;
using qops::Matrix;
using qops::OperatorMatrix;
using qops::SuperOperator;
using qops::Vector;

void validate(const SpinModel& model) {
  if (!std::isfinite(model.omega_z)) {
    throw Error(ErrorKind::InvalidArgument, "omega_z must be finite");
  }
  for (const auto& ch : model.channels) {
    if (ch.op.dim() != 2) {
      throw Error(ErrorKind::DimensionMismatch, "spin channel must be a 2x2 operator");
    }
    if (!std::isfinite(ch.rate)) throw Error(ErrorKind::InvalidArgument, "rate not finite");
    if (ch.rate < 0.0) throw Error(ErrorKind::NegativeRate, "channel rate is negative");
  }
  if (model.initial_sz && !(std::abs(*model.initial_sz) <= 0.5)) {
    throw Error(ErrorKind::InvalidArgument, "initial_sz must lie in [-1/2, 1/2]");
  }
}

OperatorMatrix hamiltonian(const SpinModel& model) {
  return cplx(model.omega_z) * qops::pauli(Axis::Z);
}

SuperOperator generator(const SpinModel& model) {
  validate(model);
  return qops::lindblad_generator(hamiltonian(model), model.channels);
}

int null_space_dimension(const SuperOperator& gen, double tol) {
  Eigen::BDCSVD<Matrix> svd(gen.matrix());
  const auto& sv = svd.singularValues();
  const double cut = tol * std::max(1.0, sv(0));
  return static_cast<int>((sv.array() <= cut).count());
}

SteadyState steady_state(const SpinModel& model) {
  const SuperOperator gen = generator(model);
  const int nd = null_space_dimension(gen);

  if (nd == 1) {
    if (model.initial_sz) {
      throw Error(ErrorKind::InvalidArgument,
                  "initial_sz given but the steady state is unique");
    }
    Eigen::JacobiSVD<Matrix> svd(gen.matrix(), Eigen::ComputeFullV);
    const Vector null = svd.matrixV().col(gen.dim() - 1);
    Matrix rho = qops::devectorize(null).matrix();
    rho /= rho.trace();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return SteadyState{DensityMatrix(OperatorMatrix(std::move(rho)), 1e-10), nd};
  }

  if (!model.initial_sz) {
    throw Error(ErrorKind::DegenerateSteadyState,
                "stationary states form a " + std::to_string(nd) +
                    "-dimensional space; initial_sz is required");
  }
  const double sz = *model.initial_sz;
  const double pops[2] = {0.5 + sz, 0.5 - sz};
  DensityMatrix rho = DensityMatrix::diagonal(pops);
  const Vector drift = gen.matrix() * qops::vectorize(rho.op());
  if (drift.cwiseAbs().maxCoeff() > qops::kStructuralTol * std::max(1.0, gen.matrix().norm())) {
    throw Error(ErrorKind::DegenerateSteadyState,
                "designated diagonal state is not stationary under this generator");
  }
  return SteadyState{std::move(rho), nd};
}

DensityMatrix propagate(const SpinModel& model, const DensityMatrix& rho0, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "propagation time must be >= 0");
  if (t == 0.0) return rho0;
  const qops::Propagator prop(generator(model));
  Matrix rho = qops::devectorize(prop.apply(qops::vectorize(rho0.op()), t)).matrix();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(OperatorMatrix(std::move(rho)), 1e-9);
}

cplx CorrelationTail::value(double t) const {
  cplx sum = 0.0;
  for (const auto& m : modes) sum += m.amplitude * std::exp(m.rate * t);
  return sum;
}

namespace {

double fastest_scale(const SpinModel& model, const Vector& eigenvalues) {
  double scale = std::abs(model.omega_z);
  for (Index k = 0; k < eigenvalues.size(); ++k) {
    scale = std::max(scale, -eigenvalues(k).real());
  }
  return scale;
}

// Slowest nonzero decay among all generator eigenvalues.
double slowest_decay(const Vector& eigenvalues, double scale) {
  double slow = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < eigenvalues.size(); ++k) {
    const double rate = -eigenvalues(k).real();
    if (std::abs(eigenvalues(k)) > qops::kSpectralTol * std::max(1.0, scale)) {
      slow = std::min(slow, std::max(rate, 0.0));
    }
  }
  return slow;
}

constexpr std::size_t kMaxIntervals = 1u << 22;

}  // namespace

TimeGrid default_grid(const SpinModel& model) {
  const qops::Propagator prop(generator(model));
  const double scale = fastest_scale(model, prop.eigenvalues());
  TimeGrid grid;
  grid.dt = scale > 0.0 ? 0.02 / scale : 0.02;
  const double slow = slowest_decay(prop.eigenvalues(), scale);
  if (std::isfinite(slow) && slow > qops::kSpectralTol * std::max(1.0, scale)) {
    grid.tmax = 12.0 / slow;
  } else if (model.omega_z != 0.0) {
    grid.tmax = 4.0 * 2.0 * M_PI / std::abs(model.omega_z);
  } else {
    grid.tmax = 1.0;
  }
  grid.tmax = std::min(grid.tmax, grid.dt * static_cast<double>(kMaxIntervals / 4));
  return grid;
}

CorrelationSeries two_time(const SpinModel& model, const DensityMatrix& rho,
                           const OperatorMatrix& a, const OperatorMatrix& b, Ordering ordering,
                           double tmax, double dt) {
  if (!(tmax > 0.0) || !std::isfinite(tmax)) {
    throw Error(ErrorKind::InvalidArgument, "tmax must be positive and finite");
  }
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");

  const SuperOperator gen = generator(model);
  const qops::Propagator prop(gen);
  const double scale = fastest_scale(model, prop.eigenvalues());
  if (dt * scale > 0.1 * (1.0 + 1e-12)) {
    throw Error(ErrorKind::InvalidArgument,
                "dt exceeds 0.1 / max(|omega_z|, fastest decay rate)");
  }

  const OperatorMatrix start = ordering == Ordering::OperatorLeft ? b * rho.op() : rho.op() * b;
  return regression_series(gen.matrix(), qops::vectorize(start), qops::expectation_functional(a),
                           tmax, dt);
}

CorrelationSeries regression_series(const Matrix& generator, const Vector& x0,
                                    const Eigen::RowVectorXcd& w, double tmax, double dt) {
  if (!(tmax > 0.0) || !std::isfinite(tmax)) {
    throw Error(ErrorKind::InvalidArgument, "tmax must be positive and finite");
  }
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");
  const qops::Propagator prop(generator);
  double scale = 0.0;
  for (Index k = 0; k < prop.eigenvalues().size(); ++k) {
    scale = std::max(scale, std::abs(prop.eigenvalues()(k)));
  }

  CorrelationSeries out;
  if (prop.uses_eigenbasis()) {
    const Vector c = prop.modal_coefficients(x0);
    const Matrix& v = prop.eigenvectors();
    double max_amp = 0.0;
    std::vector<TailMode> modes;
    for (Index k = 0; k < c.size(); ++k) {
      const cplx amp = (w * v.col(k))(0) * c(k);
      modes.push_back({prop.eigenvalues()(k), amp});
      max_amp = std::max(max_amp, std::abs(amp));
    }
    out.tail.decay_rate = std::numeric_limits<double>::infinity();
    for (const auto& m : modes) {
      if (std::abs(m.amplitude) <= 1e-14 * std::max(max_amp, 1e-300)) continue;
      out.tail.modes.push_back(m);
      const double rate = std::max(-m.rate.real(), 0.0);
      if (rate < out.tail.decay_rate) {
        out.tail.decay_rate = rate;
        out.tail.frequency = std::abs(m.rate.imag());
      }
    }
    if (out.tail.modes.empty()) out.tail.decay_rate = 0.0;
  } else {
    // Defective generator: no modal tail, so sample until the envelope is negligible.
    const double slow = slowest_decay(prop.eigenvalues(), scale);
    if (!(slow > 0.0) || !std::isfinite(slow)) {
      throw Error(ErrorKind::NoConvergence, "defective generator without decay");
    }
    tmax = std::max(tmax, 32.3 / slow);
    out.tail.decay_rate = slow;
  }

  auto intervals = static_cast<std::size_t>(std::ceil(tmax / dt - 1e-9));
  intervals = std::max<std::size_t>(4, (intervals + 3) / 4 * 4);
  if (intervals > kMaxIntervals) {
    throw Error(ErrorKind::InvalidArgument, "tmax / dt requests too many samples");
  }
  out.dt = tmax / static_cast<double>(intervals);
  out.values.resize(intervals + 1);

  if (prop.uses_eigenbasis()) {
    for (std::size_t k = 0; k <= intervals; ++k) out.values[k] = out.tail.value(out.time(k));
  } else {
    const Matrix step = prop.matrix(out.dt);
    Vector x = x0;
    for (std::size_t k = 0; k <= intervals; ++k) {
      out.values[k] = (w * x)(0);
      x = step * x;
    }
  }
  return out;
}

CorrelationSeries two_time_sx(const SpinModel& model, const DensityMatrix& rho, double tmax,
                              double dt) {
  const OperatorMatrix sx = qops::pauli(Axis::X);
  return two_time(model, rho, sx, sx, Ordering::OperatorRight, tmax, dt);
}

CorrelationSeries two_time_sx(const SpinModel& model) {
  const SteadyState ss = steady_state(model);
  const TimeGrid grid = default_grid(model);
  return two_time_sx(model, ss.rho, grid.tmax, grid.dt);
}

}  // namespace dicke::lindblad
