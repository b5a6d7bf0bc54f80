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

#include "dicke/meanfield.hpp"

#include <algorithm>
#include <cmath>

namespace dicke::meanfield {

using qops::Axis;
using qops::Matrix;
using qops::OperatorMatrix;
using qops::Vector;

namespace {

// State vector: [alpha, vec(rho)] with column-stacked rho.
class Dynamics {
 public:
  Dynamics(const CavityParams& cavity, const lindblad::SpinModel& model, double g)
      : atom_(lindblad::generator(model).matrix()),
        omega0_(cavity.omega0),
        kappa_(cavity.kappa),
        g_(g),
        sx_(qops::pauli(Axis::X).matrix()) {
    validate(cavity);
    if (!std::isfinite(g) || g < 0.0) throw Error(ErrorKind::InvalidArgument, "g must be >= 0");
  }

  Vector rhs(const Vector& y) const {
    const cplx i(0.0, 1.0);
    const cplx alpha = y(0);
    const Eigen::Map<const Eigen::Matrix2cd> rho(y.data() + 1);
    const cplx sx = (sx_ * rho).trace();

    Vector dy(5);
    dy(0) = -(i * omega0_ + kappa_) * alpha - 2.0 * i * g_ * sx;
    const Eigen::Matrix2cd drive = 2.0 * g_ * 2.0 * alpha.real() * sx_;
    const Eigen::Matrix2cd coherent = -i * (drive * rho - rho * drive);
    dy.tail<4>() = atom_ * y.tail<4>() + Eigen::Map<const Vector>(coherent.data(), 4);
    return dy;
  }

 private:
  Matrix atom_;
  double omega0_;
  double kappa_;
  double g_;
  Eigen::Matrix2cd sx_;
};

Vector pack(cplx alpha, const Eigen::Matrix2cd& rho) {
  Vector y(5);
  y(0) = alpha;
  y.tail<4>() = Eigen::Map<const Vector>(rho.data(), 4);
  return y;
}

Eigen::Matrix2cd bloch_to_rho(double sx, double sy, double sz) {
  const cplx i(0.0, 1.0);
  Eigen::Matrix2cd rho;
  rho << 0.5 + sz, sx - i * sy, sx + i * sy, 0.5 - sz;
  return rho;
}

Eigen::Matrix<double, 5, 1> to_coords(const Vector& y) {
  const Eigen::Map<const Eigen::Matrix2cd> m(y.data() + 1);
  Eigen::Matrix<double, 5, 1> c;
  c << y(0).real(), y(0).imag(), m(1, 0).real(), m(1, 0).imag(), 0.5 * (m(0, 0) - m(1, 1)).real();
  return c;
}

double frequency_scale(const CavityParams& cavity, const lindblad::SpinModel& model) {
  double scale = std::max({cavity.omega0, cavity.kappa, std::abs(model.omega_z)});
  for (const auto& ch : model.channels) scale = std::max(scale, ch.rate * ch.op.norm() * ch.op.norm());
  return scale;
}

}  // namespace

MeanFieldDerivative mf_derivative(const MeanFieldState& state, const CavityParams& cavity,
                                  const lindblad::SpinModel& model, double g) {
  const Dynamics dyn(cavity, model, g);
  const Eigen::Matrix2cd rho = state.rho.op().matrix();
  const Vector dy = dyn.rhs(pack(state.alpha, rho));
  return MeanFieldDerivative{dy(0), OperatorMatrix(Eigen::Map<const Matrix>(dy.data() + 1, 2, 2))};
}

Eigen::MatrixXd normal_jacobian(const CavityParams& cavity, const lindblad::SpinModel& model,
                                double g, double step) {
  const Dynamics dyn(cavity, model, g);
  const auto ss = lindblad::steady_state(model);
  const Eigen::Matrix2cd rho0 = ss.rho.op().matrix();
  const Eigen::Matrix<double, 5, 1> x0 = to_coords(pack(0.0, rho0));

  auto f = [&](const Eigen::Matrix<double, 5, 1>& x) {
    // Tr[sigma^a d rho] from the derivative of rho's entries.
    const Vector dy = dyn.rhs(pack(cplx(x(0), x(1)), bloch_to_rho(x(2), x(3), x(4))));
    return to_coords(dy);
  };
  const Eigen::Matrix<double, 5, 1> f0 = f(x0);
  Eigen::MatrixXd jac(5, 5);
  for (int j = 0; j < 5; ++j) {
    Eigen::Matrix<double, 5, 1> x = x0;
    x(j) += step;
    jac.col(j) = (f(x) - f0) / (x(j) - x0(j));
  }
  return jac;
}

double max_growth_rate(const CavityParams& cavity, const lindblad::SpinModel& model, double g) {
  const Eigen::MatrixXd jac = normal_jacobian(cavity, model, g);
  Eigen::EigenSolver<Eigen::MatrixXd> es(jac, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "Jacobian eigensolve failed");
  }
  return es.eigenvalues().real().maxCoeff();
}

ThresholdResult stability_threshold(const CavityParams& cavity, const lindblad::SpinModel& model,
                                    double g_lo, double g_hi, double tol) {
  if (!(g_lo >= 0.0) || !(g_hi > g_lo)) {
    throw Error(ErrorKind::InvalidArgument, "threshold bracket needs 0 <= g_lo < g_hi");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  const double neutral = 1e-8 * frequency_scale(cavity, model);
  auto unstable = [&](double g) { return max_growth_rate(cavity, model, g) > neutral; };

  ThresholdResult out;
  out.growth_lo = max_growth_rate(cavity, model, g_lo);
  out.growth_hi = max_growth_rate(cavity, model, g_hi);
  if (out.growth_lo > neutral || out.growth_hi <= neutral) return out;

  double lo = g_lo, hi = g_hi;
  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (unstable(mid) ? hi : lo) = mid;
    ++out.bisections;
  }
  out.g_star = 0.5 * (lo + hi);
  return out;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

TrajectorySample sample(double t, const Vector& y) {
  const Eigen::Map<const Eigen::Matrix2cd> rho(y.data() + 1);
  const Eigen::Matrix2cd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(herm, Eigen::EigenvaluesOnly);
  TrajectorySample s;
  s.t = t;
  s.alpha = y(0);
  s.sx = rho(1, 0).real();
  s.sy = rho(1, 0).imag();
  s.sz = 0.5 * (rho(0, 0) - rho(1, 1)).real();
  s.trace = rho.trace().real();
  s.min_eigenvalue = es.eigenvalues().minCoeff();
  return s;
}

}  // namespace

std::vector<TrajectorySample> simulate(const MeanFieldState& initial, const CavityParams& cavity,
                                       const lindblad::SpinModel& model, double g,
                                       double duration, double dt,
                                       const IntegratorOptions& options) {
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");
  if (!(duration >= 0.0)) throw Error(ErrorKind::InvalidArgument, "duration must be >= 0");
  const Dynamics dyn(cavity, model, g);

  Vector y = pack(initial.alpha, initial.rho.op().matrix());
  std::vector<TrajectorySample> out;
  const auto outputs = static_cast<std::size_t>(std::floor(duration / dt + 1e-9));
  out.reserve(outputs + 1);
  out.push_back(sample(0.0, y));

  double t = 0.0;
  double h = std::min(dt, 0.01 / frequency_scale(cavity, model));
  Vector k1 = dyn.rhs(y);
  for (std::size_t n = 1; n <= outputs; ++n) {
    const double target = static_cast<double>(n) * dt;
    while (t < target) {
      const bool last = t + h >= target;
      const double step = last ? target - t : h;
      const Vector k2 = dyn.rhs(y + step * a21 * k1);
      const Vector k3 = dyn.rhs(y + step * (a31 * k1 + a32 * k2));
      const Vector k4 = dyn.rhs(y + step * (a41 * k1 + a42 * k2 + a43 * k3));
      const Vector k5 = dyn.rhs(y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const Vector k6 =
          dyn.rhs(y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const Vector y5 = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const Vector k7 = dyn.rhs(y5);
      const Vector err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      double norm = 0.0;
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double scale =
            options.atol + options.rtol * std::max(std::abs(y(i)), std::abs(y5(i)));
        norm = std::max(norm, std::abs(err(i)) / scale);
      }
      const double factor = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
      if (norm <= 1.0) {
        t = last ? target : t + step;
        y = y5;
        k1 = k7;
        // A step clipped to hit an output time says little about the next one.
        if (!last) h = step * factor;
      } else {
        h = step * factor;
        if (h < options.min_step) {
          throw Error(ErrorKind::StepUnderflow, "integrator step fell below the minimum");
        }
      }
    }
    out.push_back(sample(t, y));
  }
  return out;
}

}  // namespace dicke::meanfield
