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

// Cavity self-energy from single-spin correlators and the cavity inverse
// Green function.
//
// Per identical atom the retarded self-energy is
//   Sigma(omega) = -8 g^2 int_0^inf Im[S_x(t)] e^{i omega t} dt,
// and chi(omega) = Sigma(omega)/g^2 is the coupling-free part. The critical
// condition is omega0^2 + kappa^2 + 2 omega0 Sigma(0) = 0. The displayed
// Nambu matrix is taken with Sigma entering with a minus sign in all four
// entries, which is the sign that reproduces that condition:
//   M(omega) = [[ omega + i kappa - omega0 - Sigma,  -Sigma ],
//               [ -Sigma,  -omega - i kappa - omega0 - Sigma ]].

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dicke/baths.hpp"
#include "dicke/cavity.hpp"
#include "dicke/lindblad.hpp"

namespace dicke::response {

using qops::cplx;

struct Susceptibility {
  double chi0 = 0.0;          ///< Sigma^R(0)/g^2
  std::vector<double> omegas;  ///< optional frequency grid
  std::vector<cplx> chi;       ///< chi(omega) on that grid

  bool has_spectrum() const { return !omegas.empty(); }
};

/// Tolerance on |Im chi(0)| before it is discarded.
inline constexpr double kImagChi0Tol = 1e-10;

/// chi(omega) from a sampled correlator: composite Boole quadrature over the
/// samples plus the closed-form integral of the modal tail. Throws
/// NotIntegrable when an undamped tail mode resonates with omega (or grows).
cplx chi_from_correlator(const lindblad::CorrelationSeries& corr, double omega);

/// chi0 (and chi on the given grid).
Susceptibility susceptibility(const lindblad::CorrelationSeries& corr,
                              std::span<const double> omegas = {});

/// Weighted average over atoms; weights >= 0 summing to 1 within 1e-12.
Susceptibility ensemble_chi(std::span<const std::pair<double, Susceptibility>> members);

/// Closed-form response of a spin whose transverse components are damped at
/// gamma_x, gamma_y:
///   chi(omega) = 4 sz omega_z / ((gamma_x - i omega)(gamma_y - i omega) + omega_z^2).
/// Valid for complex omega (analytic continuation).
struct TransverseResponse {
  double omega_z = 0.0;
  double sz = 0.0;
  double gamma_x = 0.0;
  double gamma_y = 0.0;

  cplx denominator(cplx omega) const;
  cplx operator()(cplx omega) const;
};

/// Closed-form response of a named bath. Throws NoClosedForm for Custom.
TransverseResponse transverse_response(const baths::BathSpec& bath, double omega_z);

struct CavityGreenSample {
  cplx omega;
  Eigen::Matrix2cd matrix;
  cplx det;
};

/// Inverse Green function at omega with Sigma = g^2 chi. The determinant is
///   omega0^2 + kappa^2 + 2 omega0 Sigma - omega^2 - 2 i omega kappa,
/// evaluated so that at omega = 0 it matches critical_residual bit for bit.
CavityGreenSample cavity_det(cplx omega, const CavityParams& cavity, double g, cplx chi);

/// Uses chi0 at omega = 0, otherwise the tabulated chi at exactly omega.
CavityGreenSample cavity_det(double omega, const CavityParams& cavity, double g,
                             const Susceptibility& chi);

struct RootOptions {
  int continuation_steps = 64;
  int max_iterations = 100;
  double tol = 1e-13;
};

/// Complex zeros of det M(omega) for the closed-form response, by damped
/// Newton iteration continued in g^2 from the g = 0 poles (the bare cavity
/// poles +-omega0 - i kappa and the atomic poles). At g = 0 only the two
/// cavity roots are returned. Sorted by real part, then imaginary part.
/// Throws NoConvergence when Newton fails.
std::vector<cplx> polariton_roots(const CavityParams& cavity, double g,
                                  const TransverseResponse& chi, RootOptions options = {});

}  // namespace dicke::response
