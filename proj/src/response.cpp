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

#include "dicke/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace dicke::response {

namespace {

// Composite Boole weights (times 45/(2h)) on 4m+1 points.
double boole_weight(std::size_t k, std::size_t last) {
  if (k == 0 || k == last) return 7.0;
  switch (k % 4) {
    case 1:
    case 3: return 32.0;
    case 2: return 12.0;
    default: return 14.0;
  }
}

struct TailTerm {
  cplx exponent;
  cplx coefficient;
};

// int_T^inf Im[C(t)] e^{i omega t} dt for C(t) = sum_k a_k e^{lambda_k t}.
cplx tail_integral(const lindblad::CorrelationTail& tail, double omega, double start) {
  double scale = std::abs(omega);
  for (const auto& m : tail.modes) scale = std::max(scale, std::abs(m.rate));
  scale = std::max(scale, 1.0);
  const double same = 1e-12 * scale;
  const cplx iw(0.0, omega);

  // Im C = (C - conj C)/(2i); group terms sharing an exponent so that
  // cancelling pairs (e.g. real stationary parts) drop out.
  std::vector<TailTerm> terms;
  auto add = [&](cplx exponent, cplx coefficient) {
    for (auto& t : terms) {
      if (std::abs(t.exponent - exponent) <= same) {
        t.coefficient += coefficient;
        return;
      }
    }
    terms.push_back({exponent, coefficient});
  };
  const cplx two_i(0.0, 2.0);
  double max_coef = 0.0;
  for (const auto& m : tail.modes) {
    add(m.rate + iw, m.amplitude / two_i);
    add(std::conj(m.rate) + iw, -std::conj(m.amplitude) / two_i);
    max_coef = std::max(max_coef, std::abs(m.amplitude));
  }

  cplx sum = 0.0;
  for (const auto& t : terms) {
    if (std::abs(t.coefficient) <= 1e-13 * max_coef) continue;
    if (std::abs(t.exponent) <= same || t.exponent.real() > same) {
      throw Error(ErrorKind::NotIntegrable,
                  "undamped correlator component resonant with the evaluation frequency");
    }
    // Abel-regularized for purely oscillatory exponents.
    sum += -t.coefficient * std::exp(t.exponent * start) / t.exponent;
  }
  return sum;
}

}  // namespace

cplx chi_from_correlator(const lindblad::CorrelationSeries& corr, double omega) {
  const std::size_t n = corr.values.size();
  if (n < 5 || (n - 1) % 4 != 0) {
    throw Error(ErrorKind::InvalidArgument, "correlator needs 4m+1 samples for quadrature");
  }
  const std::size_t last = n - 1;
  cplx quad = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = corr.time(k);
    quad += boole_weight(k, last) * corr.values[k].imag() * std::exp(cplx(0.0, omega * t));
  }
  quad *= 2.0 * corr.dt / 45.0;

  const cplx integral = quad + tail_integral(corr.tail, omega, corr.tmax());
  cplx chi = -8.0 * integral;
  if (omega == 0.0) {
    if (std::abs(chi.imag()) > kImagChi0Tol * std::max(1.0, std::abs(chi.real()))) {
      throw Error(ErrorKind::NoConvergence, "static susceptibility has an imaginary part");
    }
    chi = cplx(chi.real(), 0.0);
  }
  return chi;
}

Susceptibility susceptibility(const lindblad::CorrelationSeries& corr,
                              std::span<const double> omegas) {
  Susceptibility out;
  out.chi0 = chi_from_correlator(corr, 0.0).real();
  out.omegas.assign(omegas.begin(), omegas.end());
  out.chi.reserve(omegas.size());
  for (double w : omegas) out.chi.push_back(chi_from_correlator(corr, w));
  return out;
}

Susceptibility ensemble_chi(std::span<const std::pair<double, Susceptibility>> members) {
  if (members.empty()) throw Error(ErrorKind::InvalidArgument, "empty ensemble");
  double total = 0.0;
  for (const auto& [w, s] : members) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::InvalidArgument, "ensemble weights must be >= 0");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "ensemble weights must sum to 1");
  }

  const auto& grid = members.front().second.omegas;
  for (const auto& [w, s] : members) {
    if (s.omegas != grid || s.chi.size() != grid.size()) {
      throw Error(ErrorKind::DimensionMismatch, "ensemble members use different frequency grids");
    }
  }

  Susceptibility out;
  out.omegas = grid;
  out.chi.assign(grid.size(), cplx(0.0));
  for (const auto& [w, s] : members) {
    out.chi0 += w * s.chi0;
    for (std::size_t k = 0; k < grid.size(); ++k) out.chi[k] += w * s.chi[k];
  }
  return out;
}

cplx TransverseResponse::denominator(cplx omega) const {
  const cplx i(0.0, 1.0);
  return (gamma_x - i * omega) * (gamma_y - i * omega) + omega_z * omega_z;
}

cplx TransverseResponse::operator()(cplx omega) const {
  const cplx d = denominator(omega);
  if (d == 0.0) throw Error(ErrorKind::NotIntegrable, "frequency sits on an atomic pole");
  return 4.0 * sz * omega_z / d;
}

TransverseResponse transverse_response(const baths::BathSpec& bath, double omega_z) {
  const auto rates = baths::transverse_rates(bath, omega_z);
  return TransverseResponse{omega_z, baths::steady_sz(bath, omega_z), rates.x, rates.y};
}

CavityGreenSample cavity_det(cplx omega, const CavityParams& cavity, double g, cplx chi) {
  validate(cavity);
  const cplx i(0.0, 1.0);
  const double w0 = cavity.omega0;
  const double k = cavity.kappa;
  const cplx sigma = g * g * chi;

  CavityGreenSample out;
  out.omega = omega;
  out.matrix << omega + i * k - w0 - sigma, -sigma, -sigma, -omega - i * k - w0 - sigma;
  out.det = (w0 * w0 + k * k + 2.0 * w0 * sigma) - (omega * omega + 2.0 * i * omega * k);
  return out;
}

CavityGreenSample cavity_det(double omega, const CavityParams& cavity, double g,
                             const Susceptibility& chi) {
  if (omega == 0.0) return cavity_det(cplx(0.0), cavity, g, cplx(chi.chi0));
  for (std::size_t k = 0; k < chi.omegas.size(); ++k) {
    if (chi.omegas[k] == omega) return cavity_det(cplx(omega), cavity, g, chi.chi[k]);
  }
  throw Error(ErrorKind::InvalidArgument, "susceptibility not tabulated at this frequency");
}

namespace {

// det M(omega) * D(omega), a quartic in omega.
struct DetPolynomial {
  double w0, k, g2;
  TransverseResponse chi;

  cplx cavity_part(cplx w) const {
    const cplx i(0.0, 1.0);
    return w0 * w0 + k * k - w * w - 2.0 * i * w * k;
  }
  cplx value(cplx w) const {
    return cavity_part(w) * chi.denominator(w) + 8.0 * w0 * g2 * chi.sz * chi.omega_z;
  }
  // Rounding-level size of value(w).
  double noise(cplx w) const {
    return 64.0 * std::numeric_limits<double>::epsilon() *
           (std::abs(cavity_part(w) * chi.denominator(w)) + std::abs(8.0 * w0 * g2 * chi.sz * chi.omega_z));
  }
  cplx derivative(cplx w) const {
    const cplx i(0.0, 1.0);
    const cplx dc = -2.0 * w - 2.0 * i * k;
    const cplx dd = -i * (chi.gamma_y - i * w) - i * (chi.gamma_x - i * w);
    return dc * chi.denominator(w) + cavity_part(w) * dd;
  }
};

// Simultaneous Newton with implicit deflation (Aberth-Ehrlich), so two
// roots cannot settle on the same zero when branches meet on the imaginary
// axis.
void refine(const DetPolynomial& p, std::vector<cplx>& roots, const RootOptions& opt) {
  for (int it = 0; it < opt.max_iterations; ++it) {
    bool done = true;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const cplx f = p.value(roots[i]);
      if (f == 0.0) continue;
      const cplx ratio = f / p.derivative(roots[i]);
      cplx repel = 0.0;
      for (std::size_t j = 0; j < roots.size(); ++j) {
        if (j != i && roots[i] != roots[j]) repel += 1.0 / (roots[i] - roots[j]);
      }
      const cplx step = ratio / (1.0 - ratio * repel);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
        throw Error(ErrorKind::NoConvergence, "polariton root iteration broke down");
      }
      roots[i] -= step;
      if (std::abs(step) > opt.tol * std::max(1.0, std::abs(roots[i])) &&
          std::abs(p.value(roots[i])) > p.noise(roots[i])) {
        done = false;
      }
    }
    if (done) return;
  }
  throw Error(ErrorKind::NoConvergence, "polariton root iteration did not converge");
}

}  // namespace

std::vector<cplx> polariton_roots(const CavityParams& cavity, double g,
                                  const TransverseResponse& chi, RootOptions options) {
  validate(cavity);
  const cplx i(0.0, 1.0);
  std::vector<cplx> roots{cavity.omega0 - i * cavity.kappa, -cavity.omega0 - i * cavity.kappa};
  if (g != 0.0) {
    // Zeros of D: omega = -i (gx+gy)/2 +- sqrt(omega_z^2 - (gx-gy)^2/4).
    const double mean = 0.5 * (chi.gamma_x + chi.gamma_y);
    const double half_diff = 0.5 * (chi.gamma_x - chi.gamma_y);
    const cplx root = std::sqrt(cplx(chi.omega_z * chi.omega_z - half_diff * half_diff));
    roots.push_back(-i * mean + root);
    roots.push_back(-i * mean - root);

    const int steps = std::max(1, options.continuation_steps);
    for (int s = 1; s <= steps; ++s) {
      const double frac = static_cast<double>(s) / steps;
      const DetPolynomial p{cavity.omega0, cavity.kappa, frac * g * g, chi};
      refine(p, roots, options);
    }
  }
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

}  // namespace dicke::response
