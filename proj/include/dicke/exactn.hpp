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

// Exact Liouvillian of N atoms and one truncated cavity mode,
//   H = omega0 a^+a + omega_z sum_j sigma^z_j + (2g/sqrt(N)) sum_j sigma^x_j (a + a^+),
// with cavity loss (a, kappa) and each atom's own channels, all in the
// doubled Lindblad convention. Basis order: photon number slowest, then
// atom 1 ... atom N.

#include <Eigen/SparseCore>

#include "dicke/cavity.hpp"
#include "dicke/lindblad.hpp"

namespace dicke::exactn {

using qops::cplx;
using SparseMatrix = Eigen::SparseMatrix<cplx>;

inline constexpr int kMaxHilbertDim = 128;
/// Largest Hilbert dimension handled by the dense null-space path.
inline constexpr int kDenseHilbertDim = 16;

struct FullSystemSpec {
  int n_atoms = 1;
  int n_photon = 8;  ///< Fock states 0 .. n_photon-1
  double g = 0.0;
  CavityParams cavity;
  lindblad::SpinModel model;
};

/// Throws DimensionGuard when 2^N n_photon > kMaxHilbertDim.
void validate(const FullSystemSpec& spec);
int hilbert_dim(const FullSystemSpec& spec);

SparseMatrix photon_annihilation(const FullSystemSpec& spec);
/// Single-atom operator embedded at atom j (0-based).
SparseMatrix atom_operator(const FullSystemSpec& spec, int atom, const qops::OperatorMatrix& op);
SparseMatrix full_hamiltonian(const FullSystemSpec& spec);

SparseMatrix build_full_generator(const FullSystemSpec& spec);

/// Number of stationary states (dense path only; throws DimensionGuard above
/// kDenseHilbertDim).
int stationary_dimension(const FullSystemSpec& spec);

/// Unique stationary state as a dense Hilbert-space matrix.
/// Throws DegenerateSteadyState if it is not unique.
qops::Matrix full_steady_state(const FullSystemSpec& spec);

struct FullObservables {
  double photon_number = 0.0;
  double sz_mean = 0.0;  ///< (1/N) sum_j <sigma^z_j>
  double sx_mean = 0.0;  ///< (1/N) sum_j <sigma^x_j>
};

FullObservables full_steady_observables(const FullSystemSpec& spec);

struct CutoffCheck {
  FullObservables base;
  FullObservables refined;  ///< at n_photon + extra
  double relative_change = 0.0;
  bool converged = false;
};

/// Recomputes at n_photon + extra and compares the photon number.
CutoffCheck cutoff_check(const FullSystemSpec& spec, int extra = 4, double threshold = 0.01);

/// Atomic S_x(t) = Tr[sigma^x e^{Lt}(rho sigma^x)] evaluated in the full
/// atom + cavity space. Requires N = 1 and g = 0. When the atomic steady
/// state is degenerate the designated initial_sz is used with the vacuum.
lindblad::CorrelationSeries full_regression_sx(const FullSystemSpec& spec, double tmax,
                                               double dt);

}  // namespace dicke::exactn
