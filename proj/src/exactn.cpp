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

#include "dicke/exactn.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/SparseLU>
#include <unsupported/Eigen/KroneckerProduct>

namespace dicke::exactn {

using qops::Axis;
using qops::Matrix;
using qops::OperatorMatrix;
using qops::Vector;

namespace {

SparseMatrix sparse_identity(int n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

using qops::Index;

// Condition-number estimate above which the trace-row system counts as singular.
constexpr double kMaxCondition = 1e12;

SparseMatrix to_sparse(const Matrix& m) { return m.sparseView(); }

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out = Eigen::kroneckerProduct(a, b);
  return out;
}

int atom_block(int n_atoms) { return 1 << n_atoms; }

// Adds rate (2 conj(L) (x) L - I (x) L^+L - (L^+L)^T (x) I) to gen.
void add_dissipator(SparseMatrix& gen, const SparseMatrix& jump, double rate, int dim) {
  if (rate == 0.0) return;
  const SparseMatrix id = sparse_identity(dim);
  const SparseMatrix ldl = SparseMatrix(jump.adjoint()) * jump;
  const SparseMatrix ldl_t = ldl.transpose();
  const SparseMatrix lconj = jump.conjugate();
  gen += rate * (2.0 * kron(lconj, jump) - kron(id, ldl) - kron(ldl_t, id));
}

}  // namespace

int hilbert_dim(const FullSystemSpec& spec) { return atom_block(spec.n_atoms) * spec.n_photon; }

void validate(const FullSystemSpec& spec) {
  if (spec.n_atoms < 1 || spec.n_atoms > 4) {
    throw Error(ErrorKind::InvalidArgument, "atom count must be 1..4");
  }
  if (spec.n_photon < 1) throw Error(ErrorKind::InvalidArgument, "Fock cutoff must be >= 1");
  if (hilbert_dim(spec) > kMaxHilbertDim) {
    throw Error(ErrorKind::DimensionGuard,
                "Hilbert dimension " + std::to_string(hilbert_dim(spec)) + " exceeds " +
                    std::to_string(kMaxHilbertDim));
  }
  if (!std::isfinite(spec.g) || spec.g < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "g must be >= 0");
  }
  dicke::validate(spec.cavity);
  lindblad::validate(spec.model);
}

SparseMatrix photon_annihilation(const FullSystemSpec& spec) {
  const int nc = spec.n_photon;
  SparseMatrix a(nc, nc);
  for (int n = 1; n < nc; ++n) a.insert(n - 1, n) = std::sqrt(static_cast<double>(n));
  return kron(a, sparse_identity(atom_block(spec.n_atoms)));
}

SparseMatrix atom_operator(const FullSystemSpec& spec, int atom, const OperatorMatrix& op) {
  if (atom < 0 || atom >= spec.n_atoms) {
    throw Error(ErrorKind::InvalidArgument, "atom index out of range");
  }
  SparseMatrix out = sparse_identity(spec.n_photon);
  for (int j = 0; j < spec.n_atoms; ++j) {
    out = kron(out, j == atom ? to_sparse(op.matrix()) : sparse_identity(2));
  }
  return out;
}

SparseMatrix full_hamiltonian(const FullSystemSpec& spec) {
  validate(spec);
  const SparseMatrix a = photon_annihilation(spec);
  const SparseMatrix adag = a.adjoint();
  const SparseMatrix field = a + adag;
  const double coupling = 2.0 * spec.g / std::sqrt(static_cast<double>(spec.n_atoms));

  SparseMatrix h = spec.cavity.omega0 * (adag * a);
  const OperatorMatrix sz = qops::pauli(Axis::Z);
  const OperatorMatrix sx = qops::pauli(Axis::X);
  for (int j = 0; j < spec.n_atoms; ++j) {
    h += spec.model.omega_z * atom_operator(spec, j, sz);
    if (coupling != 0.0) h += coupling * SparseMatrix(atom_operator(spec, j, sx) * field);
  }
  return h;
}

SparseMatrix build_full_generator(const FullSystemSpec& spec) {
  validate(spec);
  const int dim = hilbert_dim(spec);
  const cplx i(0.0, 1.0);
  const SparseMatrix id = sparse_identity(dim);
  const SparseMatrix h = full_hamiltonian(spec);
  const SparseMatrix ht = h.transpose();

  SparseMatrix gen = -i * (kron(id, h) - kron(ht, id));
  add_dissipator(gen, photon_annihilation(spec), spec.cavity.kappa, dim);
  for (int j = 0; j < spec.n_atoms; ++j) {
    for (const auto& ch : spec.model.channels) {
      add_dissipator(gen, atom_operator(spec, j, ch.op), ch.rate, dim);
    }
  }
  gen.prune(cplx(0.0));
  gen.makeCompressed();
  return gen;
}

int stationary_dimension(const FullSystemSpec& spec) {
  validate(spec);
  if (hilbert_dim(spec) > kDenseHilbertDim) {
    throw Error(ErrorKind::DimensionGuard, "dense null-space count limited to small systems");
  }
  return lindblad::null_space_dimension(qops::SuperOperator(Matrix(build_full_generator(spec))));
}

namespace {

// Generator with diagonal row `row` replaced by the trace functional.
SparseMatrix with_trace_row(const SparseMatrix& gen, int dim, int row) {
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(static_cast<std::size_t>(gen.nonZeros()) + static_cast<std::size_t>(dim));
  for (int k = 0; k < gen.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(gen, k); it; ++it) {
      if (it.row() != row) trips.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    }
  }
  for (int d = 0; d < dim; ++d) trips.emplace_back(row, d * dim + d, 1.0);
  SparseMatrix a(gen.rows(), gen.cols());
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

// Null vector from the generator with row 0 replaced by the trace
// functional. A second solve with a fixed pseudo-random right-hand side is one
// step of inverse iteration: if the replaced matrix is numerically singular
// (more than one stationary state) that solution blows up.
Vector sparse_null_vector(const SparseMatrix& gen, int dim) {
  const SparseMatrix a = with_trace_row(gen, dim, 0);
  Eigen::SparseLU<SparseMatrix> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) {
    throw Error(ErrorKind::DegenerateSteadyState, "generator with trace row is singular");
  }
  Vector rhs = Vector::Zero(a.rows());
  rhs(0) = 1.0;
  Vector x = lu.solve(rhs);

  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector probe(a.rows());
  for (Index k = 0; k < probe.size(); ++k) probe(k) = cplx(u(rng), u(rng));
  const Vector y = lu.solve(probe);
  if (lu.info() != Eigen::Success || !x.allFinite() || !y.allFinite()) {
    throw Error(ErrorKind::DegenerateSteadyState, "steady-state solve failed");
  }
  double norm_a = 0.0;
  for (int k = 0; k < a.outerSize(); ++k) {
    double col = 0.0;
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) col += std::abs(it.value());
    norm_a = std::max(norm_a, col);
  }
  const double cond = norm_a * y.lpNorm<1>() / probe.lpNorm<1>();
  if (!(cond < kMaxCondition)) {
    throw Error(ErrorKind::DegenerateSteadyState,
                "stationary state is not unique (condition estimate " + std::to_string(cond) + ")");
  }
  return x;
}

}  // namespace

Matrix full_steady_state(const FullSystemSpec& spec) {
  validate(spec);
  const int dim = hilbert_dim(spec);
  const SparseMatrix gen = build_full_generator(spec);
  Vector x;

  if (dim <= kDenseHilbertDim) {
    const Matrix dense(gen);
    Eigen::BDCSVD<Matrix> svd(dense, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cut = qops::kSpectralTol * std::max(1.0, sv(0));
    const int nd = static_cast<int>((sv.array() <= cut).count());
    if (nd != 1) {
      throw Error(ErrorKind::DegenerateSteadyState,
                  "full system has " + std::to_string(nd) + " stationary states");
    }
    x = svd.matrixV().col(dense.cols() - 1);
  } else {
    x = sparse_null_vector(gen, dim);
  }

  Matrix rho = Eigen::Map<const Matrix>(x.data(), dim, dim);
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const Vector r = gen * Eigen::Map<const Vector>(rho.data(), rho.size());
  if (r.cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, gen.norm())) {
    throw Error(ErrorKind::NoConvergence, "steady-state residual too large");
  }
  return rho;
}

FullObservables full_steady_observables(const FullSystemSpec& spec) {
  const Matrix rho = full_steady_state(spec);
  const SparseMatrix a = photon_annihilation(spec);
  const SparseMatrix n = SparseMatrix(a.adjoint()) * a;

  FullObservables obs;
  obs.photon_number = (n * rho).trace().real();
  const OperatorMatrix sz = qops::pauli(Axis::Z);
  const OperatorMatrix sx = qops::pauli(Axis::X);
  for (int j = 0; j < spec.n_atoms; ++j) {
    obs.sz_mean += (atom_operator(spec, j, sz) * rho).trace().real();
    obs.sx_mean += (atom_operator(spec, j, sx) * rho).trace().real();
  }
  obs.sz_mean /= spec.n_atoms;
  obs.sx_mean /= spec.n_atoms;
  return obs;
}

CutoffCheck cutoff_check(const FullSystemSpec& spec, int extra, double threshold) {
  CutoffCheck out;
  out.base = full_steady_observables(spec);
  FullSystemSpec bigger = spec;
  bigger.n_photon += extra;
  out.refined = full_steady_observables(bigger);
  const double ref = std::max(std::abs(out.refined.photon_number), 1e-300);
  out.relative_change = std::abs(out.base.photon_number - out.refined.photon_number) / ref;
  out.converged = out.relative_change < threshold;
  return out;
}

lindblad::CorrelationSeries full_regression_sx(const FullSystemSpec& spec, double tmax,
                                               double dt) {
  validate(spec);
  if (spec.n_atoms != 1) throw Error(ErrorKind::InvalidArgument, "regression check needs N = 1");
  if (spec.g != 0.0) {
    throw Error(ErrorKind::InvalidArgument, "regression check runs on the decoupled system (g = 0)");
  }
  const Matrix gen(build_full_generator(spec));

  Matrix rho;
  if (spec.model.initial_sz) {
    Matrix atom = Matrix::Zero(2, 2);
    atom(0, 0) = 0.5 + *spec.model.initial_sz;
    atom(1, 1) = 0.5 - *spec.model.initial_sz;
    Matrix vac = Matrix::Zero(spec.n_photon, spec.n_photon);
    vac(0, 0) = 1.0;
    rho = qops::kron(OperatorMatrix(vac), OperatorMatrix(atom)).matrix();
    const double drift = (gen * Eigen::Map<const Vector>(rho.data(), rho.size())).cwiseAbs().maxCoeff();
    if (drift > qops::kStructuralTol * std::max(1.0, gen.norm())) {
      throw Error(ErrorKind::DegenerateSteadyState, "designated state is not stationary");
    }
  } else {
    rho = full_steady_state(spec);
  }

  const Matrix sx(atom_operator(spec, 0, qops::pauli(Axis::X)));
  const Matrix start = rho * sx;
  const Vector x0 = Eigen::Map<const Vector>(start.data(), start.size());
  return lindblad::regression_series(gen, x0, qops::expectation_functional(OperatorMatrix(sx)),
                                     tmax, dt);
}

}  // namespace dicke::exactn
