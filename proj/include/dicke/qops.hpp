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

// Operator algebra for few-level systems.
//
// Spin operators follow the spin-1/2 convention sigma^a = (Pauli matrix)/2,
// so sigma^z has eigenvalues +-1/2 and [sigma^x, sigma^y] = i sigma^z. The
// raising/lowering operators are the full matrices sigma^+ = [[0,1],[0,0]]
// and sigma^- = [[0,0],[1,0]]. Basis index 0 is spin up.
//
// Density matrices are vectorized by stacking columns, so that
//   vec(A X B) = (B^T kron A) vec(X),
// and every superoperator in this library acts on that representation.

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dicke/error.hpp"

namespace dicke::qops {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kStructuralTol = 1e-12;
inline constexpr double kSpectralTol = 1e-9;

class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  /// Throws DimensionMismatch for non-square input, InvalidArgument for NaN/Inf.
  explicit OperatorMatrix(Matrix m);

  static OperatorMatrix identity(Index dim);
  static OperatorMatrix zero(Index dim);

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  cplx operator()(Index row, Index col) const { return m_(row, col); }

  OperatorMatrix adjoint() const;
  cplx trace() const { return m_.trace(); }
  double norm() const { return m_.norm(); }

  bool is_hermitian(double tol = kStructuralTol) const;
  bool is_unitary(double tol = kStructuralTol) const;
  /// Hermitian within tol and no eigenvalue below -tol.
  bool is_positive(double tol = kStructuralTol) const;

  OperatorMatrix& operator+=(const OperatorMatrix& rhs);
  OperatorMatrix& operator-=(const OperatorMatrix& rhs);
  OperatorMatrix& operator*=(cplx s);

  friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
  friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
  friend OperatorMatrix operator*(OperatorMatrix a, cplx s) { return a *= s; }
  friend OperatorMatrix operator*(cplx s, OperatorMatrix a) { return a *= s; }
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);

 private:
  Matrix m_;
};

/// Max entrywise distance.
double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b);

enum class Axis { X, Y, Z, Plus, Minus };

Axis parse_axis(std::string_view label);
OperatorMatrix pauli(Axis which);
OperatorMatrix pauli(std::string_view label);

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

/// Kronecker product a (x) b; a acts on the slower index.
OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b);

class DensityMatrix {
 public:
  /// Validates unit trace, Hermiticity and positivity within tol.
  explicit DensityMatrix(OperatorMatrix op, double tol = kStructuralTol);

  /// Single spin from its expectation values <sigma^a>.
  static DensityMatrix from_bloch(double sx, double sy, double sz);
  static DensityMatrix diagonal(std::span<const double> populations);

  const OperatorMatrix& op() const { return op_; }
  Index dim() const { return op_.dim(); }

  /// Tr[a rho]
  cplx expectation(const OperatorMatrix& a) const;

 private:
  OperatorMatrix op_;
};

Vector vectorize(const OperatorMatrix& op);
OperatorMatrix devectorize(const Vector& v);

class SuperOperator {
 public:
  SuperOperator() = default;
  /// m must be square with a perfect-square dimension.
  explicit SuperOperator(Matrix m);

  Index dim() const { return m_.rows(); }
  Index hilbert_dim() const { return hilbert_dim_; }
  const Matrix& matrix() const { return m_; }

  OperatorMatrix apply(const OperatorMatrix& op) const;

 private:
  Matrix m_;
  Index hilbert_dim_ = 0;
};

/// Row functional t with t . vec(X) = Tr[X].
Eigen::RowVectorXcd trace_functional(Index hilbert_dim);

/// Row functional w with w . vec(X) = Tr[a X].
Eigen::RowVectorXcd expectation_functional(const OperatorMatrix& a);

SuperOperator left_multiplication(const OperatorMatrix& a);
SuperOperator right_multiplication(const OperatorMatrix& b);

/// Jump operator with its rate in the doubled convention below.
struct LindbladChannel {
  OperatorMatrix op;
  double rate = 0.0;
};

/// Generator of
///   d rho/dt = -i[h, rho] + sum_a rate_a (2 L rho L^+ - L^+L rho - rho L^+L).
/// The explicit factor 2 makes a sigma^z channel damp coherences at exactly
/// its rate. Throws NonHermitian / NegativeRate / DimensionMismatch.
SuperOperator lindblad_generator(const OperatorMatrix& h,
                                 std::span<const LindbladChannel> channels);

/// Heisenberg-picture (adjoint) generator of the same master equation:
///   dA/dt = i[h, A] + sum_a rate_a (2 L^+ A L - L^+L A - A L^+L).
SuperOperator heisenberg_generator(const OperatorMatrix& h,
                                   std::span<const LindbladChannel> channels);

}  // namespace dicke::qops
