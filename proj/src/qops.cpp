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

#include "dicke/qops.hpp"

#include <cmath>
#include <string>

namespace dicke::qops {

namespace {

void require_same_dim(Index a, Index b, const char* where) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(where) + ": dimensions " + std::to_string(a) + " and " +
                    std::to_string(b) + " differ");
  }
}

}  // namespace

OperatorMatrix::OperatorMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "operator matrix must be square");
  }
  if (!m_.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, "operator matrix has non-finite entries");
  }
}

OperatorMatrix OperatorMatrix::identity(Index dim) {
  return OperatorMatrix(Matrix::Identity(dim, dim));
}

OperatorMatrix OperatorMatrix::zero(Index dim) { return OperatorMatrix(Matrix::Zero(dim, dim)); }

OperatorMatrix OperatorMatrix::adjoint() const { return OperatorMatrix(m_.adjoint()); }

bool OperatorMatrix::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool OperatorMatrix::is_unitary(double tol) const {
  return (m_.adjoint() * m_ - Matrix::Identity(dim(), dim())).cwiseAbs().maxCoeff() <= tol;
}

bool OperatorMatrix::is_positive(double tol) const {
  if (!is_hermitian(tol)) return false;
  const Matrix herm = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& rhs) {
  require_same_dim(dim(), rhs.dim(), "operator +");
  m_ += rhs.m_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& rhs) {
  require_same_dim(dim(), rhs.dim(), "operator -");
  m_ -= rhs.m_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(cplx s) {
  m_ *= s;
  return *this;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "operator *");
  return OperatorMatrix(a.matrix() * b.matrix());
}

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "max_abs_diff");
  if (a.dim() == 0) return 0.0;
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

Axis parse_axis(std::string_view label) {
  if (label == "x") return Axis::X;
  if (label == "y") return Axis::Y;
  if (label == "z") return Axis::Z;
  if (label == "plus" || label == "+") return Axis::Plus;
  if (label == "minus" || label == "-") return Axis::Minus;
  throw Error(ErrorKind::InvalidArgument, "unknown spin axis '" + std::string(label) + "'");
}

OperatorMatrix pauli(Axis which) {
  const cplx i(0.0, 1.0);
  Matrix m(2, 2);
  switch (which) {
    case Axis::X: m << 0.0, 0.5, 0.5, 0.0; break;
    case Axis::Y: m << 0.0, -0.5 * i, 0.5 * i, 0.0; break;
    case Axis::Z: m << 0.5, 0.0, 0.0, -0.5; break;
    case Axis::Plus: m << 0.0, 1.0, 0.0, 0.0; break;
    case Axis::Minus: m << 0.0, 0.0, 1.0, 0.0; break;
  }
  return OperatorMatrix(std::move(m));
}

OperatorMatrix pauli(std::string_view label) { return pauli(parse_axis(label)); }

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "commutator");
  return OperatorMatrix(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
  const Index da = a.dim(), db = b.dim();
  Matrix out(da * db, da * db);
  for (Index i = 0; i < da; ++i) {
    for (Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a(i, j) * b.matrix();
    }
  }
  return OperatorMatrix(std::move(out));
}

DensityMatrix::DensityMatrix(OperatorMatrix op, double tol) : op_(std::move(op)) {
  if (std::abs(op_.trace() - 1.0) > tol) {
    throw Error(ErrorKind::InvalidArgument, "density matrix trace differs from 1");
  }
  if (!op_.is_hermitian(tol)) {
    throw Error(ErrorKind::NonHermitian, "density matrix is not Hermitian");
  }
  if (!op_.is_positive(tol)) {
    throw Error(ErrorKind::InvalidArgument, "density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_bloch(double sx, double sy, double sz) {
  OperatorMatrix rho = 0.5 * OperatorMatrix::identity(2);
  rho += cplx(2.0 * sx) * pauli(Axis::X);
  rho += cplx(2.0 * sy) * pauli(Axis::Y);
  rho += cplx(2.0 * sz) * pauli(Axis::Z);
  return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> populations) {
  Matrix m = Matrix::Zero(static_cast<Index>(populations.size()),
                          static_cast<Index>(populations.size()));
  for (std::size_t k = 0; k < populations.size(); ++k) {
    m(static_cast<Index>(k), static_cast<Index>(k)) = populations[k];
  }
  return DensityMatrix(OperatorMatrix(std::move(m)));
}

cplx DensityMatrix::expectation(const OperatorMatrix& a) const { return (a * op_).trace(); }

Vector vectorize(const OperatorMatrix& op) {
  const Matrix& m = op.matrix();
  return Eigen::Map<const Vector>(m.data(), m.size());
}

OperatorMatrix devectorize(const Vector& v) {
  const auto d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size()) {
    throw Error(ErrorKind::DimensionMismatch, "vector length is not a perfect square");
  }
  return OperatorMatrix(Eigen::Map<const Matrix>(v.data(), d, d));
}

SuperOperator::SuperOperator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "superoperator must be square");
  }
  hilbert_dim_ = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(m_.rows()))));
  if (hilbert_dim_ * hilbert_dim_ != m_.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "superoperator dimension is not a perfect square");
  }
  if (!m_.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, "superoperator has non-finite entries");
  }
}

OperatorMatrix SuperOperator::apply(const OperatorMatrix& op) const {
  require_same_dim(op.dim(), hilbert_dim_, "SuperOperator::apply");
  return devectorize(m_ * vectorize(op));
}

Eigen::RowVectorXcd trace_functional(Index hilbert_dim) {
  Eigen::RowVectorXcd t = Eigen::RowVectorXcd::Zero(hilbert_dim * hilbert_dim);
  for (Index k = 0; k < hilbert_dim; ++k) t(k * hilbert_dim + k) = 1.0;
  return t;
}

Eigen::RowVectorXcd expectation_functional(const OperatorMatrix& a) {
  // Tr[a X] = sum_ij a_ij X_ji = vec(a^T) . vec(X)
  const Matrix at = a.matrix().transpose();
  return Eigen::Map<const Eigen::RowVectorXcd>(at.data(), at.size());
}

SuperOperator left_multiplication(const OperatorMatrix& a) {
  return SuperOperator(kron(OperatorMatrix::identity(a.dim()), a).matrix());
}

SuperOperator right_multiplication(const OperatorMatrix& b) {
  return SuperOperator(
      kron(OperatorMatrix(b.matrix().transpose()), OperatorMatrix::identity(b.dim())).matrix());
}

namespace {

void validate_generator_inputs(const OperatorMatrix& h,
                               std::span<const LindbladChannel> channels) {
  const double tol = kStructuralTol * std::max(1.0, h.norm());
  if (!h.is_hermitian(tol)) {
    throw Error(ErrorKind::NonHermitian, "Hamiltonian is not Hermitian");
  }
  for (const auto& ch : channels) {
    require_same_dim(ch.op.dim(), h.dim(), "lindblad channel");
    if (!std::isfinite(ch.rate)) {
      throw Error(ErrorKind::InvalidArgument, "channel rate is not finite");
    }
    if (ch.rate < 0.0) {
      throw Error(ErrorKind::NegativeRate, "channel rate is negative");
    }
  }
}

}  // namespace

SuperOperator lindblad_generator(const OperatorMatrix& h,
                                 std::span<const LindbladChannel> channels) {
  validate_generator_inputs(h, channels);
  const Index d = h.dim();
  const cplx i(0.0, 1.0);
  const OperatorMatrix id = OperatorMatrix::identity(d);
  const OperatorMatrix ht(h.matrix().transpose());

  Matrix gen = -i * (kron(id, h).matrix() - kron(ht, id).matrix());
  for (const auto& ch : channels) {
    if (ch.rate == 0.0) continue;
    const OperatorMatrix ldl = ch.op.adjoint() * ch.op;
    const OperatorMatrix lconj(ch.op.matrix().conjugate());
    const OperatorMatrix ldl_t(ldl.matrix().transpose());
    gen += ch.rate * (2.0 * kron(lconj, ch.op).matrix() - kron(id, ldl).matrix() -
                      kron(ldl_t, id).matrix());
  }
  return SuperOperator(std::move(gen));
}

SuperOperator heisenberg_generator(const OperatorMatrix& h,
                                   std::span<const LindbladChannel> channels) {
  validate_generator_inputs(h, channels);
  const Index d = h.dim();
  const cplx i(0.0, 1.0);
  const OperatorMatrix id = OperatorMatrix::identity(d);
  const OperatorMatrix ht(h.matrix().transpose());

  Matrix gen = i * (kron(id, h).matrix() - kron(ht, id).matrix());
  for (const auto& ch : channels) {
    if (ch.rate == 0.0) continue;
    const OperatorMatrix ldag = ch.op.adjoint();
    const OperatorMatrix ldl = ldag * ch.op;
    // vec(L^+ A L) = (L^T kron L^+) vec(A)
    const OperatorMatrix lt(ch.op.matrix().transpose());
    const OperatorMatrix ldl_t(ldl.matrix().transpose());
    gen += ch.rate *
           (2.0 * kron(lt, ldag).matrix() - kron(id, ldl).matrix() - kron(ldl_t, id).matrix());
  }
  return SuperOperator(std::move(gen));
}

}  // namespace dicke::qops
