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

#include "dicke/propagator.hpp"

#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

namespace dicke::qops {

Propagator::Propagator(const Matrix& generator, double max_condition) : generator_(generator) {
  if (generator.rows() != generator.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "propagator generator must be square");
  }
  Eigen::ComplexEigenSolver<Matrix> es(generator_);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "eigendecomposition of generator failed");
  }
  lambda_ = es.eigenvalues();
  vecs_ = es.eigenvectors();

  Eigen::JacobiSVD<Matrix> svd(vecs_);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  condition_ = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
  eigenbasis_ = condition_ <= max_condition;
  if (eigenbasis_) inv_vecs_ = vecs_.partialPivLu().inverse();
}

Vector Propagator::apply(const Vector& v, double t) const {
  if (eigenbasis_) {
    Vector c = inv_vecs_ * v;
    for (Index k = 0; k < c.size(); ++k) c(k) *= std::exp(lambda_(k) * t);
    return vecs_ * c;
  }
  return matrix(t) * v;
}

Matrix Propagator::matrix(double t) const {
  if (eigenbasis_) {
    Vector e(lambda_.size());
    for (Index k = 0; k < e.size(); ++k) e(k) = std::exp(lambda_(k) * t);
    return vecs_ * e.asDiagonal() * inv_vecs_;
  }
  Matrix scaled = generator_ * t;
  return scaled.exp();
}

Vector Propagator::modal_coefficients(const Vector& v) const {
  if (!eigenbasis_) {
    throw Error(ErrorKind::InvalidArgument, "generator is not diagonalizable to working precision");
  }
  return inv_vecs_ * v;
}

}  // namespace dicke::qops
