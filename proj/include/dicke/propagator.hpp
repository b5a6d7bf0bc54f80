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

#include <vector>

#include "dicke/qops.hpp"

namespace dicke::qops {

/// exp(G t) for a fixed generator G.
///
/// Uses the eigendecomposition G = V diag(lambda) V^-1 when the eigenvector
/// matrix has condition number <= max_condition; otherwise every call falls
/// back to Pade scaling-and-squaring on G t.
class Propagator {
 public:
  explicit Propagator(const Matrix& generator, double max_condition = 1e8);
  explicit Propagator(const SuperOperator& generator, double max_condition = 1e8)
      : Propagator(generator.matrix(), max_condition) {}

  bool uses_eigenbasis() const { return eigenbasis_; }
  double condition_number() const { return condition_; }
  const Vector& eigenvalues() const { return lambda_; }

  Vector apply(const Vector& v, double t) const;
  Matrix matrix(double t) const;

  /// Coefficients c with v = sum_k c_k V_k. Only valid when uses_eigenbasis().
  Vector modal_coefficients(const Vector& v) const;
  const Matrix& eigenvectors() const { return vecs_; }

 private:
  Matrix generator_;
  Vector lambda_;
  Matrix vecs_;
  Matrix inv_vecs_;
  double condition_ = 0.0;
  bool eigenbasis_ = false;
};

}  // namespace dicke::qops
