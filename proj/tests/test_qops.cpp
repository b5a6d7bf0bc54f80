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

#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "dicke/qops.hpp"

using namespace dicke;
using namespace dicke::qops;

namespace {

const cplx I(0.0, 1.0);

OperatorMatrix op2(cplx a, cplx b, cplx c, cplx d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return OperatorMatrix(m);
}

// Random full-rank density matrix A A^+ / Tr.
DensityMatrix random_rho(std::mt19937& rng, Index dim = 2) {
  std::normal_distribution<double> n;
  Matrix a(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) a(i, j) = cplx(n(rng), n(rng));
  Matrix r = a * a.adjoint();
  r /= r.trace();
  r = 0.5 * (r + r.adjoint()).eval();
  return DensityMatrix(OperatorMatrix(r));
}

// Element-wise master equation, written out directly.
Matrix master_rhs(const Matrix& h, const std::vector<LindbladChannel>& chans, const Matrix& rho) {
  Matrix out = -I * (h * rho - rho * h);
  for (const auto& c : chans) {
    const Matrix& l = c.op.matrix();
    const Matrix ld = l.adjoint();
    out += c.rate * (2.0 * l * rho * ld - ld * l * rho - rho * ld * l);
  }
  return out;
}

std::vector<std::vector<LindbladChannel>> sample_channel_sets() {
  const auto sm = pauli(Axis::Minus), sp = pauli(Axis::Plus), sz = pauli(Axis::Z);
  return {
      {},
      {{sz, 0.3}},
      {{sm, 0.7}, {sp, 0.2}},
      {{sm + 0.4 * sp, 0.25}},
      {{sm + 1.0 * sp, 0.5}, {sz, 0.1}},
  };
}

}  // namespace

TEST_CASE("pauli operators follow the spin-1/2 convention") {
  const auto sx = pauli(Axis::X), sy = pauli(Axis::Y), sz = pauli(Axis::Z);
  CHECK(max_abs_diff(commutator(sx, sy), I * sz) == 0.0);
  CHECK(max_abs_diff(commutator(sy, sz), I * sx) == 0.0);
  CHECK(max_abs_diff(sx * sx, 0.25 * OperatorMatrix::identity(2)) == 0.0);
  CHECK(max_abs_diff(pauli(Axis::Plus), pauli(Axis::Minus).adjoint()) == 0.0);
  CHECK(pauli(Axis::Plus)(0, 1) == cplx(1.0));
  CHECK(pauli(Axis::Minus)(1, 0) == cplx(1.0));
  CHECK(sz(0, 0) == cplx(0.5));
  CHECK(sz(1, 1) == cplx(-0.5));
  CHECK(sx.is_hermitian());
  CHECK(sy.is_hermitian());
  CHECK_FALSE(pauli(Axis::Plus).is_hermitian());
  CHECK((2.0 * sx).is_unitary());
}

TEST_CASE("pauli labels") {
  CHECK(max_abs_diff(pauli("x"), pauli(Axis::X)) == 0.0);
  CHECK(max_abs_diff(pauli("minus"), pauli(Axis::Minus)) == 0.0);
  CHECK(max_abs_diff(pauli("plus"), pauli(Axis::Plus)) == 0.0);
  CHECK_THROWS_AS(pauli("w"), Error);
  try {
    pauli("q");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("commutator") {
  const auto a = op2(1.0, 2.0 + I, -3.0, 0.5);
  CHECK(max_abs_diff(commutator(a, a), OperatorMatrix::zero(2)) == 0.0);
  CHECK(max_abs_diff(commutator(pauli(Axis::Z), pauli(Axis::Plus)), pauli(Axis::Plus)) == 0.0);
  CHECK(max_abs_diff(commutator(pauli(Axis::Z), pauli(Axis::Minus)), -1.0 * pauli(Axis::Minus)) ==
        0.0);
  CHECK_THROWS_AS(commutator(a, OperatorMatrix::identity(3)), Error);
}

TEST_CASE("operator validation") {
  Matrix rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(OperatorMatrix{rect}, Error);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(OperatorMatrix{bad}, Error);

  CHECK_THROWS_AS(DensityMatrix(OperatorMatrix::identity(2)), Error);  // trace 2
  CHECK_THROWS_AS(DensityMatrix(op2(1.5, 0.0, 0.0, -0.5)), Error);     // negative
  CHECK_THROWS_AS(DensityMatrix(op2(0.5, 0.1, 0.0, 0.5)), Error);      // not Hermitian
  CHECK_NOTHROW(DensityMatrix(op2(0.5, 0.5, 0.5, 0.5)));
}

TEST_CASE("bloch construction") {
  const auto rho = DensityMatrix::from_bloch(0.1, -0.2, 0.3);
  CHECK(rho.expectation(pauli(Axis::X)).real() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(rho.expectation(pauli(Axis::Y)).real() == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(rho.expectation(pauli(Axis::Z)).real() == doctest::Approx(0.3).epsilon(1e-15));
  CHECK_THROWS_AS(DensityMatrix::from_bloch(0.5, 0.5, 0.5), Error);
}

TEST_CASE("vectorization stacks columns") {
  const auto a = op2(1.0, 2.0, 3.0, 4.0);
  const Vector v = vectorize(a);
  CHECK(v(0) == cplx(1.0));
  CHECK(v(1) == cplx(3.0));
  CHECK(v(2) == cplx(2.0));
  CHECK(v(3) == cplx(4.0));

  std::mt19937 rng(7);
  for (int k = 0; k < 20; ++k) {
    const auto rho = random_rho(rng, 3);
    CHECK(max_abs_diff(devectorize(vectorize(rho.op())), rho.op()) == 0.0);
  }

  // vec(A X B) = (B^T kron A) vec X
  const auto x = op2(0.3, I, -1.0, 2.0), b = op2(0.0, 1.0, I, -2.0);
  const Vector lhs = vectorize(a * x * b);
  const Vector rhs = (left_multiplication(a).matrix() * right_multiplication(b).matrix()) * vectorize(x);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
  const Vector via_kron = kron(OperatorMatrix(b.matrix().transpose()), a).matrix() * vectorize(x);
  CHECK((via_kron - lhs).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("trace and expectation functionals") {
  std::mt19937 rng(11);
  const auto rho = random_rho(rng);
  const auto a = op2(0.2, 1.0 - I, 3.0, -0.7);
  CHECK(std::abs((trace_functional(2) * vectorize(rho.op()))(0) - cplx(1.0)) < 1e-14);
  CHECK(std::abs((expectation_functional(a) * vectorize(rho.op()))(0) - rho.expectation(a)) < 1e-14);
}

TEST_CASE("generator matches the element-wise master equation") {
  const auto h = 0.8 * pauli(Axis::Z) + 0.3 * pauli(Axis::X);
  for (const auto& chans : sample_channel_sets()) {
    const auto gen = lindblad_generator(h, chans);
    for (Index k = 0; k < 4; ++k) {
      Matrix e = Matrix::Zero(2, 2);
      e(k % 2, k / 2) = 1.0;
      const Matrix expect = master_rhs(h.matrix(), chans, e);
      const Matrix got = gen.apply(OperatorMatrix(e)).matrix();
      CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("generator spectra") {
  const double wz = 1.3;
  const auto h = wz * pauli(Axis::Z);

  SUBCASE("closed spin") {
    const auto gen = lindblad_generator(h, {});
    Eigen::ComplexEigenSolver<Matrix> es(gen.matrix());
    std::vector<double> im;
    for (Index i = 0; i < 4; ++i) {
      CHECK(std::abs(es.eigenvalues()(i).real()) < 1e-12);
      im.push_back(es.eigenvalues()(i).imag());
    }
    std::sort(im.begin(), im.end());
    CHECK(im[0] == doctest::Approx(-wz).epsilon(1e-12));
    CHECK(std::abs(im[1]) < 1e-12);
    CHECK(std::abs(im[2]) < 1e-12);
    CHECK(im[3] == doctest::Approx(wz).epsilon(1e-12));
  }

  SUBCASE("dephasing coherences decay at gamma") {
    const double g = 0.37;
    const std::vector<LindbladChannel> chans = {{pauli(Axis::Z), g}};
    const auto gen = lindblad_generator(h, chans);
    Eigen::ComplexEigenSolver<Matrix> es(gen.matrix());
    int coherent = 0;
    for (Index i = 0; i < 4; ++i) {
      const cplx ev = es.eigenvalues()(i);
      if (std::abs(ev) < 1e-12) continue;
      CHECK(ev.real() == doctest::Approx(-g).epsilon(1e-12));
      CHECK(std::abs(ev.imag()) == doctest::Approx(wz).epsilon(1e-12));
      ++coherent;
    }
    CHECK(coherent == 2);
  }

  SUBCASE("t = 1 mixing channel conserves sigma^x") {
    const std::vector<LindbladChannel> chans = {{pauli(Axis::Minus) + pauli(Axis::Plus), 0.5}};
    const auto adj = heisenberg_generator(OperatorMatrix::zero(2), chans);
    CHECK(adj.apply(pauli(Axis::X)).norm() < 1e-14);
  }
}

TEST_CASE("heisenberg generator is the adjoint") {
  std::mt19937 rng(3);
  const auto h = 0.6 * pauli(Axis::Z) - 0.2 * pauli(Axis::Y);
  for (const auto& chans : sample_channel_sets()) {
    const auto gen = lindblad_generator(h, chans);
    const auto adj = heisenberg_generator(h, chans);
    const auto rho = random_rho(rng);
    const auto a = op2(0.4, 1.0 + I, -0.3, 2.0);
    const cplx lhs = (a * gen.apply(rho.op())).trace();
    const cplx rhs = (adj.apply(a) * rho.op()).trace();
    CHECK(std::abs(lhs - rhs) < 1e-14);
  }
}

TEST_CASE("generator properties on random states") {
  std::mt19937 rng(2024);
  const auto h = 1.1 * pauli(Axis::Z);
  for (const auto& chans : sample_channel_sets()) {
    const auto gen = lindblad_generator(h, chans);
    CHECK((trace_functional(2) * gen.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    for (int k = 0; k < 100; ++k) {
      const auto rho = random_rho(rng);
      const auto d = gen.apply(rho.op());
      CHECK(std::abs(d.trace()) < 1e-12);
      CHECK(d.is_hermitian(1e-12));
    }
    for (double t : {0.0, 0.5, 2.0, 10.0 / 1.1}) {
      const Matrix prop = (gen.matrix() * t).exp();
      const auto rho = random_rho(rng);
      const Matrix out = devectorize(prop * vectorize(rho.op())).matrix();
      Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (out + out.adjoint()));
      CHECK(es.eigenvalues().minCoeff() > -1e-9);
    }
  }
}

TEST_CASE("generator argument checks") {
  const std::vector<LindbladChannel> neg = {{pauli(Axis::Z), -0.1}};
  CHECK_THROWS_AS(lindblad_generator(pauli(Axis::Z), neg), Error);
  try {
    lindblad_generator(pauli(Axis::Z), neg);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativeRate);
  }
  try {
    lindblad_generator(pauli(Axis::Plus), {});
    FAIL("non-Hermitian h accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonHermitian);
  }
  const std::vector<LindbladChannel> wrong_dim = {{OperatorMatrix::identity(3), 0.1}};
  CHECK_THROWS_AS(lindblad_generator(pauli(Axis::Z), wrong_dim), Error);
}
