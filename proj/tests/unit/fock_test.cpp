// Copyright 2026 The catsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "catsim/fock.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "catsim/errors.hpp"

namespace catsim {
namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

TEST(FockOperators, LadderMatrixElements) {
  const Operator a = annihilation_op(6);
  for (int n = 1; n < 6; ++n) {
    EXPECT_NEAR(std::abs(a.matrix()(n - 1, n) - std::sqrt(double(n))), 0.0, 1e-15);
  }
  const Matrix comm = (a * a.adjoint() - a.adjoint() * a).matrix();
  for (int n = 0; n < 5; ++n) EXPECT_NEAR(comm(n, n).real(), 1.0, 1e-14);
  EXPECT_NEAR(comm(5, 5).real(), -5.0, 1e-14);
  EXPECT_TRUE(number_op(6).matrix().isApprox((a.adjoint() * a).matrix()));
}

TEST(FockOperators, ParityIsDiagonalSign) {
  const Operator p = parity_op(5);
  for (int n = 0; n < 5; ++n) EXPECT_EQ(p.matrix()(n, n).real(), n % 2 ? -1.0 : 1.0);
}

TEST(FockOperators, DimensionErrors) {
  EXPECT_THROW(annihilation_op(1), InvalidDimension);
  EXPECT_THROW(fock_state(4, 4), InvalidDimension);
  EXPECT_THROW(annihilation_op(3) + annihilation_op(4), InvalidDimension);
}

TEST(FockStates, CoherentAmplitudesMatchPoissonSeries) {
  const cplx alpha{1.3, -0.4};
  const PureState psi = coherent_state(30, alpha);
  for (int n = 0; n < 12; ++n) {
    const cplx expected =
        std::exp(-std::norm(alpha) / 2) * std::pow(alpha, n) / std::sqrt(factorial(n));
    EXPECT_NEAR(std::abs(psi.amplitudes()(n) - expected), 0.0, 1e-12) << n;
  }
}

TEST(FockStates, DisplacedVacuumIsCoherent) {
  const cplx beta{0.8, 0.5};
  const Vector d = displacement_op(40, beta).matrix() * fock_state(40, 0).amplitudes();
  const Vector c = coherent_state(40, beta).amplitudes();
  EXPECT_NEAR(std::abs(c.dot(d)), 1.0, 1e-10);
}

TEST(FockStates, CatNormalisationAndParity) {
  const cplx alpha = 2.0;
  const PureState plus = cat_state(30, alpha, CatPhase::plus);
  const PureState minus = cat_state(30, alpha, CatPhase::minus);
  EXPECT_NEAR(plus.amplitudes().norm(), 1.0, 1e-12);
  const double norm = 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-2.0 * std::norm(alpha))));
  const double c0 = 2.0 * norm * std::exp(-std::norm(alpha) / 2);
  EXPECT_NEAR(plus.amplitudes()(0).real(), c0, 1e-10);
  const auto rp = DensityMatrix::from_pure(plus);
  const auto rm = DensityMatrix::from_pure(minus);
  EXPECT_NEAR(rp.expectation(parity_op(30)).real(), 1.0, 1e-10);
  EXPECT_NEAR(rm.expectation(parity_op(30)).real(), -1.0, 1e-10);
  EXPECT_THROW(cat_state(10, 0.0, CatPhase::minus), InvalidState);
}

TEST(FockStates, TruncationGuard) {
  EXPECT_EQ(required_dim(2.0), 13);
  EXPECT_EQ(required_dim(5.0), 46);
  EXPECT_NO_THROW(check_truncation(13, 2.0));
  try {
    coherent_state(20, 5.0);
    FAIL() << "expected TruncationError";
  } catch (const TruncationError& e) {
    EXPECT_EQ(e.required_dim(), 46);
  }
  EXPECT_NO_THROW(coherent_state(20, 5.0, Guard::skip));
}

TEST(FockExpm, MatchesEigendecomposition) {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Random(7, 7);
  h = (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<cplx>() * cplx(0.0, -1.7)).array().exp();
  const Matrix expected =
      es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  EXPECT_LT((expm(cplx(0.0, -1.7) * h) - expected).norm(), 1e-11);
}

TEST(FockExpm, NilpotentAndLargeNorm) {
  Matrix n = Matrix::Zero(3, 3);
  n(0, 1) = 2.0;
  n(1, 2) = 3.0;
  Matrix expected = Matrix::Identity(3, 3) + n;
  expected(0, 2) = 3.0;
  EXPECT_LT((expm(n) - expected).norm(), 1e-13);
  Matrix big = Matrix::Zero(2, 2);
  big(0, 0) = -50.0;
  big(1, 1) = cplx(0.0, 40.0);
  const Matrix e = expm(big);
  EXPECT_NEAR(std::abs(e(0, 0) - std::exp(-50.0)), 0.0, 1e-25);
  EXPECT_NEAR(std::abs(e(1, 1) - std::exp(cplx(0.0, 40.0))), 0.0, 1e-12);
}

TEST(FockSqueeze, SqueezedVacuumVariance) {
  const double r = 0.5;
  const int dim = 40;
  const Vector psi = squeeze_op(dim, r).matrix() * fock_state(dim, 0).amplitudes();
  const Matrix a = annihilation_op(dim).matrix();
  const Matrix x = (a + a.adjoint()) / 2.0;
  const Matrix p = (a - a.adjoint()) / cplx(0.0, 2.0);
  EXPECT_NEAR(psi.dot(x * x * psi).real(), std::exp(-2 * r) / 4, 1e-8);
  EXPECT_NEAR(psi.dot(p * p * psi).real(), std::exp(2 * r) / 4, 1e-8);
  EXPECT_THROW(squeeze_op(dim, 3.5), TruncationError);
}

TEST(FockRotation, RotatesCoherentPhase) {
  const cplx beta = 1.2;
  const double phi = 0.7;
  const Vector out = rotation_op(25, phi).matrix() * coherent_state(25, beta).amplitudes();
  const Vector expected = coherent_state(25, beta * std::polar(1.0, -phi)).amplitudes();
  EXPECT_NEAR(std::abs(expected.dot(out)), 1.0, 1e-12);
}

TEST(FockComposite, TensorEmbedAndPartialTrace) {
  const auto a = DensityMatrix::from_pure(coherent_state(8, 0.6));
  const auto b = DensityMatrix::from_pure(fock_state(3, 1));
  const DensityMatrix ab = tensor(a, b);
  EXPECT_EQ(ab.dims(), (Dims{8, 3}));
  EXPECT_EQ(total_dim(ab.dims()), 24);
  EXPECT_TRUE(partial_trace(ab, 0).matrix().isApprox(a.matrix(), 1e-12));
  EXPECT_TRUE(partial_trace(ab, 1).matrix().isApprox(b.matrix(), 1e-12));
  const Operator n_b = embed(number_op(3), ab.dims(), 1);
  EXPECT_NEAR(ab.expectation(n_b).real(), 1.0, 1e-12);
  const Operator n_a = embed(number_op(8), ab.dims(), 0);
  EXPECT_NEAR(ab.expectation(n_a).real(), a.expectation(number_op(8)).real(), 1e-12);
}

TEST(FockDensity, ValidatesConstruction) {
  Matrix m = Matrix::Identity(2, 2) * 0.6;
  EXPECT_THROW(DensityMatrix({2}, m), InvalidState);
  m = Matrix::Identity(2, 2) * 0.5;
  m(0, 1) = 0.3;
  EXPECT_THROW(DensityMatrix({2}, m), InvalidState);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_NO_THROW(DensityMatrix({2}, neg));
  EXPECT_THROW(DensityMatrix::checked({2}, neg), InvalidState);
  EXPECT_THROW(DensityMatrix({3}, Matrix::Identity(2, 2) / 2.0), InvalidDimension);
}

TEST(FockDensity, FidelityAndUnitarity) {
  const PureState psi = coherent_state(20, cplx(0.3, 0.9));
  EXPECT_NEAR(fidelity(DensityMatrix::from_pure(psi), psi), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(DensityMatrix::from_pure(fock_state(20, 1)), fock_state(20, 0)), 0.0,
              1e-15);
  EXPECT_LT(unitarity_error(displacement_op(40, 1.0), 20), 1e-8);
  EXPECT_LT(unitarity_error(qubit_ry(0.4)), 1e-15);
}

TEST(FockQubit, PauliAlgebra) {
  const Matrix x = sigma_x().matrix(), y = sigma_y().matrix(), z = sigma_z().matrix();
  EXPECT_TRUE((x * y).isApprox(kI * z));
  EXPECT_TRUE((sigma_plus() * sigma_minus()).matrix().isApprox((z + Matrix::Identity(2, 2)) / 2.0));
  const Vector e = qubit_ry(std::numbers::pi).matrix() * fock_state(2, 0).amplitudes();
  EXPECT_NEAR(std::norm(e(1)), 1.0, 1e-15);
}

}  // namespace
}  // namespace catsim
