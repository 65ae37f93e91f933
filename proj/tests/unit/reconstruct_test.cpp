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

#include "catsim/reconstruct.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "catsim/errors.hpp"

namespace catsim {
namespace {

Matrix2 random_qubit_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix2 a;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) a(i, j) = cplx(g(rng), g(rng));
  }
  Matrix2 rho = a * a.adjoint();
  return rho / rho.trace();
}

TEST(TraceDistance, KnownValues) {
  const auto zero = DensityMatrix::from_pure(fock_state(2, 0));
  const auto one = DensityMatrix::from_pure(fock_state(2, 1));
  EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-14);
  EXPECT_NEAR(trace_distance(zero, zero), 0.0, 1e-14);
  // For qubits the trace distance is half the Bloch-vector separation.
  const LogicalState a = logical_from_bloch(2.0, {0.3, 0.1, -0.5});
  const LogicalState b = logical_from_bloch(2.0, {-0.2, 0.4, 0.6});
  const double sep = std::sqrt(0.25 + 0.09 + 1.21);
  EXPECT_NEAR(trace_distance(Matrix(a.rho), Matrix(b.rho)), sep / 2, 1e-12);
  EXPECT_THROW(trace_distance(Matrix::Identity(2, 2), Matrix::Identity(3, 3)),
               InvalidDimension);
}

TEST(TraceDistance, MetricAxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const Matrix a = random_qubit_state(rng), b = random_qubit_state(rng),
                 c = random_qubit_state(rng);
    const double ab = trace_distance(a, b), ba = trace_distance(b, a);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0 + 1e-12);
    EXPECT_NEAR(ab, ba, 1e-14);
    EXPECT_NEAR(trace_distance(a, a), 0.0, 1e-14);
    EXPECT_LE(trace_distance(a, c), ab + trace_distance(b, c) + 1e-12);
  }
}

TEST(LogicalBasis, OrthonormalAndAlignedWithCoherentStates) {
  const cplx alpha{1.7, 0.4};
  const LogicalBasis basis(24, alpha);
  const Matrix& v = basis.isometry();
  EXPECT_TRUE((v.adjoint() * v).isApprox(Matrix::Identity(2, 2), 1e-12));
  const Vector plus = coherent_state(24, alpha).amplitudes();
  EXPECT_GT(std::abs(v.col(0).dot(plus)), 0.99);
  EXPECT_GT(std::abs(v.col(1).dot(plus)), 0.0);
  EXPECT_THROW(LogicalBasis(10, 0.0), InvalidArgument);
}

TEST(LogicalBasis, PauliAlgebraOnSubspace) {
  const LogicalBasis basis(20, 1.5);
  const Matrix x = basis.sigma_x().matrix(), y = basis.sigma_y().matrix(),
               z = basis.sigma_z().matrix();
  const Matrix proj = basis.isometry() * basis.isometry().adjoint();
  EXPECT_TRUE((x * y).isApprox(kI * z, 1e-12));
  EXPECT_TRUE((x * x).isApprox(proj, 1e-12));
  EXPECT_TRUE((y * z).isApprox(kI * x, 1e-12));
  const auto cat_plus = DensityMatrix::from_pure(cat_state(20, 1.5, CatPhase::plus));
  EXPECT_NEAR(cat_plus.expectation(basis.sigma_x()).real(), 1.0, 1e-10);
  Vector y_plus = basis.isometry() * Eigen::Vector2cd(1.0, kI);
  y_plus.normalize();
  const auto y_state = DensityMatrix::from_pure(PureState({20}, y_plus));
  EXPECT_NEAR(y_state.expectation(basis.sigma_y()).real(), 1.0, 1e-12);
}

TEST(LogicalBasis, LiftCompressRoundTrip) {
  std::mt19937_64 rng(3);
  const LogicalBasis basis(20, cplx(1.2, -0.9));
  for (int k = 0; k < 10; ++k) {
    const Matrix2 rho = random_qubit_state(rng);
    double pop = 0.0;
    const Matrix2 back = basis.compress(basis.lift(rho), &pop);
    EXPECT_TRUE(back.isApprox(rho, 1e-12));
    EXPECT_NEAR(pop, 1.0, 1e-12);
  }
  EXPECT_THROW(basis.compress(DensityMatrix::from_pure(fock_state(10, 0))),
               InvalidDimension);
}

TEST(Bloch, RoundTripAndConventions) {
  const BlochVector r{0.2, -0.5, 0.6};
  const BlochVector back = bloch_vector(logical_from_bloch(2.0, r));
  EXPECT_NEAR(back.x, r.x, 1e-14);
  EXPECT_NEAR(back.y, r.y, 1e-14);
  EXPECT_NEAR(back.z, r.z, 1e-14);
  EXPECT_NEAR(r.norm(), std::sqrt(0.65), 1e-15);
  const auto coh = DensityMatrix::from_pure(coherent_state(24, 2.0));
  EXPECT_NEAR(bloch_vector(project_logical(coh, 2.0)).z, 1.0, 1e-6);
  const auto minus = DensityMatrix::from_pure(coherent_state(24, -2.0));
  EXPECT_NEAR(bloch_vector(project_logical(minus, 2.0)).z, -1.0, 1e-6);
  const auto cat = DensityMatrix::from_pure(cat_state(24, 2.0, CatPhase::minus));
  EXPECT_NEAR(bloch_vector(project_logical(cat, 2.0)).x, -1.0, 1e-10);
}

TEST(Bloch, JsonCarriesBlochAndAlpha) {
  const auto j = to_json(logical_from_bloch(cplx(1.0, 2.0), {0.1, 0.2, 0.3}));
  EXPECT_TRUE(j.contains("alpha"));
  EXPECT_TRUE(j.contains("bloch"));
}

TEST(CoherentOuterWigner, DiagonalIsGaussian) {
  const cplx a{0.5, 1.0}, beta{0.2, 0.7};
  EXPECT_NEAR(coherent_outer_wigner(a, a, beta).real(),
              2.0 / std::numbers::pi * std::exp(-2.0 * std::norm(beta - a)), 1e-14);
  // Sum over the cat components reproduces the cat Wigner function.
  const cplx alpha = 1.3;
  const PureState cat = cat_state(20, alpha, CatPhase::plus);
  const double n2 = 2.0 * (1.0 + std::exp(-2.0 * std::norm(alpha)));
  const cplx w = (coherent_outer_wigner(alpha, alpha, beta) +
                  coherent_outer_wigner(-alpha, -alpha, beta) +
                  coherent_outer_wigner(alpha, -alpha, beta) +
                  coherent_outer_wigner(-alpha, alpha, beta)) /
                 n2;
  EXPECT_NEAR(w.real(), wigner_point(DensityMatrix::from_pure(cat), beta), 1e-10);
}

TEST(Mle, RecoversRandomStatesFromIdealMaps) {
  std::mt19937_64 rng(5);
  const cplx alpha{2.0, 0.5};
  const LogicalBasis basis(30, alpha);
  const Grid grid = Grid::square(3.5, 31);
  for (int k = 0; k < 5; ++k) {
    const Matrix2 rho = random_qubit_state(rng);
    const WignerMap map = wigner_map(basis.lift(rho), grid);
    MleReport report;
    const LogicalState fit = mle_logical(map, alpha, &report);
    EXPECT_LT(trace_distance(Matrix(fit.rho), Matrix(rho)), 1e-3);
    EXPECT_LT(report.residual, 1e-3);
  }
}

TEST(Mle, PureStatesSitOnTheBoundary) {
  const cplx alpha = 2.0;
  const LogicalBasis basis(30, alpha);
  const WignerMap map = wigner_map(basis.lift(logical_from_bloch(alpha, {0, 0, 1}).rho),
                                   Grid::square(3.5, 31));
  MleReport report;
  const LogicalState fit = mle_logical(map, alpha, &report);
  EXPECT_NEAR(bloch_vector(fit).z, 1.0, 1e-3);
}

TEST(AlphaEstimate, FindsLobesOfRotatedCat) {
  const cplx alpha = std::polar(2.27, 0.3);
  const auto rho = DensityMatrix::from_pure(cat_state(30, alpha, CatPhase::plus));
  const WignerMap map = wigner_map(rho, Grid::square(4.0, 81));
  const cplx est = estimate_alpha_from_map(map);
  EXPECT_NEAR(std::abs(est - alpha), 0.0, 0.06);
  const auto lobes = locate_lobes(map);
  EXPECT_NEAR(std::abs(lobes[0] + lobes[1]), 0.0, 0.1);
  const WignerMap vacuum =
      wigner_map(DensityMatrix::from_pure(fock_state(4, 0)), Grid::square(3.0, 31));
  EXPECT_THROW(estimate_alpha_from_map(vacuum), FitError);
}

}  // namespace
}  // namespace catsim
