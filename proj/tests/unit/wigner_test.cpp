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

#include "catsim/wigner.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "catsim/errors.hpp"

namespace catsim {
namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix pure(const PureState& psi) { return DensityMatrix::from_pure(psi); }

double coherent_wigner(cplx alpha, cplx beta) {
  return 2.0 / kPi * std::exp(-2.0 * std::norm(beta - alpha));
}

TEST(Wigner, CoherentStateIsGaussian) {
  const cplx alpha{1.1, -0.6};
  const auto rho = pure(coherent_state(25, alpha));
  for (const cplx beta : {cplx(0, 0), cplx(1.1, -0.6), cplx(0.5, 0.5), cplx(-2.0, 1.0)}) {
    EXPECT_NEAR(wigner_point(rho, beta), coherent_wigner(alpha, beta), 1e-10);
  }
  EXPECT_NEAR(wigner_point(pure(fock_state(3, 0)), 0.0), kWignerMax, 1e-14);
}

TEST(Wigner, FockOneHasNegativeCentre) {
  const auto rho = pure(fock_state(4, 1));
  for (const cplx beta : {cplx(0, 0), cplx(0.3, 0.4), cplx(1.0, -0.2)}) {
    const double r2 = std::norm(beta);
    EXPECT_NEAR(wigner_point(rho, beta), 2.0 / kPi * (4.0 * r2 - 1.0) * std::exp(-2.0 * r2),
                1e-12);
  }
}

TEST(Wigner, CatFringesAtOrigin) {
  const cplx alpha = 2.0;
  EXPECT_NEAR(wigner_point(pure(cat_state(20, alpha, CatPhase::plus)), 0.0), kWignerMax,
              1e-10);
  EXPECT_NEAR(wigner_point(pure(cat_state(20, alpha, CatPhase::minus)), 0.0), -kWignerMax,
              1e-10);
}

TEST(Wigner, MapMatchesPointEvaluation) {
  const auto rho = pure(cat_state(20, cplx(1.5, 0.7), CatPhase::plus_i));
  const Grid grid = Grid::uniform(-3.0, 3.0, 13, -2.5, 2.5, 11);
  const WignerMap map = wigner_map(rho, grid);
  ASSERT_EQ(map.values.rows(), 13);
  ASSERT_EQ(map.values.cols(), 11);
  for (int i = 0; i < 13; i += 3) {
    for (int j = 0; j < 11; j += 2) {
      EXPECT_NEAR(map.values(i, j), wigner_point(rho, map.beta(i, j)), 1e-10);
    }
  }
  const WignerMap threaded = wigner_map(rho, grid, 3);
  EXPECT_EQ(threaded.values, map.values);
}

TEST(Wigner, NormalisedAndBounded) {
  const auto rho = pure(cat_state(25, 2.0, CatPhase::minus));
  const WignerMap map = wigner_map(rho, Grid::square(5.0, 101));
  EXPECT_NEAR(map.integral(), 1.0, 1e-6);
  EXPECT_LE(map.max_abs(), kWignerMax + 1e-12);
}

TEST(Wigner, GridConstructors) {
  const Grid g = Grid::for_alpha(2.0);
  EXPECT_EQ(g.re.size(), 101u);
  EXPECT_DOUBLE_EQ(g.re.front(), -5.0);
  EXPECT_DOUBLE_EQ(g.im.back(), 5.0);
  EXPECT_DOUBLE_EQ(g.max_abs(), std::sqrt(50.0));
  EXPECT_THROW(Grid::uniform(0, 1, 0, 0, 1, 3), InvalidArgument);
}

TEST(Wigner, ProtocolNames) {
  for (auto p : {Protocol::ideal, Protocol::ramsey, Protocol::ramsey_enhanced}) {
    EXPECT_EQ(protocol_from_string(to_string(p)), p);
  }
  EXPECT_THROW(protocol_from_string("homodyne"), InvalidArgument);
}

TEST(Wigner, NoiselessRamseyIsParity) {
  const DeviceParams p = DeviceParams{}.ideal();
  EXPECT_NEAR(simulate_parity_readout(pure(fock_state(4, 0)), p, 0.0, false), 1.0, 1e-12);
  EXPECT_NEAR(simulate_parity_readout(pure(fock_state(4, 1)), p, 0.0, false), -1.0, 1e-6);
  EXPECT_NEAR(simulate_parity_readout(pure(fock_state(4, 2)), p, 0.0, false), 1.0, 1e-6);
  const cplx alpha{0.7, 0.2}, beta{0.4, -0.1};
  EXPECT_NEAR(simulate_parity_readout(pure(coherent_state(15, alpha)), p, beta, false),
              kPi / 2 * coherent_wigner(alpha, beta), 1e-6);
}

TEST(Wigner, ReadoutOffsetCancels) {
  const DeviceParams p;
  const auto rho = pure(cat_state(8, 0.8, CatPhase::plus, Guard::skip));
  ReadoutOptions opts;
  opts.dt = 5.0;
  const double clean = simulate_parity_readout(rho, p, 0.2, false, opts);
  opts.signal_offset = 0.3;
  EXPECT_NEAR(simulate_parity_readout(rho, p, 0.2, false, opts), clean, 1e-12);
}

TEST(Wigner, HeisenbergReadoutMatchesSchrodinger) {
  const DeviceParams p;
  ReadoutOptions opts;
  opts.dt = 5.0;
  opts.deflation_time = 100.0;
  const auto rho = pure(cat_state(8, 0.8, CatPhase::minus, Guard::skip));
  for (bool enhanced : {false, true}) {
    const ParityReadout readout(p, 12, enhanced, opts);
    for (const cplx beta : {cplx(0.0), cplx(0.3, -0.2)}) {
      EXPECT_NEAR(readout.measure(rho, beta),
                  simulate_parity_readout(rho, p, beta, enhanced, opts), 1e-7);
    }
  }
}

TEST(Wigner, IdealTomographyIsWignerMap) {
  const auto rho = pure(cat_state(15, 1.0, CatPhase::plus));
  const Grid grid = Grid::square(2.0, 9);
  const WignerMap a = tomography(rho, DeviceParams{}, grid, Protocol::ideal);
  const WignerMap b = wigner_map(rho, grid);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.protocol, Protocol::ideal);
}

TEST(Wigner, PhotonLossDuringRamsey) {
  const DeviceParams p;
  const FockReadout zero = ramsey_fock_readout(p, 0);
  EXPECT_NEAR(zero.no_loss_probability, 1.0, 1e-12);
  EXPECT_NEAR(zero.parity_readout, 1.0, 1e-12);
  const FockReadout one = ramsey_fock_readout(p, 1);
  EXPECT_NEAR(one.no_loss_probability, std::exp(-p.kappa1() * p.parity_time()), 1e-6);
  EXPECT_LT(one.parity_readout, 0.0);
  EXPECT_NEAR(parity_flip_probability(p, {0.0, 1.0}), 1.0 - one.no_loss_probability, 1e-12);
  EXPECT_THROW(parity_flip_probability(p, {0.0, 0.0}), InvalidArgument);
}

TEST(Wigner, PaddedDimCoversDisplacement) {
  EXPECT_GE(padded_dim(10, 3.0), 10 + 9);
}

TEST(Wigner, QndParityCycleProjects) {
  const DeviceParams p = DeviceParams{}.ideal();
  CycleOptions opts;
  opts.deflation_time = 600.0;
  opts.inflation_time = 600.0;
  opts.dt = 5.0;
  const ParityCycle cycle =
      qnd_parity_cycle(pure(cat_state(16, 1.5, CatPhase::minus)), p, 1.5, opts);
  EXPECT_EQ(cycle.outcome, -1);
  EXPECT_LT(cycle.parity_estimate, -0.99);
  EXPECT_NEAR(cycle.state.expectation(parity_op(16)).real(), -1.0, 1e-6);
}

}  // namespace
}  // namespace catsim
