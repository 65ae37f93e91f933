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

#include "catsim/gates.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "catsim/errors.hpp"

namespace catsim {
namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix pure(const PureState& psi) { return DensityMatrix::from_pure(psi); }

TEST(Envelope, GaussianEdgeShape) {
  const PulseEnvelope env = gaussian_edge_envelope(cplx(2.0, 1.0), 300.0, 250.0, 0.4);
  EXPECT_DOUBLE_EQ(env.shape(0.0), 1.0);
  EXPECT_NEAR(env.shape(300.0), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(env.shape(600.0), 1.0);
  EXPECT_DOUBLE_EQ(env.shape(650.0), 1.0);
  const double floor = std::exp(-0.72);
  EXPECT_NEAR(env.shape(150.0), (std::exp(-0.18) - floor) / (1.0 - floor), 1e-14);
  EXPECT_NEAR(env.shape(150.0), 0.67905, 1e-5);
  EXPECT_NEAR(env.shape(450.0), env.shape(150.0), 1e-14);
  EXPECT_NEAR(std::abs(env(150.0) - cplx(2.0, 1.0) * env.shape(150.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(env(600.0) - cplx(2.0, 1.0) * std::polar(1.0, 0.8)), 0.0, 1e-14);
  EXPECT_DOUBLE_EQ(env.total_duration(), 700.0);
  EXPECT_THROW(gaussian_edge_envelope(1.0, 300.0, 0.0, 0.0), InvalidArgument);
  EXPECT_THROW(gaussian_edge_envelope(1.0, 300.0, 250.0, 0.0, -1.0), InvalidArgument);
}

TEST(Gates, VirtualRotationUndoesPhase) {
  const cplx beta = 1.4;
  const double theta = 0.9;
  const auto rotated = pure(coherent_state(25, beta * std::polar(1.0, theta)));
  EXPECT_NEAR(fidelity(virtual_rotation(rotated, theta), coherent_state(25, beta)), 1.0,
              1e-10);
}

TEST(Gates, XGateMatrix) {
  for (double theta : {0.0, 0.7, kPi / 2, kPi}) {
    const Matrix2 u = x_gate_matrix(theta);
    EXPECT_TRUE((u.adjoint() * u).isApprox(Matrix2::Identity(), 1e-14));
  }
  EXPECT_TRUE(x_gate_matrix(0.0).isApprox(Matrix2::Identity()));
  EXPECT_TRUE(x_gate_matrix(2 * kPi).isApprox(-Matrix2::Identity()));
  // Even cat (1,1)/sqrt2 gets e^{i theta/2}, odd cat e^{-i theta/2}.
  const double theta = 0.6;
  const Eigen::Vector2cd even = Eigen::Vector2cd(1.0, 1.0) / std::sqrt(2.0);
  const Eigen::Vector2cd odd = Eigen::Vector2cd(1.0, -1.0) / std::sqrt(2.0);
  EXPECT_TRUE((x_gate_matrix(theta) * even).isApprox(std::polar(1.0, theta / 2) * even));
  EXPECT_TRUE((x_gate_matrix(theta) * odd).isApprox(std::polar(1.0, -theta / 2) * odd));
}

TEST(Gates, LogicalPureStateOfIdentityIsCoherent) {
  const LogicalBasis basis(20, 1.8);
  const PureState start = coherent_state(20, 1.8);
  const Eigen::Vector2cd v = basis.isometry().adjoint() * start.amplitudes();
  const PureState out = logical_pure_state(basis, Matrix2::Identity(), v);
  EXPECT_NEAR(std::abs(out.amplitudes().dot(start.amplitudes())), 1.0, 1e-10);
}

TEST(Gates, ReducedHolonomicPiGateSwapsCoherentStates) {
  const DeviceParams p = DeviceParams{}.ideal();
  const cplx alpha = 1.5;
  GateOptions opts;
  opts.use_bipartite = false;
  opts.dt = 5.0;
  const DensityMatrix out =
      holonomic_x(pure(coherent_state(14, alpha)), kPi, p, alpha, 1200.0, 1000.0, opts);
  const BlochVector r = bloch_vector(project_logical(out, alpha));
  EXPECT_LT(r.z, -0.9);
  const DensityMatrix idle =
      holonomic_x(pure(cat_state(14, alpha, CatPhase::plus)), 0.0, p, alpha, 1200.0,
                  1000.0, opts);
  EXPECT_GT(fidelity(idle, cat_state(14, alpha, CatPhase::plus)), 0.99);
  EXPECT_THROW(holonomic_x(pure(coherent_state(14, alpha)), 0.0, p, alpha, 300.0, 250.0),
               InvalidDimension);
}

TEST(Gates, ZRotationPhaseRate) {
  const DeviceParams p = DeviceParams{}.ideal();
  const cplx alpha = 1.5;
  const double eps = 0.002, t = 100.0;
  const DensityMatrix out =
      z_rotation(pure(cat_state(16, alpha, CatPhase::plus)), eps, t, p, alpha, 5.0);
  const BlochVector r = bloch_vector(project_logical(out, alpha));
  const double phase = std::atan2(r.y, r.x);
  EXPECT_NEAR(std::abs(phase), 4.0 * 1.5 * eps * t, 0.05);
  EXPECT_TRUE(z_bound_ok(eps, p, alpha));
  EXPECT_FALSE(z_bound_ok(1.0, p, alpha));
}

TEST(Gates, ZenoDeflationMapsCatsToFockStates) {
  const DeviceParams p = DeviceParams{}.ideal();
  const cplx alpha = 1.5;
  ZenoOptions opts;
  opts.memory_dim = 14;
  opts.tau = 1200.0;
  opts.sigma = 1000.0;
  opts.dt = 5.0;
  const ZenoResult even = zeno_y(pure(cat_state(14, alpha, CatPhase::plus)), 0.0, 0.0, p,
                                 alpha, opts);
  EXPECT_GT(even.after_drive.matrix()(0, 0).real(), 0.95);
  const ZenoResult odd = zeno_y(pure(cat_state(14, alpha, CatPhase::minus)), 0.0, 0.0, p,
                                alpha, opts);
  EXPECT_GT(odd.after_drive.matrix()(1, 1).real(), 0.95);
  EXPECT_GT(fidelity(odd.final, cat_state(14, alpha, CatPhase::minus)), 0.95);
  EXPECT_TRUE(zeno_bound_ok(p.kappa2() / 20.0, p));
  EXPECT_FALSE(zeno_bound_ok(p.kappa2(), p));
  EXPECT_THROW(zeno_y(pure(fock_state(14, 0)), 0.0, -1.0, p, alpha, opts), InvalidArgument);
}

TEST(Gates, PulseLandscapeReportsMinimum) {
  const DeviceParams p = DeviceParams{}.ideal();
  OptimizeOptions opts;
  opts.gate.use_bipartite = false;
  opts.gate.dims.memory = 12;
  opts.gate.dt = 5.0;
  const PulseLandscape l =
      optimize_pulse(p, 1.2, kPi / 2, {300.0, 600.0}, {1.2}, opts);
  ASSERT_EQ(l.trace_distance.rows(), 2);
  ASSERT_EQ(l.trace_distance.cols(), 1);
  EXPECT_DOUBLE_EQ(l.best_value, l.trace_distance.minCoeff());
  EXPECT_DOUBLE_EQ(l.best_sigma, l.best_tau / l.best_ratio);
  EXPECT_THROW(optimize_pulse(p, 1.2, 0.0, {}, {1.0}, opts), InvalidArgument);
}

}  // namespace
}  // namespace catsim
