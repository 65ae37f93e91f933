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

#pragma once

// Buffer-drive envelopes and the cat-qubit gates built on the memory-buffer
// models: holonomic X(theta), Zeno-blocked Y(theta), driven Z(theta).

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "catsim/device.hpp"
#include "catsim/fock.hpp"
#include "catsim/reconstruct.hpp"

namespace catsim {

// Gaussian-edge deflation/re-inflation drive: amplitude eps_alpha at t = 0,
// zero at t = tau, back to eps_alpha e^{2 i theta} at 2 tau, then held for
// the stabilisation tail.
struct PulseEnvelope {
  cplx epsilon_alpha;
  double tau = 300.0;
  double sigma = 250.0;
  double theta = 0.0;
  double stabilize_tail = 100.0;

  // Real shape in [0, 1]: |eps_d(t)| / |eps_alpha|.
  double shape(double t) const;
  cplx operator()(double t) const;
  double total_duration() const { return 2.0 * tau + stabilize_tail; }
};

PulseEnvelope gaussian_edge_envelope(cplx epsilon_alpha, double tau,
                                     double sigma, double theta,
                                     double stabilize_tail = 100.0);

// Conjugation by exp(-i theta m^dag m): |beta e^{i theta}> -> |beta>.
DensityMatrix virtual_rotation(const DensityMatrix& rho, double theta);

// X(theta) = exp(i theta sigma_x / 2) on the logical basis {e0, e1}: it
// leaves the even cat alone and puts e^{-i theta} on the odd cat.
Matrix2 x_gate_matrix(double theta);

// V u v for the logical isometry V of `basis`.
PureState logical_pure_state(const LogicalBasis& basis, const Matrix2& u,
                             const Eigen::Vector2cd& v);

struct GateOptions {
  bool use_bipartite = true;
  BipartiteDims dims{40, 5};
  // Memory dimension of the reduced model (defaults to dims.memory).
  int reduced_memory_dim = 0;
  double dt = 1.0;  // output step; RK4 substeps follow the generator norm
  ModelOptions model{};
};

// Deflate, re-inflate with phase 2 theta, stabilise, undo the frame
// rotation. rho0 is a memory state; the result is the memory state.
DensityMatrix holonomic_x(const DensityMatrix& rho0, double theta,
                          const DeviceParams& p, cplx alpha, double tau,
                          double sigma, const GateOptions& options = {});

struct ZenoResult {
  DensityMatrix after_drive{{1}, Matrix::Identity(1, 1)};  // deflated memory
  DensityMatrix final{{1}, Matrix::Identity(1, 1)};        // re-inflated
};

struct ZenoOptions {
  double tau = 300.0;
  double sigma = 250.0;
  double stabilize_tail = 100.0;
  // Idle at alpha = 0 after the deflation edge, so the memory settles into
  // span(|0>, |1>) before the drive.
  double settle = 300.0;
  double dt = 1.0;
  int memory_dim = 30;
};

// Deflate along the X-gate edge, settle, drive i eps_y (m^dag - m) for t_rot
// at alpha = 0 under two-photon dissipation, re-inflate.
ZenoResult zeno_y(const DensityMatrix& rho0, double epsilon_y, double t_rot,
                  const DeviceParams& p, cplx alpha,
                  const ZenoOptions& options = {});

// Zeno bound used for warnings: |eps_y| <= kappa2 / 10.
bool zeno_bound_ok(double epsilon_y, const DeviceParams& p);

// Stabilised memory driven by eps_z (m + m^dag); relative phase between
// |alpha> and |-alpha> grows as 4 alpha eps_z t.
DensityMatrix z_rotation(const DensityMatrix& rho0, double epsilon_z,
                         double duration, const DeviceParams& p, cplx alpha,
                         double dt = 1.0);

// Speed bound eps_z < 2 |alpha|^2 kappa2.
bool z_bound_ok(double epsilon_z, const DeviceParams& p, cplx alpha);

struct PulseLandscape {
  std::vector<double> tau;
  std::vector<double> ratio;          // tau / sigma
  Eigen::MatrixXd trace_distance;     // (tau index, ratio index); NaN on failure
  std::vector<std::string> errors;    // per cell, row-major, empty if fine
  double best_tau = 0.0;
  double best_ratio = 0.0;
  double best_sigma = 0.0;
  double best_value = 0.0;
};

struct OptimizeOptions {
  GateOptions gate{};
  int threads = 1;
};

// Trace distance to X(theta)|alpha> after holonomic_x from |alpha> for
// each (tau, tau / sigma) cell.
PulseLandscape optimize_pulse(const DeviceParams& p, cplx alpha, double theta,
                              const std::vector<double>& tau_grid,
                              const std::vector<double>& ratio_grid,
                              const OptimizeOptions& options = {});

}  // namespace catsim
