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

// Transient squeezing after the buffer drive is switched off: semiclassical
// amplitudes, the short-time law for r(t), the full memory-buffer run and
// squeezing extraction from Wigner maps.

#include <array>
#include <cstdint>
#include <vector>

#include "catsim/device.hpp"
#include "catsim/fock.hpp"
#include "catsim/wigner.hpp"

namespace catsim {

struct AmplitudeTrace {
  std::vector<double> times;     // ns
  std::vector<cplx> m_amp;       // memory amplitude m(t)
  std::vector<cplx> gamma_amp;   // buffer amplitude gamma(t)
  std::vector<double> r;         // squeezing parameter, m = alpha e^{-r}
};

// RK4 on dm/dt = -2i g2 gamma m^*, dgamma/dt = -(kappa_b/2) gamma - i g2 m^2
// from m(0) = alpha, gamma(0) = 0, with r = 2i g2 int gamma (rotated onto
// the real axis of alpha^2). Rates in rad/ns. Throws StepSizeError when
// halving dt moves r by more than 1e-5.
AmplitudeTrace integrate_amplitudes(double g2, double kappa_b, cplx alpha,
                                    double t_span, double dt);

// g2^2 alpha^2 t^2 (1 - kappa_b t / 6), rates in rad/ns.
double r_taylor(double g2, double kappa_b, double alpha, double t);

struct SqueezeOptions {
  BipartiteDims dims{36, 6};
  double prestabilize = 500.0;  // ns of driven evolution before switch-off
  double dt = 0.5;
  ModelOptions model{};
};

// Memory states at each requested switch-off delay. The memory starts in
// the even cat and the buffer in vacuum; the drive -g2 alpha^2 runs for
// options.prestabilize, then stops while the exchange coupling stays on.
std::vector<DensityMatrix> simulate_squeezed_cat(
    const DeviceParams& p, cplx alpha, const std::vector<double>& t_off,
    const SqueezeOptions& options = {});

DensityMatrix simulate_squeezed_cat(const DeviceParams& p, cplx alpha,
                                    double t_off,
                                    const SqueezeOptions& options = {});

struct ExtractOptions {
  int bootstrap = 32;
  std::uint64_t seed = 20240611;
};

struct SqueezingFit {
  double db = 0.0;            // 10 log10(1/4 / variance_min)
  double uncertainty = 0.0;   // bootstrap standard deviation of db
  double variance_min = 0.0;
  double variance_max = 0.0;
  double squeezed_axis = 0.0;  // angle of the narrow axis, in [0, pi)
  std::array<cplx, 2> centres{};
  double residual = 0.0;       // RMS over the fit window
};

// Two Gaussians with a shared covariance fitted to the two dominant lobes.
// Vacuum variance is 1/4 per quadrature. Throws FitError when the lobes
// cannot be located or the fit does not converge.
SqueezingFit extract_squeezing_db(const WignerMap& map,
                                  const ExtractOptions& options = {});

}  // namespace catsim
