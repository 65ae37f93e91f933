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
#include <limits>

#include "catsim/errors.hpp"
#include "catsim/lindblad.hpp"
#include "catsim/parallel.hpp"

namespace catsim {

double PulseEnvelope::shape(double t) const {
  if (t <= 0.0 || t >= 2.0 * tau) return 1.0;
  const double floor = std::exp(-tau * tau / (2.0 * sigma * sigma));
  const double s = (t <= tau) ? t : 2.0 * tau - t;
  return (std::exp(-s * s / (2.0 * sigma * sigma)) - floor) / (1.0 - floor);
}

cplx PulseEnvelope::operator()(double t) const {
  const cplx phase = (t > tau) ? std::polar(1.0, 2.0 * theta) : cplx(1.0);
  return epsilon_alpha * phase * shape(t);
}

PulseEnvelope gaussian_edge_envelope(cplx epsilon_alpha, double tau,
                                     double sigma, double theta,
                                     double stabilize_tail) {
  if (!(tau > 0.0) || !(sigma > 0.0)) {
    throw InvalidArgument("envelope needs tau > 0 and sigma > 0");
  }
  if (!(stabilize_tail >= 0.0)) {
    throw InvalidArgument("stabilisation tail must be non-negative");
  }
  return {epsilon_alpha, tau, sigma, theta, stabilize_tail};
}

DensityMatrix virtual_rotation(const DensityMatrix& rho, double theta) {
  if (rho.dims().size() != 1) {
    throw InvalidDimension("virtual rotation acts on a memory-only state");
  }
  const Matrix r = rotation_op(rho.size(), theta).matrix();
  return adopt_density(rho.dims(), r * rho.matrix() * r.adjoint());
}

Matrix2 x_gate_matrix(double theta) {
  Matrix2 u;
  u << std::cos(theta / 2), kI * std::sin(theta / 2), kI * std::sin(theta / 2),
      std::cos(theta / 2);
  return u;
}

PureState logical_pure_state(const LogicalBasis& basis, const Matrix2& u,
                             const Eigen::Vector2cd& v) {
  Vector psi = basis.isometry() * (u * v);
  psi.normalize();
  return PureState({basis.dim()}, psi);
}

DensityMatrix holonomic_x(const DensityMatrix& rho0, double theta,
                          const DeviceParams& p, cplx alpha, double tau,
                          double sigma, const GateOptions& options) {
  if (rho0.dims().size() != 1) {
    throw InvalidDimension("holonomic X expects a memory-only state");
  }
  const PulseEnvelope env =
      gaussian_edge_envelope(stabilizing_drive(p, alpha), tau, sigma, theta);
  const double t_end = env.total_duration();
  DensityMatrix out = rho0;
  if (options.use_bipartite) {
    const BipartiteDims dims = options.dims;
    if (rho0.size() != dims.memory) {
      throw InvalidDimension("state dimension differs from the gate memory dim");
    }
    check_truncation(dims.memory, std::abs(alpha));
    const LindbladModel model = build_bipartite_model(
        p, [env](double t) { return env(t); }, dims, options.model);
    const DensityMatrix joint = tensor(
        rho0, DensityMatrix::from_pure(fock_state(dims.buffer, 0)));
    out = partial_trace(propagate(model, joint, 0.0, t_end, options.dt), 0);
  } else {
    check_truncation(rho0.size(), std::abs(alpha));
    const double g2 = p.g2();
    if (!(g2 > 0.0)) throw InvalidArgument("reduced gate path needs g2 > 0");
    const LindbladModel model = build_reduced_model(
        p, [env, g2](double t) { return -env(t) / g2; }, false, rho0.size(),
        options.model);
    out = propagate(model, rho0, 0.0, t_end, options.dt);
  }
  return virtual_rotation(out, theta);
}

bool zeno_bound_ok(double epsilon_y, const DeviceParams& p) {
  return std::abs(epsilon_y) <= p.kappa2() / 10.0;
}

ZenoResult zeno_y(const DensityMatrix& rho0, double epsilon_y, double t_rot,
                  const DeviceParams& p, cplx alpha, const ZenoOptions& options) {
  if (rho0.dims().size() != 1) {
    throw InvalidDimension("Zeno Y expects a memory-only state");
  }
  if (!(t_rot >= 0.0)) throw InvalidArgument("t_rot must be non-negative");
  const int dim = rho0.size();
  check_truncation(dim, std::abs(alpha));
  const PulseEnvelope env = gaussian_edge_envelope(
      1.0, options.tau, options.sigma, 0.0, options.stabilize_tail);
  const cplx a2 = alpha * alpha;

  const LindbladModel deflate = build_reduced_model(
      p, [env, a2](double t) { return a2 * env.shape(t); }, false, dim);
  DensityMatrix rho = propagate(deflate, rho0, 0.0, env.tau, options.dt);
  if (options.settle > 0.0) {
    rho = propagate(build_reduced_model(p, cplx(0.0), false, dim), rho, 0.0,
                    options.settle, options.dt);
  }

  if (t_rot > 0.0) {
    LindbladModel drive = build_reduced_model(p, cplx(0.0), false, dim);
    const Operator m = annihilation_op(dim);
    drive.add_hamiltonian((kI * epsilon_y) * (m.adjoint() - m));
    rho = propagate(drive, rho, 0.0, t_rot, options.dt);
  }

  ZenoResult result;
  result.after_drive = rho;
  const LindbladModel inflate = build_reduced_model(
      p, [env, a2](double t) { return a2 * env.shape(env.tau + t); }, false, dim);
  result.final = propagate(inflate, rho, 0.0, env.tau + env.stabilize_tail,
                           options.dt);
  return result;
}

bool z_bound_ok(double epsilon_z, const DeviceParams& p, cplx alpha) {
  return std::abs(epsilon_z) < 2.0 * std::norm(alpha) * p.kappa2();
}

DensityMatrix z_rotation(const DensityMatrix& rho0, double epsilon_z,
                         double duration, const DeviceParams& p, cplx alpha,
                         double dt) {
  if (rho0.dims().size() != 1) {
    throw InvalidDimension("Z rotation expects a memory-only state");
  }
  const int dim = rho0.size();
  LindbladModel model = build_reduced_model(p, alpha, false, dim);
  const Operator m = annihilation_op(dim);
  model.add_hamiltonian(epsilon_z * (m + m.adjoint()));
  return propagate(model, rho0, 0.0, duration, dt);
}

PulseLandscape optimize_pulse(const DeviceParams& p, cplx alpha, double theta,
                              const std::vector<double>& tau_grid,
                              const std::vector<double>& ratio_grid,
                              const OptimizeOptions& options) {
  if (tau_grid.empty() || ratio_grid.empty()) {
    throw InvalidArgument("pulse optimisation needs non-empty grids");
  }
  const GateOptions& gate = options.gate;
  const int dim = gate.use_bipartite
                      ? gate.dims.memory
                      : (gate.reduced_memory_dim > 0 ? gate.reduced_memory_dim
                                                     : gate.dims.memory);
  const LogicalBasis basis(dim, alpha);
  const PureState start = coherent_state(dim, alpha);
  const Eigen::Vector2cd v = basis.isometry().adjoint() * start.amplitudes();
  const DensityMatrix target = DensityMatrix::from_pure(
      logical_pure_state(basis, x_gate_matrix(theta), v));
  const DensityMatrix rho0 = DensityMatrix::from_pure(start);

  const int n_tau = static_cast<int>(tau_grid.size());
  const int n_ratio = static_cast<int>(ratio_grid.size());
  PulseLandscape out;
  out.tau = tau_grid;
  out.ratio = ratio_grid;
  out.trace_distance = Eigen::MatrixXd::Constant(
      n_tau, n_ratio, std::numeric_limits<double>::quiet_NaN());
  out.errors.assign(n_tau * n_ratio, {});

  parallel_for(n_tau * n_ratio, options.threads, [&](int cell) {
    const int i = cell / n_ratio, j = cell % n_ratio;
    try {
      const double sigma = tau_grid[i] / ratio_grid[j];
      const DensityMatrix rho =
          holonomic_x(rho0, theta, p, alpha, tau_grid[i], sigma, gate);
      out.trace_distance(i, j) = trace_distance(rho, target);
    } catch (const Error& e) {
      out.errors[cell] = e.what();
    }
  });

  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_tau; ++i) {
    for (int j = 0; j < n_ratio; ++j) {
      const double v_ij = out.trace_distance(i, j);
      if (!std::isnan(v_ij) && v_ij < best) {
        best = v_ij;
        out.best_tau = tau_grid[i];
        out.best_ratio = ratio_grid[j];
      }
    }
  }
  if (!std::isfinite(best)) throw Error("every pulse-optimisation cell failed");
  out.best_value = best;
  out.best_sigma = out.best_tau / out.best_ratio;
  return out;
}

}  // namespace catsim
