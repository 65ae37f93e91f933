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

#include <algorithm>
#include <cmath>

#include "catsim/errors.hpp"
#include "catsim/lindblad.hpp"
#include "catsim/parallel.hpp"

namespace catsim {

std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::ideal:
      return "ideal";
    case Protocol::ramsey:
      return "ramsey";
    case Protocol::ramsey_enhanced:
      return "ramsey_enhanced";
  }
  return "ideal";
}

Protocol protocol_from_string(const std::string& s) {
  if (s == "ideal") return Protocol::ideal;
  if (s == "ramsey") return Protocol::ramsey;
  if (s == "ramsey_enhanced") return Protocol::ramsey_enhanced;
  throw InvalidArgument("unknown protocol '" + s + "'");
}

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw InvalidArgument("grid needs at least one point per axis");
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = (n == 1) ? lo : lo + (hi - lo) * i / (n - 1);
  }
  return v;
}

double spacing(const std::vector<double>& v) {
  return v.size() > 1 ? (v.back() - v.front()) / (v.size() - 1) : 0.0;
}

// Keeps the top two memory dims out of reach of any state the caller is
// likely to pass, so the displacement acts as on the infinite space.
Matrix embed_memory(const DensityMatrix& rho, int dim) {
  if (rho.dims().size() != 1) {
    throw InvalidDimension("Wigner evaluation needs a memory-only state");
  }
  const int n = rho.size();
  if (n > dim) throw InvalidDimension("state exceeds the padded dimension");
  Matrix out = Matrix::Zero(dim, dim);
  out.topLeftCorner(n, n) = rho.matrix();
  return out;
}

// Diagonal of X rho X^dag without forming the product.
Eigen::VectorXd displaced_populations(const Matrix& x, const Matrix& rho) {
  const Matrix xr = x * rho;
  return (xr.cwiseProduct(x.conjugate())).rowwise().sum().real();
}

// sigma_z measured after a final rotation by `angle`.
Operator qubit_signal(double angle) {
  const Matrix sz = sigma_z().matrix();
  const Matrix r = qubit_ry(angle).matrix();
  return Operator({2}, r.adjoint() * sz * r);
}

Operator qubit_readout_difference() {
  return qubit_signal(M_PI / 2) - qubit_signal(-M_PI / 2);
}

PureState qubit_plus() {
  return PureState({2}, qubit_ry(M_PI / 2).matrix().col(0));
}

}  // namespace

Grid Grid::uniform(double re_min, double re_max, int n_re, double im_min,
                   double im_max, int n_im) {
  return {linspace(re_min, re_max, n_re), linspace(im_min, im_max, n_im)};
}

Grid Grid::square(double half_width, int n) {
  return uniform(-half_width, half_width, n, -half_width, half_width, n);
}

Grid Grid::for_alpha(double abs_alpha, int n) {
  return square(abs_alpha + 3.0, n);
}

double Grid::max_abs() const {
  double m = 0.0;
  for (double r : re) {
    for (double i : im) m = std::max(m, std::hypot(r, i));
  }
  return m;
}

double WignerMap::integral() const {
  return values.sum() * spacing(re) * spacing(im);
}

int padded_dim(int dim, double abs_beta) {
  return std::max(dim + 2, required_dim(std::sqrt(double(dim - 1)) + abs_beta));
}

double wigner_point(const DensityMatrix& rho, cplx beta) {
  const int n = rho.size();
  const int dim = padded_dim(n, std::abs(beta));
  const Matrix d = displacement_op(dim, -beta, Guard::skip).matrix();
  const Eigen::VectorXd pops =
      displaced_populations(d.leftCols(n), embed_memory(rho, n));
  double parity = 0.0;
  for (int k = 0; k < dim; ++k) parity += (k % 2 == 0 ? 1.0 : -1.0) * pops(k);
  return kWignerMax * parity;
}

WignerMap wigner_map(const DensityMatrix& rho, const Grid& grid, int threads) {
  if (rho.dims().size() != 1) {
    throw InvalidDimension("Wigner evaluation needs a memory-only state");
  }
  const Matrix& r = rho.matrix();
  const int m = rho.size();
  const int n_re = static_cast<int>(grid.re.size());
  const int n_im = static_cast<int>(grid.im.size());
  WignerMap map{grid.re, grid.im, Eigen::MatrixXd::Zero(n_re, n_im),
                Protocol::ideal};

  std::vector<double> sqrt_n(m);
  for (int k = 0; k < m; ++k) sqrt_n[k] = std::sqrt(double(k));

  // Iterative Laguerre evaluation: w[n] walks the (m, n) matrix elements of
  // the displaced parity one diagonal band at a time.
  parallel_for(n_re, threads, [&](int i) {
    std::vector<cplx> w(m);
    for (int j = 0; j < n_im; ++j) {
      const cplx a(grid.re[i], grid.im[j]);
      w[0] = std::exp(-2.0 * std::norm(a)) / M_PI;
      double acc = r(0, 0).real() * w[0].real();
      for (int n = 1; n < m; ++n) {
        w[n] = 2.0 * a * w[n - 1] / sqrt_n[n];
        acc += 2.0 * (r(0, n) * w[n]).real();
      }
      for (int row = 1; row < m; ++row) {
        cplx temp = w[row];
        w[row] = (2.0 * std::conj(a) * temp - sqrt_n[row] * w[row - 1]) /
                 sqrt_n[row];
        acc += (r(row, row) * w[row]).real();
        for (int n = row + 1; n < m; ++n) {
          const cplx next = (2.0 * a * w[n - 1] - sqrt_n[row] * temp) / sqrt_n[n];
          temp = w[n];
          w[n] = next;
          acc += 2.0 * (r(row, n) * w[n]).real();
        }
      }
      map.values(i, j) = 2.0 * acc;
    }
  });
  return map;
}

double simulate_parity_readout(const DensityMatrix& rho, const DeviceParams& p,
                               cplx beta, bool enhanced,
                               const ReadoutOptions& options) {
  const int dim = padded_dim(rho.size(), std::abs(beta));
  const double t_parity = p.parity_time();
  ModelOptions off;
  off.flux = FluxSetting::off;
  const LindbladModel ramsey = build_reduced_model(p, cplx(0.0), true, dim, off);
  const Operator s_plus = embed(qubit_signal(M_PI / 2), ramsey.dims(), 1);
  const Operator s_minus = embed(qubit_signal(-M_PI / 2), ramsey.dims(), 1);
  const DensityMatrix qubit = DensityMatrix::from_pure(qubit_plus());

  auto raw = [&](const Matrix& memory) {
    DensityMatrix sigma = adopt_density({dim}, memory);
    if (enhanced) {
      const LindbladModel deflate = build_reduced_model(p, cplx(0.0), false, dim);
      sigma = propagate(deflate, sigma, 0.0, options.deflation_time, options.dt);
    }
    const DensityMatrix out =
        propagate(ramsey, tensor(sigma, qubit), 0.0, t_parity, options.dt);
    const double plus = out.expectation(s_plus).real() + options.signal_offset;
    const double minus = out.expectation(s_minus).real() + options.signal_offset;
    return plus - minus;
  };

  const Matrix d = displacement_op(dim, -beta, Guard::skip).matrix();
  const Matrix prepared = embed_memory(rho, dim);
  const double signal = raw(d * prepared * d.adjoint());
  Matrix vac = Matrix::Zero(dim, dim);
  vac(0, 0) = 1.0;
  const double reference = raw(vac);
  if (std::abs(reference) < 1e-12) {
    throw InvalidState("parity readout has no contrast on the vacuum");
  }
  return signal / reference;
}

FockReadout ramsey_fock_readout(const DeviceParams& p, int n,
                                const ReadoutOptions& options) {
  if (n < 0) throw InvalidArgument("Fock index must be non-negative");
  const int dim = n + 2;
  FockReadout out;
  out.n = n;
  out.parity_readout = simulate_parity_readout(
      DensityMatrix::from_pure(fock_state(dim, n)), p, 0.0, false, options);
  ModelOptions off;
  off.flux = FluxSetting::off;
  const LindbladModel ramsey = build_reduced_model(p, cplx(0.0), true, dim, off);
  const DensityMatrix start = tensor(DensityMatrix::from_pure(fock_state(dim, n)),
                                     DensityMatrix::from_pure(qubit_plus()));
  const DensityMatrix memory = partial_trace(
      propagate(ramsey, start, 0.0, p.parity_time(), options.dt), 0);
  out.no_loss_probability = memory.matrix()(n, n).real();
  return out;
}

double parity_flip_probability(const DeviceParams& p,
                               const std::vector<double>& weights,
                               const ReadoutOptions& options) {
  double total = 0.0, flip = 0.0;
  for (std::size_t n = 0; n < weights.size(); ++n) {
    if (!(weights[n] >= 0.0)) throw InvalidArgument("Fock weights must be >= 0");
    if (weights[n] == 0.0) continue;
    total += weights[n];
    flip += weights[n] *
            (1.0 - ramsey_fock_readout(p, static_cast<int>(n), options).no_loss_probability);
  }
  if (!(total > 0.0)) throw InvalidArgument("Fock weights sum to zero");
  return flip / total;
}

ParityReadout::ParityReadout(const DeviceParams& p, int dim, bool enhanced,
                             const ReadoutOptions& options)
    : dim_(dim) {
  ModelOptions off;
  off.flux = FluxSetting::off;
  const LindbladModel ramsey = build_reduced_model(p, cplx(0.0), true, dim, off);
  const Operator diff = embed(qubit_readout_difference(), ramsey.dims(), 1);
  const Matrix a =
      evolve_adjoint(ramsey, diff, 0.0, p.parity_time(), options.dt).matrix();
  const Vector q = qubit_plus().amplitudes();
  Matrix m = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      cplx s = 0.0;
      for (int u = 0; u < 2; ++u) {
        for (int v = 0; v < 2; ++v) {
          s += std::conj(q(u)) * a(2 * i + u, 2 * j + v) * q(v);
        }
      }
      m(i, j) = s;
    }
  }
  observable_ = Operator({dim}, 0.5 * (m + m.adjoint()), "parity_readout");
  if (enhanced) {
    const LindbladModel deflate = build_reduced_model(p, cplx(0.0), false, dim);
    observable_ = evolve_adjoint(deflate, observable_, 0.0,
                                 options.deflation_time, options.dt);
  }
  vacuum_ = observable_.matrix()(0, 0).real();
  if (std::abs(vacuum_) < 1e-12) {
    throw InvalidState("parity readout has no contrast on the vacuum");
  }
}

double ParityReadout::measure(const DensityMatrix& rho) const {
  const Matrix sigma = embed_memory(rho, dim_);
  return (observable_.matrix().transpose().cwiseProduct(sigma)).sum().real() /
         vacuum_;
}

double ParityReadout::measure(const DensityMatrix& rho, cplx beta) const {
  const int n = rho.size();
  const Matrix d = displacement_op(dim_, -beta, Guard::skip).matrix();
  const Matrix x = d.leftCols(n);
  const Matrix sigma = x * rho.matrix() * x.adjoint();
  return (observable_.matrix().transpose().cwiseProduct(sigma)).sum().real() /
         vacuum_;
}

WignerMap tomography(const DensityMatrix& rho, const DeviceParams& p,
                     const Grid& grid, Protocol protocol, int threads,
                     const ReadoutOptions& options) {
  if (protocol == Protocol::ideal) return wigner_map(rho, grid, threads);
  const int dim = padded_dim(rho.size(), grid.max_abs());
  const ParityReadout readout(p, dim, protocol == Protocol::ramsey_enhanced,
                              options);
  const int n_re = static_cast<int>(grid.re.size());
  const int n_im = static_cast<int>(grid.im.size());
  WignerMap map{grid.re, grid.im, Eigen::MatrixXd::Zero(n_re, n_im), protocol};
  parallel_for(n_re, threads, [&](int i) {
    for (int j = 0; j < n_im; ++j) {
      map.values(i, j) = kWignerMax * readout.measure(rho, {grid.re[i], grid.im[j]});
    }
  });
  return map;
}

ParityCycle qnd_parity_cycle(const DensityMatrix& rho, const DeviceParams& p,
                             cplx alpha, const CycleOptions& options) {
  if (rho.dims().size() != 1) {
    throw InvalidDimension("parity cycle needs a memory-only state");
  }
  const int dim = rho.size();
  check_truncation(dim, std::abs(alpha));
  const LindbladModel deflate = build_reduced_model(p, cplx(0.0), false, dim);
  const DensityMatrix deflated =
      propagate(deflate, rho, 0.0, options.deflation_time, options.dt);

  ParityCycle cycle;
  cycle.parity_estimate = deflated.expectation(parity_op(dim)).real();
  cycle.outcome = options.outcome.value_or(cycle.parity_estimate >= 0.0 ? 1 : -1);
  if (cycle.outcome != 1 && cycle.outcome != -1) {
    throw InvalidArgument("parity outcome must be +1 or -1");
  }
  const DensityMatrix projected =
      DensityMatrix::from_pure(fock_state(dim, cycle.outcome == 1 ? 0 : 1));
  const LindbladModel inflate = build_reduced_model(p, alpha, false, dim);
  cycle.state = propagate(inflate, projected, 0.0, options.inflation_time, options.dt);
  return cycle;
}

}  // namespace catsim
