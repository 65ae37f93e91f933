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

#include "catsim/squeeze.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "catsim/errors.hpp"
#include "catsim/lindblad.hpp"
#include "catsim/reconstruct.hpp"

namespace catsim {

namespace {

struct AmplitudeState {
  cplx m;
  cplx gamma;
  cplx integral;  // int gamma
};

AmplitudeTrace integrate_once(double g2, double kappa_b, cplx alpha,
                              double t_span, double dt, int substeps) {
  const auto rhs = [&](const AmplitudeState& s) {
    return AmplitudeState{-2.0 * kI * g2 * s.gamma * std::conj(s.m),
                          -0.5 * kappa_b * s.gamma - kI * g2 * s.m * s.m,
                          s.gamma};
  };
  const auto axpy = [](const AmplitudeState& s, double h, const AmplitudeState& k) {
    return AmplitudeState{s.m + h * k.m, s.gamma + h * k.gamma,
                          s.integral + h * k.integral};
  };
  const cplx frame = std::abs(alpha) > 0.0
                         ? std::conj(alpha * alpha) / std::norm(alpha)
                         : cplx(1.0);
  const int steps = static_cast<int>(std::lround(t_span / dt));
  const double h = dt / substeps;

  AmplitudeTrace out;
  out.times.reserve(steps + 1);
  AmplitudeState s{alpha, 0.0, 0.0};
  for (int k = 0;; ++k) {
    out.times.push_back(k * dt);
    out.m_amp.push_back(s.m);
    out.gamma_amp.push_back(s.gamma);
    out.r.push_back((2.0 * kI * g2 * s.integral * frame).real());
    if (k == steps) break;
    for (int sub = 0; sub < substeps; ++sub) {
      const AmplitudeState k1 = rhs(s);
      const AmplitudeState k2 = rhs(axpy(s, 0.5 * h, k1));
      const AmplitudeState k3 = rhs(axpy(s, 0.5 * h, k2));
      const AmplitudeState k4 = rhs(axpy(s, h, k3));
      s = {s.m + h / 6.0 * (k1.m + 2.0 * k2.m + 2.0 * k3.m + k4.m),
           s.gamma + h / 6.0 * (k1.gamma + 2.0 * k2.gamma + 2.0 * k3.gamma + k4.gamma),
           s.integral + h / 6.0 * (k1.integral + 2.0 * k2.integral +
                                   2.0 * k3.integral + k4.integral)};
    }
  }
  return out;
}

}  // namespace

AmplitudeTrace integrate_amplitudes(double g2, double kappa_b, cplx alpha,
                                    double t_span, double dt) {
  if (!(dt > 0.0) || !(t_span >= 0.0)) {
    throw InvalidArgument("amplitude integration needs dt > 0 and t_span >= 0");
  }
  if (!(kappa_b >= 0.0) || !std::isfinite(g2)) {
    throw InvalidArgument("amplitude integration needs finite g2, kappa_b >= 0");
  }
  AmplitudeTrace coarse = integrate_once(g2, kappa_b, alpha, t_span, dt, 1);
  const AmplitudeTrace fine = integrate_once(g2, kappa_b, alpha, t_span, dt, 2);
  double worst = 0.0;
  for (std::size_t k = 0; k < coarse.r.size(); ++k) {
    worst = std::max(worst, std::abs(coarse.r[k] - fine.r[k]));
  }
  if (worst > 1e-5 || !std::isfinite(worst)) {
    throw StepSizeError("amplitude step too coarse: halving dt moves r by " +
                        std::to_string(worst));
  }
  return coarse;
}

double r_taylor(double g2, double kappa_b, double alpha, double t) {
  return g2 * g2 * alpha * alpha * t * t * (1.0 - kappa_b * t / 6.0);
}

std::vector<DensityMatrix> simulate_squeezed_cat(const DeviceParams& p,
                                                 cplx alpha,
                                                 const std::vector<double>& t_off,
                                                 const SqueezeOptions& options) {
  const BipartiteDims dims = options.dims;
  if (dims.buffer < 2) throw InvalidDimension("buffer dimension must be >= 2");
  check_truncation(dims.memory, std::abs(alpha));
  for (double t : t_off) {
    if (!(t >= 0.0)) throw InvalidArgument("switch-off delays must be >= 0");
  }

  const cplx drive = stabilizing_drive(p, alpha);
  const LindbladModel driven = build_bipartite_model(
      p, [drive](double) { return drive; }, dims, options.model);
  const LindbladModel released = build_bipartite_model(
      p, [](double) { return cplx(0.0); }, dims, options.model);

  DensityMatrix joint =
      tensor(DensityMatrix::from_pure(cat_state(dims.memory, alpha, CatPhase::plus)),
             DensityMatrix::from_pure(fock_state(dims.buffer, 0)));
  if (options.prestabilize > 0.0) {
    joint = propagate(driven, joint, 0.0, options.prestabilize, options.dt);
  }

  std::vector<std::size_t> order(t_off.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return t_off[a] < t_off[b]; });
  std::vector<DensityMatrix> out(t_off.size(), joint);
  double t = 0.0;
  for (std::size_t k : order) {
    if (t_off[k] > t) {
      joint = propagate(released, joint, t, t_off[k],
                        std::min(options.dt, t_off[k] - t));
      t = t_off[k];
    }
    out[k] = partial_trace(joint, 0);
  }
  return out;
}

DensityMatrix simulate_squeezed_cat(const DeviceParams& p, cplx alpha,
                                    double t_off, const SqueezeOptions& options) {
  return simulate_squeezed_cat(p, alpha, std::vector<double>{t_off}, options)
      .front();
}

namespace {

// Parameters: amplitudes a1, a2; centres (x1, y1), (x2, y2); Cholesky factor
// of the shared covariance (log l11, l21, log l22).
constexpr int kParams = 9;

Eigen::Matrix2d covariance_of(const Eigen::VectorXd& x) {
  Eigen::Matrix2d l;
  l << std::exp(x(6)), 0.0, x(7), std::exp(x(8));
  return l * l.transpose();
}

struct TwoLobeModel {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  Eigen::VectorXd x;  // point coordinates
  Eigen::VectorXd y;
  Eigen::VectorXd w;  // data

  int inputs() const { return kParams; }
  int values() const { return static_cast<int>(w.size()); }

  Eigen::VectorXd evaluate(const Eigen::VectorXd& p) const {
    const Eigen::Matrix2d inv = covariance_of(p).inverse();
    Eigen::VectorXd f(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k) {
      double sum = 0.0;
      for (int lobe = 0; lobe < 2; ++lobe) {
        const Eigen::Vector2d d(x(k) - p(2 + 2 * lobe), y(k) - p(3 + 2 * lobe));
        sum += p(lobe) * std::exp(-0.5 * d.dot(inv * d));
      }
      f(k) = sum;
    }
    return f;
  }

  int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& fvec) const {
    fvec = evaluate(p) - w;
    return 0;
  }
};

bool converged(Eigen::LevenbergMarquardtSpace::Status status) {
  using namespace Eigen::LevenbergMarquardtSpace;
  return status != ImproperInputParameters && status != TooManyFunctionEvaluation &&
         status != NotStarted && status != Running && status != UserAsked;
}

Eigen::VectorXd fit(const TwoLobeModel& model, Eigen::VectorXd start) {
  Eigen::NumericalDiff<TwoLobeModel> diff(model);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<TwoLobeModel>> lm(diff);
  lm.parameters.maxfev = 4000;
  const auto status = lm.minimize(start);
  if (!converged(status) || !start.allFinite()) {
    throw FitError("two-lobe Gaussian fit did not converge");
  }
  return start;
}

double db_of(const Eigen::VectorXd& p) {
  const double v_min =
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(covariance_of(p)).eigenvalues()(0);
  return 10.0 * std::log10(0.25 / v_min);
}

}  // namespace

SqueezingFit extract_squeezing_db(const WignerMap& map,
                                  const ExtractOptions& options) {
  const std::array<cplx, 2> lobes = locate_lobes(map);
  const double half_separation = 0.5 * std::abs(lobes[0] - lobes[1]);
  // Five vacuum widths, cut back so the window stays off the fringes.
  const double radius = std::min(5.0 * 0.5, 0.6 * half_separation);

  std::vector<double> xs, ys, ws;
  for (std::size_t i = 0; i < map.re.size(); ++i) {
    for (std::size_t j = 0; j < map.im.size(); ++j) {
      const cplx b = map.beta(static_cast<int>(i), static_cast<int>(j));
      if (std::abs(b - lobes[0]) <= radius || std::abs(b - lobes[1]) <= radius) {
        xs.push_back(b.real());
        ys.push_back(b.imag());
        ws.push_back(map.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      }
    }
  }
  if (xs.size() < 2 * kParams) throw FitError("too few points around the lobes");

  TwoLobeModel model;
  model.x = Eigen::Map<Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
  model.y = Eigen::Map<Eigen::VectorXd>(ys.data(), static_cast<Eigen::Index>(ys.size()));
  model.w = Eigen::Map<Eigen::VectorXd>(ws.data(), static_cast<Eigen::Index>(ws.size()));

  // Second moments of the positive part around each lobe, pooled.
  Eigen::Matrix2d moment = Eigen::Matrix2d::Zero();
  double weight = 0.0;
  std::array<double, 2> height{0.0, 0.0};
  for (Eigen::Index k = 0; k < model.w.size(); ++k) {
    const cplx b(model.x(k), model.y(k));
    const int lobe = std::abs(b - lobes[0]) <= std::abs(b - lobes[1]) ? 0 : 1;
    const double v = std::max(0.0, model.w(k));
    const Eigen::Vector2d d(b.real() - lobes[lobe].real(), b.imag() - lobes[lobe].imag());
    moment += v * d * d.transpose();
    weight += v;
    height[lobe] = std::max(height[lobe], model.w(k));
  }
  if (!(weight > 0.0)) throw FitError("no positive weight around the lobes");
  moment /= weight;
  const Eigen::LLT<Eigen::Matrix2d> llt(moment);
  Eigen::Matrix2d chol = Eigen::Matrix2d::Identity() * 0.5;
  if (llt.info() == Eigen::Success && llt.matrixL()(0, 0) > 0.0 &&
      llt.matrixL()(1, 1) > 0.0) {
    chol = llt.matrixL();
  }

  Eigen::VectorXd start(kParams);
  start << height[0], height[1], lobes[0].real(), lobes[0].imag(), lobes[1].real(),
      lobes[1].imag(), std::log(chol(0, 0)), chol(1, 0), std::log(chol(1, 1));
  const Eigen::VectorXd best = fit(model, start);

  SqueezingFit out;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(covariance_of(best));
  out.variance_min = eig.eigenvalues()(0);
  out.variance_max = eig.eigenvalues()(1);
  double angle = std::atan2(eig.eigenvectors()(1, 0), eig.eigenvectors()(0, 0));
  if (angle < 0.0) angle += std::numbers::pi;
  if (angle >= std::numbers::pi) angle -= std::numbers::pi;
  out.squeezed_axis = angle;
  out.db = db_of(best);
  out.centres = {cplx(best(2), best(3)), cplx(best(4), best(5))};
  const Eigen::VectorXd fitted = model.evaluate(best);
  const Eigen::VectorXd residual = model.w - fitted;
  out.residual = std::sqrt(residual.squaredNorm() / static_cast<double>(residual.size()));

  if (options.bootstrap > 1) {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<Eigen::Index> pick(0, residual.size() - 1);
    std::vector<double> samples;
    samples.reserve(options.bootstrap);
    TwoLobeModel resampled = model;
    for (int b = 0; b < options.bootstrap; ++b) {
      for (Eigen::Index k = 0; k < residual.size(); ++k) {
        resampled.w(k) = fitted(k) + residual(pick(rng));
      }
      try {
        samples.push_back(db_of(fit(resampled, best)));
      } catch (const FitError&) {
        // A resample that fails to converge carries no spread information.
      }
    }
    if (samples.size() > 1) {
      const double mean =
          std::accumulate(samples.begin(), samples.end(), 0.0) / samples.size();
      double var = 0.0;
      for (double s : samples) var += (s - mean) * (s - mean);
      out.uncertainty = std::sqrt(var / static_cast<double>(samples.size() - 1));
    }
  }
  return out;
}

}  // namespace catsim
