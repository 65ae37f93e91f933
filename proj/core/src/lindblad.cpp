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

#include "catsim/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Sparse>

#include "catsim/errors.hpp"

namespace catsim {

LindbladModel::LindbladModel(Dims dims)
    : dims_(std::move(dims)), total_(catsim::total_dim(dims_)),
      static_h_(dims_, Matrix::Zero(total_, total_), "H") {}

void LindbladModel::add_hamiltonian(const Operator& h) {
  if (h.dims() != dims_) throw InvalidDimension("Hamiltonian dims mismatch");
  static_h_ += h;
}

void LindbladModel::add_drive(Operator op, Coefficient coefficient) {
  if (op.dims() != dims_) throw InvalidDimension("drive operator dims mismatch");
  if (!coefficient) throw InvalidArgument("drive needs a coefficient function");
  drives_.push_back({std::move(op), std::move(coefficient)});
}

void LindbladModel::add_dissipator(double rate, Operator jump, std::string label,
                                   Coefficient shift) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw InvalidArgument("dissipator rate must be finite and non-negative");
  }
  if (jump.dims() != dims_) throw InvalidDimension("jump operator dims mismatch");
  if (rate == 0.0) return;
  dissipators_.push_back({rate, std::move(jump), std::move(shift), std::move(label)});
}

Operator LindbladModel::hamiltonian_at(double t) const {
  Operator h = static_h_;
  for (const auto& d : drives_) {
    const cplx f = d.coefficient(t);
    h += f * d.op + std::conj(f) * d.op.adjoint();
  }
  return h;
}

bool LindbladModel::time_dependent() const {
  if (!drives_.empty()) return true;
  return std::any_of(dissipators_.begin(), dissipators_.end(),
                     [](const Dissipator& d) { return bool(d.shift); });
}

const Record& Trajectory::record(const std::string& name) const {
  for (const auto& r : records) {
    if (r.name == name) return r;
  }
  throw InvalidArgument("no record named '" + name + "'");
}

namespace {

using Sparse = Eigen::SparseMatrix<cplx>;

// Operator stored by diagonals when that is compact. Ladder operators and
// their products on tensor spaces have a handful of constant-offset
// diagonals, and the diagonal kernel runs over contiguous memory.
class BandOp {
 public:
  BandOp() = default;
  explicit BandOp(const Matrix& m) : n_(static_cast<int>(m.rows())) {
    std::vector<int> offsets;
    long nnz = 0;
    for (int o = -(n_ - 1); o < n_; ++o) {
      const int i0 = std::max(0, -o), i1 = std::min(n_, n_ - o);
      bool any = false;
      for (int i = i0; i < i1; ++i) {
        if (m(i, i + o) != cplx(0.0)) {
          any = true;
          ++nnz;
        }
      }
      if (any) offsets.push_back(o);
    }
    if (static_cast<long>(offsets.size()) * n_ <= 2 * nnz + n_) {
      for (int o : offsets) {
        Vector v = Vector::Zero(n_);
        const int i0 = std::max(0, -o), i1 = std::min(n_, n_ - o);
        for (int i = i0; i < i1; ++i) v(i) = m(i, i + o);
        offsets_.push_back(o);
        diagonals_.push_back(std::move(v));
      }
    } else {
      sparse_ = m.sparseView(0.0, 1.0);
      use_sparse_ = true;
    }
  }

  // out (+)= scale * A x.
  void multiply(const Matrix& x, Matrix& out, cplx scale, bool accumulate) const {
    if (use_sparse_) {
      if (accumulate) {
        out.noalias() += scale * (sparse_ * x);
      } else {
        out.noalias() = scale * (sparse_ * x);
      }
      return;
    }
    if (!accumulate) out.setZero();
    const int cols = static_cast<int>(x.cols());
    for (std::size_t d = 0; d < offsets_.size(); ++d) {
      const int o = offsets_[d];
      const int i0 = std::max(0, -o), i1 = std::min(n_, n_ - o);
      scaled_ = scale * diagonals_[d];
      const cplx* v = scaled_.data();
      for (int j = 0; j < cols; ++j) {
        const cplx* xc = x.col(j).data();
        cplx* oc = out.col(j).data();
        for (int i = i0; i < i1; ++i) oc[i] += v[i] * xc[i + o];
      }
    }
  }

 private:
  int n_ = 0;
  std::vector<int> offsets_;
  std::vector<Vector> diagonals_;
  Sparse sparse_;
  bool use_sparse_ = false;
  mutable Vector scaled_;
};

// lambda_max - lambda_min of a Hermitian matrix: the spectral radius of
// the commutator superoperator [H, .].
double spectral_spread(const Matrix& h) {
  if (h.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
}

double spectral_norm(const Matrix& a) {
  if (a.rows() == 0) return 0.0;
  const Matrix g = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

// Sparse, pre-assembled form of a LindbladModel.
//
//   K(t) = H0 - i/2 sum_k J_k^dag J_k + sum_d f_d(t) A_d + conj(f_d(t)) A_d^dag
//   drho = -i K rho + (-i K rho)^dag + sum_k J_k rho J_k^dag
//
// A jump with shift c(t) contributes rate * D[L + c] = rate * D[L] +
// [H', .] with H' = (i rate / 2)(c^* L - c L^dag), which is folded in as an
// additional drive term with coefficient (i rate / 2) c^*(t) on L.
class Generator {
 public:
  explicit Generator(const LindbladModel& model) {
    const int n = model.total_dim();
    Matrix k = model.static_hamiltonian().matrix();
    for (const auto& d : model.dissipators()) {
      const Matrix& l = d.jump.matrix();
      k -= (0.5 * kI * d.rate) * (l.adjoint() * l);
      const Matrix j = std::sqrt(d.rate) * l;
      jumps_.emplace_back(j);
      jumps_adj_.emplace_back(j.adjoint());
      if (d.shift) {
        const double rate = d.rate;
        Coefficient shift = d.shift;
        drives_.push_back({BandOp(l), BandOp(l.adjoint()),
                           [rate, shift](double t) {
                             return 0.5 * kI * rate * std::conj(shift(t));
                           },
                           spectral_norm(l)});
      }
    }
    for (const auto& d : model.drives()) {
      drives_.push_back({BandOp(d.op.matrix()), BandOp(d.op.matrix().adjoint()),
                         d.coefficient, spectral_norm(d.op.matrix())});
    }
    k0_ = BandOp(k);
    k0_adj_ = BandOp(k.adjoint());
    scratch_.resize(n, n);
    scratch_adj_.resize(n, n);
    hermitian_spread_ = spectral_spread(model.static_hamiltonian().matrix());
    for (const auto& d : model.dissipators()) {
      const double l = spectral_norm(d.jump.matrix());
      dissipative_bound_ += d.rate * l * l;
    }
  }

  // out = L(rho) at time t.
  void apply(double t, const Matrix& rho, Matrix& out) {
    k0_.multiply(rho, scratch_, -kI, false);
    for (auto& d : drives_) {
      const cplx f = d.coefficient(t);
      if (f == cplx(0.0)) continue;
      d.op.multiply(rho, scratch_, -kI * f, true);
      d.op_adj.multiply(rho, scratch_, -kI * std::conj(f), true);
    }
    out = scratch_ + scratch_.adjoint();
    for (const auto& j : jumps_) {
      j.multiply(rho, scratch_, 1.0, false);
      scratch_adj_ = scratch_.adjoint();
      j.multiply(scratch_adj_, out, 1.0, true);
    }
  }

  // out = L^dag(a) at time t (Heisenberg picture), a Hermitian.
  void apply_adjoint(double t, const Matrix& a, Matrix& out) {
    // L^dag(A) = i K^dag A + (i K^dag A)^dag + sum J^dag A J.
    k0_adj_.multiply(a, scratch_, kI, false);
    for (auto& d : drives_) {
      const cplx f = d.coefficient(t);
      if (f == cplx(0.0)) continue;
      // (f A + f^* A^dag)^dag = f^* A^dag + f A.
      d.op_adj.multiply(a, scratch_, kI * std::conj(f), true);
      d.op.multiply(a, scratch_, kI * f, true);
    }
    out = scratch_ + scratch_.adjoint();
    for (const auto& j : jumps_adj_) {
      j.multiply(a, scratch_, 1.0, false);
      scratch_adj_ = scratch_.adjoint();
      j.multiply(scratch_adj_, out, 1.0, true);
    }
  }

  double norm_bound_over(double t0, double t1) const {
    double drive = 0.0;
    constexpr int kSamples = 257;
    for (const auto& d : drives_) {
      double fmax = 0.0;
      for (int s = 0; s < kSamples; ++s) {
        const double t = t0 + (t1 - t0) * s / (kSamples - 1);
        fmax = std::max(fmax, std::abs(d.coefficient(t)));
      }
      drive += 4.0 * fmax * d.norm;
    }
    return hermitian_spread_ + drive + dissipative_bound_;
  }

 private:
  struct Drive {
    BandOp op;
    BandOp op_adj;
    Coefficient coefficient;
    double norm = 0.0;
  };
  BandOp k0_;
  BandOp k0_adj_;
  std::vector<BandOp> jumps_;
  std::vector<BandOp> jumps_adj_;
  std::vector<Drive> drives_;
  Matrix scratch_;
  Matrix scratch_adj_;
  double hermitian_spread_ = 0.0;
  double dissipative_bound_ = 0.0;
};

// Largest RK4 step that keeps h * spectral radius inside the stability
// region (which reaches ~2.8 on both the real and imaginary axes).
double stable_step(double bound) {
  constexpr double kStabilityMargin = 2.5;
  return bound > 0.0 ? kStabilityMargin / bound : 1e300;
}

int substeps_for(const Generator& gen, double t0, double t1, double dt,
                 const EvolveOptions& options) {
  constexpr double kDefaultSubstepCap = 1.0;  // ns
  double h = stable_step(gen.norm_bound_over(t0, t1));
  h = std::min(h, options.max_substep > 0.0 ? options.max_substep : kDefaultSubstepCap);
  return std::max(1, static_cast<int>(std::ceil(dt / h - 1e-9)));
}

template <class Rhs>
void rk4_step(Rhs&& rhs, double t, double h, Matrix& y, Matrix (&k)[4],
              Matrix& tmp) {
  rhs(t, y, k[0]);
  tmp = y + (0.5 * h) * k[0];
  rhs(t + 0.5 * h, tmp, k[1]);
  tmp = y + (0.5 * h) * k[1];
  rhs(t + 0.5 * h, tmp, k[2]);
  tmp = y + h * k[2];
  rhs(t + h, tmp, k[3]);
  y += (h / 6.0) * (k[0] + 2.0 * k[1] + 2.0 * k[2] + k[3]);
}

void check_finite(const Matrix& m, double t) {
  if (!m.allFinite()) {
    throw DivergenceError("non-finite state entries at t = " +
                          std::to_string(t) + " ns");
  }
}

void validate_span(double t0, double t1, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InvalidArgument("time step must be positive");
  }
  if (!(t1 >= t0)) throw InvalidArgument("t1 must not precede t0");
}

}  // namespace

Matrix dissipator_apply(const Operator& jump, double rate,
                        const DensityMatrix& rho) {
  if (jump.size() != rho.size()) {
    throw InvalidDimension("dissipator: operator and state sizes differ");
  }
  const Matrix& l = jump.matrix();
  const Matrix& r = rho.matrix();
  const Matrix ldl = l.adjoint() * l;
  return rate * (l * r * l.adjoint() - 0.5 * ldl * r - 0.5 * r * ldl);
}

Matrix lindblad_rhs(const LindbladModel& model, double t, const Matrix& rho) {
  Generator gen(model);
  Matrix out(rho.rows(), rho.cols());
  gen.apply(t, rho, out);
  return out;
}

double generator_norm_bound(const LindbladModel& model, double t0, double t1) {
  return Generator(model).norm_bound_over(t0, t1);
}

Trajectory evolve(const LindbladModel& model, const DensityMatrix& rho0,
                  double t0, double t1, double dt,
                  const std::vector<Observable>& record,
                  const EvolveOptions& options) {
  validate_span(t0, t1, dt);
  if (rho0.dims() != model.dims()) {
    throw InvalidDimension("initial state dims do not match the model");
  }
  for (const auto& obs : record) {
    if (obs.op.size() != model.total_dim()) {
      throw InvalidDimension("observable '" + obs.name + "' has wrong size");
    }
  }

  Generator gen(model);
  const int steps = std::max(0, static_cast<int>(std::ceil((t1 - t0) / dt - 1e-9)));
  const int sub = substeps_for(gen, t0, t1, dt, options);

  Trajectory traj;
  traj.substeps = sub;
  for (const auto& obs : record) traj.records.push_back({obs.name, {}});

  Matrix y = rho0.matrix();
  const int n = model.total_dim();
  Matrix k[4] = {Matrix(n, n), Matrix(n, n), Matrix(n, n), Matrix(n, n)};
  Matrix tmp(n, n);
  auto rhs = [&gen](double t, const Matrix& x, Matrix& out) { gen.apply(t, x, out); };

  auto snapshot = [&](int step, double t) {
    traj.times.push_back(t);
    for (std::size_t r = 0; r < record.size(); ++r) {
      const cplx v = (record[r].op.matrix().transpose().cwiseProduct(y)).sum();
      traj.records[r].values.push_back(v.real());
    }
    if (options.state_every > 0 && step % options.state_every == 0) {
      traj.state_times.push_back(t);
      traj.states.push_back(adopt_density(model.dims(), y));
    }
  };

  const double trace0 = y.trace().real();
  snapshot(0, t0);
  double t = t0;
  for (int step = 1; step <= steps; ++step) {
    const double t_next = std::min(t1, t0 + step * dt);
    const double h = (t_next - t) / sub;
    for (int s = 0; s < sub; ++s) {
      rk4_step(rhs, t + s * h, h, y, k, tmp);
    }
    t = t_next;
    tmp = 0.5 * (y + y.adjoint());
    y.swap(tmp);
    check_finite(y, t);
    const double drift = std::abs(y.trace().real() - trace0);
    traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
    if (drift > options.trace_error_tol) {
      throw StepSizeError("trace drift " + std::to_string(drift) +
                          " at t = " + std::to_string(t) +
                          " ns; reduce dt (currently " + std::to_string(dt) +
                          " ns)");
    }
    snapshot(step, t);
  }
  traj.final_state = adopt_density(model.dims(), std::move(y));
  return traj;
}

DensityMatrix propagate(const LindbladModel& model, const DensityMatrix& rho0,
                        double t0, double t1, double dt,
                        const EvolveOptions& options) {
  EvolveOptions opts = options;
  opts.state_every = 0;
  return evolve(model, rho0, t0, t1, dt, {}, opts).final_state;
}

Operator evolve_adjoint(const LindbladModel& model, const Operator& observable,
                        double t0, double t1, double dt,
                        const EvolveOptions& options) {
  validate_span(t0, t1, dt);
  if (observable.dims() != model.dims()) {
    throw InvalidDimension("observable dims do not match the model");
  }
  const Matrix& o = observable.matrix();
  if ((o - o.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw InvalidArgument("adjoint evolution needs a Hermitian observable");
  }
  Generator gen(model);
  const int steps = std::max(0, static_cast<int>(std::ceil((t1 - t0) / dt - 1e-9)));
  const int sub = substeps_for(gen, t0, t1, dt, options);

  // Integrate in reversed time s = t1 - t: dA/ds = L_{t1 - s}^dag(A).
  auto rhs = [&gen, t1](double s, const Matrix& x, Matrix& out) {
    gen.apply_adjoint(t1 - s, x, out);
  };
  const int n = model.total_dim();
  Matrix y = o;
  Matrix k[4] = {Matrix(n, n), Matrix(n, n), Matrix(n, n), Matrix(n, n)};
  Matrix tmp(n, n);
  const double span = t1 - t0;
  double s = 0.0;
  for (int step = 1; step <= steps; ++step) {
    const double s_next = std::min(span, step * dt);
    const double h = (s_next - s) / sub;
    for (int j = 0; j < sub; ++j) rk4_step(rhs, s + j * h, h, y, k, tmp);
    s = s_next;
    tmp = 0.5 * (y + y.adjoint());
    y.swap(tmp);
    check_finite(y, t1 - s);
  }
  return Operator(model.dims(), std::move(y), observable.label());
}

bool steady_state_reached(const Trajectory& traj, const std::string& observable,
                          double window, double tol) {
  const Record& rec = traj.record(observable);
  if (rec.values.empty() || traj.times.empty()) {
    throw InvalidArgument("empty record '" + observable + "'");
  }
  const double t_end = traj.times.back();
  if (t_end - traj.times.front() < window) {
    throw InvalidArgument("trajectory shorter than the steady-state window");
  }
  double lo = rec.values.back(), hi = rec.values.back();
  for (std::size_t i = traj.times.size(); i-- > 0;) {
    if (traj.times[i] < t_end - window) break;
    lo = std::min(lo, rec.values[i]);
    hi = std::max(hi, rec.values[i]);
  }
  return hi - lo < tol;
}

}  // namespace catsim
