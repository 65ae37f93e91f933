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
#include <numeric>
#include <utility>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "catsim/errors.hpp"

namespace catsim {

int total_dim(const Dims& dims) {
  if (dims.empty()) throw InvalidDimension("empty mode list");
  int total = 1;
  for (int d : dims) {
    if (d < 1) throw InvalidDimension("mode dimension must be positive");
    total *= d;
  }
  return total;
}

int required_dim(double abs_beta) {
  return static_cast<int>(std::floor(abs_beta * abs_beta + 4.0 * abs_beta)) + 1;
}

void check_truncation(int dim, double abs_beta) {
  const int need = required_dim(abs_beta);
  if (dim < need) {
    throw TruncationError("Fock truncation " + std::to_string(dim) +
                              " too small for |beta| = " +
                              std::to_string(abs_beta) + "; need dim >= " +
                              std::to_string(need),
                          need);
  }
}

Operator::Operator(Dims dims, Matrix entries, std::string label)
    : dims_(std::move(dims)), entries_(std::move(entries)),
      label_(std::move(label)) {
  const int n = total_dim(dims_);
  if (entries_.rows() != n || entries_.cols() != n) {
    throw InvalidDimension("operator matrix is " +
                           std::to_string(entries_.rows()) + "x" +
                           std::to_string(entries_.cols()) +
                           ", expected side " + std::to_string(n));
  }
}

Operator Operator::adjoint() const {
  return Operator(dims_, entries_.adjoint(), label_.empty() ? "" : label_ + "^dag");
}

Operator Operator::with_label(std::string label) const {
  return Operator(dims_, entries_, std::move(label));
}

namespace {

void require_same_shape(const Dims& a, const Dims& b) {
  if (a != b) throw InvalidDimension("operator dimension mismatch");
}

}  // namespace

Operator& Operator::operator+=(const Operator& other) {
  require_same_shape(dims_, other.dims_);
  entries_ += other.entries_;
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  require_same_shape(dims_, other.dims_);
  entries_ -= other.entries_;
  return *this;
}

Operator& Operator::operator*=(cplx scale) {
  entries_ *= scale;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_shape(a.dims(), b.dims());
  return Operator(a.dims(), a.matrix() * b.matrix());
}

PureState::PureState(Dims dims, Vector amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != total_dim(dims_)) {
    throw InvalidDimension("state vector length does not match dims");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-10) {
    throw InvalidState("pure state is not normalised (norm " +
                       std::to_string(amplitudes_.norm()) + ")");
  }
}

DensityMatrix::DensityMatrix(Dims dims, Matrix entries, Unchecked)
    : dims_(std::move(dims)), entries_(std::move(entries)) {}

DensityMatrix::DensityMatrix(Dims dims, Matrix entries)
    : DensityMatrix(std::move(dims), std::move(entries), Unchecked{}) {
  const int n = total_dim(dims_);
  if (entries_.rows() != n || entries_.cols() != n) {
    throw InvalidDimension("density matrix shape does not match dims");
  }
  const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol) {
    throw InvalidState("density matrix is not Hermitian (deviation " +
                       std::to_string(herm) + ")");
  }
  if (std::abs(entries_.trace() - cplx(1.0)) > kTraceTol) {
    throw InvalidState("density matrix trace " +
                       std::to_string(entries_.trace().real()) + " != 1");
  }
}

DensityMatrix DensityMatrix::checked(Dims dims, Matrix entries) {
  DensityMatrix rho(std::move(dims), std::move(entries));
  const double lo = rho.min_eigenvalue();
  if (lo < -kPositivityTol) {
    throw InvalidState("density matrix has negative eigenvalue " +
                       std::to_string(lo));
  }
  return rho;
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const Vector& v = psi.amplitudes();
  return DensityMatrix(psi.dims(), v * v.adjoint(), Unchecked{});
}

DensityMatrix adopt_density(Dims dims, Matrix entries) {
  if (entries.rows() != total_dim(dims) || entries.cols() != entries.rows()) {
    throw InvalidDimension("density matrix shape does not match dims");
  }
  return DensityMatrix(std::move(dims), std::move(entries),
                       DensityMatrix::Unchecked{});
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

cplx DensityMatrix::expectation(const Operator& op) const {
  if (op.size() != size()) throw InvalidDimension("observable size mismatch");
  // Tr(O rho) without forming the product.
  return (op.matrix().transpose().cwiseProduct(entries_)).sum();
}

Matrix expm(const Matrix& generator) {
  Matrix out = generator.exp();
  return out;
}

Operator identity_op(int dim) {
  if (dim < 1) throw InvalidDimension("dim must be >= 1");
  return Operator({dim}, Matrix::Identity(dim, dim), "I");
}

Operator annihilation_op(int dim) {
  if (dim < 2) {
    throw InvalidDimension("annihilation operator needs dim >= 2, got " +
                           std::to_string(dim));
  }
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator({dim}, std::move(a), "a");
}

Operator creation_op(int dim) { return annihilation_op(dim).adjoint(); }

Operator number_op(int dim) {
  if (dim < 1) throw InvalidDimension("dim must be >= 1");
  Matrix n = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return Operator({dim}, std::move(n), "n");
}

Operator parity_op(int dim) {
  if (dim < 1) throw InvalidDimension("dim must be >= 1");
  Matrix p = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return Operator({dim}, std::move(p), "P");
}

Operator displacement_op(int dim, cplx beta, Guard guard) {
  if (guard == Guard::enforce) check_truncation(dim, std::abs(beta));
  const Matrix a = annihilation_op(dim).matrix();
  const Matrix gen = beta * a.adjoint() - std::conj(beta) * a;
  return Operator({dim}, expm(gen), "D");
}

Operator squeeze_op(int dim, double r) {
  if (dim < 2) throw InvalidDimension("squeeze operator needs dim >= 2");
  if (std::abs(r) > 3.0) {
    throw TruncationError("squeezing |r| > 3 is outside the supported range",
                          dim);
  }
  const Matrix a = annihilation_op(dim).matrix();
  const Matrix a2 = a * a;
  const Matrix gen = 0.5 * r * (a2 - a2.adjoint());
  return Operator({dim}, expm(gen), "S");
}

Operator rotation_op(int dim, double phi) {
  Matrix u = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) u(k, k) = std::exp(-kI * (phi * k));
  return Operator({dim}, std::move(u), "R");
}

Operator sigma_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = -1.0;
  m(1, 1) = 1.0;
  return Operator({2}, std::move(m), "sz");
}

Operator sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return Operator({2}, std::move(m), "s+");
}

Operator sigma_minus() { return sigma_plus().adjoint().with_label("s-"); }

Operator sigma_x() {
  return (sigma_plus() + sigma_minus()).with_label("sx");
}

Operator sigma_y() {
  // Standard Pauli algebra with |e> playing the role of |0>.
  return (-kI * sigma_plus() + kI * sigma_minus()).with_label("sy");
}

Operator qubit_ry(double theta) {
  Matrix m(2, 2);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m << c, -s, s, c;
  return Operator({2}, std::move(m), "Ry");
}

PureState fock_state(int dim, int n) {
  if (dim < 1) throw InvalidDimension("dim must be >= 1");
  if (n < 0 || n >= dim) {
    throw InvalidDimension("Fock index " + std::to_string(n) +
                           " outside truncation " + std::to_string(dim));
  }
  Vector v = Vector::Zero(dim);
  v(n) = 1.0;
  return PureState({dim}, std::move(v));
}

namespace {

Vector coherent_amplitudes(int dim, cplx alpha) {
  Vector v(dim);
  v(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < dim; ++n) {
    v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  }
  return v;
}

}  // namespace

PureState coherent_state(int dim, cplx alpha, Guard guard) {
  if (dim < 1) throw InvalidDimension("dim must be >= 1");
  if (guard == Guard::enforce) check_truncation(dim, std::abs(alpha));
  Vector v = coherent_amplitudes(dim, alpha);
  v /= v.norm();
  return PureState({dim}, std::move(v));
}

PureState cat_state(int dim, cplx alpha, CatPhase phase, Guard guard) {
  if (dim < 1) throw InvalidDimension("dim must be >= 1");
  if (guard == Guard::enforce) check_truncation(dim, std::abs(alpha));
  cplx c = 1.0;
  switch (phase) {
    case CatPhase::plus: c = 1.0; break;
    case CatPhase::minus: c = -1.0; break;
    case CatPhase::plus_i: c = kI; break;
    case CatPhase::minus_i: c = -kI; break;
  }
  // Combine amplitudes directly: for |alpha| -> 0 the odd cat is a tiny
  // difference of nearly equal vectors, so add per component and rescale.
  Vector plus = coherent_amplitudes(dim, alpha);
  Vector minus = coherent_amplitudes(dim, -alpha);
  Vector v = plus + c * minus;
  const double nrm = v.norm();
  if (!(nrm > 0.0)) {
    throw InvalidState("cat state vanishes for alpha = 0 with this phase");
  }
  v /= nrm;
  return PureState({dim}, std::move(v));
}

Operator tensor(const Operator& a, const Operator& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  Matrix k = Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval();
  return Operator(std::move(dims), std::move(k));
}

PureState tensor(const PureState& a, const PureState& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  Vector k = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes()).eval();
  return PureState(std::move(dims), std::move(k));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  Matrix k = Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval();
  return adopt_density(std::move(dims), std::move(k));
}

Operator embed(const Operator& op, const Dims& dims, int mode) {
  if (mode < 0 || mode >= static_cast<int>(dims.size())) {
    throw InvalidDimension("mode index out of range");
  }
  if (op.size() != dims[mode]) {
    throw InvalidDimension("operator does not match mode dimension");
  }
  int left = 1, right = 1;
  for (int k = 0; k < mode; ++k) left *= dims[k];
  for (int k = mode + 1; k < static_cast<int>(dims.size()); ++k) right *= dims[k];
  Matrix m = Eigen::kroneckerProduct(
                 Matrix::Identity(left, left),
                 Eigen::kroneckerProduct(op.matrix(),
                                         Matrix::Identity(right, right)).eval())
                 .eval();
  return Operator(dims, std::move(m), op.label());
}

DensityMatrix partial_trace(const DensityMatrix& rho, int keep_mode) {
  const Dims& dims = rho.dims();
  if (keep_mode < 0 || keep_mode >= static_cast<int>(dims.size())) {
    throw InvalidDimension("mode index out of range");
  }
  int left = 1, right = 1;
  for (int k = 0; k < keep_mode; ++k) left *= dims[k];
  for (int k = keep_mode + 1; k < static_cast<int>(dims.size()); ++k) {
    right *= dims[k];
  }
  const int mid = dims[keep_mode];
  const Matrix& m = rho.matrix();
  Matrix out = Matrix::Zero(mid, mid);
  for (int l = 0; l < left; ++l) {
    for (int a = 0; a < mid; ++a) {
      for (int b = 0; b < mid; ++b) {
        cplx acc = 0.0;
        const int row0 = (l * mid + a) * right;
        const int col0 = (l * mid + b) * right;
        for (int r = 0; r < right; ++r) acc += m(row0 + r, col0 + r);
        out(a, b) += acc;
      }
    }
  }
  return adopt_density({mid}, std::move(out));
}

double fidelity(const DensityMatrix& rho, const PureState& target) {
  if (rho.size() != target.size()) {
    throw InvalidDimension("fidelity: dimension mismatch");
  }
  const Vector& v = target.amplitudes();
  return (v.adjoint() * rho.matrix() * v)(0, 0).real();
}

double unitarity_error(const Operator& u, int retained) {
  const int n = u.size();
  const int k = (retained <= 0 || retained > n) ? n : retained;
  const Matrix prod = u.matrix().adjoint() * u.matrix();
  return (prod.topLeftCorner(k, k) - Matrix::Identity(k, k))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace catsim
