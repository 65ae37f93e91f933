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

// Truncated Fock-space operator algebra.
//
// Mode ordering is global: memory, buffer, transmon. A tensor-product index
// is row-major over that ordering, i.e. the last listed mode varies fastest,
// which matches Eigen::kroneckerProduct(first, second).

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace catsim {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Dims = std::vector<int>;

inline constexpr cplx kI{0.0, 1.0};

int total_dim(const Dims& dims);

// Whether constructors enforce the truncation guard |beta|^2 + 4|beta| < dim.
enum class Guard { enforce, skip };

// Smallest dimension accepted by the truncation guard for amplitude |beta|.
int required_dim(double abs_beta);

// Throws TruncationError when dim does not satisfy the guard.
void check_truncation(int dim, double abs_beta);

class Operator {
 public:
  Operator() = default;
  Operator(Dims dims, Matrix entries, std::string label = {});

  const Dims& dims() const { return dims_; }
  const Matrix& matrix() const { return entries_; }
  int size() const { return static_cast<int>(entries_.rows()); }
  const std::string& label() const { return label_; }

  Operator adjoint() const;
  Operator with_label(std::string label) const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(cplx scale);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, cplx s) { return a *= s; }
  friend Operator operator*(cplx s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  Dims dims_;
  Matrix entries_;
  std::string label_;
};

class PureState {
 public:
  PureState(Dims dims, Vector amplitudes);

  const Dims& dims() const { return dims_; }
  const Vector& amplitudes() const { return amplitudes_; }
  int size() const { return static_cast<int>(amplitudes_.size()); }

 private:
  Dims dims_;
  Vector amplitudes_;
};

class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-8;
  static constexpr double kPositivityTol = 1e-8;

  // Validates Hermiticity and unit trace. Positivity is checked separately by
  // checked() because it needs an eigendecomposition.
  DensityMatrix(Dims dims, Matrix entries);

  static DensityMatrix checked(Dims dims, Matrix entries);
  static DensityMatrix from_pure(const PureState& psi);

  const Dims& dims() const { return dims_; }
  const Matrix& matrix() const { return entries_; }
  int size() const { return static_cast<int>(entries_.rows()); }

  double min_eigenvalue() const;
  cplx expectation(const Operator& op) const;
  double trace_real() const { return entries_.trace().real(); }

 private:
  struct Unchecked {};
  DensityMatrix(Dims dims, Matrix entries, Unchecked);
  friend DensityMatrix adopt_density(Dims dims, Matrix entries);

  Dims dims_;
  Matrix entries_;
};

// Wraps a matrix produced by a trusted numerical routine (solver output,
// partial trace) without re-running the trace and Hermiticity checks.
DensityMatrix adopt_density(Dims dims, Matrix entries);

// Matrix exponential by scaling and squaring with Pade approximants.
Matrix expm(const Matrix& generator);

Operator identity_op(int dim);
Operator annihilation_op(int dim);
Operator creation_op(int dim);
Operator number_op(int dim);
Operator parity_op(int dim);

// D(beta) = exp(beta m^dag - beta^* m) on the truncated space.
Operator displacement_op(int dim, cplx beta, Guard guard = Guard::enforce);

// U_sq(r) = exp(r (m^2 - m^dag^2) / 2). Squeezes x = (m + m^dag)/2 for r > 0.
Operator squeeze_op(int dim, double r);

// Rotation exp(-i phi m^dag m).
Operator rotation_op(int dim, double phi);

// Transmon as a two-level system, index 0 = |g>, 1 = |e>.
Operator sigma_z();  // |e><e| - |g><g|
Operator sigma_plus();   // |e><g|
Operator sigma_minus();  // |g><e|
Operator sigma_x();
Operator sigma_y();
// Rotation of the qubit about y by angle theta: exp(-i theta sigma_y / 2).
Operator qubit_ry(double theta);

PureState fock_state(int dim, int n);
PureState coherent_state(int dim, cplx alpha, Guard guard = Guard::enforce);

enum class CatPhase { plus, minus, plus_i, minus_i };

// Normalised |alpha> + c|-alpha> with c in {1, -1, i, -i}.
PureState cat_state(int dim, cplx alpha, CatPhase phase,
                    Guard guard = Guard::enforce);

Operator tensor(const Operator& a, const Operator& b);
PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// Lifts a single-mode operator into the full space described by dims.
Operator embed(const Operator& op, const Dims& dims, int mode);

// Reduced state of one mode.
DensityMatrix partial_trace(const DensityMatrix& rho, int keep_mode);

// |<psi|rho|psi>|, the fidelity of rho to a pure target.
double fidelity(const DensityMatrix& rho, const PureState& target);

// Max-entry deviation of U^dag U from identity on the leading `retained`
// basis states (all of them when retained <= 0).
double unitarity_error(const Operator& u, int retained = 0);

}  // namespace catsim
