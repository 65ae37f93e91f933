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

// Cat-qubit logical subspace: basis, Bloch vectors, maximum-likelihood
// reconstruction from Wigner maps, and the trace distance.

#include <array>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "catsim/fock.hpp"
#include "catsim/wigner.hpp"

namespace catsim {

using Matrix2 = Eigen::Matrix2cd;

// Half the sum of |eigenvalues| of the Hermitian difference.
double trace_distance(const Matrix& a, const Matrix& b);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Symmetrically orthonormalised {|alpha>, |-alpha>}: e0 ~ |alpha>,
// e1 ~ |-alpha>. sigma_z = e0 e0^dag - e1 e1^dag; the sigma_x eigenstates
// are the even and odd cats.
class LogicalBasis {
 public:
  LogicalBasis(int dim, cplx alpha);

  int dim() const { return dim_; }
  cplx alpha() const { return alpha_; }
  // dim x 2 isometry [e0 e1].
  const Matrix& isometry() const { return basis_; }
  // Coefficients c with [e0 e1] = [|alpha> |-alpha>] c.
  const Matrix2& coherent_coefficients() const { return coeff_; }

  Operator sigma_x() const;
  Operator sigma_y() const;
  Operator sigma_z() const;

  // 2x2 -> Fock-space density matrix.
  DensityMatrix lift(const Matrix2& rho) const;
  // Compression V^dag rho V renormalised to unit trace; `population`
  // receives the weight inside the subspace before renormalisation.
  Matrix2 compress(const DensityMatrix& rho, double* population = nullptr) const;

 private:
  int dim_;
  cplx alpha_;
  Matrix basis_;
  Matrix2 coeff_;
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

struct LogicalState {
  cplx alpha;
  Matrix2 rho;  // basis {e0, e1}
};

BlochVector bloch_vector(const LogicalState& state);
LogicalState logical_from_bloch(cplx alpha, const BlochVector& r);
LogicalState project_logical(const DensityMatrix& rho, cplx alpha);

// Wigner function of |a><b| at beta.
cplx coherent_outer_wigner(cplx a, cplx b, cplx beta);

struct MleReport {
  double residual = 0.0;  // RMS of W_model - W_data
  bool on_boundary = false;
};

// Least-squares fit of W over 2x2 states rho = (I + r.sigma)/2, |r| <= 1,
// using exact coherent-state Wigner functions for the model.
LogicalState mle_logical(const WignerMap& map, cplx alpha,
                         MleReport* report = nullptr);

// Centres of the two dominant positive lobes, strongest first. Throws
// FitError when fewer than two lobes are found.
std::array<cplx, 2> locate_lobes(const WignerMap& map);

// Half the separation of the two dominant lobes, phase from the lobe axis
// (sign chosen with Re > 0, or Im > 0 on the imaginary axis). Throws
// FitError when fewer than two lobes are found.
cplx estimate_alpha_from_map(const WignerMap& map);

nlohmann::json to_json(const LogicalState& s);

}  // namespace catsim
