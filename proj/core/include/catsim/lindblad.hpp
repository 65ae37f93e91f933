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

// Fixed-step RK4 integration of
//
//   d rho / dt = -i [H(t), rho] + sum_k rate_k D[L_k + c_k(t)] rho,
//   D[L] rho   = L rho L^dag - 1/2 {L^dag L, rho},
//
// with time in ns and angular frequencies in rad/ns.

#include <functional>
#include <string>
#include <vector>

#include "catsim/fock.hpp"

namespace catsim {

using Coefficient = std::function<cplx(double)>;

// Adds coefficient(t) * op + conj(coefficient(t)) * op^dag to H(t).
struct DriveTerm {
  Operator op;
  Coefficient coefficient;
};

// rate * D[jump + shift(t) * I]. An empty shift means a static jump.
struct Dissipator {
  double rate = 0.0;
  Operator jump;
  Coefficient shift;
  std::string label;
};

class LindbladModel {
 public:
  explicit LindbladModel(Dims dims);

  const Dims& dims() const { return dims_; }
  int total_dim() const { return total_; }

  void add_hamiltonian(const Operator& h);
  void add_drive(Operator op, Coefficient coefficient);
  void add_dissipator(double rate, Operator jump, std::string label = {},
                      Coefficient shift = {});

  const Operator& static_hamiltonian() const { return static_h_; }
  const std::vector<DriveTerm>& drives() const { return drives_; }
  const std::vector<Dissipator>& dissipators() const { return dissipators_; }

  // Coherent part of the generator at time t (drives included; the
  // Hamiltonian equivalent of shifted jumps is not).
  Operator hamiltonian_at(double t) const;

  bool time_dependent() const;

 private:
  Dims dims_;
  int total_;
  Operator static_h_;
  std::vector<DriveTerm> drives_;
  std::vector<Dissipator> dissipators_;
};

struct Observable {
  std::string name;
  Operator op;
};

struct Record {
  std::string name;
  std::vector<double> values;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Record> records;
  std::vector<double> state_times;
  std::vector<DensityMatrix> states;
  DensityMatrix final_state{{1}, Matrix::Identity(1, 1)};
  double max_trace_drift = 0.0;
  int substeps = 1;

  const Record& record(const std::string& name) const;
};

struct EvolveOptions {
  // Keep every n-th recorded state (0 disables state storage).
  int state_every = 0;
  // Internal substep cap in ns. 0 keeps substeps at or below 1 ns and inside
  // the RK4 stability region of the generator bound.
  double max_substep = 0.0;
  double trace_error_tol = 1e-4;
};

// rate * (L rho L^dag - 1/2 L^dag L rho - 1/2 rho L^dag L).
Matrix dissipator_apply(const Operator& jump, double rate,
                        const DensityMatrix& rho);

// Right-hand side of the master equation at time t.
Matrix lindblad_rhs(const LindbladModel& model, double t, const Matrix& rho);

// Integrates from t0 to t1 with output interval dt. Records one value per
// output time (real part of Tr(O rho)).
Trajectory evolve(const LindbladModel& model, const DensityMatrix& rho0,
                  double t0, double t1, double dt,
                  const std::vector<Observable>& record = {},
                  const EvolveOptions& options = {});

// Final state only.
DensityMatrix propagate(const LindbladModel& model, const DensityMatrix& rho0,
                        double t0, double t1, double dt,
                        const EvolveOptions& options = {});

// Heisenberg picture: returns A such that Tr(A rho(t0)) = Tr(O rho(t1)) for
// every initial state. O must be Hermitian.
Operator evolve_adjoint(const LindbladModel& model, const Operator& observable,
                        double t0, double t1, double dt,
                        const EvolveOptions& options = {});

// Upper bound on the spectral radius of the generator over [t0, t1].
double generator_norm_bound(const LindbladModel& model, double t0, double t1);

// True iff max - min of the named record over the trailing window < tol.
bool steady_state_reached(const Trajectory& traj, const std::string& observable,
                          double window, double tol);

}  // namespace catsim
