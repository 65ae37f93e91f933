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

// Wigner functions W(beta) = (2/pi) Tr(D(beta)^dag rho D(beta) P) and the
// simulated parity-measurement protocols used to sample them.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "catsim/device.hpp"
#include "catsim/fock.hpp"

namespace catsim {

inline constexpr double kWignerMax = 0.63661977236758134308;  // 2 / pi

enum class Protocol { ideal, ramsey, ramsey_enhanced };

std::string to_string(Protocol p);
Protocol protocol_from_string(const std::string& s);

struct Grid {
  std::vector<double> re;
  std::vector<double> im;

  static Grid uniform(double re_min, double re_max, int n_re, double im_min,
                      double im_max, int n_im);
  // n x n points over [-half, half]^2.
  static Grid square(double half_width, int n);
  // Default tomography grid for a cat of size alpha: 101 x 101 over
  // [-(|alpha| + 3), |alpha| + 3]^2.
  static Grid for_alpha(double abs_alpha, int n = 101);

  double max_abs() const;
};

struct WignerMap {
  std::vector<double> re;
  std::vector<double> im;
  // values(i, j) = W(re[i] + i im[j]).
  Eigen::MatrixXd values;
  Protocol protocol = Protocol::ideal;

  cplx beta(int i, int j) const { return {re[i], im[j]}; }
  // Trapezoid-free cell sum W dRe dIm; needs a uniform grid.
  double integral() const;
  double max_abs() const { return values.cwiseAbs().maxCoeff(); }
};

// Exact evaluation by displacing rho in a padded space wide enough for
// |beta|, so there is no truncation failure mode.
double wigner_point(const DensityMatrix& rho, cplx beta);

// Whole-grid evaluation by the Laguerre recurrence on the Fock matrix
// elements; agrees with wigner_point to rounding.
WignerMap wigner_map(const DensityMatrix& rho, const Grid& grid,
                     int threads = 1);

struct ReadoutOptions {
  double deflation_time = 300.0;  // ns at alpha = 0 for the enhanced branch
  double dt = 1.0;                // output step of the internal solves, ns
  // Constant added to both interleaved raw qubit signals. The difference of
  // the +pi/2 and -pi/2 sequences removes it.
  double signal_offset = 0.0;
};

// Simulated parity measurement after D(-beta), normalised so that the
// vacuum reads +1. The Ramsey stage runs with the two-photon exchange off
// and the memory coupled dispersively to a noisy transmon.
double simulate_parity_readout(const DensityMatrix& rho, const DeviceParams& p,
                               cplx beta, bool enhanced,
                               const ReadoutOptions& options = {});

struct FockReadout {
  int n = 0;
  double parity_readout = 0.0;       // simulate_parity_readout of |n><n|
  double no_loss_probability = 0.0;  // <n| rho_memory |n> after the Ramsey stage
};

// Ramsey parity readout of the Fock state |n> together with the probability
// that no photon is lost while the parity phase accumulates.
FockReadout ramsey_fock_readout(const DeviceParams& p, int n,
                                const ReadoutOptions& options = {});

// Probability of losing at least one photon during the Ramsey stage for the
// Fock mixture sum_n weights[n] |n><n|.
double parity_flip_probability(const DeviceParams& p,
                               const std::vector<double>& weights,
                               const ReadoutOptions& options = {});

// Same protocol with the readout pulled back to an effective memory
// observable once (Heisenberg picture), so each grid point costs one
// displacement and one trace. `dim` is the padded memory dimension.
class ParityReadout {
 public:
  ParityReadout(const DeviceParams& p, int dim, bool enhanced,
                const ReadoutOptions& options = {});

  int dim() const { return dim_; }
  const Operator& observable() const { return observable_; }

  // Readout of rho (dimension <= dim) without displacement.
  double measure(const DensityMatrix& rho) const;
  // Readout after D(-beta).
  double measure(const DensityMatrix& rho, cplx beta) const;

 private:
  int dim_;
  Operator observable_;
  double vacuum_;
};

// Padded dimension needed to displace a dim-level state by up to |beta|.
int padded_dim(int dim, double abs_beta);

// Ideal protocol returns wigner_map; the others scale the simulated parity
// by 2/pi.
WignerMap tomography(const DensityMatrix& rho, const DeviceParams& p,
                     const Grid& grid, Protocol protocol, int threads = 1,
                     const ReadoutOptions& options = {});

struct ParityCycle {
  int outcome = 0;             // +1 even, -1 odd
  double parity_estimate = 0;  // <P> after deflation
  DensityMatrix state{{1}, Matrix::Identity(1, 1)};
};

struct CycleOptions {
  double deflation_time = 300.0;
  double inflation_time = 1000.0;
  double dt = 1.0;
  // Force the projection onto |0> (+1) or |1> (-1); otherwise the more
  // likely outcome is taken.
  std::optional<int> outcome;
};

// Deflate, project onto |0> or |1>, re-inflate to alpha.
ParityCycle qnd_parity_cycle(const DensityMatrix& rho, const DeviceParams& p,
                             cplx alpha, const CycleOptions& options = {});

}  // namespace catsim
