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

// Device parameter table and the Lindblad models built from it.
//
// Table values follow the f = omega / 2pi convention (MHz, kHz, us). Models
// are always assembled in ns and rad/ns: omega = 2 pi f.

#include <string>

#include <nlohmann/json.hpp>

#include "catsim/fock.hpp"
#include "catsim/lindblad.hpp"

namespace catsim {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// f in MHz -> rad/ns.
constexpr double angular_from_mhz(double f_mhz) { return kTwoPi * f_mhz * 1e-3; }
// f in kHz -> rad/ns.
constexpr double angular_from_khz(double f_khz) { return kTwoPi * f_khz * 1e-6; }

struct DeviceParams {
  double g2_over_2pi_MHz = 6.0;
  double g2_predicted_over_2pi_MHz = 6.2;
  double kappa_b_over_2pi_MHz = 40.0;
  double kappa2_over_2pi_MHz = 2.16;
  double kappa1_over_2pi_kHz = 14.0;
  double kappa_phi_m_over_2pi_MHz = 0.08;
  double kappa_phi_b_over_2pi_MHz = 0.0;
  double chi_mm_over_2pi_MHz = 0.220;
  double chi_bb_over_2pi_MHz = 10.0;
  double chi_mb_over_2pi_MHz = 1.6;
  double chi_qm_over_2pi_MHz = 0.170;
  double chi_qr_over_2pi_MHz = 3.5;
  double transmon_T1_us = 18.0;
  double transmon_T2_us = 15.0;
  double n_th_m = 0.011;
  double n_th_q = 0.015;
  double delta_m_over_2pi_kHz = 90.0;
  // Metadata only: nothing below drives a simulation.
  double phi_on_Phi0 = 0.312;
  double phi_off_Phi0 = 0.168;
  double omega_m_over_2pi_GHz = 3.948;
  double omega_b_over_2pi_GHz = 7.896;
  double omega_q_over_2pi_GHz = 5.387;
  double omega_r_over_2pi_GHz = 6.967;
  double kappa_r_over_2pi_MHz = 1.8;

  // Throws InvalidArgument on negative rates, T2 > 2 T1 or thermal
  // populations outside [0, 1).
  void validate() const;

  // Angular rates in rad/ns (or 1/ns for decay rates).
  double g2() const { return angular_from_mhz(g2_over_2pi_MHz); }
  double kappa_b() const { return angular_from_mhz(kappa_b_over_2pi_MHz); }
  double kappa2() const { return angular_from_mhz(kappa2_over_2pi_MHz); }
  double kappa1() const { return angular_from_khz(kappa1_over_2pi_kHz); }
  double kappa_phi_m() const { return angular_from_mhz(kappa_phi_m_over_2pi_MHz); }
  double kappa_phi_b() const { return angular_from_mhz(kappa_phi_b_over_2pi_MHz); }
  double chi_mm() const { return angular_from_mhz(chi_mm_over_2pi_MHz); }
  double chi_bb() const { return angular_from_mhz(chi_bb_over_2pi_MHz); }
  double chi_mb() const { return angular_from_mhz(chi_mb_over_2pi_MHz); }
  double chi_qm() const { return angular_from_mhz(chi_qm_over_2pi_MHz); }
  double delta_m() const { return angular_from_khz(delta_m_over_2pi_kHz); }

  // Transmon rates in 1/ns: gamma_up + gamma_down = 1/T1,
  // gamma_up / gamma_down = (1 + 1/n_th_q)^-1, gamma_phi = 1/T2 - 1/(2 T1).
  double gamma_up() const;
  double gamma_down() const;
  double gamma_phi() const;

  // Parity idle time pi / chi_qm in ns.
  double parity_time() const;

  // Every rate that limits an ideal simulation set to zero: kappa1, memory
  // and buffer dephasing, transmon decay and dephasing, thermal populations.
  DeviceParams ideal() const;
  DeviceParams without_kerr() const;
};

nlohmann::json to_json(const DeviceParams& p);
// Missing keys keep their defaults; unknown keys raise SchemaError.
DeviceParams device_params_from_json(const nlohmann::json& j,
                                     const DeviceParams& base = {});
DeviceParams load_device_params(const std::string& path);
void save_device_params(const DeviceParams& p, const std::string& path);

// Selects whether two-to-one exchange and engineered dissipation are active.
enum class FluxSetting { on, off };

struct ModelOptions {
  FluxSetting flux = FluxSetting::on;
  bool kerr = true;                  // bipartite self- and cross-Kerr terms
  bool memory_detuning = false;      // + delta_m m^dag m
  bool memory_thermal = false;       // + kappa1 n_th_m D[m^dag]
};

struct BipartiteDims {
  int memory = 40;
  int buffer = 5;
};

// 4 g2^2 / kappa_b in the /2pi convention (MHz), from the predicted g2.
double kappa2_effective(const DeviceParams& p);
// Same formula with an explicit g2 (MHz).
double kappa2_effective(double g2_over_2pi_MHz, double kappa_b_over_2pi_MHz);

// Phase-flip rate 2 |alpha|^2 kappa1 of the cat qubit, /2pi convention, MHz.
double phase_flip_rate(const DeviceParams& p, cplx alpha);

// Memory-buffer model with buffer drive eps_d(t) (rad/ns) entering as
// eps_d b^dag + h.c. Dims are ordered (memory, buffer).
LindbladModel build_bipartite_model(const DeviceParams& p,
                                    const Coefficient& buffer_drive,
                                    BipartiteDims dims,
                                    const ModelOptions& options = {});

// Adiabatically eliminated model with L2 = sqrt(kappa2) (m^2 - alpha^2).
// With a transmon the dims are (memory, transmon) and the dispersive
// coupling -(chi_qm / 2) m^dag m sigma_z is added with transmon T1/T2 noise.
LindbladModel build_reduced_model(const DeviceParams& p, cplx alpha_target,
                                  bool include_transmon, int memory_dim,
                                  const ModelOptions& options = {});

// Same with a time-dependent alpha^2(t).
LindbladModel build_reduced_model(const DeviceParams& p,
                                  Coefficient alpha_squared,
                                  bool include_transmon, int memory_dim,
                                  const ModelOptions& options = {});

// Buffer drive amplitude -g2^* alpha^2 that stabilises a cat of size alpha.
cplx stabilizing_drive(const DeviceParams& p, cplx alpha);

}  // namespace catsim
