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

#include "catsim/device.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <utility>

#include "catsim/errors.hpp"

namespace catsim {

namespace {

struct Field {
  const char* key;
  double DeviceParams::*member;
};

// JSON keys carry the unit suffix of the stored value.
constexpr std::array<Field, 24> kFields{{
    {"g2_over_2pi_MHz", &DeviceParams::g2_over_2pi_MHz},
    {"g2_predicted_over_2pi_MHz", &DeviceParams::g2_predicted_over_2pi_MHz},
    {"kappa_b_over_2pi_MHz", &DeviceParams::kappa_b_over_2pi_MHz},
    {"kappa2_over_2pi_MHz", &DeviceParams::kappa2_over_2pi_MHz},
    {"kappa1_over_2pi_kHz", &DeviceParams::kappa1_over_2pi_kHz},
    {"kappa_phi_m_over_2pi_MHz", &DeviceParams::kappa_phi_m_over_2pi_MHz},
    {"kappa_phi_b_over_2pi_MHz", &DeviceParams::kappa_phi_b_over_2pi_MHz},
    {"chi_mm_over_2pi_MHz", &DeviceParams::chi_mm_over_2pi_MHz},
    {"chi_bb_over_2pi_MHz", &DeviceParams::chi_bb_over_2pi_MHz},
    {"chi_mb_over_2pi_MHz", &DeviceParams::chi_mb_over_2pi_MHz},
    {"chi_qm_over_2pi_MHz", &DeviceParams::chi_qm_over_2pi_MHz},
    {"chi_qr_over_2pi_MHz", &DeviceParams::chi_qr_over_2pi_MHz},
    {"transmon_T1_us", &DeviceParams::transmon_T1_us},
    {"transmon_T2_us", &DeviceParams::transmon_T2_us},
    {"n_th_m", &DeviceParams::n_th_m},
    {"n_th_q", &DeviceParams::n_th_q},
    {"delta_m_over_2pi_kHz", &DeviceParams::delta_m_over_2pi_kHz},
    {"phi_on_Phi0", &DeviceParams::phi_on_Phi0},
    {"phi_off_Phi0", &DeviceParams::phi_off_Phi0},
    {"omega_m_over_2pi_GHz", &DeviceParams::omega_m_over_2pi_GHz},
    {"omega_b_over_2pi_GHz", &DeviceParams::omega_b_over_2pi_GHz},
    {"omega_q_over_2pi_GHz", &DeviceParams::omega_q_over_2pi_GHz},
    {"omega_r_over_2pi_GHz", &DeviceParams::omega_r_over_2pi_GHz},
    {"kappa_r_over_2pi_MHz", &DeviceParams::kappa_r_over_2pi_MHz},
}};

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_lifetime(const char* key) {
  return std::string(key) == "transmon_T1_us" || std::string(key) == "transmon_T2_us";
}

}  // namespace

void DeviceParams::validate() const {
  for (const auto& f : kFields) {
    const double v = this->*(f.member);
    if (std::isnan(v)) throw InvalidArgument(std::string(f.key) + " is NaN");
    if (!is_lifetime(f.key) && !std::isfinite(v)) {
      throw InvalidArgument(std::string(f.key) + " must be finite");
    }
  }
  const std::array<std::pair<const char*, double>, 10> rates{{
      {"g2_over_2pi_MHz", g2_over_2pi_MHz},
      {"kappa_b_over_2pi_MHz", kappa_b_over_2pi_MHz},
      {"kappa2_over_2pi_MHz", kappa2_over_2pi_MHz},
      {"kappa1_over_2pi_kHz", kappa1_over_2pi_kHz},
      {"kappa_phi_m_over_2pi_MHz", kappa_phi_m_over_2pi_MHz},
      {"kappa_phi_b_over_2pi_MHz", kappa_phi_b_over_2pi_MHz},
      {"chi_qm_over_2pi_MHz", chi_qm_over_2pi_MHz},
      {"transmon_T1_us", transmon_T1_us},
      {"transmon_T2_us", transmon_T2_us},
      {"kappa_r_over_2pi_MHz", kappa_r_over_2pi_MHz},
  }};
  for (const auto& [key, v] : rates) {
    if (v < 0.0) throw InvalidArgument(std::string(key) + " must be >= 0");
  }
  if (transmon_T1_us == 0.0 || transmon_T2_us == 0.0) {
    throw InvalidArgument("transmon lifetimes must be positive");
  }
  if (transmon_T2_us > 2.0 * transmon_T1_us) {
    throw InvalidArgument("transmon T2 exceeds 2 T1");
  }
  for (double n : {n_th_m, n_th_q}) {
    if (n < 0.0 || n >= 1.0) {
      throw InvalidArgument("thermal populations must lie in [0, 1)");
    }
  }
}

double DeviceParams::gamma_up() const {
  if (n_th_q == 0.0) return 0.0;
  const double ratio = 1.0 / (1.0 + 1.0 / n_th_q);
  return ratio * gamma_down();
}

double DeviceParams::gamma_down() const {
  const double total = 1.0 / (transmon_T1_us * 1e3);
  const double ratio = (n_th_q == 0.0) ? 0.0 : 1.0 / (1.0 + 1.0 / n_th_q);
  return total / (1.0 + ratio);
}

double DeviceParams::gamma_phi() const {
  const double t1 = transmon_T1_us * 1e3, t2 = transmon_T2_us * 1e3;
  return std::max(0.0, 1.0 / t2 - 0.5 / t1);
}

double DeviceParams::parity_time() const {
  if (chi_qm_over_2pi_MHz <= 0.0) {
    throw InvalidArgument("parity measurement needs chi_qm > 0");
  }
  return M_PI / chi_qm();
}

DeviceParams DeviceParams::ideal() const {
  DeviceParams p = *this;
  p.kappa1_over_2pi_kHz = 0.0;
  p.kappa_phi_m_over_2pi_MHz = 0.0;
  p.kappa_phi_b_over_2pi_MHz = 0.0;
  p.transmon_T1_us = kInf;
  p.transmon_T2_us = kInf;
  p.n_th_m = 0.0;
  p.n_th_q = 0.0;
  return p;
}

DeviceParams DeviceParams::without_kerr() const {
  DeviceParams p = *this;
  p.chi_mm_over_2pi_MHz = 0.0;
  p.chi_bb_over_2pi_MHz = 0.0;
  p.chi_mb_over_2pi_MHz = 0.0;
  return p;
}

nlohmann::json to_json(const DeviceParams& p) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& f : kFields) {
    const double v = p.*(f.member);
    if (std::isinf(v)) {
      j[f.key] = nullptr;  // noiseless transmon
    } else {
      j[f.key] = v;
    }
  }
  return j;
}

DeviceParams device_params_from_json(const nlohmann::json& j,
                                     const DeviceParams& base) {
  if (!j.is_object()) throw SchemaError("device parameters must be a JSON object");
  DeviceParams p = base;
  for (const auto& [key, value] : j.items()) {
    const Field* field = nullptr;
    for (const auto& f : kFields) {
      if (key == f.key) field = &f;
    }
    if (field == nullptr) throw SchemaError("unknown device parameter '" + key + "'");
    if (value.is_null() && is_lifetime(field->key)) {
      p.*(field->member) = kInf;
    } else if (value.is_number()) {
      p.*(field->member) = value.get<double>();
    } else {
      throw SchemaError("device parameter '" + key + "' must be a number");
    }
  }
  try {
    p.validate();
  } catch (const InvalidArgument& e) {
    throw SchemaError(e.what());
  }
  return p;
}

DeviceParams load_device_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return device_params_from_json(j);
}

void save_device_params(const DeviceParams& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << to_json(p).dump(2) << '\n';
}

double kappa2_effective(double g2_over_2pi_MHz, double kappa_b_over_2pi_MHz) {
  if (!(kappa_b_over_2pi_MHz > 0.0)) {
    throw InvalidArgument("kappa_b must be positive for adiabatic elimination");
  }
  return 4.0 * g2_over_2pi_MHz * g2_over_2pi_MHz / kappa_b_over_2pi_MHz;
}

double kappa2_effective(const DeviceParams& p) {
  return kappa2_effective(p.g2_predicted_over_2pi_MHz, p.kappa_b_over_2pi_MHz);
}

double phase_flip_rate(const DeviceParams& p, cplx alpha) {
  return 2.0 * std::norm(alpha) * p.kappa1_over_2pi_kHz * 1e-3;
}

cplx stabilizing_drive(const DeviceParams& p, cplx alpha) {
  return -p.g2() * alpha * alpha;
}

LindbladModel build_bipartite_model(const DeviceParams& p,
                                    const Coefficient& buffer_drive,
                                    BipartiteDims dims,
                                    const ModelOptions& options) {
  p.validate();
  if (dims.memory < 2 || dims.buffer < 2) {
    throw InvalidDimension("bipartite model needs memory and buffer dims >= 2");
  }
  const Dims d{dims.memory, dims.buffer};
  const Operator m = embed(annihilation_op(dims.memory), d, 0);
  const Operator b = embed(annihilation_op(dims.buffer), d, 1);
  const Operator md = m.adjoint(), bd = b.adjoint();
  const Operator nm = md * m, nb = bd * b;

  LindbladModel model(d);
  if (options.kerr) {
    model.add_hamiltonian(-0.5 * p.chi_mm() * (md * md * m * m));
    model.add_hamiltonian(-0.5 * p.chi_bb() * (bd * bd * b * b));
    model.add_hamiltonian(-p.chi_mb() * (nm * nb));
  }
  if (options.memory_detuning) model.add_hamiltonian(p.delta_m() * nm);
  if (options.flux == FluxSetting::on) {
    // g2 m^2 b^dag + g2^* m^dag^2 b with real g2.
    const Operator exchange = m * m * bd;
    model.add_hamiltonian(p.g2() * (exchange + exchange.adjoint()));
    if (buffer_drive) model.add_drive(bd, buffer_drive);
  }
  model.add_dissipator(p.kappa1(), m, "kappa1");
  model.add_dissipator(p.kappa_phi_m(), nm, "kappa_phi_m");
  model.add_dissipator(p.kappa_b(), b, "kappa_b");
  model.add_dissipator(p.kappa_phi_b(), nb, "kappa_phi_b");
  if (options.memory_thermal) {
    model.add_dissipator(p.kappa1() * p.n_th_m, md, "kappa1_nth");
  }
  return model;
}

namespace {

LindbladModel reduced_model(const DeviceParams& p, const cplx* alpha_target,
                            Coefficient alpha_squared, bool include_transmon,
                            int memory_dim, const ModelOptions& options) {
  p.validate();
  if (memory_dim < 2) throw InvalidDimension("memory dim must be >= 2");
  const Dims d = include_transmon ? Dims{memory_dim, 2} : Dims{memory_dim};
  const Operator m = embed(annihilation_op(memory_dim), d, 0);
  const Operator md = m.adjoint();
  const Operator nm = md * m;
  const Operator m2 = m * m;

  LindbladModel model(d);
  if (options.memory_detuning) model.add_hamiltonian(p.delta_m() * nm);
  if (options.flux == FluxSetting::on) {
    if (alpha_target != nullptr) {
      const cplx a2 = (*alpha_target) * (*alpha_target);
      const Operator shift(d, a2 * Matrix::Identity(m.size(), m.size()));
      model.add_dissipator(p.kappa2(), m2 - shift, "kappa2");
    } else {
      model.add_dissipator(p.kappa2(), m2, "kappa2",
                           [alpha_squared](double t) { return -alpha_squared(t); });
    }
  }
  model.add_dissipator(p.kappa1(), m, "kappa1");
  model.add_dissipator(p.kappa_phi_m(), nm, "kappa_phi_m");
  if (options.memory_thermal) {
    model.add_dissipator(p.kappa1() * p.n_th_m, md, "kappa1_nth");
  }
  if (include_transmon) {
    const Operator sz = embed(sigma_z(), d, 1);
    // Half the shift per photon sits on each qubit level so that the
    // e/g splitting changes by chi_qm per photon.
    model.add_hamiltonian(-0.5 * p.chi_qm() * (nm * sz));
    model.add_dissipator(p.gamma_up(), embed(sigma_plus(), d, 1), "gamma_up");
    model.add_dissipator(p.gamma_down(), embed(sigma_minus(), d, 1), "gamma_down");
    model.add_dissipator(0.5 * p.gamma_phi(), sz, "gamma_phi");
  }
  return model;
}

}  // namespace

LindbladModel build_reduced_model(const DeviceParams& p, cplx alpha_target,
                                  bool include_transmon, int memory_dim,
                                  const ModelOptions& options) {
  check_truncation(memory_dim, std::abs(alpha_target));
  return reduced_model(p, &alpha_target, {}, include_transmon, memory_dim, options);
}

LindbladModel build_reduced_model(const DeviceParams& p,
                                  Coefficient alpha_squared,
                                  bool include_transmon, int memory_dim,
                                  const ModelOptions& options) {
  if (!alpha_squared) throw InvalidArgument("alpha^2(t) function is empty");
  return reduced_model(p, nullptr, std::move(alpha_squared), include_transmon,
                       memory_dim, options);
}

}  // namespace catsim
