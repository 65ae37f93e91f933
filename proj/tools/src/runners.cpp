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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>

#include "catsim/cli/scenario.hpp"
#include "catsim/errors.hpp"
#include "catsim/gates.hpp"
#include "catsim/io.hpp"
#include "catsim/lindblad.hpp"
#include "catsim/parallel.hpp"
#include "catsim/reconstruct.hpp"
#include "catsim/squeeze.hpp"
#include "catsim/wigner.hpp"
#include "reader.hpp"

namespace catsim::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json bloch_json(const BlochVector& b) {
  return {{"x", b.x}, {"y", b.y}, {"z", b.z}};
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    os << (c ? "," : "") << t.columns[c];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << (c ? "," : "") << (std::isnan(row[c]) ? std::string() : format_double(row[c]));
    }
    os << '\n';
  }
}

// Writes `<name>.<suffix>` files with the shared metadata block.
class Outputs {
 public:
  Outputs(const Scenario& s, fs::path dir) : s_(s), dir_(std::move(dir)) {
    fs::create_directories(dir_);
  }

  template <class T>
  void csv(const std::string& suffix, const T& data) {
    const fs::path path = dir_ / (s_.name + "." + suffix);
    std::ofstream os(path, std::ios::binary);
    const json meta = metadata(s_);
    os << "# catsim " << meta["version"].get<std::string>() << '\n'
       << "# scenario " << s_.name << " kind " << to_string(s_.kind)
       << " hash " << meta["scenario_hash"].get<std::string>() << '\n'
       << "# params " << meta["params"].dump() << '\n';
    write_csv(os, data);
    if (!os) throw Error("failed to write " + path.string());
    files.push_back(path);
  }

  void summary(const json& results) {
    const fs::path path = dir_ / (s_.name + ".json");
    std::ofstream os(path, std::ios::binary);
    os << json{{"meta", metadata(s_)}, {"results", results}}.dump(2) << '\n';
    if (!os) throw Error("failed to write " + path.string());
    files.push_back(path);
  }

  std::vector<fs::path> files;

 private:
  const Scenario& s_;
  fs::path dir_;
};

BipartiteDims read_dims(const Reader& r, BipartiteDims fallback,
                        const Overrides& o) {
  BipartiteDims d = fallback;
  if (const auto dims = r.optional_object("dims")) {
    d.memory = dims->integer("memory", d.memory);
    d.buffer = dims->integer("buffer", d.buffer);
    dims->finish();
  }
  if (o.dims) d = *o.dims;
  if (d.memory < 2 || d.buffer < 2) r.fail("dims", "dimensions must be >= 2");
  return d;
}

int read_memory_dim(const Reader& r, int fallback, const Overrides& o) {
  int d = r.integer("memory_dim", fallback);
  if (o.dims) d = o.dims->memory;
  if (d < 2) r.fail("memory_dim", "must be >= 2");
  return d;
}

Grid read_grid(const Reader& r, const std::string& key, Grid fallback) {
  if (!r.has(key)) return fallback;
  const Reader g = r.object(key);
  Grid out;
  out.re = g.numbers("re");
  out.im = g.numbers("im");
  g.finish();
  return out;
}

DeviceParams maybe_ideal(const Scenario& s, const Reader& r) {
  return r.boolean("ideal", false) ? s.params.ideal() : s.params;
}

PureState initial_state(const Reader& r, int dim, cplx alpha,
                        const std::string& fallback) {
  const std::string kind = r.string("initial", fallback);
  if (kind == "vacuum") return fock_state(dim, 0);
  if (kind == "fock") {
    const int n = r.integer("fock_n");
    if (n < 0 || n >= dim) r.fail("fock_n", "outside the memory space");
    return fock_state(dim, n);
  }
  if (kind == "coherent_plus") return coherent_state(dim, alpha);
  if (kind == "coherent_minus") return coherent_state(dim, -alpha);
  if (kind == "cat_plus") return cat_state(dim, alpha, CatPhase::plus);
  if (kind == "cat_minus") return cat_state(dim, alpha, CatPhase::minus);
  if (kind == "cat_plus_i") return cat_state(dim, alpha, CatPhase::plus_i);
  if (kind == "cat_minus_i") return cat_state(dim, alpha, CatPhase::minus_i);
  r.fail("initial", "unknown initial state '" + kind + "'");
}

double positive(const Reader& r, const std::string& key, double fallback) {
  const double v = r.number(key, fallback);
  if (!(v > 0.0)) r.fail(key, "must be > 0");
  return v;
}

// Each kind parses its settings into a closure; validation stops after the
// parse, running calls the closure.
using Job = std::function<json(Outputs&)>;

Job plan_stabilize(const Scenario& s, const Reader& r, const Overrides& o) {
  const cplx alpha = r.complex("alpha");
  const int dim = read_memory_dim(r, required_dim(std::abs(alpha)), o);
  check_truncation(dim, std::abs(alpha));
  const double duration = positive(r, "duration_ns", 1500.0);
  const double dt = positive(r, "dt_ns", 5.0);
  const DeviceParams p = maybe_ideal(s, r);
  const PureState start = initial_state(r, dim, alpha, "vacuum");
  const int wigner_points = r.integer("wigner_points", 0);
  return [=](Outputs& out) {
    const LindbladModel model = build_reduced_model(p, alpha, false, dim);
    const PureState target = cat_state(dim, alpha, CatPhase::plus);
    const Operator proj({dim}, target.amplitudes() * target.amplitudes().adjoint());
    const Trajectory traj =
        evolve(model, DensityMatrix::from_pure(start), 0.0, duration, dt,
               {{"n", number_op(dim)}, {"parity", parity_op(dim)}, {"fidelity_cat_plus", proj}});
    out.csv("traj.csv", traj);
    const auto& parity = traj.record("parity").values;
    double drift = 0.0;
    for (double v : parity) drift = std::max(drift, std::abs(v - parity.front()));
    json results = {{"alpha", complex_json(alpha)},
                    {"memory_dim", dim},
                    {"final_n", traj.record("n").values.back()},
                    {"final_parity", parity.back()},
                    {"final_fidelity_cat_plus", traj.record("fidelity_cat_plus").values.back()},
                    {"max_parity_drift", drift},
                    {"max_trace_drift", traj.max_trace_drift}};
    if (wigner_points > 0) {
      out.csv("wigner.csv", wigner_map(traj.final_state,
                                       Grid::for_alpha(std::abs(alpha), wigner_points)));
    }
    return results;
  };
}

Job plan_tomography(const Scenario& s, const Reader& r, const Overrides& o) {
  const Reader prep = r.object("preparation");
  const cplx alpha = prep.complex("alpha");
  const std::string state = prep.string("state", "simulated");
  if (state != "simulated" && state != "cat_plus") {
    prep.fail("state", "expected 'simulated' or 'cat_plus'");
  }
  const int dim = read_memory_dim(prep, 30, o);
  check_truncation(dim, std::abs(alpha));
  const double duration = positive(prep, "duration_ns", 300.0);
  const double dt = positive(prep, "dt_ns", 1.0);
  const DeviceParams prep_params = prep.boolean("ideal", false) ? s.params.ideal() : s.params;
  prep.finish();

  const Grid grid = read_grid(r, "grid", Grid::for_alpha(std::abs(alpha), 41));
  std::vector<Protocol> protocols;
  for (const auto& name : r.strings("protocols", {"ideal", "ramsey", "ramsey_enhanced"})) {
    try {
      protocols.push_back(protocol_from_string(name));
    } catch (const Error&) {
      r.fail("protocols", "unknown protocol '" + name + "'");
    }
  }
  ReadoutOptions ro;
  if (const auto readout = r.optional_object("readout")) {
    ro.deflation_time = readout->number("deflation_time_ns", ro.deflation_time);
    ro.dt = positive(*readout, "dt_ns", ro.dt);
    ro.signal_offset = readout->number("signal_offset", ro.signal_offset);
    readout->finish();
  }
  const DeviceParams p = s.params;
  const int threads = o.threads;
  return [=](Outputs& out) {
    DensityMatrix rho = DensityMatrix::from_pure(cat_state(dim, alpha, CatPhase::plus));
    if (state == "simulated") {
      const LindbladModel model = build_reduced_model(prep_params, alpha, false, dim);
      rho = propagate(model, DensityMatrix::from_pure(fock_state(dim, 0)), 0.0,
                      duration, dt);
    }
    json results = {{"alpha", complex_json(alpha)},
                    {"mean_photon_number", rho.expectation(number_op(dim)).real()},
                    {"protocols", json::object()}};
    std::vector<WignerMap> maps;
    for (Protocol protocol : protocols) {
      WignerMap map = tomography(rho, p, grid, protocol, threads, ro);
      out.csv(to_string(protocol) + ".wigner.csv", map);
      // Value at the grid point nearest the origin.
      int bi = 0, bj = 0;
      for (int i = 0; i < static_cast<int>(map.re.size()); ++i) {
        for (int j = 0; j < static_cast<int>(map.im.size()); ++j) {
          if (std::abs(map.beta(i, j)) < std::abs(map.beta(bi, bj))) {
            bi = i;
            bj = j;
          }
        }
      }
      results["protocols"][to_string(protocol)] = {
          {"w_at_origin", map.values(bi, bj)},
          {"origin_point", complex_json(map.beta(bi, bj))},
          {"max_abs", map.max_abs()}};
      maps.push_back(std::move(map));
    }
    for (std::size_t k = 0; k < protocols.size(); ++k) {
      if (protocols[k] != Protocol::ideal) continue;
      for (std::size_t m = 0; m < protocols.size(); ++m) {
        if (m == k) continue;
        results["protocols"][to_string(protocols[m])]["max_deviation_from_ideal"] =
            (maps[m].values - maps[k].values).cwiseAbs().maxCoeff();
      }
    }
    return results;
  };
}

Job plan_gate_x_sweep(const Scenario& s, const Reader& r, const Overrides& o) {
  const cplx alpha = r.complex("alpha");
  const std::vector<double> thetas = r.numbers("thetas");
  GateOptions gate;
  gate.use_bipartite = r.boolean("bipartite", true);
  gate.dims = read_dims(r, {26, 4}, o);
  gate.reduced_memory_dim = gate.use_bipartite ? 0 : gate.dims.memory;
  gate.dt = positive(r, "dt_ns", 1.0);
  gate.model.kerr = r.boolean("kerr", true);
  gate.model.memory_detuning = r.boolean("detuning", false);
  check_truncation(gate.dims.memory, std::abs(alpha));
  const double tau = positive(r, "tau_ns", 300.0);
  const double sigma = positive(r, "sigma_ns", 250.0);
  const DeviceParams p = maybe_ideal(s, r);
  const PureState start = initial_state(r, gate.dims.memory, alpha, "coherent_minus");
  const int wigner_points = r.integer("wigner_points", 0);
  const int threads = o.threads;
  return [=](Outputs& out) {
    const int dim = gate.dims.memory;
    const LogicalBasis basis(dim, alpha);
    const Eigen::Vector2cd v = basis.isometry().adjoint() * start.amplitudes();
    const int n = static_cast<int>(thetas.size());
    std::vector<DensityMatrix> finals(n, DensityMatrix::from_pure(start));
    parallel_for(n, threads, [&](int k) {
      finals[k] = holonomic_x(DensityMatrix::from_pure(start), thetas[k], p, alpha,
                              tau, sigma, gate);
    });
    Table table{{"theta", "trace_distance", "bloch_x", "bloch_y", "bloch_z",
                 "logical_population"},
                {}};
    json points = json::array();
    for (int k = 0; k < n; ++k) {
      const DensityMatrix target =
          DensityMatrix::from_pure(logical_pure_state(basis, x_gate_matrix(thetas[k]), v));
      const double td = trace_distance(finals[k], target);
      double population = 0.0;
      const Matrix2 rho2 = basis.compress(finals[k], &population);
      const BlochVector b = bloch_vector({alpha, rho2});
      table.rows.push_back({thetas[k], td, b.x, b.y, b.z, population});
      points.push_back({{"theta", thetas[k]}, {"trace_distance", td},
                        {"bloch", bloch_json(b)}, {"logical_population", population}});
      if (wigner_points > 0) {
        out.csv("theta" + std::to_string(k) + ".wigner.csv",
                wigner_map(finals[k], Grid::for_alpha(std::abs(alpha), wigner_points)));
      }
    }
    out.csv("sweep.csv", table);
    return json{{"alpha", complex_json(alpha)}, {"tau_ns", tau}, {"sigma_ns", sigma},
                {"points", points}};
  };
}

Job plan_gate_y(const Scenario& s, const Reader& r, const Overrides& o) {
  const cplx alpha = r.complex("alpha");
  ZenoOptions zo;
  zo.memory_dim = read_memory_dim(r, zo.memory_dim, o);
  zo.tau = positive(r, "tau_ns", zo.tau);
  zo.sigma = positive(r, "sigma_ns", zo.sigma);
  zo.stabilize_tail = r.number("tail_ns", zo.stabilize_tail);
  zo.settle = r.number("settle_ns", zo.settle);
  if (!(zo.settle >= 0.0)) r.fail("settle_ns", "must be >= 0");
  zo.dt = positive(r, "dt_ns", zo.dt);
  check_truncation(zo.memory_dim, std::abs(alpha));
  const std::vector<double> t_rot = r.numbers("t_rot_ns");
  for (double t : t_rot) {
    if (!(t >= 0.0)) r.fail("t_rot_ns", "durations must be >= 0");
  }
  std::optional<double> epsilon;
  std::vector<double> candidates;
  double calibration_time = 0.0;
  if (r.has("epsilon_y") == r.has("calibrate")) {
    r.fail("epsilon_y", "give exactly one of \"epsilon_y\" and \"calibrate\"");
  }
  if (r.has("epsilon_y")) {
    epsilon = r.number("epsilon_y");
  } else {
    const Reader c = r.object("calibrate");
    calibration_time = positive(c, "t_ns", 2600.0);
    candidates = c.numbers("epsilon_y");
    c.finish();
  }
  const DeviceParams p = maybe_ideal(s, r);
  const PureState start = initial_state(r, zo.memory_dim, alpha, "cat_plus");
  const int threads = o.threads;
  return [=](Outputs& out) {
    const DensityMatrix rho0 = DensityMatrix::from_pure(start);
    json results = {{"alpha", complex_json(alpha)}};
    double eps = epsilon.value_or(0.0);
    if (!epsilon) {
      std::vector<double> p1(candidates.size());
      parallel_for(static_cast<int>(candidates.size()), threads, [&](int k) {
        p1[k] = zeno_y(rho0, candidates[k], calibration_time, p, alpha, zo)
                    .after_drive.matrix()(1, 1)
                    .real();
      });
      const auto best = std::max_element(p1.begin(), p1.end()) - p1.begin();
      eps = candidates[best];
      json scan = json::array();
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        scan.push_back({{"epsilon_y", candidates[k]}, {"p1", p1[k]}});
      }
      results["calibration"] = {{"t_ns", calibration_time}, {"scan", scan}};
    }
    results["epsilon_y"] = eps;
    results["zeno_bound_ok"] = zeno_bound_ok(eps, p);

    const int n = static_cast<int>(t_rot.size());
    std::vector<ZenoResult> runs(n);
    parallel_for(n, threads, [&](int k) { runs[k] = zeno_y(rho0, eps, t_rot[k], p, alpha, zo); });
    Table table{{"t_rot_ns", "p0", "p1", "p2", "re_c01", "im_c01", "bloch_x", "bloch_y",
                 "bloch_z"},
                {}};
    json points = json::array();
    for (int k = 0; k < n; ++k) {
      const Matrix& d = runs[k].after_drive.matrix();
      const BlochVector b = bloch_vector(project_logical(runs[k].final, alpha));
      const double p2 = d.rows() > 2 ? d(2, 2).real() : 0.0;
      table.rows.push_back({t_rot[k], d(0, 0).real(), d(1, 1).real(), p2, d(0, 1).real(),
                            d(0, 1).imag(), b.x, b.y, b.z});
      points.push_back({{"t_rot_ns", t_rot[k]},
                        {"deflated", {{"p0", d(0, 0).real()},
                                      {"p1", d(1, 1).real()},
                                      {"p2", p2},
                                      {"c01", complex_json(d(0, 1))}}},
                        {"final_bloch", bloch_json(b)}});
    }
    out.csv("sweep.csv", table);
    results["points"] = points;
    return results;
  };
}

Job plan_gate_z(const Scenario& s, const Reader& r, const Overrides& o) {
  const cplx alpha = r.complex("alpha");
  const int dim = read_memory_dim(r, required_dim(std::abs(alpha)), o);
  check_truncation(dim, std::abs(alpha));
  const double eps = r.number("epsilon_z");
  const std::vector<double> durations = r.numbers("durations_ns");
  for (double t : durations) {
    if (!(t >= 0.0)) r.fail("durations_ns", "durations must be >= 0");
  }
  const double dt = positive(r, "dt_ns", 1.0);
  const DeviceParams p = maybe_ideal(s, r);
  const PureState start = initial_state(r, dim, alpha, "cat_plus");
  const int threads = o.threads;
  return [=](Outputs& out) {
    const int n = static_cast<int>(durations.size());
    std::vector<BlochVector> bloch(n);
    parallel_for(n, threads, [&](int k) {
      const DensityMatrix rho =
          durations[k] > 0.0
              ? z_rotation(DensityMatrix::from_pure(start), eps, durations[k], p, alpha, dt)
              : DensityMatrix::from_pure(start);
      bloch[k] = bloch_vector(project_logical(rho, alpha));
    });
    Table table{{"t_ns", "bloch_x", "bloch_y", "bloch_z", "phase"}, {}};
    double prev = 0.0, unwrap = 0.0;
    std::vector<double> phases;
    for (int k = 0; k < n; ++k) {
      const double raw = std::atan2(bloch[k].y, bloch[k].x);
      if (k > 0) {
        double step = raw - prev;
        while (step > std::numbers::pi) step -= 2.0 * std::numbers::pi;
        while (step < -std::numbers::pi) step += 2.0 * std::numbers::pi;
        unwrap += step;
      } else {
        unwrap = raw;
      }
      prev = raw;
      phases.push_back(unwrap);
      table.rows.push_back({durations[k], bloch[k].x, bloch[k].y, bloch[k].z, unwrap});
    }
    // Least-squares slope of the unwrapped phase.
    double rate = kNaN;
    if (n > 1) {
      double st = 0, sp = 0, stt = 0, stp = 0;
      for (int k = 0; k < n; ++k) {
        st += durations[k];
        sp += phases[k];
        stt += durations[k] * durations[k];
        stp += durations[k] * phases[k];
      }
      const double den = n * stt - st * st;
      if (den > 0.0) rate = (n * stp - st * sp) / den;
    }
    out.csv("sweep.csv", table);
    return json{{"alpha", complex_json(alpha)},
                {"epsilon_z", eps},
                {"z_bound_ok", z_bound_ok(eps, p, alpha)},
                {"phase_rate", rate},
                {"expected_phase_rate", 4.0 * std::abs(alpha) * eps}};
  };
}

Job plan_optimize_pulse(const Scenario& s, const Reader& r, const Overrides& o) {
  const cplx alpha = r.complex("alpha");
  const double theta = r.number("theta", std::numbers::pi / 2);
  const std::vector<double> taus = r.numbers("tau_ns");
  const std::vector<double> ratios = r.numbers("ratio");
  for (double t : taus) {
    if (!(t > 0.0)) r.fail("tau_ns", "values must be > 0");
  }
  for (double q : ratios) {
    if (!(q > 0.0)) r.fail("ratio", "values must be > 0");
  }
  OptimizeOptions opt;
  opt.threads = o.threads;
  opt.gate.use_bipartite = r.boolean("bipartite", true);
  opt.gate.dims = read_dims(r, {20, 4}, o);
  opt.gate.reduced_memory_dim = opt.gate.use_bipartite ? 0 : opt.gate.dims.memory;
  opt.gate.dt = positive(r, "dt_ns", 1.0);
  opt.gate.model.kerr = r.boolean("kerr", true);
  opt.gate.model.memory_detuning = r.boolean("detuning", false);
  check_truncation(opt.gate.dims.memory, std::abs(alpha));
  const DeviceParams p = maybe_ideal(s, r);
  return [=](Outputs& out) {
    const PulseLandscape land = optimize_pulse(p, alpha, theta, taus, ratios, opt);
    out.csv("landscape.csv", land);
    json errors = json::array();
    for (std::size_t k = 0; k < land.errors.size(); ++k) {
      if (!land.errors[k].empty()) {
        errors.push_back({{"tau_ns", taus[k / ratios.size()]},
                          {"ratio", ratios[k % ratios.size()]},
                          {"error", land.errors[k]}});
      }
    }
    return json{{"alpha", complex_json(alpha)},
                {"theta", theta},
                {"best", {{"tau_ns", land.best_tau},
                          {"ratio", land.best_ratio},
                          {"sigma_ns", land.best_sigma},
                          {"trace_distance", land.best_value}}},
                {"failed_cells", errors}};
  };
}

Job plan_squeeze_sweep(const Scenario& s, const Reader& r, const Overrides& o) {
  const cplx alpha = r.complex("alpha");
  const std::vector<double> t_off = r.numbers("t_off_ns");
  for (double t : t_off) {
    if (!(t >= 0.0)) r.fail("t_off_ns", "delays must be >= 0");
  }
  SqueezeOptions so;
  so.dims = read_dims(r, {30, 5}, o);
  so.prestabilize = r.number("prestabilize_ns", so.prestabilize);
  so.dt = positive(r, "dt_ns", so.dt);
  so.model.kerr = r.boolean("kerr", true);
  check_truncation(so.dims.memory, std::abs(alpha));
  const double half_re = std::abs(alpha) + 1.6;
  const Grid grid = read_grid(r, "grid", Grid::uniform(-half_re, half_re, 91, -2.5, 2.5, 51));
  ExtractOptions eo;
  eo.bootstrap = r.integer("bootstrap", eo.bootstrap);
  eo.seed = s.seed;
  double amp_span = 30.0, amp_dt = 0.01;
  if (const auto amp = r.optional_object("amplitudes")) {
    amp_span = positive(*amp, "t_span_ns", amp_span);
    amp_dt = positive(*amp, "dt_ns", amp_dt);
    amp->finish();
  }
  const bool write_maps = r.boolean("wigner_maps", false);
  const DeviceParams p = s.params;
  const int threads = o.threads;
  return [=](Outputs& out) {
    const double g2 = p.g2(), kb = p.kappa_b();
    const AmplitudeTrace trace = integrate_amplitudes(g2, kb, alpha, amp_span, amp_dt);
    out.csv("traj.csv", trace);

    const std::vector<DensityMatrix> states = simulate_squeezed_cat(p, alpha, t_off, so);
    const int n = static_cast<int>(t_off.size());
    std::vector<std::optional<SqueezingFit>> fits(n);
    std::vector<std::string> errors(n);
    std::vector<WignerMap> maps(n);
    for (int k = 0; k < n; ++k) {
      maps[k] = wigner_map(states[k], grid, threads);
      try {
        fits[k] = extract_squeezing_db(maps[k], eo);
      } catch (const FitError& e) {
        errors[k] = e.what();
      }
      if (write_maps) out.csv("t" + std::to_string(k) + ".wigner.csv", maps[k]);
    }
    Table table{{"t_off_ns", "db", "uncertainty_db", "variance_min", "variance_max",
                 "squeezed_axis", "r_ode"},
                {}};
    json points = json::array();
    int best = -1;
    for (int k = 0; k < n; ++k) {
      const double t = t_off[k];
      const auto near = std::lround(t / amp_dt);
      const double r_ode = (near >= 0 && near < static_cast<long>(trace.r.size()))
                               ? trace.r[near]
                               : kNaN;
      if (fits[k]) {
        const SqueezingFit& f = *fits[k];
        table.rows.push_back({t, f.db, f.uncertainty, f.variance_min, f.variance_max,
                              f.squeezed_axis, r_ode});
        points.push_back({{"t_off_ns", t}, {"db", f.db}, {"uncertainty_db", f.uncertainty},
                          {"variance_min", f.variance_min}, {"variance_max", f.variance_max},
                          {"squeezed_axis", f.squeezed_axis}});
        if (best < 0 || f.db > fits[best]->db) best = k;
      } else {
        table.rows.push_back({t, kNaN, kNaN, kNaN, kNaN, kNaN, r_ode});
        points.push_back({{"t_off_ns", t}, {"error", errors[k]}});
      }
    }
    out.csv("sweep.csv", table);
    json results = {{"alpha", complex_json(alpha)}, {"points", points}};
    results["best"] = best >= 0 ? json{{"t_off_ns", t_off[best]}, {"db", fits[best]->db}}
                                : json(nullptr);
    return results;
  };
}

Job plan_reconstruct(const Scenario& s, const Reader& r, const Overrides&) {
  const Reader src = r.object("source");
  const bool from_file = src.has("wigner_csv");
  if (from_file == src.has("synthetic")) {
    src.fail("wigner_csv", "give exactly one of \"wigner_csv\" and \"synthetic\"");
  }
  fs::path csv_path;
  cplx synth_alpha = 0.0;
  BlochVector synth_bloch;
  Grid synth_grid;
  if (from_file) {
    csv_path = src.string("wigner_csv");
    if (csv_path.is_relative()) csv_path = s.base_dir / csv_path;
  } else {
    const Reader syn = src.object("synthetic");
    synth_alpha = syn.complex("alpha");
    const std::vector<double> b = syn.numbers("bloch");
    if (b.size() != 3) syn.fail("bloch", "expected [x, y, z]");
    synth_bloch = {b[0], b[1], b[2]};
    if (synth_bloch.norm() > 1.0 + 1e-12) syn.fail("bloch", "vector outside the unit ball");
    synth_grid = read_grid(syn, "grid", Grid::for_alpha(std::abs(synth_alpha), 61));
    syn.finish();
  }
  src.finish();
  const std::optional<cplx> alpha =
      r.has("alpha") ? std::optional<cplx>(r.complex("alpha")) : std::nullopt;
  const int threads = 1;
  return [=](Outputs& out) {
    WignerMap map;
    if (from_file) {
      std::ifstream in(csv_path, std::ios::binary);
      if (!in) throw SchemaError("source.wigner_csv: cannot open " + csv_path.string());
      map = read_wigner_csv(in);
    } else {
      const int dim = required_dim(std::abs(synth_alpha));
      const LogicalBasis basis(dim, synth_alpha);
      const DensityMatrix rho = basis.lift(logical_from_bloch(synth_alpha, synth_bloch).rho);
      map = wigner_map(rho, synth_grid, threads);
      out.csv("wigner.csv", map);
    }
    const cplx a = alpha ? *alpha : estimate_alpha_from_map(map);
    MleReport report;
    const LogicalState state = mle_logical(map, a, &report);
    json results = to_json(state);
    results["alpha_estimated"] = !alpha.has_value();
    results["residual"] = report.residual;
    results["on_boundary"] = report.on_boundary;
    return results;
  };
}

Job plan(const Scenario& s, const Overrides& o) {
  if (o.threads < 1) throw SchemaError("threads must be >= 1");
  const Reader r(s.settings, "settings");
  Job job;
  switch (s.kind) {
    case Kind::stabilize: job = plan_stabilize(s, r, o); break;
    case Kind::tomography: job = plan_tomography(s, r, o); break;
    case Kind::gate_x_sweep: job = plan_gate_x_sweep(s, r, o); break;
    case Kind::gate_y: job = plan_gate_y(s, r, o); break;
    case Kind::gate_z: job = plan_gate_z(s, r, o); break;
    case Kind::optimize_pulse: job = plan_optimize_pulse(s, r, o); break;
    case Kind::squeeze_sweep: job = plan_squeeze_sweep(s, r, o); break;
    case Kind::reconstruct: job = plan_reconstruct(s, r, o); break;
  }
  r.finish();
  return job;
}

}  // namespace

void validate_scenario(const Scenario& s, const Overrides& overrides) {
  plan(s, overrides);
}

RunResult run_scenario(const Scenario& s, const fs::path& out_dir,
                       const Overrides& overrides) {
  const Job job = plan(s, overrides);
  Outputs out(s, out_dir);
  RunResult result;
  result.summary = job(out);
  out.summary(result.summary);
  result.files = out.files;
  return result;
}

}  // namespace catsim::cli
