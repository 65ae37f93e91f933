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

#include "catsim/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "catsim/errors.hpp"

namespace catsim {

double trace_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw InvalidDimension("trace distance needs equal square matrices");
  }
  const Matrix d = a - b;
  const Matrix h = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dims() != b.dims()) throw InvalidDimension("trace distance: dims differ");
  return trace_distance(a.matrix(), b.matrix());
}

namespace {

// S^{-1/2} for the coherent-state overlap matrix of {|alpha>, |-alpha>}.
Matrix2 lowdin_coefficients(cplx alpha) {
  const double s = std::exp(-2.0 * std::norm(alpha));
  if (1.0 - s < 1e-12) {
    throw InvalidArgument("logical basis needs alpha != 0");
  }
  // Eigenvectors (1, +-1)/sqrt 2 with eigenvalues 1 +- s.
  const double p = 1.0 / std::sqrt(1.0 + s);
  const double m = 1.0 / std::sqrt(1.0 - s);
  Matrix2 c;
  c << 0.5 * (p + m), 0.5 * (p - m), 0.5 * (p - m), 0.5 * (p + m);
  return c;
}

Matrix2 pauli(int k) {
  Matrix2 m;
  switch (k) {
    case 0:
      m << 0, 1, 1, 0;
      break;
    case 1:
      m << 0, -kI, kI, 0;
      break;
    default:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

}  // namespace

LogicalBasis::LogicalBasis(int dim, cplx alpha)
    : dim_(dim), alpha_(alpha) {
  check_truncation(dim, std::abs(alpha));
  lowdin_coefficients(alpha);  // rejects alpha = 0
  Matrix a(dim, 2);
  a.col(0) = coherent_state(dim, alpha).amplitudes();
  a.col(1) = coherent_state(dim, -alpha).amplitudes();
  // Loewdin on the overlap of the truncated vectors.
  const Eigen::SelfAdjointEigenSolver<Matrix2> eig(a.adjoint() * a);
  coeff_ = eig.eigenvectors() *
           eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
           eig.eigenvectors().adjoint();
  basis_ = a * coeff_;
}

Operator LogicalBasis::sigma_x() const {
  return Operator({dim_}, basis_ * pauli(0) * basis_.adjoint(), "sigma_x_L");
}

Operator LogicalBasis::sigma_y() const {
  return Operator({dim_}, basis_ * pauli(1) * basis_.adjoint(), "sigma_y_L");
}

Operator LogicalBasis::sigma_z() const {
  return Operator({dim_}, basis_ * pauli(2) * basis_.adjoint(), "sigma_z_L");
}

DensityMatrix LogicalBasis::lift(const Matrix2& rho) const {
  const Matrix full = basis_ * rho * basis_.adjoint();
  return DensityMatrix({dim_}, 0.5 * (full + full.adjoint()));
}

Matrix2 LogicalBasis::compress(const DensityMatrix& rho, double* population) const {
  if (rho.dims() != Dims{dim_}) throw InvalidDimension("compress: dims differ");
  Matrix2 r = basis_.adjoint() * rho.matrix() * basis_;
  const double tr = r.trace().real();
  if (population != nullptr) *population = tr;
  if (!(tr > 1e-12)) throw InvalidState("state has no weight in the cat subspace");
  r /= tr;
  return 0.5 * (r + r.adjoint());
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector bloch_vector(const LogicalState& state) {
  const Matrix2& r = state.rho;
  return {2.0 * r(0, 1).real(), -2.0 * r(0, 1).imag(),
          (r(0, 0) - r(1, 1)).real()};
}

LogicalState logical_from_bloch(cplx alpha, const BlochVector& r) {
  Matrix2 rho = 0.5 * (Matrix2::Identity() + r.x * pauli(0) + r.y * pauli(1) +
                       r.z * pauli(2));
  return {alpha, rho};
}

LogicalState project_logical(const DensityMatrix& rho, cplx alpha) {
  const LogicalBasis basis(rho.size(), alpha);
  return {alpha, basis.compress(rho)};
}

cplx coherent_outer_wigner(cplx a, cplx b, cplx beta) {
  // (2/pi) <b| D(beta) P D(beta)^dag |a>.
  const cplx c = 2.0 * beta - a;
  const cplx e = -beta * std::conj(a) + std::conj(beta) * a -
                 0.5 * std::norm(b) - 0.5 * std::norm(c) + std::conj(b) * c;
  return kWignerMax * std::exp(e);
}

LogicalState mle_logical(const WignerMap& map, cplx alpha, MleReport* report) {
  const Matrix2 c = lowdin_coefficients(alpha);
  const std::array<cplx, 2> amp{alpha, -alpha};
  const int n_re = static_cast<int>(map.re.size());
  const int n_im = static_cast<int>(map.im.size());
  const int n = n_re * n_im;
  if (n < 4) throw FitError("Wigner map too small for a logical fit");

  // Wigner function of (I + r.sigma)/2 is offset + A r.
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd offset(n), data(n);
  for (int i = 0; i < n_re; ++i) {
    for (int j = 0; j < n_im; ++j) {
      const int row = i * n_im + j;
      const cplx beta = map.beta(i, j);
      Matrix2 outer;  // W[e_p e_q^dag](beta)
      Matrix2 coh;
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) coh(k, l) = coherent_outer_wigner(amp[k], amp[l], beta);
      }
      outer = c.transpose() * coh * c.conjugate();
      // W_O = sum_pq O_pq W[e_p e_q^dag].
      offset(row) = 0.5 * outer.trace().real();
      for (int k = 0; k < 3; ++k) {
        design(row, k) = 0.5 * (pauli(k).cwiseProduct(outer)).sum().real();
      }
      data(row) = map.values(i, j);
    }
  }

  const Eigen::Matrix3d g = design.transpose() * design;
  const Eigen::Vector3d h = design.transpose() * (data - offset);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(g);
  const Eigen::Vector3d lam = es.eigenvalues();
  const Eigen::Vector3d proj = es.eigenvectors().transpose() * h;
  auto solve = [&](double mu) {
    Eigen::Vector3d y;
    for (int k = 0; k < 3; ++k) {
      const double d = lam(k) + mu;
      y(k) = d > 1e-300 ? proj(k) / d : 0.0;
    }
    return Eigen::Vector3d(es.eigenvectors() * y);
  };
  if (lam.minCoeff() <= 1e-14 * std::max(1.0, lam.maxCoeff())) {
    throw FitError("Wigner map does not determine the logical state");
  }

  // Ball-constrained least squares: the minimiser sits either inside the
  // Bloch ball or on its surface with (G + mu I) r = h for some mu > 0.
  Eigen::Vector3d r = solve(0.0);
  bool boundary = false;
  if (r.norm() > 1.0) {
    boundary = true;
    double lo = 0.0, hi = h.norm();
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      (solve(mid).norm() > 1.0 ? lo : hi) = mid;
    }
    r = solve(hi);
    r /= std::max(1.0, r.norm());
  }

  if (report != nullptr) {
    report->residual = std::sqrt((design * r + offset - data).squaredNorm() / n);
    report->on_boundary = boundary;
  }
  return logical_from_bloch(alpha, {r(0), r(1), r(2)});
}

namespace {

Eigen::MatrixXd gaussian_kernel(const std::vector<double>& axis, double width) {
  const int n = static_cast<int>(axis.size());
  Eigen::MatrixXd k(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double d = axis[i] - axis[j];
      k(i, j) = std::exp(-0.5 * d * d / (width * width));
    }
  }
  return k;
}

struct Peak {
  int i;
  int j;
  double value;
};

// Sub-grid lobe centre from a parabola through log W on each axis.
cplx refine_peak(const WignerMap& map, int i, int j) {
  auto offset = [](double fm, double f0, double fp) {
    if (fm <= 0.0 || f0 <= 0.0 || fp <= 0.0) return 0.0;
    const double a = std::log(fm), b = std::log(f0), c = std::log(fp);
    const double denom = a - 2.0 * b + c;
    return denom < 0.0 ? 0.5 * (a - c) / denom : 0.0;
  };
  const int n_re = static_cast<int>(map.re.size());
  const int n_im = static_cast<int>(map.im.size());
  double x = map.re[i], y = map.im[j];
  if (i > 0 && i + 1 < n_re) {
    x += offset(map.values(i - 1, j), map.values(i, j), map.values(i + 1, j)) *
         (map.re[i + 1] - map.re[i]);
  }
  if (j > 0 && j + 1 < n_im) {
    y += offset(map.values(i, j - 1), map.values(i, j), map.values(i, j + 1)) *
         (map.im[j + 1] - map.im[j]);
  }
  return {x, y};
}

}  // namespace

std::array<cplx, 2> locate_lobes(const WignerMap& map) {
  const int n_re = static_cast<int>(map.re.size());
  const int n_im = static_cast<int>(map.im.size());
  if (n_re < 3 || n_im < 3) throw FitError("Wigner map too small to locate lobes");

  // Smoothing over 0.5 washes out interference fringes (period pi/(2|alpha|))
  // while keeping the coherent lobes.
  constexpr double kSmoothing = 0.5;
  const Eigen::MatrixXd smooth = gaussian_kernel(map.re, kSmoothing) *
                                 map.values *
                                 gaussian_kernel(map.im, kSmoothing).transpose();
  std::vector<Peak> peaks;
  for (int i = 0; i < n_re; ++i) {
    for (int j = 0; j < n_im; ++j) {
      const double v = smooth(i, j);
      bool is_max = v > 0.0;
      for (int di = -1; di <= 1 && is_max; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          const int a = i + di, b = j + dj;
          if ((di || dj) && a >= 0 && a < n_re && b >= 0 && b < n_im &&
              smooth(a, b) > v) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) peaks.push_back({i, j, v});
    }
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const Peak& a, const Peak& b) { return a.value > b.value; });
  if (peaks.empty()) throw FitError("no positive lobe in the Wigner map");
  const Peak& first = peaks.front();
  const Peak* second = nullptr;
  for (std::size_t k = 1; k < peaks.size(); ++k) {
    const double d = std::abs(map.beta(peaks[k].i, peaks[k].j) - map.beta(first.i, first.j));
    if (d >= 1.0 && peaks[k].value >= 0.25 * first.value) {
      second = &peaks[k];
      break;
    }
  }
  if (second == nullptr) throw FitError("expected two coherent lobes, found one");

  // Snap each smoothed maximum to the raw maximum nearby, then refine.
  auto raw_peak = [&](const Peak& p) {
    const cplx centre = map.beta(p.i, p.j);
    int bi = p.i, bj = p.j;
    for (int i = 0; i < n_re; ++i) {
      for (int j = 0; j < n_im; ++j) {
        if (std::abs(map.beta(i, j) - centre) <= 0.6 &&
            map.values(i, j) > map.values(bi, bj)) {
          bi = i;
          bj = j;
        }
      }
    }
    return refine_peak(map, bi, bj);
  };
  return {raw_peak(first), raw_peak(*second)};
}

cplx estimate_alpha_from_map(const WignerMap& map) {
  const std::array<cplx, 2> lobes = locate_lobes(map);
  cplx alpha = 0.5 * (lobes[0] - lobes[1]);
  if (alpha.real() < -1e-9 || (std::abs(alpha.real()) <= 1e-9 && alpha.imag() < 0.0)) {
    alpha = -alpha;
  }
  return alpha;
}

nlohmann::json to_json(const LogicalState& s) {
  const BlochVector b = bloch_vector(s);
  nlohmann::json rho_re = nlohmann::json::array(), rho_im = nlohmann::json::array();
  for (int i = 0; i < 2; ++i) {
    rho_re.push_back({s.rho(i, 0).real(), s.rho(i, 1).real()});
    rho_im.push_back({s.rho(i, 0).imag(), s.rho(i, 1).imag()});
  }
  return {{"alpha", {{"re", s.alpha.real()}, {"im", s.alpha.imag()}}},
          {"rho", {{"re", rho_re}, {"im", rho_im}}},
          {"bloch", {{"x", b.x}, {"y", b.y}, {"z", b.z}}}};
}

}  // namespace catsim
