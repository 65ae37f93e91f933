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

#include "catsim/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <system_error>
#include <vector>

#include "catsim/errors.hpp"

namespace catsim {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // folds -0
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const WignerMap& map) {
  os << "re,im,w\n";
  for (std::size_t i = 0; i < map.re.size(); ++i) {
    for (std::size_t j = 0; j < map.im.size(); ++j) {
      os << format_double(map.re[i]) << ',' << format_double(map.im[j]) << ','
         << format_double(map.values(static_cast<Eigen::Index>(i),
                                     static_cast<Eigen::Index>(j)))
         << '\n';
    }
  }
}

void write_csv(std::ostream& os, const Trajectory& traj) {
  os << 't';
  for (const Record& r : traj.records) os << ',' << r.name;
  os << '\n';
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    os << format_double(traj.times[k]);
    for (const Record& r : traj.records) os << ',' << format_double(r.values[k]);
    os << '\n';
  }
}

void write_csv(std::ostream& os, const PulseLandscape& landscape) {
  os << "tau_ns,ratio,trace_distance\n";
  for (std::size_t i = 0; i < landscape.tau.size(); ++i) {
    for (std::size_t j = 0; j < landscape.ratio.size(); ++j) {
      const double v = landscape.trace_distance(static_cast<Eigen::Index>(i),
                                                static_cast<Eigen::Index>(j));
      os << format_double(landscape.tau[i]) << ','
         << format_double(landscape.ratio[j]) << ','
         << (std::isnan(v) ? std::string() : format_double(v)) << '\n';
    }
  }
}

void write_csv(std::ostream& os, const AmplitudeTrace& trace) {
  os << "t,re_m,im_m,re_gamma,im_gamma,r\n";
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    os << format_double(trace.times[k]) << ',' << format_double(trace.m_amp[k].real())
       << ',' << format_double(trace.m_amp[k].imag()) << ','
       << format_double(trace.gamma_amp[k].real()) << ','
       << format_double(trace.gamma_amp[k].imag()) << ','
       << format_double(trace.r[k]) << '\n';
  }
}

namespace {

double parse_number(const std::string& field, int line) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\r')) --last;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw SchemaError("line " + std::to_string(line) + ": not a number: '" +
                      field + "'");
  }
  return v;
}

}  // namespace

WignerMap read_wigner_csv(std::istream& is) {
  std::string line;
  int line_no = 0;
  bool header = false;
  std::map<double, std::map<double, double>> rows;
  std::vector<double> im_axis;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line.rfind("re,im,w", 0) != 0) {
        throw SchemaError("line " + std::to_string(line_no) +
                          ": expected header 're,im,w'");
      }
      header = true;
      continue;
    }
    std::stringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') ||
        !std::getline(ss, c)) {
      throw SchemaError("line " + std::to_string(line_no) + ": expected 3 fields");
    }
    const double re = parse_number(a, line_no), im = parse_number(b, line_no);
    rows[re][im] = parse_number(c, line_no);
    im_axis.push_back(im);
  }
  if (!header || rows.empty()) throw SchemaError("Wigner CSV has no data");
  std::sort(im_axis.begin(), im_axis.end());
  im_axis.erase(std::unique(im_axis.begin(), im_axis.end()), im_axis.end());

  WignerMap map;
  map.im = im_axis;
  map.values.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(im_axis.size()));
  Eigen::Index i = 0;
  for (const auto& [re, column] : rows) {
    if (column.size() != im_axis.size()) {
      throw SchemaError("Wigner CSV points do not fill a rectangular grid");
    }
    map.re.push_back(re);
    Eigen::Index j = 0;
    for (const auto& entry : column) map.values(i, j++) = entry.second;
    ++i;
  }
  return map;
}

}  // namespace catsim
