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

// CSV serialisation of the toolkit's tabular results. Numbers are written in
// shortest round-trip form, so identical results give identical bytes.
// Lines starting with '#' are comments and are skipped by the readers.

#include <istream>
#include <ostream>
#include <string>

#include "catsim/gates.hpp"
#include "catsim/lindblad.hpp"
#include "catsim/squeeze.hpp"
#include "catsim/wigner.hpp"

namespace catsim {

std::string format_double(double x);

// re,im,w with re varying slowest.
void write_csv(std::ostream& os, const WignerMap& map);
// t followed by one column per record.
void write_csv(std::ostream& os, const Trajectory& traj);
// tau_ns,ratio,trace_distance (empty cell for failed cells).
void write_csv(std::ostream& os, const PulseLandscape& landscape);
// t,re_m,im_m,re_gamma,im_gamma,r
void write_csv(std::ostream& os, const AmplitudeTrace& trace);

// Reads the re,im,w layout back; the points must fill a rectangular grid.
// Throws SchemaError on malformed input.
WignerMap read_wigner_csv(std::istream& is);

}  // namespace catsim
