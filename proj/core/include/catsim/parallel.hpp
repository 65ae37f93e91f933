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

#include <functional>

namespace catsim {

// Runs body(i) for i in [0, n) on up to `threads` workers (0 = hardware
// concurrency). Callers write results into slot i, so output order never
// depends on scheduling. The exception thrown by the lowest failing index is
// rethrown after all workers finish.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

int resolve_threads(int requested);

}  // namespace catsim
