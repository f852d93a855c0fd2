// Copyright 2026 The rlasso Authors.
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

// A minimal fork-join loop. Work items are claimed from a shared counter, so
// callers that need reproducible output must make each item depend only on
// its index (for example through derive_seed) and write results into a slot
// owned by that index.

#ifndef RLASSO_PARALLEL_H_
#define RLASSO_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace rlasso {

// RLASSO_WORKERS if set to a positive integer, else the hardware
// concurrency (at least 1).
int worker_count();

// Runs body(0) ... body(count - 1) on up to worker_count() threads. The first
// exception thrown by any item is rethrown after all threads have joined.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace rlasso

#endif  // RLASSO_PARALLEL_H_
