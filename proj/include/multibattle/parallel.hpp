// Copyright 2026 The Multibattle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MULTIBATTLE_PARALLEL_HPP_
#define MULTIBATTLE_PARALLEL_HPP_

#include <cstdint>

namespace multibattle {

// Every heavy kernel takes one of these.  `serial` is the reference
// implementation the tests pin the OpenMP path against; both must give
// bit-identical results.
enum class Exec { serial, parallel };

// Apply body(i) for i in [0, count).  Iterations must be independent and
// write only to per-index slots; that keeps the two modes equivalent.
template <typename Body>
void for_each_index(std::int64_t count, Exec exec, Body&& body) {
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) body(i);
  } else {
    for (std::int64_t i = 0; i < count; ++i) body(i);
  }
}

}  // namespace multibattle

#endif  // MULTIBATTLE_PARALLEL_HPP_
