/* Copyright 2026 The geomatch Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

namespace geomatch {

/// Worker count: GEOMATCH_THREADS if set and positive, else the hardware count.
unsigned thread_count();

/// Overrides thread_count() for the calling process; 0 restores the default.
void set_thread_count(unsigned count);

/// Runs body(i) for i in [0, count) on the worker pool. Every index is
/// processed exactly once; the first exception (by index) is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Ordered parallel map: result[i] = fn(i) regardless of scheduling.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, Fn fn) {
  std::vector<T> out(count);
  parallel_for(count, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace geomatch
