// Copyright 2026 The Authors.
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

#ifndef DMC_PARALLEL_H_
#define DMC_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dmc {

// Runs body(i) for i in [0, n) over `workers` threads using a static
// contiguous partition. body must only write state owned by index i.
// The first exception thrown by any worker is rethrown on the caller.
template <typename Body>
void parallel_for(size_t n, unsigned workers, Body&& body) {
  if (workers <= 1 || n < 2) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const size_t threads = std::min<size_t>(workers, n);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (size_t t = 0; t < threads; ++t) {
      const size_t begin = n * t / threads;
      const size_t end = n * (t + 1) / threads;
      pool.emplace_back([&, begin, end] {
        try {
          for (size_t i = begin; i < end; ++i) body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace dmc

#endif  // DMC_PARALLEL_H_
