// Copyright 2026 The cfaug Authors.
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

#ifndef CFAUG_PARALLEL_H_
#define CFAUG_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <vector>

namespace cfaug {

// Applies fn to every input on up to `workers` threads. Output slot i always
// holds fn(in[i]), so the result order never depends on scheduling. The
// exception from the lowest failing index is rethrown after all workers stop.
template <typename In, typename Fn>
auto ParallelMap(std::span<const In> in, int workers, Fn&& fn)
    -> std::vector<decltype(fn(in[0]))> {
  using Out = decltype(fn(in[0]));
  std::vector<std::optional<Out>> slots(in.size());
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::optional<std::size_t> failed;
  std::exception_ptr error;
  auto work = [&] {
    for (std::size_t i = next++; i < in.size(); i = next++) {
      try {
        slots[i].emplace(fn(in[i]));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failed || i < *failed) {
          failed = i;
          error = std::current_exception();
        }
      }
    }
  };
  const std::size_t n =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), in.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < n; ++t) pool.emplace_back(work);
    work();
  }
  if (error) std::rethrow_exception(error);
  std::vector<Out> out;
  out.reserve(in.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace cfaug

#endif  // CFAUG_PARALLEL_H_
