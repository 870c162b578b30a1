// Copyright 2026 The nashset Authors
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

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace nashset {

/// Worker count: `requested` when positive, else NASHSET_THREADS, else the
/// hardware concurrency.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NASHSET_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [0, n) into contiguous chunks and calls fn(chunk, begin, end) for
/// each, possibly concurrently. Chunk boundaries depend only on n and the
/// chunk count, so callers that merge per-chunk results in chunk order get
/// the same answer for any worker count. Returns the chunk count.
template <typename Fn>
std::size_t parallel_chunks(std::uint64_t n, int threads, std::size_t chunks, Fn&& fn) {
  chunks = static_cast<std::size_t>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(chunks, n)));
  const int workers = std::max(1, std::min(resolve_threads(threads), static_cast<int>(chunks)));
  auto bounds = [&](std::size_t c) { return n * c / chunks; };
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) fn(c, bounds(c), bounds(c + 1));
    return chunks;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = static_cast<std::size_t>(w); c < chunks; c += static_cast<std::size_t>(workers))
          fn(c, bounds(c), bounds(c + 1));
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return chunks;
}

}  // namespace nashset
