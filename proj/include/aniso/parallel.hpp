#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace aniso {

/// Worker count: ANISO_THREADS if set and positive, else hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Indices are split into contiguous blocks,
/// one per worker; the first exception (by index order of blocks) is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t workers = worker_count());

}  // namespace aniso
