#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace mhess {

/// Worker count: MHESS_THREADS if set, else std::thread::hardware_concurrency.
unsigned worker_count();

/// Calls fn(begin, end, block) for consecutive blocks of `block_size` items
/// covering [0, count). Blocks are distributed over worker threads; the
/// partition does not depend on the thread count, so per-block results
/// combined in block order are bit-reproducible. The first exception (by
/// block index) is rethrown.
void parallel_blocks(std::size_t count, std::size_t block_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

inline std::size_t block_count(std::size_t count, std::size_t block_size) {
  return (count + block_size - 1) / block_size;
}

/// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> xs);

}  // namespace mhess
