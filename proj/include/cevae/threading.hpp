#pragma once

#include <cstdint>

#include <functional>

namespace cevae {

/// Caps the worker count used by parallel_for. 0 restores the hardware default.
void set_num_threads(int n);
int num_threads();

/// Runs fn(begin, end) over a static partition of [begin, end).
///
/// Every index is processed by exactly one worker and per-index work must not
/// depend on the partition, so results are bit-identical for any thread count.
void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace cevae
