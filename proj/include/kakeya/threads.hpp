#pragma once

#include <cstddef>
#include <functional>

namespace kakeya {

/// Worker count: hardware concurrency capped by the KAKEYA_LAB_THREADS
/// environment variable. Thread count never affects numeric results (all
/// parallel loops write disjoint indices; reductions are serial).
unsigned worker_count();

/// Block-partitioned parallel loop over [0, n).
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace kakeya
