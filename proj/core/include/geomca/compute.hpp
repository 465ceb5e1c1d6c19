#pragma once

#include <cstddef>
#include <functional>

namespace geomca {

/// Knobs shared by the compute kernels. None of them changes results.
struct ComputeOptions {
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
    /// Abort graph construction once this many edges qualify.
    std::size_t max_edges = 500'000'000;
    /// Rows per distance tile.
    std::size_t tile_rows = 256;
};

unsigned resolve_threads(unsigned requested) noexcept;

/// Runs task(0..num_tasks-1) on up to `threads` workers, handing out task
/// indices dynamically. The first exception thrown by any task is rethrown
/// on the calling thread after all workers have stopped.
void parallel_for(std::size_t num_tasks, unsigned threads,
                  const std::function<void(std::size_t)>& task);

}  // namespace geomca
