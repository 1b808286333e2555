#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace fracdev {

/// Worker count for a run. Explicit request wins; otherwise the
/// FRACDEV_THREADS environment variable; otherwise hardware concurrency.
unsigned resolve_threads(std::optional<unsigned> requested = std::nullopt);

/// Runs body(begin, end) over [0, n) split into fixed blocks of `block`
/// items. Block boundaries depend only on n and block, never on the worker
/// count, so per-block partial results can be reduced in block order for
/// output that is identical under any --threads setting.
void parallel_blocks(std::size_t n, std::size_t block, unsigned threads,
                     const std::function<void(std::size_t index, std::size_t begin,
                                              std::size_t end)>& body);

/// Convenience form: body(i) for every i in [0, n).
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace fracdev
