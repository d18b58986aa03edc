#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#ifdef KELLERPATH_HAVE_OPENMP
#include <omp.h>
#endif

namespace ks::par {

/// Worker cap: min(KELLERPATH_THREADS, OpenMP max threads).  1 when built
/// without OpenMP or when serial mode is forced.
int max_threads();

/// Force the serial reference path (used by tests and the benchmark to
/// compare against the OpenMP kernels).
void force_serial(bool on);
bool serial_forced();

namespace detail {
inline constexpr std::size_t kChunks = 256;
}

/// Parallel index loop.  f(i) must only touch slot i of any shared output.
template <class F>
void for_index(std::size_t n, F&& f) {
#ifdef KELLERPATH_HAVE_OPENMP
  if (!serial_forced() && max_threads() > 1 && n > 64) {
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      f(static_cast<std::size_t>(i));
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) f(i);
}

/// Deterministic reduction: the index range is split into a fixed number of
/// chunks, each chunk is summed serially, and the chunk sums are combined
/// pairwise in index order.  The result is bit-identical for any thread
/// count, including the serial path.
template <class F>
double sum(std::size_t n, F&& term) {
  if (n == 0) return 0.0;
  const std::size_t chunks = std::min(detail::kChunks, n);
  std::vector<double> partial(chunks, 0.0);
  for_index(chunks, [&](std::size_t c) {
    const std::size_t lo = c * n / chunks;
    const std::size_t hi = (c + 1) * n / chunks;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    partial[c] = s;
  });
  for (std::size_t w = 1; w < chunks; w *= 2)
    for (std::size_t i = 0; i + w < chunks; i += 2 * w) partial[i] += partial[i + w];
  return partial[0];
}

}  // namespace ks::par
