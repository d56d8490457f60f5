#ifndef AGGINT_RNG_HPP_
#define AGGINT_RNG_HPP_

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace aggint {

using Engine = std::mt19937_64;

// SplitMix64 finalizer; used only to decorrelate seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Substream for (master seed, stream index, purpose tag). A trial's stream
// depends only on these three values, never on scheduling, so any thread
// count yields the same draws.
inline Engine substream(std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t tag = 0) {
  const std::uint64_t a = mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL));
  const std::uint64_t b = mix64(a ^ mix64(tag + 0x8cb92ba72f3d8dd7ULL));
  // Single-word seeding: a seed_seq fill of the 312-word state costs more
  // than a whole small trial.
  return Engine(b);
}

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, n) over `threads` workers using contiguous
// blocks. body must only write to per-index state.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body, &failure, &failure_mutex] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace aggint

#endif  // AGGINT_RNG_HPP_
