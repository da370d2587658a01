#pragma once

#include <cstdint>
#include <random>

#include "salat/exact.hpp"

namespace salat {

/// SplitMix64 finalizer applied to (seed, index); used to derive independent
/// per-trial / per-block streams from one user seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Deterministic generator: std::mt19937_64 (its output sequence is fixed by
/// the standard) plus hand-rolled bounded draws, so results do not depend on
/// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound), bound >= 1. Rejection sampling.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi);
  /// Uniform in [2^(bits-1), 2^bits), bits >= 1.
  Int bits_exact(unsigned bits);

 private:
  std::mt19937_64 engine_;
};

/// Run body(i) for i in [0, count) on up to hardware_concurrency threads.
/// Each index must write only to its own output slot.
template <typename Body>
void parallel_for(std::size_t count, Body&& body);

}  // namespace salat

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace salat {

template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace salat
