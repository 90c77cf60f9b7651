#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace sfc {

inline uint64_t splitmix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based generator: the value for (stream, counter) depends only on
// the seed and those two indices, so any sharding reproduces the same draws.
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed) : seed_(seed) {}
  uint64_t draw(uint64_t stream, uint64_t counter) const {
    return splitmix64(splitmix64(seed_ ^ splitmix64(stream)) + counter);
  }
  // Uniform in (0, 1].
  double uniform(uint64_t stream, uint64_t counter) const {
    return (static_cast<double>(draw(stream, counter) >> 11) + 1.0) * 0x1.0p-53;
  }

 private:
  uint64_t seed_;
};

// Runs body(i) for i in [0, n) on up to `threads` workers, block-distributed.
inline void parallel_for(size_t n, unsigned threads, const std::function<void(size_t)>& body) {
  if (threads <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  size_t workers = std::min<size_t>(threads, n);
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (size_t i = w; i < n; i += workers) body(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace sfc
