#pragma once

#include <cstdint>
#include <random>

namespace rotorchan {

// splitmix64: the mixing stage is a bijection on 64-bit words, so distinct
// (seed, stream, counter) triples never collide.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic substream derivation: every parallel worker or logical task
// derives its own generator from (root seed, stream id, counter), which keeps
// results independent of scheduling order.
inline std::mt19937_64 make_stream(uint64_t seed, uint64_t stream,
                                   uint64_t counter = 0) {
  uint64_t s = splitmix64(seed ^ splitmix64(stream ^ splitmix64(counter)));
  return std::mt19937_64(s);
}

// Stable stream ids, one per consumer of randomness.
enum : uint64_t {
  kStreamKrylovStart = 1,
  kStreamMonteCarlo = 2,
  kStreamFtseEnsemble = 3,
  kStreamPropertyTests = 4,
};

}  // namespace rotorchan
