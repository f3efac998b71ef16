#pragma once

#include <cstdint>
#include <vector>

#include "hamq/graph.hpp"

namespace hamq {

/// SplitMix64 stream.
///
///   state  <- state + 0x9e3779b97f4a7c15
///   z      <- state
///   z      <- (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
///   z      <- (z ^ (z >> 27)) * 0x94d049bb133111eb
///   output    z ^ (z >> 31)
///
/// bounded(b) draws outputs until r >= (2^64 - b) mod b and returns r mod b.
/// unit() is (next() >> 11) * 2^-53.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t bounded(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold)
        return r % bound;
    }
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

/// Erdos-Renyi G(n, p): pairs in lexicographic order, edge when unit() < p.
Graph random_gnp(int n, double p, SplitMix64 &rng);

/// Uniform graph with exactly m edges (partial Fisher-Yates over the
/// lexicographic pair list).
Graph random_gnm(int n, long long m, SplitMix64 &rng);

/// Uniformly random permutation of 0..n-1 (Fisher-Yates from the top).
std::vector<Vertex> random_permutation(int n, SplitMix64 &rng);

/// `count` distinct indices from 0..size-1, sorted (Floyd's algorithm).
std::vector<std::size_t> random_subset(std::size_t size, std::size_t count, SplitMix64 &rng);

} // namespace hamq
