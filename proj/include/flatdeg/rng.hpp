#pragma once

#include <cstdint>

#include "flatdeg/truth_table.hpp"

namespace flatdeg {

/*! splitmix64: the 64-bit mix/stream generator of Steele, Lea and Flood.
 *
 * Deterministic and stable across platforms; this is the generator behind
 * every randomized run in the project ("splitmix64-v1" in run reports).
 * stream_element(seed, i) gives random access into the stream started at
 * seed, which is how per-restart sub-generators are derived.
 */
struct SplitMix64 {
  uint64_t state = 0;

  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  static uint64_t stream_element(uint64_t seed, uint64_t index) {
    return mix(seed + (index + 1) * 0x9e3779b97f4a7c15ull);
  }

  uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    return mix(state);
  }

  // Unbiased uniform draw in [0, bound) by rejection; bound >= 1.
  uint64_t next_below(uint64_t bound) {
    uint64_t limit = bound * (~uint64_t(0) / bound);
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return double(next() >> 11) * 0x1.0p-53; }
};

inline TruthTable random_table(int vars, SplitMix64& rng) {
  TruthTable tt(vars);
  auto words = tt.words();
  uint32_t bits = uint32_t(1) << vars;
  for (auto& w : words) w = rng.next();
  if (bits < 64) words[0] &= (uint64_t(1) << bits) - 1;
  return tt;
}

}  // namespace flatdeg
