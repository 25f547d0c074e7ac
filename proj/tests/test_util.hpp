#pragma once

// Shared helpers for the test suites: deterministic random generation plus
// independent oracles (pointwise evaluation, double-loop spectra, explicit
// point sets) that deliberately avoid the library's fast paths.

#include <bit>
#include <cstdint>
#include <set>
#include <vector>

#include "flatdeg/anf.hpp"
#include "flatdeg/flat.hpp"
#include "flatdeg/rng.hpp"
#include "flatdeg/truth_table.hpp"

namespace testutil {

using namespace flatdeg;

inline TruthTable random_tt(int n, SplitMix64& rng) {
  return random_table(n, rng);
}

inline Anf random_anf(int n, SplitMix64& rng) {
  std::vector<uint32_t> monomials;
  uint32_t limit = uint32_t(1) << n;
  uint64_t count = rng.next_below(limit + 1);
  for (uint64_t i = 0; i < count; ++i)
    monomials.push_back(uint32_t(rng.next_below(limit)));
  return make_anf(n, std::move(monomials));
}

// Pointwise ANF evaluation: f(x) = XOR over monomials m of [m subset of x].
inline bool eval_anf(const Anf& anf, uint32_t x) {
  bool acc = false;
  for (uint32_t m : anf.monomials) acc ^= (x & m) == m;
  return acc;
}

inline TruthTable anf_to_tt_pointwise(const Anf& anf) {
  TruthTable tt(anf.vars);
  for (uint32_t x = 0; x < tt.size(); ++x) tt.set_bit(x, eval_anf(anf, x));
  return tt;
}

// Double-loop Walsh coefficient: sum_x (-1)^(f(x) ^ popcount(a & x)).
inline int32_t walsh_coefficient_slow(const TruthTable& tt, uint32_t a) {
  int32_t sum = 0;
  for (uint32_t x = 0; x < tt.size(); ++x) {
    bool sign = tt.bit(x) ^ (std::popcount(a & x) & 1);
    sum += sign ? -1 : 1;
  }
  return sum;
}

// Exhaustive minimum Hamming distance to the 2^(n+1) affine functions.
inline int nonlinearity_slow(const TruthTable& tt) {
  int n = tt.vars();
  int best = 1 << n;
  for (uint32_t a = 0; a < (uint32_t(1) << n); ++a) {
    for (int c = 0; c <= 1; ++c) {
      int dist = 0;
      for (uint32_t x = 0; x < tt.size(); ++x)
        dist += tt.bit(x) != ((std::popcount(a & x) & 1) ^ c);
      best = std::min(best, dist);
    }
  }
  return best;
}

// Explicit point set of a (basis, offset) description.
inline std::set<uint32_t> point_set(std::span<const uint32_t> basis,
                                    uint32_t offset) {
  std::set<uint32_t> points;
  uint32_t k = uint32_t(basis.size());
  for (uint32_t c = 0; c < (uint32_t(1) << k); ++c) {
    uint32_t p = offset;
    for (uint32_t j = 0; j < k; ++j)
      if (c >> j & 1) p ^= basis[j];
    points.insert(p);
  }
  return points;
}

// A random basis of a k-dimensional subspace of F_2^n (rejection sampling).
inline std::vector<uint32_t> random_independent_rows(int n, int k,
                                                     SplitMix64& rng) {
  while (true) {
    std::vector<uint32_t> rows;
    for (int j = 0; j < k; ++j)
      rows.push_back(uint32_t(rng.next_below(uint64_t(1) << n)));
    // Gaussian elimination rank check
    std::vector<uint32_t> work = rows;
    bool ok = true;
    for (std::size_t i = 0; i < work.size() && ok; ++i) {
      for (std::size_t j = 0; j < i; ++j)
        if (work[i] & (work[j] & -work[j])) work[i] ^= work[j];
      if (work[i] == 0) ok = false;
    }
    if (ok) return rows;
  }
}

// A random invertible k x k matrix over F_2, as row masks.
inline std::vector<uint32_t> random_invertible(int k, SplitMix64& rng) {
  return random_independent_rows(k, k, rng);
}

// Apply a change of basis: new_rows[i] = XOR of old rows selected by T[i],
// plus an offset shifted by a random combination of the rows.
inline std::pair<std::vector<uint32_t>, uint32_t> rebase(
    std::span<const uint32_t> rows, uint32_t offset, SplitMix64& rng) {
  int k = int(rows.size());
  std::vector<uint32_t> transform = random_invertible(k, rng);
  std::vector<uint32_t> out(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (transform[i] >> j & 1) out[i] ^= rows[j];
  uint32_t shift = uint32_t(rng.next_below(uint64_t(1) << k));
  uint32_t new_offset = offset;
  for (int j = 0; j < k; ++j)
    if (shift >> j & 1) new_offset ^= rows[j];
  return {out, new_offset};
}

// A random affine function a.x ^ c as a truth table.
inline TruthTable random_affine(int n, SplitMix64& rng) {
  uint32_t a = uint32_t(rng.next_below(uint64_t(1) << n));
  bool c = rng.next_below(2);
  TruthTable tt(n);
  for (uint32_t x = 0; x < tt.size(); ++x)
    tt.set_bit(x, (std::popcount(a & x) & 1) ^ c);
  return tt;
}

}  // namespace testutil
