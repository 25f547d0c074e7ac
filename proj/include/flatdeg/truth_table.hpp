#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flatdeg {

// Hard cap on the number of variables (table of 2^24 bits = 2 MiB).
inline constexpr int kMaxVars = 24;

constexpr std::size_t word_count(int vars) {
  return vars <= 6 ? 1 : std::size_t(1) << (vars - 6);
}

/*! Truth table of a Boolean function f: F_2^n -> F_2, bit-packed.
 *
 * Index convention (fixed globally, used by all serialization):
 *   idx(x) = sum_i x_i * 2^(i-1), i.e. x_1 is the least significant
 *   coordinate. Bit idx of the table is f(x).
 *
 * Words store bits little-endian: bit idx lives at words()[idx >> 6],
 * position idx & 63. Bits above 2^n in the last word are always zero.
 */
class TruthTable {
public:
  TruthTable() : n_(0), words_(1, 0) {}
  explicit TruthTable(int vars);

  static TruthTable constant(int vars, bool value);
  // Hex format: bit 8j+r of the table is bit r (value 2^r) of byte j; each
  // byte prints as two lowercase hex digits, byte 0 first. Tables with
  // n < 3 still occupy one full byte, unused high bits zero.
  static TruthTable from_hex(int vars, std::string_view hex);

  int vars() const { return n_; }
  uint32_t size() const { return uint32_t(1) << n_; }

  bool bit(uint32_t idx) const {
    return (words_[idx >> 6] >> (idx & 63)) & 1;
  }
  void set_bit(uint32_t idx, bool value) {
    uint64_t m = uint64_t(1) << (idx & 63);
    if (value)
      words_[idx >> 6] |= m;
    else
      words_[idx >> 6] &= ~m;
  }
  void flip_bit(uint32_t idx) { words_[idx >> 6] ^= uint64_t(1) << (idx & 63); }

  std::span<const uint64_t> words() const { return words_; }
  std::span<uint64_t> words() { return words_; }

  uint32_t weight() const;       // number of ones
  bool parity() const;           // XOR of all bits
  void xor_with(const TruthTable& other);  // pointwise f ^= g
  std::string to_hex() const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

private:
  int n_;
  std::vector<uint64_t> words_;
};

/*! Walsh-Hadamard spectrum: coefficients[a] = sum_x (-1)^(f(x) ^ a.x). */
struct WalshSpectrum {
  int vars = 0;
  std::vector<int32_t> coefficients;
};

// In-place Moebius (ANF) transform over packed words; an involution.
void mobius_in_place(std::span<uint64_t> words, int vars);

// Max Hamming weight of any set-bit index in an ANF coefficient table;
// 0 when no bit is set (the constant-0 convention).
int degree_of_words(std::span<const uint64_t> words, int vars);

// ANF coefficient table of tt (apply twice to get tt back).
TruthTable mobius_table(const TruthTable& tt);

// Algebraic degree; both constant functions have degree 0 by convention.
int degree(const TruthTable& tt);

WalshSpectrum walsh(const TruthTable& tt);

// Minimal Hamming distance to an affine function,
// 2^(n-1) - max_a |W(a)| / 2. Requires n >= 1.
int nonlinearity(const TruthTable& tt);

// Same, over a packed table given as words; scratch is resized as needed.
int nonlinearity_of_words(std::span<const uint64_t> words, int vars,
                          std::vector<int32_t>& scratch);

// XOR of the table bits at the given indices; throws std::out_of_range.
bool parity_over(const TruthTable& tt, std::span<const uint32_t> indices);

}  // namespace flatdeg
