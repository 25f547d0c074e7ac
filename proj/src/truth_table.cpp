#include "flatdeg/truth_table.hpp"

#include <bit>
#include <cstdlib>
#include <stdexcept>

#include "flatdeg/errors.hpp"

namespace flatdeg {

namespace {

void check_vars(int vars) {
  if (vars < 0 || vars > kMaxVars)
    throw std::invalid_argument("variable count must be in [0, " +
                                std::to_string(kMaxVars) + "], got " +
                                std::to_string(vars));
}

uint64_t tail_mask(int vars) {
  return vars >= 6 ? ~uint64_t(0) : (uint64_t(1) << (1 << vars)) - 1;
}

// Bits where variable i (0-based) is 0, within one 64-bit word.
constexpr uint64_t kVarZeroMask[6] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
    0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull,
};

}  // namespace

TruthTable::TruthTable(int vars) : n_(vars), words_(word_count(vars), 0) {
  check_vars(vars);
}

TruthTable TruthTable::constant(int vars, bool value) {
  TruthTable tt(vars);
  if (value) {
    for (auto& w : tt.words_) w = ~uint64_t(0);
    tt.words_.back() &= tail_mask(vars);
  }
  return tt;
}

uint32_t TruthTable::weight() const {
  uint32_t w = 0;
  for (uint64_t x : words_) w += uint32_t(std::popcount(x));
  return w;
}

bool TruthTable::parity() const {
  uint64_t acc = 0;
  for (uint64_t x : words_) acc ^= x;
  return std::popcount(acc) & 1;
}

void TruthTable::xor_with(const TruthTable& other) {
  if (other.n_ != n_)
    throw std::invalid_argument("xor_with: variable count mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
}

std::string TruthTable::to_hex() const {
  std::size_t bytes = size() <= 8 ? 1 : size() / 8;
  static const char* digits = "0123456789abcdef";
  std::string out(bytes * 2, '0');
  for (std::size_t j = 0; j < bytes; ++j) {
    unsigned b = unsigned(words_[j >> 3] >> ((j & 7) * 8)) & 0xff;
    out[2 * j] = digits[b >> 4];
    out[2 * j + 1] = digits[b & 0xf];
  }
  return out;
}

TruthTable TruthTable::from_hex(int vars, std::string_view hex) {
  check_vars(vars);
  TruthTable tt(vars);
  std::size_t bytes = tt.size() <= 8 ? 1 : tt.size() / 8;
  if (hex.size() != bytes * 2)
    throw ParseError("truth-table hex must be exactly " +
                         std::to_string(bytes * 2) + " digits for n=" +
                         std::to_string(vars),
                     hex.size());
  for (std::size_t i = 0; i < hex.size(); ++i) {
    char c = hex[i];
    unsigned v;
    if (c >= '0' && c <= '9')
      v = unsigned(c - '0');
    else if (c >= 'a' && c <= 'f')
      v = unsigned(c - 'a' + 10);
    else
      throw ParseError("invalid hex digit", i);
    std::size_t j = i / 2;
    unsigned shift = (j & 7) * 8 + (i % 2 == 0 ? 4 : 0);
    tt.words_[j >> 3] |= uint64_t(v) << shift;
  }
  if ((tt.words_.back() & ~tail_mask(vars)) != 0)
    throw ParseError("unused high bits must be zero", hex.size());
  return tt;
}

void mobius_in_place(std::span<uint64_t> words, int vars) {
  int in_word = vars < 6 ? vars : 6;
  for (int i = 0; i < in_word; ++i) {
    uint64_t mask = kVarZeroMask[i];
    int shift = 1 << i;
    for (auto& w : words) w ^= (w & mask) << shift;
  }
  for (int i = 6; i < vars; ++i) {
    std::size_t half = std::size_t(1) << (i - 6);
    for (std::size_t base = 0; base < words.size(); base += 2 * half)
      for (std::size_t j = 0; j < half; ++j)
        words[base + half + j] ^= words[base + j];
  }
}

int degree_of_words(std::span<const uint64_t> words, int vars) {
  (void)vars;
  int best = 0;
  for (std::size_t j = 0; j < words.size(); ++j) {
    uint64_t w = words[j];
    if (!w) continue;
    int base = std::popcount(j);
    while (w) {
      int r = std::countr_zero(w);
      w &= w - 1;
      int wt = base + std::popcount(unsigned(r));
      if (wt > best) best = wt;
    }
  }
  return best;
}

TruthTable mobius_table(const TruthTable& tt) {
  TruthTable out = tt;
  mobius_in_place(out.words(), out.vars());
  return out;
}

int degree(const TruthTable& tt) {
  TruthTable anf = mobius_table(tt);
  return degree_of_words(anf.words(), tt.vars());
}

WalshSpectrum walsh(const TruthTable& tt) {
  WalshSpectrum sp;
  sp.vars = tt.vars();
  uint32_t sz = tt.size();
  sp.coefficients.resize(sz);
  for (uint32_t x = 0; x < sz; ++x)
    sp.coefficients[x] = tt.bit(x) ? -1 : 1;
  for (uint32_t h = 1; h < sz; h <<= 1) {
    for (uint32_t base = 0; base < sz; base += 2 * h) {
      for (uint32_t j = base; j < base + h; ++j) {
        int32_t a = sp.coefficients[j];
        int32_t b = sp.coefficients[j + h];
        sp.coefficients[j] = a + b;
        sp.coefficients[j + h] = a - b;
      }
    }
  }
  return sp;
}

int nonlinearity_of_words(std::span<const uint64_t> words, int vars,
                          std::vector<int32_t>& scratch) {
  uint32_t sz = uint32_t(1) << vars;
  scratch.resize(sz);
  for (uint32_t x = 0; x < sz; ++x)
    scratch[x] = (words[x >> 6] >> (x & 63)) & 1 ? -1 : 1;
  for (uint32_t h = 1; h < sz; h <<= 1) {
    for (uint32_t base = 0; base < sz; base += 2 * h) {
      for (uint32_t j = base; j < base + h; ++j) {
        int32_t a = scratch[j];
        int32_t b = scratch[j + h];
        scratch[j] = a + b;
        scratch[j + h] = a - b;
      }
    }
  }
  int32_t max_abs = 0;
  for (int32_t c : scratch)
    max_abs = std::max(max_abs, c < 0 ? -c : c);
  return (1 << (vars - 1)) - max_abs / 2;
}

int nonlinearity(const TruthTable& tt) {
  if (tt.vars() < 1)
    throw std::invalid_argument("nonlinearity requires n >= 1");
  std::vector<int32_t> scratch;
  return nonlinearity_of_words(tt.words(), tt.vars(), scratch);
}

bool parity_over(const TruthTable& tt, std::span<const uint32_t> indices) {
  bool acc = false;
  for (uint32_t idx : indices) {
    if (idx >= tt.size())
      throw std::out_of_range("parity_over: index " + std::to_string(idx) +
                              " out of range for n=" + std::to_string(tt.vars()));
    acc ^= tt.bit(idx);
  }
  return acc;
}

}  // namespace flatdeg
