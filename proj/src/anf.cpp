#include "flatdeg/anf.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace flatdeg {

bool Anf::contains(uint32_t mask) const {
  return std::binary_search(monomials.begin(), monomials.end(), mask);
}

Anf make_anf(int vars, std::vector<uint32_t> monomials) {
  if (vars < 0 || vars > kMaxVars)
    throw std::invalid_argument("variable count out of range");
  std::sort(monomials.begin(), monomials.end());
  // XOR semantics: a mask appearing an even number of times cancels.
  std::vector<uint32_t> kept;
  kept.reserve(monomials.size());
  for (std::size_t i = 0; i < monomials.size();) {
    std::size_t j = i;
    while (j < monomials.size() && monomials[j] == monomials[i]) ++j;
    if ((j - i) & 1) kept.push_back(monomials[i]);
    i = j;
  }
  for (uint32_t m : kept)
    if (m >= (uint32_t(1) << vars))
      throw std::invalid_argument("monomial mask " + std::to_string(m) +
                                  " out of range for n=" + std::to_string(vars));
  return Anf{vars, std::move(kept)};
}

Anf mobius(const TruthTable& tt) {
  TruthTable coeffs = mobius_table(tt);
  Anf anf;
  anf.vars = tt.vars();
  auto words = coeffs.words();
  for (std::size_t j = 0; j < words.size(); ++j) {
    uint64_t w = words[j];
    while (w) {
      int r = std::countr_zero(w);
      w &= w - 1;
      anf.monomials.push_back(uint32_t(j << 6) | uint32_t(r));
    }
  }
  return anf;
}

TruthTable anf_to_tt(const Anf& anf) {
  TruthTable coeffs(anf.vars);
  for (uint32_t m : anf.monomials) {
    if (m >= coeffs.size())
      throw std::invalid_argument("monomial mask out of range");
    coeffs.set_bit(m, true);
  }
  mobius_in_place(coeffs.words(), anf.vars);  // the transform is an involution
  return coeffs;
}

int degree(const Anf& anf) {
  int best = 0;
  for (uint32_t m : anf.monomials)
    best = std::max(best, std::popcount(m));
  return best;
}

}  // namespace flatdeg
