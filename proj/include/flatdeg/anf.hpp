#pragma once

#include <cstdint>
#include <vector>

#include "flatdeg/truth_table.hpp"

namespace flatdeg {

/*! Algebraic normal form: a set of monomial masks.
 *
 * Mask m stands for the product of the variables x_i with bit i-1 set in m;
 * mask 0 is the constant-1 monomial, and an empty set is the zero function.
 * Coefficients live in F_2, so monomials is duplicate-free; it is kept
 * sorted ascending by mask value.
 */
struct Anf {
  int vars = 0;
  std::vector<uint32_t> monomials;

  bool contains(uint32_t mask) const;
  friend bool operator==(const Anf&, const Anf&) = default;
};

// Normalize (sort, cancel duplicate pairs mod 2, range-check) a monomial list.
Anf make_anf(int vars, std::vector<uint32_t> monomials);

Anf mobius(const TruthTable& tt);
TruthTable anf_to_tt(const Anf& anf);
int degree(const Anf& anf);

}  // namespace flatdeg
