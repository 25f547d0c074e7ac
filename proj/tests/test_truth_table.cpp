#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flatdeg/anf.hpp"
#include "flatdeg/errors.hpp"
#include "flatdeg/truth_table.hpp"
#include "test_util.hpp"

using namespace flatdeg;
using testutil::random_tt;

TEST_CASE("hex format round-trips and is bit-exact") {
  // f(x1,x2) = x1 x2: only index 3 is set -> byte 0b00001000
  TruthTable tt(2);
  tt.set_bit(3, true);
  CHECK(tt.to_hex() == "08");
  CHECK(TruthTable::from_hex(2, "08") == tt);

  // one byte even for tiny tables
  CHECK(TruthTable::constant(0, true).to_hex() == "01");
  CHECK(TruthTable::constant(1, true).to_hex() == "03");

  SplitMix64 rng{42};
  for (int n = 0; n <= 10; ++n) {
    TruthTable t = random_tt(n, rng);
    CHECK(TruthTable::from_hex(n, t.to_hex()) == t);
  }

  CHECK_THROWS_AS(TruthTable::from_hex(2, "0"), ParseError);    // short
  CHECK_THROWS_AS(TruthTable::from_hex(2, "0800"), ParseError); // long
  CHECK_THROWS_AS(TruthTable::from_hex(2, "0g"), ParseError);   // bad digit
  CHECK_THROWS_AS(TruthTable::from_hex(2, "10"), ParseError);   // high bits
  CHECK_THROWS_AS(TruthTable(25), std::invalid_argument);
}

TEST_CASE("mobius examples") {
  TruthTable and2(2);
  and2.set_bit(3, true);
  Anf anf = mobius(and2);
  CHECK(anf.monomials == std::vector<uint32_t>{0b11});

  CHECK(mobius(TruthTable(4)).monomials.empty());

  // x1 ^ x2 ^ 1 has degree 1
  Anf a = make_anf(2, {0b01, 0b10, 0});
  CHECK(degree(anf_to_tt(a)) == 1);
}

TEST_CASE("anf_to_tt examples and oracle round-trip") {
  CHECK(anf_to_tt(make_anf(3, {})) == TruthTable(3));
  CHECK(anf_to_tt(make_anf(2, {0})) == TruthTable::constant(2, true));

  SplitMix64 rng{7};
  for (int round = 0; round < 200; ++round) {
    Anf a = testutil::random_anf(5, rng);
    TruthTable tt = anf_to_tt(a);
    CHECK(tt == testutil::anf_to_tt_pointwise(a));  // independent evaluation
    CHECK(mobius(tt) == a);
  }
}

TEST_CASE("degree conventions") {
  CHECK(degree(TruthTable::constant(4, true)) == 0);
  CHECK(degree(TruthTable(4)) == 0);
  CHECK(degree(TruthTable::constant(0, true)) == 0);
}

TEST_CASE("walsh examples and fast-vs-slow agreement") {
  WalshSpectrum zero = walsh(TruthTable(2));
  CHECK(zero.coefficients == std::vector<int32_t>{4, 0, 0, 0});

  TruthTable x1(1);
  x1.set_bit(1, true);
  CHECK(walsh(x1).coefficients == std::vector<int32_t>{0, 2});

  // bent: x1x2 ^ x3x4 has a flat +-4 spectrum
  TruthTable bent = anf_to_tt(make_anf(4, {0b0011, 0b1100}));
  for (int32_t c : walsh(bent).coefficients) CHECK(std::abs(c) == 4);

  SplitMix64 rng{11};
  for (int n = 1; n <= 6; ++n) {
    TruthTable tt = random_tt(n, rng);
    WalshSpectrum sp = walsh(tt);
    for (uint32_t a = 0; a < tt.size(); ++a)
      CHECK(sp.coefficients[a] == testutil::walsh_coefficient_slow(tt, a));
  }
}

TEST_CASE("walsh spectrum invariants: Parseval, parity, magnitude") {
  SplitMix64 rng{13};
  for (int n = 1; n <= 8; ++n) {
    for (int round = 0; round < 50; ++round) {
      TruthTable tt = random_tt(n, rng);
      WalshSpectrum sp = walsh(tt);
      int64_t sum = 0;
      for (int32_t c : sp.coefficients) {
        sum += int64_t(c) * c;
        CHECK(std::abs(c) <= (1 << n));
        CHECK(((c - (1 << n)) & 1) == 0);
      }
      CHECK(sum == int64_t(1) << (2 * n));
    }
  }
}

TEST_CASE("nonlinearity examples and exhaustive oracle") {
  SplitMix64 rng{17};
  TruthTable affine = testutil::random_affine(5, rng);
  CHECK(nonlinearity(affine) == 0);

  TruthTable bent = anf_to_tt(make_anf(4, {0b0011, 0b1100}));
  CHECK(nonlinearity(bent) == 6);

  for (int round = 0; round < 50; ++round) {
    TruthTable tt = random_tt(4, rng);
    CHECK(nonlinearity(tt) == testutil::nonlinearity_slow(tt));
  }

  CHECK_THROWS_AS(nonlinearity(TruthTable(0)), std::invalid_argument);
}

TEST_CASE("nonlinearity is invariant under adding affine functions") {
  SplitMix64 rng{19};
  for (int round = 0; round < 100; ++round) {
    int n = 2 + int(rng.next_below(5));
    TruthTable tt = random_tt(n, rng);
    TruthTable shifted = tt;
    shifted.xor_with(testutil::random_affine(n, rng));
    CHECK(nonlinearity(tt) == nonlinearity(shifted));
  }
}

TEST_CASE("parity_over") {
  TruthTable product = anf_to_tt(make_anf(4, {0b1111}));
  std::vector<uint32_t> all(16);
  for (uint32_t i = 0; i < 16; ++i) all[i] = i;
  CHECK(parity_over(product, all) == 1);  // only the all-ones point is set
  CHECK(parity_over(product, std::vector<uint32_t>{}) == 0);

  SplitMix64 rng{23};
  TruthTable even = random_tt(4, rng);
  if (even.weight() % 2 == 1) even.flip_bit(0);
  CHECK(parity_over(even, all) == 0);

  CHECK_THROWS_AS(parity_over(product, std::vector<uint32_t>{16}),
                  std::out_of_range);
}

TEST_CASE("mobius is an involution on the packed bits") {
  SplitMix64 rng{29};
  for (int n = 0; n <= 8; ++n) {
    for (int round = 0; round < 100; ++round) {
      TruthTable tt = random_tt(n, rng);
      CHECK(mobius_table(mobius_table(tt)) == tt);
    }
  }
}

TEST_CASE("mobius and anf_to_tt are mutually inverse") {
  SplitMix64 rng{31};
  for (int n = 1; n <= 8; ++n) {
    for (int round = 0; round < 1000; ++round) {
      Anf a = testutil::random_anf(n, rng);
      CHECK(mobius(anf_to_tt(a)) == a);
      TruthTable tt = random_tt(n, rng);
      CHECK(anf_to_tt(mobius(tt)) == tt);
    }
  }
}

TEST_CASE("full degree iff odd global parity") {
  SplitMix64 rng{37};
  for (int n = 1; n <= 8; ++n) {
    for (int round = 0; round < 100; ++round) {
      TruthTable tt = random_tt(n, rng);
      CHECK((degree(tt) == n) == (tt.weight() % 2 == 1));
    }
  }
}
