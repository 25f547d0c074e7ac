#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>

#include "flatdeg/anf_text.hpp"
#include "flatdeg/corpus.hpp"
#include "flatdeg/errors.hpp"
#include "test_util.hpp"

using namespace flatdeg;

TEST_CASE("grammar basics") {
  Anf a = parse_anf("x1x2x3 \xe2\x8a\x95 x1x4 \xe2\x8a\x95 x2", 4);
  CHECK(a.monomials == std::vector<uint32_t>{0b0010, 0b0111, 0b1001});

  CHECK(parse_anf("0").monomials.empty());
  CHECK(parse_anf("x1 \xe2\x8a\x95 x1").monomials.empty());  // cancellation
  CHECK(parse_anf("x1x1", 1).monomials == std::vector<uint32_t>{1});
  CHECK(parse_anf("1", 2).monomials == std::vector<uint32_t>{0});
  CHECK(parse_anf("x1 + 0 + x2").monomials ==
        std::vector<uint32_t>{0b01, 0b10});

  // all three separators mean the same thing
  Anf plus = parse_anf("x1x2 + x3", 3);
  Anf caret = parse_anf("x1x2 ^ x3", 3);
  Anf oplus = parse_anf("x1x2 \xe2\x8a\x95 x3", 3);
  CHECK(plus == caret);
  CHECK(plus == oplus);

  // inferred n is the highest index used
  CHECK(parse_anf("x3 + x1").vars == 3);
  CHECK(parse_anf("x12x2").vars == 12);
}

TEST_CASE("parse errors carry byte positions") {
  auto offset_of = [](const char* text, std::optional<int> n = {}) {
    try {
      parse_anf(text, n);
    } catch (const ParseError& e) {
      return long(e.offset());
    }
    return long(-1);
  };
  CHECK(offset_of("") == 0);
  CHECK(offset_of("x") == 0);          // index missing
  CHECK(offset_of("x1 + + x2") == 5);  // empty term
  CHECK(offset_of("x0") == 0);         // index must be >= 1
  CHECK(offset_of("x1*x2") == 2);      // stray operator
  CHECK(offset_of("x1 1") == 3);       // constant cannot join a product
  CHECK(offset_of("x25") == 0);        // above the cap
  CHECK(offset_of("x5", 4) == 0);      // above declared n
}

TEST_CASE("printing is canonical and round-trips") {
  CHECK(print_anf(make_anf(3, {})) == "0");
  CHECK(print_anf(make_anf(2, {0})) == "1");
  // weight ascending, then mask ascending
  CHECK(print_anf(make_anf(3, {0b011, 0b100})) == "x3 \xe2\x8a\x95 x1x2");
  CHECK(print_anf(make_anf(3, {0b110, 0b011})) ==
        "x1x2 \xe2\x8a\x95 x2x3");

  SplitMix64 rng{101};
  for (int n = 1; n <= 8; ++n) {
    for (int round = 0; round < 1000; ++round) {
      Anf a = testutil::random_anf(n, rng);
      CHECK(parse_anf(print_anf(a), n) == a);
    }
  }
}

TEST_CASE("bundled corpus loads with the expected structure") {
  auto entries = corpus();
  REQUIRE(entries.size() == 6 + 7);  // files + generated witnesses

  CorpusEntry f74 = corpus_entry("f_7_4");
  CHECK(f74.n == 7);
  CHECK(f74.anf.monomials.size() == 34);
  // x1x2x3x4x5x7 is listed, and no heavier monomial appears
  CHECK(f74.anf.contains(0b1011111));
  CHECK(degree(f74.anf) == 6);
  REQUIRE(f74.claims.size() == 1);
  CHECK(f74.claims[0].kind == Claim::Kind::alpha_eq);
  CHECK(f74.claims[0].k == 4);
  CHECK(f74.claims[0].value == 2);

  CorpusEntry f85 = corpus_entry("f_8_5");
  CHECK(f85.n == 8);
  CHECK(f85.anf.monomials.size() == 72);
  CHECK(f85.anf.contains(0b11111110));  // x2x3x4x5x6x7x8
  CHECK(degree(f85.anf) == 7);
  CHECK(degree(anf_to_tt(f85.anf)) == 7);

  CorpusEntry k2 = corpus_entry("conj_k2");
  CHECK(k2.n == 4);
  CHECK(k2.anf.monomials == std::vector<uint32_t>{0b0010, 0b0111, 0b1001});
  REQUIRE(k2.claims.size() == 1);
  CHECK(k2.claims[0].kind == Claim::Kind::bad_flats);
  CHECK(k2.claims[0].threshold == 1);
  CHECK(k2.claims[0].value == 10);
  CHECK(k2.claims[0].total == 140);

  CHECK(corpus_entry("conj_k5").claims[0].value == 73);
  CHECK(corpus_entry("conj_k5").claims[0].total == 10668);

  CHECK_THROWS_AS(corpus_entry("nope"), ResourceError);
  CHECK_THROWS_AS(corpus("/definitely/not/here"), ResourceError);
}

TEST_CASE("the parser rejects garbage without crashing") {
  SplitMix64 rng{0xfeed};
  const char alphabet[] = "x0123456789+^ \xe2\x8a\x95()";
  for (int round = 0; round < 5000; ++round) {
    std::string text;
    uint64_t len = rng.next_below(20);
    for (uint64_t i = 0; i < len; ++i)
      text += alphabet[rng.next_below(sizeof alphabet - 1)];
    try {
      Anf a = parse_anf(text);
      CHECK(parse_anf(print_anf(a), a.vars) == a);  // accepted input round-trips
    } catch (const ParseError& e) {
      CHECK(e.offset() <= text.size());
    }
  }
}

TEST_CASE("low-weight witness tables") {
  TruthTable w2 = low_weight_witness(2);
  CHECK(w2.bit(0));
  CHECK(w2.bit(1));
  CHECK(w2.bit(2));
  CHECK_FALSE(w2.bit(3));

  CHECK(low_weight_witness(5).weight() == 6);  // n+1 ones
  for (uint32_t idx = 0; idx < 32; ++idx)
    CHECK(low_weight_witness(5).bit(idx) == (std::popcount(idx) <= 1));

  CHECK_THROWS_AS(low_weight_witness(1), std::invalid_argument);

  CorpusEntry witness = corpus_entry("witness_n6");
  CHECK(witness.n == 6);
  CHECK(witness.claims[0].kind == Claim::Kind::alpha_ge);
  CHECK(witness.claims[0].k == 5);
  CHECK(witness.claims[0].value == 4);
  CHECK(anf_to_tt(witness.anf) == low_weight_witness(6));
}
