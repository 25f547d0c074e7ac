#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <unordered_set>

#include "flatdeg/anf.hpp"
#include "flatdeg/errors.hpp"
#include "flatdeg/flat.hpp"
#include "test_util.hpp"

using namespace flatdeg;
using testutil::point_set;

TEST_CASE("canonicalize examples") {
  // whole plane described redundantly
  uint32_t b1[] = {0b11, 0b01};
  Flat whole = Flat::canonical(2, b1, 0b10);
  CHECK(whole.basis()[0] == 0b01);
  CHECK(whole.basis()[1] == 0b10);
  CHECK(whole.offset() == 0);
  CHECK(whole == Flat::full_space(2));

  // offset inside the span reduces to zero
  uint32_t b2[] = {0b110};
  Flat line = Flat::canonical(3, b2, 0b110);
  CHECK(line.basis()[0] == 0b110);
  CHECK(line.offset() == 0);

  uint32_t dep[] = {0b101, 0b011, 0b110};
  CHECK_THROWS_AS(Flat::canonical(3, dep, 0), std::invalid_argument);
  uint32_t oob[] = {0b1000};
  CHECK_THROWS_AS(Flat::canonical(3, oob, 0), std::invalid_argument);
}

TEST_CASE("canonical form is point-set-faithful and unique") {
  SplitMix64 rng{1};
  for (int round = 0; round < 300; ++round) {
    int n = 2 + int(rng.next_below(4));  // up to 5
    int k = 1 + int(rng.next_below(uint64_t(n)));
    auto rows = testutil::random_independent_rows(n, k, rng);
    uint32_t offset = uint32_t(rng.next_below(uint64_t(1) << n));
    Flat flat = Flat::canonical(n, rows, offset);

    // same point set as the raw description
    CHECK(point_set(flat.basis(), flat.offset()) == point_set(rows, offset));
    // idempotent
    CHECK(Flat::canonical(n, flat.basis(), flat.offset()) == flat);
    // any equivalent description canonicalizes identically
    auto [rows2, offset2] = testutil::rebase(rows, offset, rng);
    CHECK(Flat::canonical(n, rows2, offset2) == flat);
    // membership agrees with the explicit point set
    auto points = point_set(rows, offset);
    for (uint32_t p = 0; p < (uint32_t(1) << n); ++p)
      CHECK(flat.contains(p) == (points.count(p) > 0));
  }
}

TEST_CASE("flat counts") {
  CHECK(count_flats(4, 2) == 140);
  CHECK(count_flats(5, 3) == 620);
  CHECK(count_flats(6, 4) == 2604);
  CHECK(count_flats(7, 5) == 10668);
  CHECK(count_flats(7, 4) == 94488);
  CHECK(count_flats(8, 5) == 777240);
  CHECK(count_flats(2, 1) == 6);
  for (int n = 0; n <= 8; ++n) CHECK(count_flats(n, n) == 1);
  CHECK(count_flats(5, 0) == 32);
  CHECK(count_subspaces(4, 2) == 35);
  CHECK_THROWS_AS(count_flats(3, 4), std::invalid_argument);
  // a genuinely big one stays exact (cross-checked with exact integer
  // arithmetic outside this codebase)
  CHECK(count_flats(24, 12) ==
        BigInt("316146222476550806885451384347692584809512120320"));
}

TEST_CASE("enumeration yields each canonical flat exactly once") {
  for (int n = 0; n <= 6; ++n) {
    for (int k = 0; k <= n; ++k) {
      FlatEnumerator e(n, k);
      std::unordered_set<std::string> seen;
      uint64_t count = 0;
      for (; !e.done(); e.advance()) {
        Flat f = e.current();
        CHECK(Flat::canonical(n, f.basis(), f.offset()) == f);
        CHECK(seen.insert(f.to_text()).second);
        ++count;
      }
      CHECK(BigInt(count) == count_flats(n, k));
    }
  }
}

TEST_CASE("enumeration examples") {
  FlatEnumerator points(4, 0);
  CHECK(points.total() == 16);  // single points

  FlatEnumerator lines(2, 1);
  std::vector<std::string> all;
  for (; !lines.done(); lines.advance()) all.push_back(lines.current().to_text());
  CHECK(all.size() == 6);

  FlatEnumerator big(5, 3);
  CHECK(big.total() == 620);

  CHECK_THROWS_AS(FlatEnumerator(24, 12), BudgetError);
  CHECK_THROWS_AS(FlatEnumerator(6, 3, 100), BudgetError);
}

TEST_CASE("seek matches sequential order") {
  FlatEnumerator seq(5, 2);
  std::vector<std::string> in_order;
  for (; !seq.done(); seq.advance()) in_order.push_back(seq.current().to_text());
  SplitMix64 rng{5};
  FlatEnumerator e(5, 2);
  for (int round = 0; round < 200; ++round) {
    uint64_t idx = rng.next_below(e.total());
    e.seek(idx);
    CHECK(e.current().to_text() == in_order[idx]);
  }
}

TEST_CASE("flats through a point") {
  FlatPointEnumerator e(4, 2, 0);
  uint64_t count = 0;
  for (; !e.done(); e.advance()) {
    CHECK(e.current().contains(0));
    ++count;
  }
  CHECK(count == 35);  // 140 / 2^(4-2)

  FlatPointEnumerator full(5, 5, 17);
  CHECK(full.total() == 1);
  CHECK(full.current() == Flat::full_space(5));

  // the through-enumerator agrees with filtering the full enumeration
  uint32_t probe = 5;
  std::set<std::string> filtered;
  for (FlatEnumerator all(4, 2); !all.done(); all.advance())
    if (all.current().contains(probe)) filtered.insert(all.current().to_text());
  std::set<std::string> direct;
  for (FlatPointEnumerator thru(4, 2, probe); !thru.done(); thru.advance())
    direct.insert(thru.current().to_text());
  CHECK(filtered == direct);

  // double counting: every flat holds 2^k of the 2^n points
  BigInt lhs = count_subspaces(4, 2) * 16;
  CHECK(lhs == count_flats(4, 2) * 4);
}

TEST_CASE("restriction basics") {
  SplitMix64 rng{9};
  TruthTable tt = testutil::random_tt(5, rng);
  CHECK(restrict_to(tt, Flat::full_space(5)) == tt);

  TruthTable ones = TruthTable::constant(6, true);
  FlatEnumerator e(6, 3);
  e.seek(1234);
  CHECK(restrict_to(ones, e.current()) == TruthTable::constant(3, true));

  TruthTable wrong(4);
  CHECK_THROWS_AS(restrict_to(wrong, Flat::full_space(5)),
                  std::invalid_argument);
}

TEST_CASE("restricted degree and nonlinearity do not depend on the basis") {
  SplitMix64 rng{15};
  for (int round = 0; round < 200; ++round) {
    TruthTable tt = testutil::random_tt(6, rng);
    auto rows = testutil::random_independent_rows(6, 3, rng);
    uint32_t offset = uint32_t(rng.next_below(64));
    TruthTable r1 = restrict_to(tt, rows, offset);
    auto [rows2, offset2] = testutil::rebase(rows, offset, rng);
    TruthTable r2 = restrict_to(tt, rows2, offset2);
    CHECK(degree(r1) == degree(r2));
    CHECK(nonlinearity(r1) == nonlinearity(r2));
  }
}

TEST_CASE("flat parity matches full restricted degree") {
  TruthTable product = anf_to_tt(make_anf(4, {0b1111}));
  CHECK(flat_parity(product, Flat::full_space(4)) == 1);

  TruthTable zero(5);
  for (FlatEnumerator e(5, 2); !e.done(); e.advance())
    CHECK(flat_parity(zero, e.current()) == 0);

  SplitMix64 rng{21};
  for (int n = 3; n <= 8; ++n) {
    for (int round = 0; round < 10000; ++round) {
      TruthTable tt = testutil::random_tt(n, rng);
      int k = 1 + int(rng.next_below(uint64_t(n)));
      FlatEnumerator e(n, k);
      e.seek(rng.next_below(e.total()));
      Flat flat = e.current();
      bool parity = flat_parity(tt, flat);
      CHECK(parity == (degree(restrict_to(tt, flat)) == k));
    }
  }
}

TEST_CASE("flat text round-trips") {
  FlatEnumerator e(6, 3);
  e.seek(777);
  Flat f = e.current();
  CHECK(Flat::from_text(f.to_text()) == f);

  Flat pt = Flat::single_point(4, 9);
  CHECK(pt.to_text() == "n=4 k=0 basis= offset=9");
  CHECK(Flat::from_text(pt.to_text()) == pt);

  CHECK_THROWS_AS(Flat::from_text("nope"), ParseError);
  CHECK_THROWS_AS(Flat::from_text("n=3 k=1 basis=9 offset=0"),
                  std::invalid_argument);
}
