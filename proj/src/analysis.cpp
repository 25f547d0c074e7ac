#include "flatdeg/analysis.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <stdexcept>
#include <thread>

#include "flatdeg/anf.hpp"
#include "flatdeg/errors.hpp"

namespace flatdeg {

namespace {

struct MetricScratch {
  std::vector<uint64_t> rt;
  std::vector<int32_t> walsh;
};

int restricted_value(const TruthTable& tt, std::span<const uint32_t> rows,
                     uint32_t offset, int k, Metric metric, MetricScratch& s,
                     bool parity_shortcut) {
  s.rt.resize(word_count(k));
  restrict_words(tt, rows, offset, k, s.rt);
  if (metric == Metric::degree) {
    if (parity_shortcut) {
      uint64_t acc = 0;
      for (uint64_t w : s.rt) acc ^= w;
      // odd parity over a flat means the restriction has full degree k
      if (std::popcount(acc) & 1) return k;
    }
    mobius_in_place(s.rt, k);
    return degree_of_words(s.rt, k);
  }
  return nonlinearity_of_words(s.rt, k, s.walsh);
}

int clamp_threads(int threads, uint64_t work) {
  int hw = int(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  threads = std::clamp(threads, 1, hw * 4);
  while (threads > 1 && work / uint64_t(threads) < 1024) --threads;
  return threads;
}

void check_alpha_pre(const TruthTable& tt, int k) {
  if (k < 1 || k > tt.vars())
    throw std::invalid_argument("k must satisfy 1 <= k <= n");
}

}  // namespace

AnalysisResult alpha(const TruthTable& tt, int k, Metric metric,
                     const ScanOptions& opts) {
  check_alpha_pre(tt, k);
  int n = tt.vars();
  FlatEnumerator first(n, k, opts.max_flats);  // budget check happens here
  uint64_t total = first.total();

  struct Partial {
    int value = INT_MAX;
    uint64_t index = ~uint64_t(0);
  };
  auto scan = [&](uint64_t lo, uint64_t hi, FlatEnumerator& e) {
    Partial best;
    MetricScratch scratch;
    e.seek(lo);
    for (uint64_t i = lo; i < hi; ++i, e.advance()) {
      int v = restricted_value(tt, e.rows(), e.offset(), k, metric, scratch,
                               opts.parity_shortcut);
      if (v < best.value) {
        best.value = v;
        best.index = i;
      }
    }
    return best;
  };

  int threads = clamp_threads(opts.threads, total);
  Partial best;
  if (threads <= 1) {
    best = scan(0, total, first);
  } else {
    std::vector<Partial> parts(threads);
    std::vector<std::thread> pool;
    uint64_t chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      uint64_t lo = std::min(total, uint64_t(t) * chunk);
      uint64_t hi = std::min(total, lo + chunk);
      pool.emplace_back([&, t, lo, hi] {
        FlatEnumerator e(n, k, opts.max_flats);
        parts[t] = scan(lo, hi, e);
      });
    }
    for (auto& th : pool) th.join();
    for (const Partial& p : parts)
      if (p.value < best.value ||
          (p.value == best.value && p.index < best.index))
        best = p;
  }

  first.seek(best.index);
  return AnalysisResult{best.value, first.current(), total, metric};
}

BadFlatReport bad_flat_count(const TruthTable& tt, int k, Metric metric,
                             int threshold, const ScanOptions& opts) {
  check_alpha_pre(tt, k);
  int n = tt.vars();
  FlatEnumerator first(n, k, opts.max_flats);
  uint64_t total = first.total();

  auto scan = [&](uint64_t lo, uint64_t hi, FlatEnumerator& e) {
    uint64_t bad = 0;
    MetricScratch scratch;
    e.seek(lo);
    for (uint64_t i = lo; i < hi; ++i, e.advance()) {
      int v = restricted_value(tt, e.rows(), e.offset(), k, metric, scratch,
                               opts.parity_shortcut);
      // degree counts strictly-below; nonlinearity counts at-or-below
      if (metric == Metric::degree ? v < threshold : v <= threshold) ++bad;
    }
    return bad;
  };

  int threads = clamp_threads(opts.threads, total);
  uint64_t bad = 0;
  if (threads <= 1) {
    bad = scan(0, total, first);
  } else {
    std::vector<uint64_t> parts(threads, 0);
    std::vector<std::thread> pool;
    uint64_t chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      uint64_t lo = std::min(total, uint64_t(t) * chunk);
      uint64_t hi = std::min(total, lo + chunk);
      pool.emplace_back([&, t, lo, hi] {
        FlatEnumerator e(n, k, opts.max_flats);
        parts[t] = scan(lo, hi, e);
      });
    }
    for (auto& th : pool) th.join();
    for (uint64_t p : parts) bad += p;
  }
  return BadFlatReport{metric, threshold, bad, count_flats(n, k)};
}

// ---------------------------------------------------------------------------
// Exhaustive max-min over every function

ExhaustResult exhaustive_g(int n, int k, Metric metric,
                           const ExhaustOptions& opts) {
  if (n < 1 || n > kMaxVars || k < 1 || k > n)
    throw std::invalid_argument("need 1 <= k <= n");
  if (n > 5)
    throw BudgetError("exhaustive scan over 2^(2^n) functions is infeasible for n > 5");
  if (n == 5 && !opts.allow_large)
    throw BudgetError("n = 5 scans 2^32 functions; pass the override to allow it");

  // Every flat's points in restricted-coordinate order y = 0 .. 2^k-1.
  FlatEnumerator e(n, k, opts.max_flats);
  uint64_t flat_count = e.total();
  uint32_t pts = uint32_t(1) << k;
  std::vector<uint32_t> flat_points(flat_count * pts);
  for (uint64_t i = 0; i < flat_count; ++i, e.advance()) {
    uint32_t* p = &flat_points[i * pts];
    p[0] = e.offset();
    auto rows = e.rows();
    for (uint32_t y = 1; y < pts; ++y)
      p[y] = p[y & (y - 1)] ^ rows[std::countr_zero(y)];
  }

  // Restrictions of a <= 32-bit table fit one word for k <= 5.
  auto flat_value = [&](uint64_t table, uint64_t flat,
                        std::vector<int32_t>& scratch) {
    const uint32_t* p = &flat_points[flat * pts];
    uint64_t rt = 0;
    for (uint32_t y = 0; y < pts; ++y) rt |= ((table >> p[y]) & 1) << y;
    if (metric == Metric::degree) {
      if (std::popcount(rt) & 1) return k;
      uint64_t w[1] = {rt};
      mobius_in_place(w, k);
      return degree_of_words(w, k);
    }
    uint64_t w[1] = {rt};
    return nonlinearity_of_words(w, k, scratch);
  };

  struct Partial {
    int value = -1;
    uint64_t table = 0;
  };
  // Complement invariance: scanning tables with f(0) = 0 covers everything.
  uint64_t half = uint64_t(1) << ((1 << n) - 1);
  auto scan = [&](uint64_t rlo, uint64_t rhi) {
    Partial best;
    std::vector<int32_t> scratch;
    for (uint64_t r = rlo; r < rhi; ++r) {
      uint64_t table = r << 1;
      int mn = INT_MAX;
      for (uint64_t f = 0; f < flat_count; ++f) {
        mn = std::min(mn, flat_value(table, f, scratch));
        if (mn <= best.value) break;  // cannot improve the max
      }
      if (mn > best.value) {
        best.value = mn;
        best.table = table;
      }
    }
    return best;
  };

  int threads = clamp_threads(opts.threads, half);
  Partial best;
  if (threads <= 1) {
    best = scan(0, half);
  } else {
    std::vector<Partial> parts(threads);
    std::vector<std::thread> pool;
    uint64_t chunk = (half + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      uint64_t lo = std::min(half, uint64_t(t) * chunk);
      uint64_t hi = std::min(half, lo + chunk);
      pool.emplace_back([&, t, lo, hi] { parts[t] = scan(lo, hi); });
    }
    for (auto& th : pool) th.join();
    for (const Partial& p : parts)
      if (p.value > best.value ||
          (p.value == best.value && p.table < best.table))
        best = p;
  }

  ExhaustResult result;
  result.value = best.value;
  result.maximizer = TruthTable(n);
  for (uint32_t i = 0; i < (uint32_t(1) << n); ++i)
    result.maximizer.set_bit(i, (best.table >> i) & 1);
  return result;
}

// ---------------------------------------------------------------------------
// Claim verification

bool VerifyReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const ClaimCheck& c) { return c.pass; });
}

VerifyReport verify_claim(const CorpusEntry& entry, const ScanOptions& opts) {
  VerifyReport report;
  TruthTable tt = anf_to_tt(entry.anf);
  for (const Claim& claim : entry.claims) {
    switch (claim.kind) {
      case Claim::Kind::alpha_eq: {
        AnalysisResult r = alpha(tt, claim.k, claim.metric, opts);
        ClaimCheck le;
        le.id = entry.id;
        le.claim = claim.text() + " [<= direction]";
        le.expected = "<= " + std::to_string(claim.value);
        le.computed = std::to_string(r.value);
        le.pass = r.value <= claim.value;
        le.witness = r.witness.to_text();
        report.rows.push_back(std::move(le));
        ClaimCheck ge;
        ge.id = entry.id;
        ge.claim = claim.text() + " [>= direction]";
        ge.expected = ">= " + std::to_string(claim.value);
        ge.computed = std::to_string(r.value);
        ge.pass = r.value >= claim.value;
        report.rows.push_back(std::move(ge));
        break;
      }
      case Claim::Kind::alpha_ge: {
        AnalysisResult r = alpha(tt, claim.k, claim.metric, opts);
        ClaimCheck row;
        row.id = entry.id;
        row.claim = claim.text();
        row.expected = ">= " + std::to_string(claim.value);
        row.computed = std::to_string(r.value);
        row.pass = r.value >= claim.value;
        row.witness = r.witness.to_text();
        report.rows.push_back(std::move(row));
        break;
      }
      case Claim::Kind::bad_flats: {
        BadFlatReport r =
            bad_flat_count(tt, claim.k, claim.metric, claim.threshold, opts);
        ClaimCheck row;
        row.id = entry.id;
        row.claim = claim.text();
        row.expected =
            std::to_string(claim.value) + " of " + std::to_string(claim.total);
        row.computed = std::to_string(r.bad_count) + " of " + r.total.str();
        row.pass = r.bad_count == uint64_t(claim.value) &&
                   r.total == BigInt(claim.total);
        report.rows.push_back(std::move(row));
        break;
      }
    }
  }
  return report;
}

}  // namespace flatdeg
