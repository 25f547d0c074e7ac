#include "flatdeg/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "flatdeg/errors.hpp"

namespace flatdeg {

void SearchConfig::validate() const {
  if (n < 1 || n > kMaxVars || k < 1 || k > n)
    throw std::invalid_argument("search needs 1 <= k <= n <= " +
                                std::to_string(kMaxVars));
  if (metric == Metric::degree) {
    if (threshold < 0 || threshold > k)
      throw std::invalid_argument("degree threshold must be in [0, k]");
  } else {
    if (threshold < -1 || threshold >= (1 << (k - 1)))
      throw std::invalid_argument("nonlinearity threshold out of range");
  }
  if (steps < 1 || restarts < 1)
    throw std::invalid_argument("steps and restarts must be positive");
  if (!(p_flip_one >= 0.0 && p_flip_one <= 1.0))
    throw std::invalid_argument("p_flip_one must be in [0, 1]");
}

uint64_t objective(const TruthTable& tt, const SearchConfig& cfg) {
  ScanOptions opts;
  opts.max_flats = cfg.max_flats;
  return bad_flat_count(tt, cfg.k, cfg.metric, cfg.threshold, opts).bad_count;
}

// ---------------------------------------------------------------------------

struct SearchState::Impl {
  SearchConfig cfg;
  TruthTable tt;
  uint64_t bad_count = 0;
  bool incidence = false;
  int words = 1;

  // incidence mode
  uint64_t flat_count = 0;
  std::vector<uint64_t> tables;     // flat_count * words, current restrictions
  std::vector<uint8_t> bad;         // per-flat badness flag
  std::vector<uint64_t> inc;        // (flat << 12 | y), grouped by point
  uint64_t through = 0;             // flats per point; inc offset = p * through
  std::vector<uint32_t> epoch_mark;
  uint32_t epoch = 0;
  std::vector<std::pair<uint64_t, uint8_t>> touched;

  // scratch
  std::vector<uint64_t> scratch;
  std::vector<uint64_t> fly_table;
  std::vector<int32_t> walsh_scratch;
  uint32_t flips[2] = {0, 0};
  int flip_count = 0;

  Impl(TruthTable start, const SearchConfig& c) : cfg(c), tt(std::move(start)) {
    cfg.validate();
    if (tt.vars() != cfg.n)
      throw std::invalid_argument("start function has the wrong n");
    words = int(word_count(cfg.k));
    scratch.resize(words);
    fly_table.resize(words);

    BigInt count_big = count_flats(cfg.n, cfg.k);
    if (count_big > cfg.max_flats)
      throw BudgetError("flat count " + count_big.str() + " exceeds budget");
    uint64_t count = count_big.convert_to<uint64_t>();

    bool want_incidence;
    if (cfg.cache_mode == SearchConfig::CacheMode::incidence)
      want_incidence = true;
    else if (cfg.cache_mode == SearchConfig::CacheMode::on_the_fly)
      want_incidence = false;
    else
      want_incidence = estimate_bytes(count) <= cfg.memory_budget_bytes;

    if (want_incidence)
      build_index(count);
    else
      bad_count = objective(tt, cfg);
    incidence = want_incidence;
  }

  uint64_t estimate_bytes(uint64_t count) const {
    uint64_t per_flat = uint64_t(words) * 8 + 1 + 4;  // table + bad + epoch
    uint64_t entries = count << cfg.k;                // incidence records
    return entries * 8 + count * per_flat + ((uint64_t(1) << cfg.n) + 1) * 8;
  }

  bool eval_bad_words(std::span<const uint64_t> table) {
    if (cfg.metric == Metric::degree) {
      if (cfg.threshold == 0) return false;  // every degree is >= 0
      uint64_t acc = 0;
      for (uint64_t w : table) acc ^= w;
      if (std::popcount(acc) & 1) return cfg.k < cfg.threshold;
      std::copy(table.begin(), table.end(), scratch.begin());
      mobius_in_place(std::span<uint64_t>(scratch.data(), table.size()), cfg.k);
      // bad iff no monomial of weight >= threshold survives
      for (std::size_t j = 0; j < table.size(); ++j) {
        uint64_t w = scratch[j];
        int base = std::popcount(j);
        while (w) {
          int r = std::countr_zero(w);
          w &= w - 1;
          if (base + std::popcount(unsigned(r)) >= cfg.threshold) return false;
        }
      }
      return true;
    }
    int nl = nonlinearity_of_words(table, cfg.k, walsh_scratch);
    return nl <= cfg.threshold;
  }

  bool eval_bad_flat(uint64_t f) {
    return eval_bad_words(
        std::span<const uint64_t>(tables.data() + f * words, words));
  }

  void build_index(uint64_t count) {
    flat_count = count;
    through = count >> (cfg.n - cfg.k);  // flats through each point
    uint32_t pts = uint32_t(1) << cfg.k;
    tables.assign(count * words, 0);
    bad.assign(count, 0);
    epoch_mark.assign(count, 0);
    inc.resize(count << cfg.k);
    std::vector<uint32_t> fill(uint64_t(1) << cfg.n, 0);

    FlatEnumerator e(cfg.n, cfg.k, cfg.max_flats);
    bad_count = 0;
    for (uint64_t i = 0; i < count; ++i, e.advance()) {
      auto rows = e.rows();
      std::span<uint64_t> table(tables.data() + i * words, words);
      restrict_words(tt, rows, e.offset(), cfg.k, table);
      bad[i] = eval_bad_words(table);
      bad_count += bad[i];
      // record (flat, y) under every point of the flat, Gray walk
      uint32_t p = e.offset();
      uint32_t g = 0;
      inc[uint64_t(p) * through + fill[p]++] = (i << 24) | g;
      for (uint32_t s = 1; s < pts; ++s) {
        int tz = std::countr_zero(s);
        p ^= rows[tz];
        g ^= uint32_t(1) << tz;
        inc[uint64_t(p) * through + fill[p]++] = (i << 24) | g;
      }
    }
  }

  void flip_tables(uint32_t point) {
    const uint64_t* base = inc.data() + uint64_t(point) * through;
    for (uint64_t j = 0; j < through; ++j) {
      uint64_t e = base[j];
      uint64_t f = e >> 24;
      uint32_t y = uint32_t(e) & 0xffffff;
      tables[f * words + (y >> 6)] ^= uint64_t(1) << (y & 63);
    }
  }

  bool step_incidence() {
    if (++epoch == 0) {  // counter wrapped; reset the marks
      std::fill(epoch_mark.begin(), epoch_mark.end(), 0);
      epoch = 1;
    }
    touched.clear();
    uint64_t old_count = bad_count;
    for (int i = 0; i < flip_count; ++i) tt.flip_bit(flips[i]);
    for (int i = 0; i < flip_count; ++i) {
      uint32_t p = flips[i];
      const uint64_t* base = inc.data() + uint64_t(p) * through;
      for (uint64_t j = 0; j < through; ++j) {
        uint64_t e = base[j];
        uint64_t f = e >> 24;
        uint32_t y = uint32_t(e) & 0xffffff;
        tables[f * words + (y >> 6)] ^= uint64_t(1) << (y & 63);
        if (epoch_mark[f] != epoch) {
          epoch_mark[f] = epoch;
          touched.emplace_back(f, bad[f]);
        }
      }
    }
    int64_t delta = 0;
    for (auto& [f, old_bad] : touched) {
      uint8_t now = eval_bad_flat(f);
      delta += int64_t(now) - int64_t(old_bad);
      bad[f] = now;
    }
    uint64_t new_count = uint64_t(int64_t(old_count) + delta);
    if (new_count > old_count) {
      for (int i = 0; i < flip_count; ++i) tt.flip_bit(flips[i]);
      for (int i = 0; i < flip_count; ++i) flip_tables(flips[i]);
      for (auto& [f, old_bad] : touched) bad[f] = old_bad;
      return false;
    }
    bad_count = new_count;
    return true;
  }

  static bool member(uint32_t point, std::span<const uint32_t> rows,
                     uint32_t offset) {
    uint32_t z = point ^ offset;
    for (uint32_t row : rows)
      if (z & (row & -row)) z ^= row;
    return z == 0;
  }

  static uint32_t coords_of(uint32_t point, std::span<const uint32_t> rows) {
    uint32_t y = 0;
    for (std::size_t j = 0; j < rows.size(); ++j)
      if (point >> std::countr_zero(rows[j]) & 1) y |= uint32_t(1) << j;
    return y;
  }

  bool step_on_the_fly() {
    uint64_t old_count = bad_count;
    for (int i = 0; i < flip_count; ++i) tt.flip_bit(flips[i]);
    int64_t delta = 0;
    std::span<uint64_t> table(fly_table.data(), std::size_t(words));
    for (int i = 0; i < flip_count; ++i) {
      FlatPointEnumerator e(cfg.n, cfg.k, flips[i], cfg.max_flats);
      for (; !e.done(); e.advance()) {
        auto rows = e.rows();
        uint32_t offset = e.offset();
        // flats holding an earlier flipped point were already accounted for
        bool seen = false;
        for (int j = 0; j < i && !seen; ++j)
          seen = member(flips[j], rows, offset);
        if (seen) continue;
        restrict_words(tt, rows, offset, cfg.k, table);
        bool bad_new = eval_bad_words(table);
        // undo every member flip to recover the pre-step restriction
        for (int j = i; j < flip_count; ++j) {
          if (j > i && !member(flips[j], rows, offset)) continue;
          uint32_t y = coords_of(flips[j] ^ offset, rows);
          table[y >> 6] ^= uint64_t(1) << (y & 63);
        }
        bool bad_old = eval_bad_words(table);
        delta += int64_t(bad_new) - int64_t(bad_old);
      }
    }
    uint64_t new_count = uint64_t(int64_t(old_count) + delta);
    if (new_count > old_count) {
      for (int i = 0; i < flip_count; ++i) tt.flip_bit(flips[i]);
      return false;
    }
    bad_count = new_count;
    return true;
  }

  bool step(SplitMix64& rng) {
    flip_count = rng.next_unit() < cfg.p_flip_one ? 1 : 2;
    uint32_t span_size = uint32_t(1) << cfg.n;
    flips[0] = uint32_t(rng.next_below(span_size));
    if (flip_count == 2) {
      do {
        flips[1] = uint32_t(rng.next_below(span_size));
      } while (flips[1] == flips[0]);
    }
    return incidence ? step_incidence() : step_on_the_fly();
  }
};

SearchState::SearchState(TruthTable start, const SearchConfig& cfg)
    : impl_(std::make_unique<Impl>(std::move(start), cfg)) {}
SearchState::~SearchState() = default;
SearchState::SearchState(SearchState&&) noexcept = default;
SearchState& SearchState::operator=(SearchState&&) noexcept = default;

const TruthTable& SearchState::function() const { return impl_->tt; }
uint64_t SearchState::cached_objective() const { return impl_->bad_count; }
bool SearchState::uses_incidence_index() const { return impl_->incidence; }
bool SearchState::step(SplitMix64& rng) { return impl_->step(rng); }

// ---------------------------------------------------------------------------

namespace {

struct RestartResult {
  bool ran = false;
  bool found = false;
  uint64_t best = 0;
  uint64_t steps_done = 0;
  TruthTable function;
  std::vector<uint64_t> trace;
};

RestartResult run_restart(const SearchConfig& cfg, uint32_t r,
                          const std::atomic<uint32_t>* first_found) {
  RestartResult out;
  out.ran = true;
  SplitMix64 rng{SplitMix64::stream_element(cfg.seed, r)};
  SearchState state(random_table(cfg.n, rng), cfg);
  uint64_t steps = 0;
  while (state.cached_objective() != 0 && steps < cfg.steps) {
    state.step(rng);
    ++steps;
    if (cfg.record_trace) out.trace.push_back(state.cached_objective());
    if (first_found && (steps & 1023) == 0 &&
        first_found->load(std::memory_order_relaxed) < r) {
      out.ran = false;  // a lower restart already succeeded
      return out;
    }
  }
  out.found = state.cached_objective() == 0;
  out.best = state.cached_objective();
  out.steps_done = steps;
  out.function = state.function();
  return out;
}

}  // namespace

SearchOutcome search(const SearchConfig& cfg) {
  cfg.validate();
  BigInt count = count_flats(cfg.n, cfg.k);
  if (count > cfg.max_flats)
    throw BudgetError("flat count " + count.str() + " exceeds budget of " +
                      std::to_string(cfg.max_flats));
  SearchOutcome outcome;
  outcome.rng_algorithm = "splitmix64-v1";

  std::vector<RestartResult> results(cfg.restarts);
  int threads = std::clamp(cfg.threads, 1, int(cfg.restarts));
  if (threads <= 1) {
    for (uint32_t r = 0; r < cfg.restarts; ++r) {
      results[r] = run_restart(cfg, r, nullptr);
      if (results[r].found) break;
    }
  } else {
    std::atomic<uint32_t> first_found{UINT32_MAX};
    std::atomic<uint32_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
      try {
        while (true) {
          uint32_t r = next.fetch_add(1);
          if (r >= cfg.restarts) return;
          if (first_found.load() < r) return;
          results[r] = run_restart(cfg, r, &first_found);
          if (results[r].ran && results[r].found) {
            uint32_t seen = first_found.load();
            while (r < seen && !first_found.compare_exchange_weak(seen, r)) {
            }
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  // Winner: the lowest restart index that found objective 0; otherwise the
  // best (objective, restart index) among all completed restarts.
  uint32_t winner = UINT32_MAX;
  for (uint32_t r = 0; r < cfg.restarts; ++r) {
    if (results[r].ran && results[r].found) {
      winner = r;
      break;
    }
  }
  if (winner != UINT32_MAX) {
    const RestartResult& w = results[winner];
    outcome.status = SearchStatus::found;
    outcome.function = w.function;
    outcome.bad_flats = 0;
    outcome.restarts_used = winner + 1;
    outcome.steps_used = w.steps_done;
    outcome.trace = w.trace;
    for (uint32_t r = 0; r <= winner; ++r)
      outcome.restart_best.push_back(results[r].best);
    return outcome;
  }

  uint32_t best_r = 0;
  for (uint32_t r = 0; r < cfg.restarts; ++r) {
    outcome.restart_best.push_back(results[r].best);
    if (results[r].best < results[best_r].best) best_r = r;
  }
  const RestartResult& b = results[best_r];
  outcome.status = SearchStatus::exhausted;
  outcome.function = b.function;
  outcome.bad_flats = b.best;
  outcome.restarts_used = cfg.restarts;
  outcome.steps_used = b.steps_done;
  outcome.trace = b.trace;
  return outcome;
}

}  // namespace flatdeg
