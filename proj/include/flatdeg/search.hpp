#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "flatdeg/analysis.hpp"
#include "flatdeg/rng.hpp"

namespace flatdeg {

/*! Configuration of the randomized hill climb for functions with
 * alpha(f, k) >= threshold (degree) or alpha'(f, k) > threshold (nl). */
struct SearchConfig {
  int n = 0, k = 0;
  Metric metric = Metric::degree;
  int threshold = 0;       // d for degree, m for nonlinearity
  uint64_t steps = 100000;  // N: steps per restart
  uint32_t restarts = 10;   // R
  uint64_t seed = 0;
  double p_flip_one = 0.5;  // probability of flipping 1 point (else 2)
  uint64_t memory_budget_bytes = uint64_t(512) << 20;
  uint64_t max_flats = kDefaultFlatBudget;
  int threads = 1;
  bool record_trace = false;

  enum class CacheMode { automatic, incidence, on_the_fly };
  CacheMode cache_mode = CacheMode::automatic;  // results identical either way

  void validate() const;
};

// The hill-climb objective: the number of bad k-flats, i.e.
// bad_flat_count(tt, k, metric, threshold).bad_count.
uint64_t objective(const TruthTable& tt, const SearchConfig& cfg);

/*! One function plus cached per-flat state; a step flips 1-2 points,
 * re-evaluates only the flats through them, and reverts byte-for-byte when
 * the objective would increase (ties are accepted). */
class SearchState {
public:
  SearchState(TruthTable start, const SearchConfig& cfg);
  ~SearchState();
  SearchState(SearchState&&) noexcept;
  SearchState& operator=(SearchState&&) noexcept;

  const TruthTable& function() const;
  uint64_t cached_objective() const;
  bool uses_incidence_index() const;

  // Returns true when the flip was kept. RNG draw order: flip count, then
  // the point(s); documented so runs stay reproducible.
  bool step(SplitMix64& rng);

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

enum class SearchStatus { found, exhausted };

struct SearchOutcome {
  SearchStatus status = SearchStatus::exhausted;
  TruthTable function;       // best function seen
  uint64_t bad_flats = 0;    // its objective (0 iff found)
  uint32_t restarts_used = 0;  // restarts started (index of success + 1)
  uint64_t steps_used = 0;     // steps taken in the returned restart
  std::vector<uint64_t> restart_best;  // best objective per restart run
  std::vector<uint64_t> trace;  // objective after each step (returned restart)
  std::string rng_algorithm;    // "splitmix64-v1"
};

/*! Up to R restarts of up to N steps; restart r draws its starting function
 * from a sub-generator seeded with splitmix64 stream element r of the seed,
 * so outcomes are reproducible and independent of the thread count. Returns
 * on the first restart reaching objective 0 (lowest restart index wins when
 * running in parallel). */
SearchOutcome search(const SearchConfig& cfg);

}  // namespace flatdeg
