#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "flatdeg/corpus.hpp"
#include "flatdeg/flat.hpp"

namespace flatdeg {

// ---------------------------------------------------------------------------
// Closed-form bounds on g(n,k) = max_f min-over-k-flats of restricted degree
// (and g'(n,k), the nonlinearity analogue). All inequality evaluation is
// exact big-integer arithmetic.

// Counting condition: (k+1)(n-k) + 2 <= C(k,0) + ... + C(k,k-d-1).
// When it holds, g(n,k) > d. Requires n > k > d >= 0.
bool counting_condition_holds(int n, int k, int d);

// 1 + the largest d whose counting condition holds, or 0 when none does.
int counting_lower_bound(int n, int k);

// Closed-form consequences of the counting bound for k >= 5:
// k-2 when k+2 <= n <= (3k-1)/2, k-3 when 3k/2 <= n <= (k+1)(k+4)/6, else 0.
// Never exceeds counting_lower_bound.
int closed_form_lower_bound(int n, int k);

// Nonlinearity analogue: 1 + the largest m with m < 2^(k-2) and
// C(2^k,0) + ... + C(2^k,m) <= 2^(2^k - (k+1)(n-k+1) - 2), or 0.
// Requires n > k >= 2.
int counting_lower_bound_nl(int n, int k);

// ceil(2^a (2^b - 1) / (2^c - 1)) = 2^(a+b-c), valid for nonnegative
// integers with max(a+1, b) <= c <= a+b.
BigInt pow2_ratio_ceil(int a, int b, int c);

// Upper bound from combining parallel flats: the least d in [0,k) with
// n >= 2^(k-1) + k - floor(2^(d-1)), or the vacuous bound k when no d
// qualifies. Requires 1 <= k <= n.
int combining_upper_bound(int n, int k);

// Exact value for hyperplanes: g(n, n-1) = n-2 for n >= 2.
int hyperplane_exact(int n);

// ---------------------------------------------------------------------------
// Known-values database (imported results, shipped as data with citations)

struct KnownValue {
  Metric metric = Metric::degree;
  int n = 0, k = 0;
  enum class Kind { exact, lower } kind = Kind::exact;
  int value = 0;
  std::string source;

  friend bool operator==(const KnownValue&, const KnownValue&) = default;
};

class KnownValueDb {
public:
  // The compiled-in copy of the shipped table.
  static KnownValueDb builtin();
  // Parse the data file ("metric n k kind value source" records, '#'
  // comments); throws ResourceError.
  static KnownValueDb load(const std::string& path);

  const std::vector<KnownValue>& entries() const { return entries_; }
  std::vector<KnownValue> find(int n, int k, Metric metric) const;

  friend bool operator==(const KnownValueDb&, const KnownValueDb&) = default;

private:
  std::vector<KnownValue> entries_;
};

// ---------------------------------------------------------------------------
// Combined intervals

struct BoundContribution {
  std::string name;  // trivial, hyperplane-exact, counting-lower,
                     // counting-lower-closed-form, combining-upper,
                     // monotone-n, degree-link, known-value:<source>
  int value = 0;
};

struct BoundsResult {
  int n = 0, k = 0;
  Metric metric = Metric::degree;
  int lo = 0, hi = 0;
  std::vector<BoundContribution> lower, upper;

  // Best upper bound proven directly at this cell (ignoring monotone-n);
  // drives the "lo or hi" vs ">= lo" table rendering.
  int direct_hi = 0;
};

/*! Memoizing resolver combining every bound with the known-values DB.
 *
 * Degree: lo = max(0, counting bounds, hyperplane exact, known values);
 * hi = min(k, hyperplane exact, combining upper, hi(n-1,k), known exacts);
 * g(n,n) = n. Nonlinearity: lo from the counting analogue, known values
 * and the degree link (lo_deg >= 2 forces g' >= 1); hi = min(2^(k-1),
 * monotone, known exacts, degree link: hi_deg <= 1 forces g' = 0).
 * Thread-safe; results are cached per (n, k, metric).
 */
class BoundsOracle {
public:
  explicit BoundsOracle(KnownValueDb db = KnownValueDb::builtin());

  BoundsResult resolve(int n, int k, Metric metric) const;
  const KnownValueDb& db() const { return db_; }

private:
  BoundsResult compute(int n, int k, Metric metric) const;

  KnownValueDb db_;
  mutable std::mutex mutex_;
  mutable std::map<std::tuple<int, int, int>, BoundsResult> cache_;
};

// Cell text: "v" when lo == hi, "lo or hi" when hi == lo+1 and the upper
// bound is direct, otherwise ">= lo" (with the >= sign); "" when n < k.
std::string bounds_cell(const BoundsResult& r);

// Aligned text grid, rows k = 1..max_k, columns n = 1..max_n. Column widths
// depend only on the column, so a smaller max_n renders a line-prefix of a
// larger table.
std::string render_tables(const BoundsOracle& oracle, int max_n, int max_k,
                          Metric metric);
std::string render_tables_csv(const BoundsOracle& oracle, int max_n, int max_k,
                              Metric metric);

// log2 of the heuristically expected number of functions on k+2 variables
// whose every restriction to a k-flat has degree >= k-1:
//   2^(k+2) + M * log2(1 - 2^-(k+1)),  M = 4(2^(k+2)-1)(2^(k+1)-1)/3
// with M exact. Requires 2 <= k <= 40.
double heuristic_expected_count_log2(int k);

}  // namespace flatdeg
