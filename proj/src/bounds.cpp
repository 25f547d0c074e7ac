#include "flatdeg/bounds.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "flatdeg/errors.hpp"

namespace flatdeg {

namespace {

BigInt binomial(long n, long r) {
  if (r < 0 || r > n) return 0;
  BigInt out = 1;
  for (long i = 0; i < r; ++i) {
    out *= n - i;
    out /= i + 1;  // exact at every step
  }
  return out;
}

}  // namespace

bool counting_condition_holds(int n, int k, int d) {
  if (!(n > k && k > d && d >= 0))
    throw std::invalid_argument("need n > k > d >= 0");
  BigInt lhs = BigInt(k + 1) * (n - k) + 2;
  BigInt rhs = 0;
  for (int j = 0; j <= k - d - 1; ++j) rhs += binomial(k, j);
  return lhs <= rhs;
}

int counting_lower_bound(int n, int k) {
  if (!(n > k && k >= 1))
    throw std::invalid_argument("need n > k >= 1");
  int best = -1;
  for (int d = 0; d < k; ++d)
    if (counting_condition_holds(n, k, d)) best = d;
  return best + 1;
}

int closed_form_lower_bound(int n, int k) {
  if (k < 5) throw std::invalid_argument("closed form needs k >= 5");
  // Integer-safe forms of the interval endpoints.
  if (k + 2 <= n && 2 * n <= 3 * k - 1) return k - 2;
  if (3 * k <= 2 * n && 6 * n <= (k + 1) * (k + 4)) return k - 3;
  return 0;
}

int counting_lower_bound_nl(int n, int k) {
  if (!(n > k && k >= 2 && k <= kMaxVars))
    throw std::invalid_argument("need kMaxVars >= k >= 2 and n > k");
  long exponent = (long(1) << k) - long(k + 1) * (n - k + 1) - 2;
  if (exponent < 0) return 0;
  BigInt threshold = BigInt(1) << exponent;
  BigInt sum = 0;
  BigInt term = 1;  // C(2^k, 0)
  long points = long(1) << k;
  long m_cap = k >= 2 ? (long(1) << (k - 2)) : 0;  // condition needs m < 2^(k-2)
  int best = -1;
  for (long m = 0; m < m_cap; ++m) {
    if (m > 0) {
      term *= points - (m - 1);
      term /= m;
    }
    sum += term;
    if (sum <= threshold)
      best = int(m);
    else
      break;
  }
  return best + 1;
}

BigInt pow2_ratio_ceil(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0 || std::max(a + 1, b) > c || c > a + b)
    throw std::invalid_argument("need max(a+1, b) <= c <= a+b with a,b,c >= 0");
  return BigInt(1) << (a + b - c);
}

int combining_upper_bound(int n, int k) {
  if (!(1 <= k && k <= n))
    throw std::invalid_argument("need 1 <= k <= n");
  for (int d = 0; d < k; ++d) {
    // floor(2^(d-1)) is 0 at d = 0
    BigInt needed = (BigInt(1) << (k - 1)) + k - (d == 0 ? BigInt(0) : BigInt(1) << (d - 1));
    if (BigInt(n) >= needed) return d;
  }
  return k;  // no clause applies
}

int hyperplane_exact(int n) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  return n - 2;
}

// ---------------------------------------------------------------------------
// Known values

KnownValueDb KnownValueDb::builtin() {
  using K = KnownValue::Kind;
  KnownValueDb db;
  auto add = [&](Metric m, int n, int k, K kind, int v, const char* src) {
    db.entries_.push_back(KnownValue{m, n, k, kind, v, src});
  };
  // Every function of n <= 7 variables is floor(n/2)-normal (Dubuc).
  add(Metric::degree, 2, 1, K::exact, 0, "dubuc");
  add(Metric::degree, 3, 1, K::exact, 0, "dubuc");
  add(Metric::degree, 4, 2, K::exact, 0, "dubuc");
  add(Metric::degree, 5, 2, K::exact, 0, "dubuc");
  add(Metric::degree, 6, 3, K::exact, 0, "dubuc");
  add(Metric::degree, 7, 3, K::exact, 0, "dubuc");
  // Verified by exhausting Langevin's classifications (<= 7 variables).
  add(Metric::degree, 5, 3, K::exact, 1, "langevin-class");
  add(Metric::degree, 6, 4, K::exact, 2, "langevin-class");
  add(Metric::degree, 7, 5, K::exact, 3, "langevin-class");
  // Search witnesses plus monotonicity in n pin these exactly.
  add(Metric::degree, 7, 4, K::exact, 2, "search-witness");
  add(Metric::degree, 8, 5, K::exact, 3, "search-witness");
  // A bent function in 8 variables that is not 4-normal (Polujan et al.).
  add(Metric::degree, 8, 4, K::lower, 1, "polujan");
  // A bent function in 10 variables that is not weakly 5-normal (Canteaut et al.).
  add(Metric::degree, 10, 5, K::lower, 2, "canteaut");
  // Full-space nonlinearity maxima (bent / almost-bent).
  add(Metric::nonlinearity, 2, 2, K::exact, 1, "bent");
  add(Metric::nonlinearity, 3, 3, K::exact, 2, "bent");
  add(Metric::nonlinearity, 4, 4, K::exact, 6, "bent");
  add(Metric::nonlinearity, 5, 5, K::exact, 12, "bent");
  add(Metric::nonlinearity, 6, 6, K::exact, 28, "bent");
  // Restricted-nonlinearity values from Langevin's classifications.
  add(Metric::nonlinearity, 4, 3, K::exact, 2, "langevin-class");
  add(Metric::nonlinearity, 5, 4, K::exact, 4, "langevin-class");
  add(Metric::nonlinearity, 6, 4, K::exact, 4, "langevin-class");
  add(Metric::nonlinearity, 6, 5, K::exact, 12, "langevin-class");
  return db;
}

KnownValueDb KnownValueDb::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open known-values file " + path);
  KnownValueDb db;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream row(line);
    std::string metric, kind, source;
    int n, k, value;
    if (!(row >> metric)) continue;  // blank line
    if (!(row >> n >> k >> kind >> value >> source))
      throw ResourceError(path + ":" + std::to_string(lineno) +
                          ": expected 'metric n k kind value source'");
    KnownValue kvalue;
    kvalue.metric = metric_from_name(metric);
    kvalue.n = n;
    kvalue.k = k;
    if (kind == "exact")
      kvalue.kind = KnownValue::Kind::exact;
    else if (kind == "lower")
      kvalue.kind = KnownValue::Kind::lower;
    else
      throw ResourceError(path + ":" + std::to_string(lineno) +
                          ": kind must be exact|lower");
    kvalue.value = value;
    kvalue.source = source;
    db.entries_.push_back(std::move(kvalue));
  }
  return db;
}

std::vector<KnownValue> KnownValueDb::find(int n, int k, Metric metric) const {
  std::vector<KnownValue> out;
  for (const auto& e : entries_)
    if (e.n == n && e.k == k && e.metric == metric) out.push_back(e);
  return out;
}

// ---------------------------------------------------------------------------
// Oracle

BoundsOracle::BoundsOracle(KnownValueDb db) : db_(std::move(db)) {}

BoundsResult BoundsOracle::resolve(int n, int k, Metric metric) const {
  if (!(1 <= k && k <= n && n <= kMaxVars))
    throw std::invalid_argument("need 1 <= k <= n <= " +
                                std::to_string(kMaxVars));
  auto key = std::make_tuple(n, k, int(metric));
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  // compute() recurses through resolve(), so the lock is not held across it;
  // a concurrent duplicate computation is pure and the insert is idempotent.
  BoundsResult r = compute(n, k, metric);
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.emplace(key, r);
  return r;
}

BoundsResult BoundsOracle::compute(int n, int k, Metric metric) const {
  BoundsResult r;
  r.n = n;
  r.k = k;
  r.metric = metric;

  std::vector<BoundContribution> lower, upper;
  auto add_lower = [&](const std::string& name, int v) {
    lower.push_back({name, v});
  };
  auto add_upper = [&](const std::string& name, int v) {
    upper.push_back({name, v});
  };

  if (metric == Metric::degree) {
    if (n == k) {
      // the full-degree function x_1...x_n pins g(n,n) = n
      add_lower("trivial", n);
      add_upper("trivial", n);
    } else {
      add_lower("trivial", 0);
      add_upper("trivial", k);
      if (k == n - 1) {
        add_lower("hyperplane-exact", hyperplane_exact(n));
        add_upper("hyperplane-exact", hyperplane_exact(n));
      }
      add_lower("counting-lower", counting_lower_bound(n, k));
      if (k >= 5)
        add_lower("counting-lower-closed-form", closed_form_lower_bound(n, k));
      add_upper("combining-upper", combining_upper_bound(n, k));
    }
  } else {
    add_lower("trivial", 0);
    add_upper("trivial", 1 << (k - 1));
    if (n > k && k >= 2)
      add_lower("counting-lower", counting_lower_bound_nl(n, k));
    // g(n,k) <= 1 iff g'(n,k) = 0; g(n,k) >= 2 iff g'(n,k) >= 1.
    BoundsResult deg = resolve(n, k, Metric::degree);
    if (deg.lo >= 2) add_lower("degree-link", 1);
    if (deg.hi <= 1) add_upper("degree-link", 0);
  }

  for (const KnownValue& kv : db_.find(n, k, metric)) {
    std::string name = "known-value:" + kv.source;
    add_lower(name, kv.value);
    if (kv.kind == KnownValue::Kind::exact) add_upper(name, kv.value);
  }

  int direct_hi = INT_MAX;
  for (const auto& c : upper) direct_hi = std::min(direct_hi, c.value);

  if (n > k) {
    BoundsResult prev = resolve(n - 1, k, metric);
    add_upper("monotone-n", prev.hi);  // g(n,k) <= g(n-1,k)
  }

  int lo = 0, hi = INT_MAX;
  for (const auto& c : lower) lo = std::max(lo, c.value);
  for (const auto& c : upper) hi = std::min(hi, c.value);
  r.lo = lo;
  r.hi = hi;
  r.direct_hi = direct_hi;
  r.lower = std::move(lower);
  r.upper = std::move(upper);
  return r;
}

// ---------------------------------------------------------------------------
// Rendering

std::string bounds_cell(const BoundsResult& r) {
  if (r.lo == r.hi) return std::to_string(r.lo);
  if (r.hi == r.lo + 1 && r.direct_hi == r.hi)
    return std::to_string(r.lo) + " or " + std::to_string(r.hi);
  return "\xe2\x89\xa5 " + std::to_string(r.lo);  // "≥ lo"
}

namespace {

std::size_t utf8_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s)
    if ((c & 0xc0) != 0x80) ++w;  // count code points
  return w;
}

std::vector<std::vector<std::string>> table_cells(const BoundsOracle& oracle,
                                                  int max_n, int max_k,
                                                  Metric metric) {
  std::vector<std::vector<std::string>> cells(max_k);
  for (int k = 1; k <= max_k; ++k) {
    cells[k - 1].resize(max_n);
    for (int n = 1; n <= max_n; ++n)
      cells[k - 1][n - 1] =
          n < k ? "" : bounds_cell(oracle.resolve(n, k, metric));
  }
  return cells;
}

}  // namespace

std::string render_tables(const BoundsOracle& oracle, int max_n, int max_k,
                          Metric metric) {
  if (max_n < 1 || max_k < 1) throw std::invalid_argument("empty table");
  auto cells = table_cells(oracle, max_n, max_k, metric);
  std::vector<std::size_t> width(max_n);
  for (int n = 1; n <= max_n; ++n) {
    width[n - 1] = std::to_string(n).size();
    for (int k = 1; k <= max_k; ++k)
      width[n - 1] = std::max(width[n - 1], utf8_width(cells[k - 1][n - 1]));
  }
  auto pad_left = [](const std::string& s, std::size_t w) {
    std::size_t have = utf8_width(s);
    return std::string(w > have ? w - have : 0, ' ') + s;
  };
  std::ostringstream out;
  const std::string label = "k\\n";
  out << label;
  for (int n = 1; n <= max_n; ++n)
    out << "  " << pad_left(std::to_string(n), width[n - 1]);
  out << '\n';
  for (int k = 1; k <= max_k; ++k) {
    std::string line = pad_left(std::to_string(k), label.size());
    for (int n = 1; n <= max_n; ++n)
      line += "  " + pad_left(cells[k - 1][n - 1], width[n - 1]);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
  return out.str();
}

std::string render_tables_csv(const BoundsOracle& oracle, int max_n, int max_k,
                              Metric metric) {
  if (max_n < 1 || max_k < 1) throw std::invalid_argument("empty table");
  auto cells = table_cells(oracle, max_n, max_k, metric);
  std::ostringstream out;
  out << "k/n";
  for (int n = 1; n <= max_n; ++n) out << ',' << n;
  out << '\n';
  for (int k = 1; k <= max_k; ++k) {
    out << k;
    for (int n = 1; n <= max_n; ++n) out << ',' << cells[k - 1][n - 1];
    out << '\n';
  }
  return out.str();
}

double heuristic_expected_count_log2(int k) {
  if (k < 2 || k > 40) throw std::invalid_argument("need 2 <= k <= 40");
  // M = 4 (2^(k+2)-1)(2^(k+1)-1) / 3, the number of k-flats of F_2^(k+2)
  BigInt m_exact = ((BigInt(1) << (k + 2)) - 1) * ((BigInt(1) << (k + 1)) - 1);
  m_exact = m_exact * 4 / 3;
  double m = m_exact.convert_to<double>();
  double log2_term = std::log1p(-std::ldexp(1.0, -(k + 1))) / std::log(2.0);
  return std::ldexp(1.0, k + 2) + m * log2_term;
}

}  // namespace flatdeg
