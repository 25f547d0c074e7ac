#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatdeg/corpus.hpp"
#include "flatdeg/flat.hpp"
#include "flatdeg/truth_table.hpp"

namespace flatdeg {

struct ScanOptions {
  uint64_t max_flats = kDefaultFlatBudget;
  int threads = 1;
  // Skip the ANF transform on flats whose parity is odd (restricted degree
  // is then exactly k). Results are identical with the shortcut off.
  bool parity_shortcut = true;
};

/*! Minimum of a restriction metric over every k-flat, with a witness. */
struct AnalysisResult {
  int value = 0;
  Flat witness;
  uint64_t flats_scanned = 0;
  Metric metric = Metric::degree;
};

// alpha (degree metric) / alpha' (nonlinearity metric): exact minimum over
// all canonical k-flats; witness is the first flat attaining it in
// enumeration order, independent of the thread count. Requires 1 <= k <= n.
AnalysisResult alpha(const TruthTable& tt, int k, Metric metric,
                     const ScanOptions& opts = {});

struct BadFlatReport {
  Metric metric = Metric::degree;
  int threshold = 0;
  uint64_t bad_count = 0;
  BigInt total;
};

// Degree metric: counts flats with restricted degree < threshold.
// Nonlinearity metric: counts flats with restricted nonlinearity <= threshold.
BadFlatReport bad_flat_count(const TruthTable& tt, int k, Metric metric,
                             int threshold, const ScanOptions& opts = {});

struct ExhaustOptions {
  bool allow_large = false;  // permit n = 5 (2^32 tables; slow)
  int threads = 1;
  uint64_t max_flats = kDefaultFlatBudget;
};

struct ExhaustResult {
  int value = 0;           // g(n,k) or g'(n,k)
  TruthTable maximizer;    // first function attaining it
};

// Exact max over all 2^(2^n) functions of alpha(f, k, metric); complement
// symmetry halves the scan. n <= 4 unless allow_large.
ExhaustResult exhaustive_g(int n, int k, Metric metric,
                           const ExhaustOptions& opts = {});

struct ClaimCheck {
  std::string id;
  std::string claim;
  std::string expected;
  std::string computed;
  bool pass = false;
  std::optional<std::string> witness;  // flat text, when one applies
};

struct VerifyReport {
  std::vector<ClaimCheck> rows;
  bool all_pass() const;
};

// Check every claim of a corpus entry; failures are reported, not thrown.
// alpha_eq claims produce separate <= and >= rows.
VerifyReport verify_claim(const CorpusEntry& entry, const ScanOptions& opts = {});

}  // namespace flatdeg
