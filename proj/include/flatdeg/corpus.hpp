#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flatdeg/anf.hpp"

namespace flatdeg {

enum class Metric { degree, nonlinearity };

std::string metric_name(Metric m);
Metric metric_from_name(const std::string& name);

/*! One verifiable statement about a bundled function. */
struct Claim {
  enum class Kind {
    alpha_eq,   // alpha(f, k) == value (checked as <= and >= separately)
    alpha_ge,   // alpha(f, k) >= value
    bad_flats,  // bad-flat count at the given threshold == value, out of total
  };
  Kind kind = Kind::alpha_eq;
  Metric metric = Metric::degree;
  int k = 0;
  int value = 0;
  int threshold = 0;     // bad_flats only
  uint64_t total = 0;    // bad_flats only

  std::string text() const;
};

struct CorpusEntry {
  std::string id;
  int n = 0;
  Anf anf;
  std::vector<Claim> claims;
};

/*! The function mapping x to 1 exactly when the Hamming weight of x is 0
 * or 1 (n+1 ones total); its minimum restricted degree over hyperplanes is
 * n-2, which is also the maximum any function attains. Requires n >= 2. */
TruthTable low_weight_witness(int n);

// Directory resolution for bundled data: explicit argument, else the
// FLATDEG_DATA_DIR environment variable, else the configured default.
std::string default_data_dir();

/*! Load one corpus file: ANF text plus '#'-prefixed key=value headers
 * (id, n, claim lines). Throws ResourceError / ParseError. */
CorpusEntry load_corpus_file(const std::string& path);

/*! All bundled entries: every .anf file under <data_dir>/corpus (sorted by
 * id), plus generated witness entries witness_n3 .. witness_n9. */
std::vector<CorpusEntry> corpus(const std::string& data_dir = "");

// Lookup by id; throws ResourceError when absent.
CorpusEntry corpus_entry(const std::string& id, const std::string& data_dir = "");

}  // namespace flatdeg
