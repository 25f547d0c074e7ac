#include "flatdeg/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "flatdeg/anf_text.hpp"
#include "flatdeg/build_paths.hpp"
#include "flatdeg/errors.hpp"

namespace flatdeg {

std::string metric_name(Metric m) {
  return m == Metric::degree ? "degree" : "nonlinearity";
}

Metric metric_from_name(const std::string& name) {
  if (name == "degree" || name == "deg") return Metric::degree;
  if (name == "nonlinearity" || name == "nl") return Metric::nonlinearity;
  throw std::invalid_argument("unknown metric '" + name + "'");
}

std::string Claim::text() const {
  const char* sym = metric == Metric::degree ? "alpha" : "alpha'";
  std::ostringstream out;
  switch (kind) {
    case Kind::alpha_eq:
      out << sym << "(f," << k << ") = " << value;
      break;
    case Kind::alpha_ge:
      out << sym << "(f," << k << ") >= " << value;
      break;
    case Kind::bad_flats:
      out << "bad flats (" << metric_name(metric) << ", k=" << k
          << ", threshold " << threshold << ") = " << value << " of " << total;
      break;
  }
  return out.str();
}

TruthTable low_weight_witness(int n) {
  if (n < 2) throw std::invalid_argument("witness needs n >= 2");
  TruthTable tt(n);
  tt.set_bit(0, true);
  for (int i = 0; i < n; ++i) tt.set_bit(uint32_t(1) << i, true);
  return tt;
}

std::string default_data_dir() {
  if (const char* env = std::getenv("FLATDEG_DATA_DIR"); env && *env)
    return env;
  return FLATDEG_SOURCE_DATA_DIR;
}

namespace {

// header line: "# key=value [key=value ...]" after the leading '#'
std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& line) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw ResourceError("bad corpus header token '" + tok + "'");
    out.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
  }
  return out;
}

Claim parse_claim(const std::string& line, const std::string& path) {
  auto kv = parse_kv(line);
  Claim c;
  bool have_kind = false;
  for (auto& [key, value] : kv) {
    if (key == "claim") {
      have_kind = true;
      if (value == "alpha")
        c.kind = Claim::Kind::alpha_eq;
      else if (value == "alpha_ge")
        c.kind = Claim::Kind::alpha_ge;
      else if (value == "badflats")
        c.kind = Claim::Kind::bad_flats;
      else
        throw ResourceError(path + ": unknown claim kind '" + value + "'");
    } else if (key == "metric") {
      c.metric = metric_from_name(value);
    } else if (key == "k") {
      c.k = std::stoi(value);
    } else if (key == "value" || key == "bad") {
      c.value = std::stoi(value);
    } else if (key == "d") {
      c.threshold = std::stoi(value);
    } else if (key == "total") {
      c.total = std::stoull(value);
    } else {
      throw ResourceError(path + ": unknown claim key '" + key + "'");
    }
  }
  if (!have_kind) throw ResourceError(path + ": claim line without kind");
  return c;
}

}  // namespace

CorpusEntry load_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open corpus file " + path);
  CorpusEntry entry;
  int declared_n = -1;
  std::string body, line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string rest = line.substr(1);
      if (rest.find("claim=") != std::string::npos) {
        entry.claims.push_back(parse_claim(rest, path));
        continue;
      }
      for (auto& [key, value] : parse_kv(rest)) {
        if (key == "id")
          entry.id = value;
        else if (key == "n")
          declared_n = std::stoi(value);
        else
          throw ResourceError(path + ": unknown header key '" + key + "'");
      }
      continue;
    }
    body += line;
    body += ' ';
  }
  if (entry.id.empty()) throw ResourceError(path + ": missing id header");
  if (declared_n < 0) throw ResourceError(path + ": missing n header");
  entry.n = declared_n;
  entry.anf = parse_anf(body, declared_n);
  return entry;
}

static CorpusEntry witness_entry(int n) {
  CorpusEntry entry;
  entry.id = "witness_n" + std::to_string(n);
  entry.n = n;
  entry.anf = mobius(low_weight_witness(n));
  Claim c;
  c.kind = Claim::Kind::alpha_ge;
  c.metric = Metric::degree;
  c.k = n - 1;
  c.value = n - 2;
  entry.claims.push_back(c);
  return entry;
}

std::vector<CorpusEntry> corpus(const std::string& data_dir) {
  namespace fs = std::filesystem;
  std::string dir = data_dir.empty() ? default_data_dir() : data_dir;
  fs::path corpus_dir = fs::path(dir) / "corpus";
  if (!fs::is_directory(corpus_dir))
    throw ResourceError("corpus directory not found: " + corpus_dir.string());
  std::vector<std::string> files;
  for (const auto& de : fs::directory_iterator(corpus_dir))
    if (de.is_regular_file() && de.path().extension() == ".anf")
      files.push_back(de.path().string());
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> entries;
  for (const auto& f : files) entries.push_back(load_corpus_file(f));
  for (int n = 3; n <= 9; ++n) entries.push_back(witness_entry(n));
  return entries;
}

CorpusEntry corpus_entry(const std::string& id, const std::string& data_dir) {
  for (auto& e : corpus(data_dir))
    if (e.id == id) return e;
  throw ResourceError("no corpus entry with id '" + id + "'");
}

}  // namespace flatdeg
