// flatdeg: restricted degree / nonlinearity analysis of Boolean functions
// over the flats of F_2^n.
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "flatdeg/analysis.hpp"
#include "flatdeg/anf_text.hpp"
#include "flatdeg/bounds.hpp"
#include "flatdeg/corpus.hpp"
#include "flatdeg/errors.hpp"
#include "flatdeg/search.hpp"

using json = nlohmann::json;
using namespace flatdeg;

namespace {

constexpr const char* kSchema = "flatdeg/1";

constexpr int kExitOk = 0;
constexpr int kExitClaimFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitResource = 4;

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

// Shared function-input group: exactly one of --tt/--anf/--anf-file/--corpus.
struct FunctionInput {
  std::string tt_hex, anf_text, anf_file, corpus_id, data_dir;
  int n = -1;

  void add_flags(CLI::App* cmd) {
    auto* tt = cmd->add_option("--tt", tt_hex, "truth table in hex");
    auto* anf = cmd->add_option("--anf", anf_text, "ANF expression");
    auto* file = cmd->add_option("--anf-file", anf_file, "file with an ANF expression");
    auto* corp = cmd->add_option("--corpus", corpus_id, "bundled corpus entry id");
    tt->excludes(anf)->excludes(file)->excludes(corp);
    anf->excludes(file)->excludes(corp);
    file->excludes(corp);
    cmd->add_option("--n", n, "number of variables (required with --tt)");
    cmd->add_option("--data-dir", data_dir, "data directory override");
  }

  TruthTable resolve() const {
    if (!tt_hex.empty()) {
      if (n < 0)
        throw ParseError("--tt needs --n", 0);
      return TruthTable::from_hex(n, tt_hex);
    }
    if (!anf_text.empty()) {
      std::optional<int> declared;
      if (n >= 0) declared = n;
      return anf_to_tt(parse_anf(anf_text, declared));
    }
    if (!anf_file.empty()) {
      std::ifstream in(anf_file);
      if (!in) throw ResourceError("cannot open " + anf_file);
      std::string body, line;
      while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;  // corpus headers
        body += line;
        body += ' ';
      }
      std::optional<int> declared;
      if (n >= 0) declared = n;
      return anf_to_tt(parse_anf(body, declared));
    }
    if (!corpus_id.empty())
      return anf_to_tt(corpus_entry(corpus_id, data_dir).anf);
    throw ParseError("one of --tt/--anf/--anf-file/--corpus is required", 0);
  }
};

void emit(bool as_json, const json& payload, const std::string& human) {
  if (as_json)
    std::cout << payload.dump(2) << "\n";
  else
    std::cout << human;
}

int run_analyze(const FunctionInput& input, int k, const std::string& metric,
                int threads, uint64_t budget, bool as_json) {
  Clock clock;
  TruthTable tt = input.resolve();
  Metric m = metric_from_name(metric);
  ScanOptions opts;
  opts.threads = threads;
  opts.max_flats = budget;
  AnalysisResult r = alpha(tt, k, m, opts);
  json out{{"schema", kSchema},
           {"command", "analyze"},
           {"n", tt.vars()},
           {"k", k},
           {"metric", metric_name(m)},
           {"value", r.value},
           {"witness", r.witness.to_text()},
           {"flats_scanned", r.flats_scanned},
           {"wall_ms", clock.ms()}};
  std::ostringstream human;
  human << (m == Metric::degree ? "alpha" : "alpha'") << "(f, " << k
        << ") = " << r.value << "\n"
        << "witness: " << r.witness.to_text() << "\n"
        << "flats scanned: " << r.flats_scanned << "\n"
        << "wall time: " << clock.ms() << " ms\n";
  emit(as_json, out, human.str());
  return kExitOk;
}

int run_search(SearchConfig cfg, bool as_json) {
  Clock clock;
  SearchOutcome outcome = search(cfg);
  Anf anf = mobius(outcome.function);
  json out{{"schema", kSchema},
           {"command", "search"},
           {"config",
            {{"n", cfg.n},
             {"k", cfg.k},
             {"metric", metric_name(cfg.metric)},
             {"threshold", cfg.threshold},
             {"steps", cfg.steps},
             {"restarts", cfg.restarts},
             {"seed", cfg.seed},
             {"p_flip_one", cfg.p_flip_one}}},
           {"rng", outcome.rng_algorithm},
           {"status",
            outcome.status == SearchStatus::found ? "found" : "exhausted"},
           {"bad_flats", outcome.bad_flats},
           {"restarts_used", outcome.restarts_used},
           {"steps_used", outcome.steps_used},
           {"restart_best", outcome.restart_best},
           {"function_hex", outcome.function.to_hex()},
           {"function_anf", print_anf(anf)},
           {"wall_ms", clock.ms()}};
  if (cfg.record_trace) out["trace"] = outcome.trace;
  std::ostringstream human;
  human << "status: "
        << (outcome.status == SearchStatus::found ? "found" : "exhausted")
        << "\nbad flats: " << outcome.bad_flats
        << "\nrestarts used: " << outcome.restarts_used
        << "\nsteps used: " << outcome.steps_used << "\nfunction (hex): "
        << outcome.function.to_hex() << "\nfunction (ANF): " << print_anf(anf)
        << "\nrng: " << outcome.rng_algorithm << "\nwall time: " << clock.ms()
        << " ms\n";
  emit(as_json, out, human.str());
  return kExitOk;
}

BoundsOracle make_oracle(const std::string& known_values_path) {
  if (known_values_path.empty()) return BoundsOracle();
  return BoundsOracle(KnownValueDb::load(known_values_path));
}

int run_bounds(int n, int k, const std::string& metric,
               const std::string& known_values_path, int heuristic_k,
               bool as_json) {
  if (heuristic_k >= 0) {
    double v = heuristic_expected_count_log2(heuristic_k);
    json out{{"schema", kSchema},
             {"command", "bounds"},
             {"heuristic_k", heuristic_k},
             {"expected_count_log2", v}};
    std::ostringstream human;
    human << "log2(expected count) for k=" << heuristic_k << ": " << v << "\n";
    emit(as_json, out, human.str());
    return kExitOk;
  }
  BoundsOracle oracle = make_oracle(known_values_path);
  Metric m = metric_from_name(metric);
  BoundsResult r = oracle.resolve(n, k, m);
  json lower = json::array(), upper = json::array();
  for (const auto& c : r.lower) lower.push_back({{"name", c.name}, {"value", c.value}});
  for (const auto& c : r.upper) upper.push_back({{"name", c.name}, {"value", c.value}});
  json out{{"schema", kSchema}, {"command", "bounds"},
           {"n", n},           {"k", k},
           {"metric", metric_name(m)}, {"lo", r.lo},
           {"hi", r.hi},       {"cell", bounds_cell(r)},
           {"lower", lower},   {"upper", upper}};
  std::ostringstream human;
  human << (m == Metric::degree ? "g(" : "g'(") << n << ", " << k << ") in ["
        << r.lo << ", " << r.hi << "]  cell: " << bounds_cell(r) << "\n";
  human << "lower bounds:\n";
  for (const auto& c : r.lower)
    human << "  " << c.name << " -> " << c.value << "\n";
  human << "upper bounds:\n";
  for (const auto& c : r.upper)
    human << "  " << c.name << " -> " << c.value << "\n";
  emit(as_json, out, human.str());
  return kExitOk;
}

int run_table(int max_n, int max_k, const std::string& metric, bool csv,
              const std::string& known_values_path, bool as_json) {
  BoundsOracle oracle = make_oracle(known_values_path);
  Metric m = metric_from_name(metric);
  if (as_json) {
    json cells = json::array();
    for (int k = 1; k <= max_k; ++k) {
      json row = json::array();
      for (int n = 1; n <= max_n; ++n)
        row.push_back(n < k ? "" : bounds_cell(oracle.resolve(n, k, m)));
      cells.push_back(row);
    }
    json out{{"schema", kSchema}, {"command", "table"},
             {"metric", metric_name(m)}, {"max_n", max_n},
             {"max_k", max_k},   {"cells", cells}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << (csv ? render_tables_csv(oracle, max_n, max_k, m)
                    : render_tables(oracle, max_n, max_k, m));
  return kExitOk;
}

int run_flats(int n, int k, int through, bool count_only, uint64_t limit,
              uint64_t budget, bool as_json) {
  BigInt total = through >= 0 ? count_subspaces(n, k) : count_flats(n, k);
  if (count_only) {
    json out{{"schema", kSchema},
             {"command", "flats"},
             {"n", n},
             {"k", k},
             {"count", total.str()}};
    if (through >= 0) out["through"] = through;
    emit(as_json, out, total.str() + "\n");
    return kExitOk;
  }
  uint64_t emitted = 0;
  json list = json::array();
  auto visit = [&](const Flat& f) {
    if (as_json)
      list.push_back(f.to_text());
    else
      std::cout << f.to_text() << "\n";
    ++emitted;
    return limit == 0 || emitted < limit;
  };
  if (through >= 0) {
    FlatPointEnumerator e(n, k, uint32_t(through), budget);
    for (; !e.done(); e.advance())
      if (!visit(e.current())) break;
  } else {
    FlatEnumerator e(n, k, budget);
    for (; !e.done(); e.advance())
      if (!visit(e.current())) break;
  }
  if (as_json) {
    json out{{"schema", kSchema}, {"command", "flats"},   {"n", n},
             {"k", k},            {"count", total.str()}, {"flats", list}};
    std::cout << out.dump(2) << "\n";
  }
  return kExitOk;
}

int run_parse(const FunctionInput& input, bool as_json) {
  TruthTable tt = input.resolve();
  Anf anf = mobius(tt);
  json out{{"schema", kSchema},
           {"command", "parse"},
           {"n", tt.vars()},
           {"tt_hex", tt.to_hex()},
           {"anf", print_anf(anf)},
           {"degree", degree(anf)},
           {"weight", tt.weight()},
           {"terms", anf.monomials.size()}};
  std::ostringstream human;
  human << "n: " << tt.vars() << "\ntt (hex): " << tt.to_hex()
        << "\nANF: " << print_anf(anf) << "\ndegree: " << degree(anf)
        << "\nweight: " << tt.weight() << "\nterms: " << anf.monomials.size()
        << "\n";
  emit(as_json, out, human.str());
  return kExitOk;
}

int run_verify(const std::string& entry_id, const std::string& data_dir,
               int threads, bool as_json) {
  ScanOptions opts;
  opts.threads = threads;
  std::vector<CorpusEntry> entries;
  if (entry_id.empty())
    entries = corpus(data_dir);
  else
    entries.push_back(corpus_entry(entry_id, data_dir));
  json rows = json::array();
  bool all_pass = true;
  std::ostringstream human;
  for (const auto& entry : entries) {
    VerifyReport report = verify_claim(entry, opts);
    for (const auto& row : report.rows) {
      all_pass = all_pass && row.pass;
      json j{{"id", row.id},
             {"claim", row.claim},
             {"expected", row.expected},
             {"computed", row.computed},
             {"status", row.pass ? "pass" : "fail"}};
      if (row.witness) j["witness"] = *row.witness;
      rows.push_back(j);
      human << (row.pass ? "PASS" : "FAIL") << "  " << row.id << "  "
            << row.claim << "  computed=" << row.computed << "\n";
    }
  }
  human << (all_pass ? "all claims pass\n" : "some claims FAILED\n");
  json out{{"schema", kSchema},
           {"command", "verify"},
           {"rows", rows},
           {"all_pass", all_pass}};
  emit(as_json, out, human.str());
  return all_pass ? kExitOk : kExitClaimFailure;
}

int run_exhaust(int n, int k, const std::string& metric, bool override_budget,
                int threads, bool as_json) {
  Clock clock;
  Metric m = metric_from_name(metric);
  ExhaustOptions opts;
  opts.allow_large = override_budget;
  opts.threads = threads;
  ExhaustResult r = exhaustive_g(n, k, m, opts);
  json out{{"schema", kSchema},
           {"command", "exhaust"},
           {"n", n},
           {"k", k},
           {"metric", metric_name(m)},
           {"value", r.value},
           {"maximizer_hex", r.maximizer.to_hex()},
           {"maximizer_anf", print_anf(mobius(r.maximizer))},
           {"wall_ms", clock.ms()}};
  std::ostringstream human;
  human << (m == Metric::degree ? "g(" : "g'(") << n << ", " << k
        << ") = " << r.value << "\nmaximizer (hex): " << r.maximizer.to_hex()
        << "\nmaximizer (ANF): " << print_anf(mobius(r.maximizer))
        << "\nwall time: " << clock.ms() << " ms\n";
  emit(as_json, out, human.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean functions restricted to flats of F_2^n: minimum "
               "restricted degree/nonlinearity, bounds, tables and search"};
  app.require_subcommand(1);
  app.fallthrough();  // let --json appear after the subcommand too

  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "compute alpha(f,k) / alpha'(f,k) with a witness flat");
  FunctionInput analyze_input;
  analyze_input.add_flags(analyze);
  int analyze_k = 0;
  std::string analyze_metric = "degree";
  int analyze_threads = 1;
  uint64_t analyze_budget = kDefaultFlatBudget;
  analyze->add_option("--k", analyze_k, "flat dimension")->required();
  analyze->add_option("--metric", analyze_metric, "degree|nl");
  analyze->add_option("--threads", analyze_threads, "scan parallelism");
  analyze->add_option("--budget", analyze_budget, "max flats to scan");

  // search
  auto* search_cmd = app.add_subcommand(
      "search", "hill-climb for a function with no bad flats");
  SearchConfig cfg;
  std::string search_metric = "degree";
  auto* seed_opt = search_cmd->add_option("--seed", cfg.seed,
                                          "rng seed (required, explicit)");
  search_cmd->add_option("--n", cfg.n, "variables")->required();
  search_cmd->add_option("--k", cfg.k, "flat dimension")->required();
  search_cmd->add_option("--metric", search_metric, "degree|nl");
  search_cmd->add_option("--threshold", cfg.threshold, "d (degree) or m (nl)")
      ->required();
  search_cmd->add_option("--steps", cfg.steps, "steps per restart");
  search_cmd->add_option("--restarts", cfg.restarts, "restart count");
  search_cmd->add_option("--p-one", cfg.p_flip_one,
                         "probability of flipping one point");
  search_cmd->add_option("--threads", cfg.threads, "parallel restarts");
  search_cmd->add_option("--memory-budget", cfg.memory_budget_bytes,
                         "incidence-index budget in bytes");
  search_cmd->add_flag("--trace", cfg.record_trace, "record per-step objective");

  // bounds
  auto* bounds_cmd =
      app.add_subcommand("bounds", "interval for g(n,k) / g'(n,k)");
  int bounds_n = 0, bounds_k = 0, heuristic_k = -1;
  std::string bounds_metric = "degree", known_values_path;
  bounds_cmd->add_option("--n", bounds_n, "variables");
  bounds_cmd->add_option("--k", bounds_k, "flat dimension");
  bounds_cmd->add_option("--metric", bounds_metric, "degree|nl");
  bounds_cmd->add_option("--known-values", known_values_path,
                         "known-values data file");
  bounds_cmd->add_option("--heuristic-k", heuristic_k,
                         "print the heuristic expected-count log2 instead");

  // table
  auto* table_cmd = app.add_subcommand("table", "render the bounds tables");
  int max_n = 12, max_k = 6;
  std::string table_metric = "degree", table_known;
  bool table_csv = false;
  table_cmd->add_option("--max-n", max_n, "columns");
  table_cmd->add_option("--max-k", max_k, "rows");
  table_cmd->add_option("--metric", table_metric, "degree|nl");
  table_cmd->add_flag("--csv", table_csv, "CSV output");
  table_cmd->add_option("--known-values", table_known, "known-values data file");

  // flats
  auto* flats_cmd = app.add_subcommand("flats", "enumerate canonical flats");
  int flats_n = 0, flats_k = 0, flats_through = -1;
  bool flats_count = false;
  uint64_t flats_limit = 0, flats_budget = kDefaultFlatBudget;
  flats_cmd->add_option("--n", flats_n, "variables")->required();
  flats_cmd->add_option("--k", flats_k, "flat dimension")->required();
  flats_cmd->add_option("--through", flats_through, "only flats through point");
  flats_cmd->add_flag("--count", flats_count, "print the count only");
  flats_cmd->add_option("--limit", flats_limit, "stop after this many");
  flats_cmd->add_option("--budget", flats_budget, "enumeration budget");

  // parse
  auto* parse_cmd =
      app.add_subcommand("parse", "convert between ANF text and tt hex");
  FunctionInput parse_input;
  parse_input.add_flags(parse_cmd);

  // verify (all bundled corpus claims)
  auto* verify_cmd = app.add_subcommand(
      "verify", "check every bundled corpus claim");
  verify_cmd->alias("verify-corpus");
  std::string verify_entry, verify_data_dir;
  int verify_threads = 1;
  verify_cmd->add_option("--entry", verify_entry, "check a single entry id");
  verify_cmd->add_option("--data-dir", verify_data_dir, "data directory");
  verify_cmd->add_option("--threads", verify_threads, "scan parallelism");

  // exhaust
  auto* exhaust_cmd = app.add_subcommand(
      "exhaust", "exact g(n,k)/g'(n,k) by scanning every function");
  int ex_n = 0, ex_k = 0, ex_threads = 1;
  std::string ex_metric = "degree";
  bool ex_override = false;
  exhaust_cmd->add_option("--n", ex_n, "variables")->required();
  exhaust_cmd->add_option("--k", ex_k, "flat dimension")->required();
  exhaust_cmd->add_option("--metric", ex_metric, "degree|nl");
  exhaust_cmd->add_flag("--override", ex_override, "allow the n=5 long scan");
  exhaust_cmd->add_option("--threads", ex_threads, "scan parallelism");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*analyze)
      return run_analyze(analyze_input, analyze_k, analyze_metric,
                         analyze_threads, analyze_budget, as_json);
    if (*search_cmd) {
      if (seed_opt->count() == 0)
        throw ParseError("search requires an explicit --seed", 0);
      cfg.metric = metric_from_name(search_metric);
      return run_search(cfg, as_json);
    }
    if (*bounds_cmd) {
      if (heuristic_k < 0 && (bounds_n <= 0 || bounds_k <= 0))
        throw ParseError("bounds needs --n and --k (or --heuristic-k)", 0);
      return run_bounds(bounds_n, bounds_k, bounds_metric, known_values_path,
                        heuristic_k, as_json);
    }
    if (*table_cmd)
      return run_table(max_n, max_k, table_metric, table_csv, table_known,
                       as_json);
    if (*flats_cmd)
      return run_flats(flats_n, flats_k, flats_through, flats_count,
                       flats_limit, flats_budget, as_json);
    if (*parse_cmd) return run_parse(parse_input, as_json);
    if (*verify_cmd)
      return run_verify(verify_entry, verify_data_dir, verify_threads, as_json);
    if (*exhaust_cmd)
      return run_exhaust(ex_n, ex_k, ex_metric, ex_override, ex_threads,
                         as_json);
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
