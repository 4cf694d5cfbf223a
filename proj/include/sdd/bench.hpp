#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdd/cnf.hpp"
#include "sdd/manager.hpp"

namespace sdd::bench {

// Seeded random k-CNF corpus.
struct CorpusSpec {
  std::uint64_t seed = 1;
  int instances = 0;
  int vars = 8;
  int min_clauses = 5;
  int max_clauses = 25;
  int width = 3;
};

struct Instance {
  int index;
  std::uint64_t seed;
  Cnf cnf;
};

// Clauses with `width` distinct variables (capped at vars) and random
// polarities. Stable across platforms for a given seed.
Cnf random_cnf(std::uint64_t seed, int vars, int clauses, int width);
std::vector<Instance> make_corpus(const CorpusSpec& spec);

// "balanced", "right-linear" or "bounded:<k>", over variables 1..vars in
// increasing order.
struct VtreeShape {
  enum class Kind { balanced, right_linear, bounded } kind = Kind::balanced;
  int k = 1;

  static VtreeShape parse(const std::string& text);
  Vtree build(int vars) const;
  std::string name() const;
};

struct RunOptions {
  VtreeShape vtree;
  std::chrono::milliseconds timeout{10000};  // per instance and mode
  int workers = 1;
};

inline constexpr int kOracleVarLimit = 12;

struct CompileResult {
  Mode mode = Mode::compressed;
  std::optional<std::uint64_t> size;   // absent on timeout
  std::optional<std::uint64_t> nodes;
  double time_ms = 0;
  std::string status;  // ok | timeout | mismatch
};

struct ComparisonRow {
  int instance;
  std::uint64_t seed;
  int vars;
  std::size_t clauses;
  CompileResult reduced;
  CompileResult unreduced;
  // Both compilations match the CNF's truth table; absent above the oracle
  // variable limit or on timeout.
  std::optional<bool> equal_by_oracle;
};

std::vector<ComparisonRow> run_compile_comparison(const CorpusSpec& corpus, const RunOptions& options);

// instance,seed,vars,clauses,mode,size,nodes,time_ms,status
// One line per (instance, mode); reduced first.
void write_comparison_csv(std::span<const ComparisonRow> rows, std::ostream& out);

// 20 linear bins over [0, 1] (1.0 falls in the last) plus decade bins:
// decades[i] counts values in (10^i, 10^(i+1)].
struct Histogram {
  std::vector<std::uint64_t> linear = std::vector<std::uint64_t>(20, 0);
  std::vector<std::uint64_t> decades;

  void add(double value);
  std::uint64_t total() const;
};

struct RatioReport {
  Mode mode = Mode::compressed;
  std::uint64_t threshold = 500;
  std::vector<RatioRecord> records;
  Histogram size_ratios;
  Histogram call_ratios;
  double mean_size_ratio = 0;
  double mean_call_ratio = 0;
  int timeouts = 0;
};

inline double size_ratio(const RatioRecord& r) {
  return static_cast<double>(r.size_out) / (static_cast<double>(r.size_a) * static_cast<double>(r.size_b));
}
inline double call_ratio(const RatioRecord& r) {
  return static_cast<double>(r.calls) / (static_cast<double>(r.size_a) * static_cast<double>(r.size_b));
}

// Compiles every instance in `mode`, recording all computed Apply calls
// (top-level and recursive) whose operand size product exceeds threshold.
RatioReport run_ratio_experiment(const CorpusSpec& corpus, Mode mode, std::uint64_t threshold,
                                 const RunOptions& options);
RatioReport summarize(Mode mode, std::uint64_t threshold, std::vector<RatioRecord> records);

// size_a,size_b,size_out,r,ratio_size,ratio_calls
void write_ratio_csv(const RatioReport& report, std::ostream& out);
// kind,lo,hi,size_count,calls_count
void write_histogram_csv(const RatioReport& report, std::ostream& out);

const char* mode_name(Mode mode);

}  // namespace sdd::bench
