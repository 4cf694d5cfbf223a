#include "sdd/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <thread>

#include "sdd/errors.hpp"
#include "sdd/formula.hpp"
#include "sdd/queries.hpp"

namespace sdd::bench {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// std::uniform_int_distribution differs between standard libraries.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

template <typename Fn>
void parallel_for(int count, int workers, Fn&& fn) {
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) fn(i);
    });
  }
}

std::vector<bool> sdd_truth_table(const Manager& m, NodeId root, int vars) {
  std::size_t rows = std::size_t{1} << vars;
  std::vector<bool> table(rows);
  Assignment a(vars + 1, false);
  for (std::size_t i = 0; i < rows; ++i) {
    for (int x = 1; x <= vars; ++x) a[x] = (i >> (x - 1)) & 1;
    table[i] = evaluate(m, root, a);
  }
  return table;
}

struct Compiled {
  CompileResult result;
  std::optional<std::vector<bool>> table;
};

Compiled compile_one(const Cnf& cnf, Mode mode, const RunOptions& options, bool want_table) {
  Compiled out;
  out.result.mode = mode;
  Manager m(options.vtree.build(cnf.var_count), mode);
  auto start = std::chrono::steady_clock::now();
  m.set_deadline(start + options.timeout);
  try {
    NodeId root = compile_cnf(m, cnf);
    auto stop = std::chrono::steady_clock::now();
    out.result.time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    m.set_deadline(std::nullopt);
    out.result.size = m.size(root);
    out.result.nodes = m.node_count(root);
    out.result.status = "ok";
    if (want_table) out.table = sdd_truth_table(m, root, cnf.var_count);
  } catch (const TimeoutError&) {
    out.result.time_ms = static_cast<double>(options.timeout.count());
    out.result.status = "timeout";
  }
  return out;
}

}  // namespace

Cnf random_cnf(std::uint64_t seed, int vars, int clauses, int width) {
  if (vars < 1 || clauses < 0 || width < 1) throw InputError("invalid random CNF parameters");
  std::mt19937_64 rng(seed);
  int w = std::min(width, vars);
  Cnf cnf{vars, {}};
  std::vector<int> pool(vars);
  for (int c = 0; c < clauses; ++c) {
    std::iota(pool.begin(), pool.end(), 1);
    Clause clause;
    for (int i = 0; i < w; ++i) {
      auto j = i + static_cast<int>(draw(rng, static_cast<std::uint64_t>(vars - i)));
      std::swap(pool[i], pool[j]);
      clause.push_back(draw(rng, 2) ? pool[i] : -pool[i]);
    }
    cnf.clauses.push_back(std::move(clause));
  }
  return cnf;
}

std::vector<Instance> make_corpus(const CorpusSpec& spec) {
  if (spec.instances < 0 || spec.min_clauses < 0 || spec.max_clauses < spec.min_clauses)
    throw InputError("invalid corpus parameters");
  std::vector<Instance> corpus;
  for (int i = 0; i < spec.instances; ++i) {
    std::uint64_t seed = splitmix(spec.seed ^ splitmix(static_cast<std::uint64_t>(i)));
    std::mt19937_64 rng(seed);
    auto span = static_cast<std::uint64_t>(spec.max_clauses - spec.min_clauses + 1);
    int clauses = spec.min_clauses + static_cast<int>(draw(rng, span));
    corpus.push_back({i, seed, random_cnf(rng(), spec.vars, clauses, spec.width)});
  }
  return corpus;
}

VtreeShape VtreeShape::parse(const std::string& text) {
  if (text == "balanced") return {Kind::balanced, 1};
  if (text == "right-linear") return {Kind::right_linear, 1};
  if (text.rfind("bounded:", 0) == 0) {
    try {
      std::size_t used = 0;
      int k = std::stoi(text.substr(8), &used);
      if (used == text.size() - 8 && k > 0) return {Kind::bounded, k};
    } catch (const std::exception&) {
    }
  }
  throw InputError("unknown vtree shape '" + text + "' (balanced | right-linear | bounded:<k>)");
}

Vtree VtreeShape::build(int vars) const {
  std::vector<Var> order(vars);
  std::iota(order.begin(), order.end(), 1);
  switch (kind) {
    case Kind::balanced:
      return Vtree::balanced(order);
    case Kind::right_linear:
      return Vtree::right_linear(order);
    case Kind::bounded:
      return Vtree::bounded(order, k);
  }
  throw InternalError("unknown vtree shape");
}

std::string VtreeShape::name() const {
  switch (kind) {
    case Kind::balanced:
      return "balanced";
    case Kind::right_linear:
      return "right-linear";
    case Kind::bounded:
      return "bounded:" + std::to_string(k);
  }
  return {};
}

const char* mode_name(Mode mode) { return mode == Mode::compressed ? "reduced" : "unreduced"; }

std::vector<ComparisonRow> run_compile_comparison(const CorpusSpec& corpus, const RunOptions& options) {
  auto instances = make_corpus(corpus);
  std::vector<ComparisonRow> rows(instances.size());
  parallel_for(static_cast<int>(instances.size()), options.workers, [&](int i) {
    const auto& inst = instances[i];
    bool oracle = inst.cnf.var_count <= kOracleVarLimit;
    auto reduced = compile_one(inst.cnf, Mode::compressed, options, oracle);
    auto unreduced = compile_one(inst.cnf, Mode::uncompressed, options, oracle);
    ComparisonRow row{inst.index, inst.seed, inst.cnf.var_count, inst.cnf.clauses.size(),
                      reduced.result, unreduced.result, std::nullopt};
    if (oracle) {
      auto expected = oracle_truth_table(to_formula(inst.cnf), inst.cnf.var_count);
      if (reduced.table && *reduced.table != expected) row.reduced.status = "mismatch";
      if (unreduced.table && *unreduced.table != expected) row.unreduced.status = "mismatch";
      if (reduced.table && unreduced.table)
        row.equal_by_oracle = *reduced.table == expected && *unreduced.table == expected;
    }
    rows[i] = std::move(row);
  });
  return rows;
}

void write_comparison_csv(std::span<const ComparisonRow> rows, std::ostream& out) {
  out << "instance,seed,vars,clauses,mode,size,nodes,time_ms,status\n";
  auto line = [&](const ComparisonRow& row, const CompileResult& r) {
    out << row.instance << ',' << row.seed << ',' << row.vars << ',' << row.clauses << ','
        << mode_name(r.mode) << ',';
    if (r.size) out << *r.size;
    out << ',';
    if (r.nodes) out << *r.nodes;
    out << ',' << std::fixed << std::setprecision(3) << r.time_ms << std::defaultfloat << ','
        << r.status << '\n';
  };
  for (const auto& row : rows) {
    line(row, row.reduced);
    line(row, row.unreduced);
  }
}

void Histogram::add(double value) {
  if (value <= 1.0) {
    auto bin = static_cast<std::size_t>(std::max(0.0, value) * 20.0);
    linear[std::min<std::size_t>(bin, 19)] += 1;
    return;
  }
  auto decade = static_cast<std::size_t>(std::ceil(std::log10(value))) - 1;
  if (decades.size() <= decade) decades.resize(decade + 1, 0);
  decades[decade] += 1;
}

std::uint64_t Histogram::total() const {
  return std::accumulate(linear.begin(), linear.end(), std::uint64_t{0}) +
         std::accumulate(decades.begin(), decades.end(), std::uint64_t{0});
}

RatioReport summarize(Mode mode, std::uint64_t threshold, std::vector<RatioRecord> records) {
  RatioReport report;
  report.mode = mode;
  report.threshold = threshold;
  report.records = std::move(records);
  double size_sum = 0, call_sum = 0;
  for (const auto& r : report.records) {
    double s = size_ratio(r), c = call_ratio(r);
    report.size_ratios.add(s);
    report.call_ratios.add(c);
    size_sum += s;
    call_sum += c;
  }
  if (!report.records.empty()) {
    report.mean_size_ratio = size_sum / static_cast<double>(report.records.size());
    report.mean_call_ratio = call_sum / static_cast<double>(report.records.size());
  }
  return report;
}

RatioReport run_ratio_experiment(const CorpusSpec& corpus, Mode mode, std::uint64_t threshold,
                                 const RunOptions& options) {
  auto instances = make_corpus(corpus);
  std::vector<std::vector<RatioRecord>> per_instance(instances.size());
  std::vector<char> timed_out(instances.size(), 0);
  parallel_for(static_cast<int>(instances.size()), options.workers, [&](int i) {
    const auto& cnf = instances[i].cnf;
    Manager m(options.vtree.build(cnf.var_count), mode);
    m.record_ratios(threshold);
    m.set_deadline(std::chrono::steady_clock::now() + options.timeout);
    try {
      compile_cnf(m, cnf);
      per_instance[i] = m.stats().ratio_records;
    } catch (const TimeoutError&) {
      timed_out[i] = 1;
    }
  });
  std::vector<RatioRecord> all;
  for (auto& recs : per_instance) all.insert(all.end(), recs.begin(), recs.end());
  auto report = summarize(mode, threshold, std::move(all));
  report.timeouts = static_cast<int>(std::count(timed_out.begin(), timed_out.end(), 1));
  return report;
}

void write_ratio_csv(const RatioReport& report, std::ostream& out) {
  out << "size_a,size_b,size_out,r,ratio_size,ratio_calls\n";
  out << std::setprecision(6);
  for (const auto& r : report.records) {
    out << r.size_a << ',' << r.size_b << ',' << r.size_out << ',' << r.calls << ',' << size_ratio(r)
        << ',' << call_ratio(r) << '\n';
  }
}

void write_histogram_csv(const RatioReport& report, std::ostream& out) {
  out << "kind,lo,hi,size_count,calls_count\n";
  for (std::size_t i = 0; i < 20; ++i) {
    out << "linear," << i / 20.0 << ',' << (i + 1) / 20.0 << ',' << report.size_ratios.linear[i] << ','
        << report.call_ratios.linear[i] << '\n';
  }
  std::size_t decades = std::max(report.size_ratios.decades.size(), report.call_ratios.decades.size());
  for (std::size_t i = 0; i < decades; ++i) {
    auto at = [&](const Histogram& h) { return i < h.decades.size() ? h.decades[i] : 0; };
    out << "decade," << std::pow(10.0, i) << ',' << std::pow(10.0, i + 1) << ',' << at(report.size_ratios)
        << ',' << at(report.call_ratios) << '\n';
  }
}

}  // namespace sdd::bench
