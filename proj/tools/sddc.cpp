// sddc: compile CNFs to SDDs, query and transform stored SDDs, build the
// worst-case families and run the benchmark drivers.
//
// Exit status: 0 success (or a true answer), 1 a false answer, 2 error,
// 3 timeout.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sdd/bench.hpp"
#include "sdd/cnf.hpp"
#include "sdd/errors.hpp"
#include "sdd/families.hpp"
#include "sdd/io.hpp"
#include "sdd/queries.hpp"

using namespace sdd;

namespace {

enum Exit { kOk = 0, kFalse = 1, kError = 2, kTimeout = 3 };

struct Config {
  std::string vtree = "balanced";
  std::string mode = "reduced";
  bool reduced = false;
  bool unreduced = false;
  std::string out;
  std::string stats;
  std::uint64_t seed = 1;
  long timeout_ms = 0;
  std::uint64_t threshold = 500;
};

Mode mode_of(const Config& c) {
  if (c.reduced && c.unreduced) throw InputError("--reduced and --unreduced are exclusive");
  if (c.unreduced) return Mode::uncompressed;
  if (c.reduced) return Mode::compressed;
  if (c.mode == "reduced" || c.mode == "compressed") return Mode::compressed;
  if (c.mode == "unreduced" || c.mode == "uncompressed") return Mode::uncompressed;
  throw InputError("unknown mode '" + c.mode + "' (reduced | unreduced)");
}

Vtree vtree_of(const std::string& spec, int vars) {
  if (spec.rfind("file:", 0) == 0) {
    Vtree t = Vtree::parse(read_file(spec.substr(5)));
    if (t.var_count() != vars)
      throw InputError("vtree file has " + std::to_string(t.var_count()) + " variables, input has " +
                       std::to_string(vars));
    return t;
  }
  return bench::VtreeShape::parse(spec).build(vars);
}

void arm_deadline(Manager& m, const Config& c) {
  if (c.timeout_ms > 0) m.set_deadline(std::chrono::steady_clock::now() + std::chrono::milliseconds(c.timeout_ms));
}

void write_stats(const Config& c, const Stats& s) {
  if (c.stats.empty()) return;
  std::ostringstream csv;
  csv << "recursive_calls,cache_lookups,cache_hits,cache_entries\n"
      << s.recursive_calls << ',' << s.cache_lookups << ',' << s.cache_hits << ',' << s.cache_entries << '\n';
  write_file(c.stats, csv.str());
}

// x.cnf -> x.sdd; the vtree goes next to the SDD with a .vtree extension.
std::string with_extension(const std::string& path, const std::string& ext) {
  auto slash = path.find_last_of('/');
  auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + ext;
  return path.substr(0, dot) + ext;
}

int parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError("expected an integer, got '" + s + "'");
}

// A second SDD is read against the first one's vtree. When it has its own
// vtree file next to it, that file must agree.
void check_same_vtree(const Vtree& vt, const std::string& sdd_path) {
  std::string sibling = with_extension(sdd_path, ".vtree");
  if (!std::ifstream(sibling)) return;
  if (Vtree::parse(read_file(sibling)).serialize() != vt.serialize())
    throw InputError("vtree mismatch: " + sibling + " differs from the given vtree");
}

// Accepts "1 -2 3" as separate arguments or comma-separated lists.
std::vector<int> parse_ints(const std::vector<std::string>& args) {
  std::vector<int> out;
  for (const auto& a : args) {
    std::stringstream ss(a);
    for (std::string part; std::getline(ss, part, ',');)
      if (!part.empty()) out.push_back(parse_int(part));
  }
  return out;
}

BigInt count_of(const Manager& m, NodeId n) { return model_count(m, n); }

int cmd_compile(const Config& c, const std::string& path, const std::string& order) {
  Cnf cnf = parse_dimacs(read_file(path));
  ClauseOrder policy;
  if (order == "file")
    policy = ClauseOrder::file;
  else if (order == "ascending")
    policy = ClauseOrder::ascending_size;
  else
    throw InputError("unknown clause order '" + order + "' (file | ascending)");

  Manager m(vtree_of(c.vtree, cnf.var_count), mode_of(c));
  arm_deadline(m, c);
  auto start = std::chrono::steady_clock::now();
  NodeId root = compile_cnf(m, cnf, policy);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  m.set_deadline(std::nullopt);

  std::string sdd_path = c.out.empty() ? with_extension(path, ".sdd") : c.out;
  std::string vtree_path = with_extension(sdd_path, ".vtree");
  write_file(sdd_path, write_sdd(m, root));
  write_file(vtree_path, m.vtree().serialize());
  write_stats(c, m.stats());

  BigInt models = count_of(m, root);
  if (models == 0) std::cout << "UNSAT\n";
  std::cout << "size " << m.size(root) << "\nnodes " << m.node_count(root) << "\nmodels " << models << "\ntime_ms "
            << ms << "\nsdd " << sdd_path << "\nvtree " << vtree_path << '\n';
  return kOk;
}

int answer(bool value) {
  std::cout << (value ? "true" : "false") << '\n';
  return value ? kOk : kFalse;
}

int cmd_query(const Config& c, const std::string& sdd_path, const std::string& vtree_path, const std::string& query,
              const std::vector<std::string>& args) {
  Manager m(Vtree::parse(read_file(vtree_path)), mode_of(c));
  NodeId root = read_sdd(m, read_file(sdd_path));
  auto other = [&] {
    if (args.size() != 1) throw InputError(query + " takes one SDD path");
    check_same_vtree(m.vtree(), args[0]);
    return read_sdd(m, read_file(args[0]));
  };
  auto none = [&] {
    if (!args.empty()) throw InputError(query + " takes no arguments");
  };

  if (query == "co") return none(), answer(is_consistent(m, root));
  if (query == "va") return none(), answer(is_valid(m, root));
  if (query == "ce") return answer(entails_clause(m, root, parse_ints(args)));
  if (query == "im") return answer(is_implicant(m, root, parse_ints(args)));
  if (query == "eq") return answer(equivalent(m, root, other()));
  if (query == "se") return answer(entails(m, root, other()));
  if (query == "ct") {
    none();
    std::cout << count_of(m, root) << '\n';
    return kOk;
  }
  if (query == "me") {
    std::optional<std::size_t> limit;
    if (args.size() > 1) throw InputError("me takes at most one limit");
    if (args.size() == 1) {
      int l = parse_int(args[0]);
      if (l < 0) throw InputError("model limit must be non-negative");
      limit = static_cast<std::size_t>(l);
    }
    int vars = m.vtree().var_count();
    for_each_model(m, root, limit, [&](const Assignment& a) {
      for (int x = 1; x <= vars; ++x) std::cout << (x > 1 ? " " : "") << (a[x] ? x : -x);
      std::cout << '\n';
      return true;
    });
    return kOk;
  }
  throw InputError("unknown query '" + query + "' (co | va | ce | im | ct | eq | se | me)");
}

int cmd_transform(const Config& c, const std::string& sdd_path, const std::string& vtree_path, const std::string& op,
                  const std::vector<std::string>& args) {
  Manager m(Vtree::parse(read_file(vtree_path)), mode_of(c));
  NodeId root = read_sdd(m, read_file(sdd_path));
  std::uint64_t before = m.size(root);
  auto other = [&] {
    if (args.size() != 1) throw InputError(op + " takes one SDD path");
    check_same_vtree(m.vtree(), args[0]);
    return read_sdd(m, read_file(args[0]));
  };

  arm_deadline(m, c);
  NodeId result;
  if (op == "condition") {
    auto lits = parse_ints(args);
    if (lits.size() != 1) throw InputError("condition takes one literal");
    result = m.condition(root, lits[0]);
  } else if (op == "forget") {
    auto vars = parse_ints(args);
    std::vector<Var> xs(vars.begin(), vars.end());
    result = m.forget(root, xs);
  } else if (op == "negate") {
    if (!args.empty()) throw InputError("negate takes no arguments");
    result = m.negate(root);
  } else if (op == "and") {
    result = m.conjoin(root, other());
  } else if (op == "or") {
    result = m.disjoin(root, other());
  } else {
    throw InputError("unknown transform '" + op + "' (condition | forget | negate | and | or)");
  }
  m.set_deadline(std::nullopt);

  std::ostream& report = c.out.empty() ? std::cerr : std::cout;
  report << "before " << before << "\nafter " << m.size(result) << '\n';
  if (c.out.empty())
    write_sdd(m, result, std::cout);
  else
    write_file(c.out, write_sdd(m, result));
  write_stats(c, m.stats());
  return kOk;
}

int cmd_family(const Config& c, const std::string& name, int n, const std::string& action) {
  families::Family f;
  if (name == "A" || name == "a")
    f = families::Family::A;
  else if (name == "B" || name == "b")
    f = families::Family::B;
  else if (name == "C" || name == "c")
    f = families::Family::C;
  else
    throw InputError("unknown family '" + name + "' (A | B | C)");
  families::FamilySpec spec{f, n};
  Vtree vt = families::vtree_for(spec);

  if (action == "partition-count") {
    Manager m(vt);
    if (f == families::Family::B) {
      std::cout << families::reduced_partition_count_fb(m, n) << '\n';
    } else {
      NodeId root = compile_formula(m, families::formula(spec));
      std::cout << (m.is_decision(root) ? m.elements(root).size() : 0) << '\n';
    }
    return kOk;
  }

  Mode mode;
  if (action == "build-unreduced")
    mode = Mode::uncompressed;
  else if (action == "build-reduced")
    mode = Mode::compressed;
  else
    throw InputError("unknown action '" + action + "' (build-unreduced | build-reduced | partition-count)");

  Manager m(vt, mode);
  arm_deadline(m, c);
  NodeId root = (f == families::Family::A && mode == Mode::uncompressed) ? families::build_uncompressed_fa(m, n)
                                                                          : compile_formula(m, families::formula(spec));
  m.set_deadline(std::nullopt);
  std::cout << "vars " << spec.var_count() << "\nsize " << m.size(root) << "\nnodes " << m.node_count(root)
            << "\nroot_elements " << (m.is_decision(root) ? m.elements(root).size() : 0) << '\n';
  std::string sdd_out = c.out.empty() ? "family-" + name + std::to_string(n) + ".sdd" : c.out;
  write_file(sdd_out, write_sdd(m, root));
  write_file(with_extension(sdd_out, ".vtree"), vt.serialize());
  std::cout << "sdd " << sdd_out << "\nvtree " << with_extension(sdd_out, ".vtree") << '\n';
  write_stats(c, m.stats());
  return kOk;
}

struct BenchArgs {
  std::string experiment;
  int instances = 20;
  int vars = 8;
  int min_clauses = 5;
  int max_clauses = 25;
  int width = 3;
  int workers = 1;
};

int cmd_bench(const Config& c, const BenchArgs& b) {
  bench::CorpusSpec corpus{c.seed, b.instances, b.vars, b.min_clauses, b.max_clauses, b.width};
  bench::RunOptions options;
  options.vtree = bench::VtreeShape::parse(c.vtree);
  options.timeout = std::chrono::milliseconds(c.timeout_ms > 0 ? c.timeout_ms : 10000);
  options.workers = b.workers;

  std::ostringstream csv;
  std::cerr << "c seed=" << c.seed << " vtree=" << options.vtree.name() << " clause_order=file";
  if (b.experiment == "compare") {
    std::cerr << '\n';
    bench::write_comparison_csv(bench::run_compile_comparison(corpus, options), csv);
  } else if (b.experiment == "ratios") {
    Mode mode = mode_of(c);
    std::cerr << " mode=" << bench::mode_name(mode) << " threshold=" << c.threshold
              << " records=computed calls, top-level and recursive\n";
    auto report = bench::run_ratio_experiment(corpus, mode, c.threshold, options);
    bench::write_ratio_csv(report, csv);
    std::cerr << "c records=" << report.records.size() << " mean_size_ratio=" << report.mean_size_ratio
              << " mean_call_ratio=" << report.mean_call_ratio << " timeouts=" << report.timeouts << '\n';
    if (!c.stats.empty()) {
      std::ostringstream hist;
      bench::write_histogram_csv(report, hist);
      write_file(c.stats, hist.str());
    }
  } else {
    throw InputError("unknown experiment '" + b.experiment + "' (compare | ratios)");
  }
  if (c.out.empty())
    std::cout << csv.str();
  else
    write_file(c.out, csv.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sentential decision diagram compiler and toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Config c;
  app.add_option("--vtree", c.vtree, "balanced | right-linear | bounded:<k> | file:<path>")->capture_default_str();
  app.add_option("--mode", c.mode, "reduced | unreduced")->capture_default_str();
  app.add_flag("--reduced", c.reduced, "Same as --mode reduced");
  app.add_flag("--unreduced", c.unreduced, "Same as --mode unreduced");
  app.add_option("--out", c.out, "Output path");
  app.add_option("--stats", c.stats, "Write Apply counters (or, for bench ratios, the histogram) as CSV");
  app.add_option("--seed", c.seed, "Corpus seed")->capture_default_str();
  app.add_option("--timeout-ms", c.timeout_ms, "Abort with exit 3 after this many milliseconds (0: none)");
  app.add_option("--threshold", c.threshold, "Operand size product above which ratios are recorded")
      ->capture_default_str();

  std::string cnf_path, order = "file";
  auto* compile = app.add_subcommand("compile", "Compile a DIMACS CNF; writes the SDD and its vtree");
  compile->add_option("cnf", cnf_path, "DIMACS file")->required();
  compile->add_option("--order", order, "Clause order: file | ascending")->capture_default_str();

  std::string sdd_path, vtree_path, what;
  std::vector<std::string> rest;
  auto* query = app.add_subcommand("query", "co | va | ce <lits> | im <lits> | ct | eq <sdd> | se <sdd> | me [limit]");
  query->add_option("sdd", sdd_path, "SDD file")->required();
  query->add_option("vtree", vtree_path, "Vtree file")->required();
  query->add_option("query", what, "Query name")->required();
  query->add_option("args", rest, "Query arguments");
  query->prefix_command();

  auto* transform = app.add_subcommand("transform", "condition <lit> | forget <vars> | negate | and <sdd> | or <sdd>");
  transform->add_option("sdd", sdd_path, "SDD file")->required();
  transform->add_option("vtree", vtree_path, "Vtree file")->required();
  transform->add_option("op", what, "Transformation")->required();
  transform->add_option("args", rest, "Transformation arguments");

  std::string family;
  int n = 0;
  auto* fam = app.add_subcommand("family", "Build a worst-case family: A | B | C, n, action");
  fam->add_option("family", family, "A | B | C")->required();
  fam->add_option("n", n, "Family size")->required();
  fam->add_option("action", what, "build-unreduced | build-reduced | partition-count")->required();

  BenchArgs b;
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment over a seeded random CNF corpus; CSV output");
  bench_cmd->add_option("experiment", b.experiment, "compare | ratios")->required();
  bench_cmd->add_option("--instances", b.instances, "Corpus size")->capture_default_str();
  bench_cmd->add_option("--vars", b.vars, "Variables per instance")->capture_default_str();
  bench_cmd->add_option("--min-clauses", b.min_clauses)->capture_default_str();
  bench_cmd->add_option("--max-clauses", b.max_clauses)->capture_default_str();
  bench_cmd->add_option("--width", b.width, "Literals per clause")->capture_default_str();
  bench_cmd->add_option("--workers", b.workers, "Parallel instances")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*compile) return cmd_compile(c, cnf_path, order);
    if (*query) {
      // prefix_command leaves everything after the query name unparsed, so
      // negative literals are not mistaken for flags.
      auto extra = query->remaining();
      rest.insert(rest.end(), extra.begin(), extra.end());
      return cmd_query(c, sdd_path, vtree_path, what, rest);
    }
    if (*transform) return cmd_transform(c, sdd_path, vtree_path, what, rest);
    if (*fam) return cmd_family(c, family, n, what);
    if (*bench_cmd) return cmd_bench(c, b);
  } catch (const TimeoutError&) {
    std::cerr << "sddc: timeout\n";
    return kTimeout;
  } catch (const ParseError& e) {
    std::cerr << "sddc: parse error: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "sddc: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
