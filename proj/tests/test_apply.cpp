#include <gtest/gtest.h>

#include <chrono>

#include "sdd/cnf.hpp"
#include "sdd/errors.hpp"
#include "sdd/manager.hpp"
#include "sdd/queries.hpp"
#include "support.hpp"

using namespace sdd;
namespace st = sdd::testing;

namespace {

Formula lit(int l) { return Formula::lit(l); }

// Table of f with variable x existentially quantified.
std::vector<bool> exists_table(const Formula& f, int vars, std::vector<Var> xs) {
  auto t = oracle_truth_table(f, vars);
  for (Var x : xs) {
    std::size_t bit = std::size_t{1} << (x - 1);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = t[i] || t[i ^ bit];
  }
  return t;
}

}  // namespace

TEST(Apply, AbsorbingAndIdentity) {
  Manager m(st::abcd_vtree());
  NodeId x = compile_formula(m, st::abcd_function());
  EXPECT_EQ(m.conjoin(kFalse, x), kFalse);
  EXPECT_EQ(m.conjoin(kTrue, x), x);
  EXPECT_EQ(m.disjoin(kTrue, x), kTrue);
  EXPECT_EQ(m.disjoin(kFalse, x), x);
  EXPECT_EQ(m.conjoin(x, x), x);
  EXPECT_EQ(m.conjoin(x, m.negate(x)), kFalse);
  EXPECT_EQ(m.disjoin(x, m.negate(x)), kTrue);
}

TEST(Apply, ConjoinTwoLiterals) {
  Manager m(Vtree::balanced(st::iota_vars(2)));
  NodeId a = m.literal(1, true), b = m.literal(2, true);
  NodeId ab = m.conjoin(a, b);
  ASSERT_TRUE(m.is_decision(ab));
  EXPECT_EQ(m.vtree_node(ab), m.vtree().root());
  std::vector<Element> expected{{a, b}, {m.literal(1, false), kFalse}};
  std::vector<Element> got(m.elements(ab).begin(), m.elements(ab).end());
  std::sort(expected.begin(), expected.end(), [](auto x, auto y) { return index(x.prime) < index(y.prime); });
  EXPECT_EQ(got, expected);
  EXPECT_EQ(m.conjoin(b, a), ab);
}

TEST(Apply, FourVariableFunctionRootPartition) {
  Manager m(st::abcd_vtree());
  NodeId f = compile_formula(m, st::abcd_function());
  ASSERT_TRUE(m.is_decision(f));
  EXPECT_EQ(m.vtree_node(f), m.vtree().root());
  auto elems = m.elements(f);
  ASSERT_EQ(elems.size(), 3u);

  auto c = [&](std::initializer_list<Formula> xs) { return compile_formula(m, Formula::conj(xs)); };
  std::vector<std::pair<NodeId, NodeId>> expected{
      {c({lit(st::A), lit(st::B)}), kTrue},
      {c({lit(-st::A), lit(st::B)}), m.literal(st::C, true)},
      {m.literal(st::B, false), c({lit(st::D), lit(st::C)})},
  };
  for (auto [p, s] : expected) {
    bool found = std::any_of(elems.begin(), elems.end(), [&](const Element& e) { return e.prime == p && e.sub == s; });
    EXPECT_TRUE(found);
  }
}

TEST(Apply, ForeignHandleRejected) {
  Manager m(Vtree::balanced(st::iota_vars(2)));
  EXPECT_THROW(m.conjoin(kTrue, NodeId{12345}), InputError);
}

TEST(Apply, RandomAgainstOracleBothModes) {
  std::mt19937_64 rng(7);
  for (Mode mode : {Mode::compressed, Mode::uncompressed}) {
    for (int round = 0; round < 60; ++round) {
      int vars = 2 + static_cast<int>(st::below(rng, 6));
      auto order = st::iota_vars(vars);
      Manager m(round % 2 ? Vtree::balanced(order) : Vtree::right_linear(order), mode);
      Formula f = st::random_formula(rng, vars, 4), g = st::random_formula(rng, vars, 4);
      NodeId a = compile_formula(m, f), b = compile_formula(m, g);
      NodeId both = m.conjoin(a, b), either = m.disjoin(a, b);
      EXPECT_EQ(st::sdd_table(m, both), oracle_truth_table(Formula::conj({f, g}), vars));
      EXPECT_EQ(st::sdd_table(m, either), oracle_truth_table(Formula::disj({f, g}), vars));
      EXPECT_TRUE(validate(m, both).empty());
      EXPECT_TRUE(validate(m, either).empty());
    }
  }
}

TEST(Apply, NegationIsAnInvolution) {
  Manager m(st::abcd_vtree());
  NodeId x = compile_formula(m, st::abcd_function());
  EXPECT_EQ(m.negate(m.negate(x)), x);
  EXPECT_EQ(m.negate(kTrue), kFalse);
  EXPECT_EQ(m.negate(kFalse), kTrue);
  EXPECT_EQ(m.negate(m.literal(st::A, true)), m.literal(st::A, false));
}

TEST(Apply, NegationKeepsPrimes) {
  Manager m(st::abcd_vtree());
  NodeId x = compile_formula(m, st::abcd_function());
  NodeId nx = m.negate(x);
  auto e = m.elements(x), ne = m.elements(nx);
  ASSERT_EQ(e.size(), ne.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    EXPECT_EQ(e[i].prime, ne[i].prime);
    EXPECT_EQ(ne[i].sub, m.negate(e[i].sub));
  }
  EXPECT_EQ(st::sdd_table(m, nx), oracle_truth_table(Formula::neg(st::abcd_function()), 4));
}

TEST(Apply, NegationUncompressedMatchesOracle) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 30; ++round) {
    Manager m(Vtree::balanced(st::iota_vars(5)), Mode::uncompressed);
    Formula f = st::random_formula(rng, 5, 4);
    NodeId a = compile_formula(m, f);
    EXPECT_EQ(st::sdd_table(m, m.negate(a)), oracle_truth_table(Formula::neg(f), 5));
    EXPECT_EQ(m.negate(m.negate(a)), a);
  }
}

TEST(Apply, ConditionOnAbsentVariable) {
  Manager m(st::abcd_vtree());
  NodeId ab = compile_formula(m, Formula::conj({lit(st::A), lit(st::B)}));
  EXPECT_EQ(m.condition(ab, st::C), ab);
  EXPECT_EQ(m.condition(ab, -st::D), ab);
}

TEST(Apply, ConditionFourVariableFunction) {
  Manager m(st::abcd_vtree());
  NodeId f = compile_formula(m, st::abcd_function());
  NodeId expected = compile_formula(m, Formula::disj({lit(st::A), lit(st::C)}));
  EXPECT_EQ(m.condition(f, st::B), expected);
  EXPECT_THROW(m.condition(f, 9), InputError);
}

TEST(Apply, ConditionRandomBothModes) {
  std::mt19937_64 rng(13);
  for (Mode mode : {Mode::compressed, Mode::uncompressed}) {
    for (int round = 0; round < 40; ++round) {
      const int vars = 5;
      Manager m(Vtree::balanced(st::iota_vars(vars)), mode);
      Formula f = st::random_formula(rng, vars, 4);
      NodeId a = compile_formula(m, f);
      int x = 1 + static_cast<int>(st::below(rng, vars));
      bool positive = st::below(rng, 2);
      NodeId c = m.condition(a, positive ? x : -x);
      auto expected = oracle_truth_table(f, vars);
      std::size_t bit = std::size_t{1} << (x - 1);
      for (std::size_t i = 0; i < expected.size(); ++i)
        expected[i] = expected[positive ? (i | bit) : (i & ~bit)];
      EXPECT_EQ(st::sdd_table(m, c), expected);
      if (mode == Mode::uncompressed) EXPECT_LE(m.size(c), m.size(a));
      EXPECT_TRUE(validate(m, c).empty());
    }
  }
}

TEST(Apply, ForgetSingle) {
  Manager m(Vtree::balanced(st::iota_vars(3)));
  EXPECT_EQ(m.forget(m.literal(2, true), 2), kTrue);
  NodeId x = compile_formula(m, Formula::conj({lit(1), Formula::disj({lit(2), lit(-3)})}));
  EXPECT_EQ(m.forget(x, 2), m.literal(1, true));
}

TEST(Apply, ForgetSets) {
  Manager m(st::abcd_vtree());
  NodeId f = compile_formula(m, st::abcd_function());
  EXPECT_EQ(m.forget(f, std::span<const Var>{}), f);
  NodeId ab = compile_formula(m, Formula::conj({lit(st::A), lit(st::B)}));
  std::vector<Var> both{st::A, st::B};
  EXPECT_EQ(m.forget(ab, both), kTrue);
  std::vector<Var> ad{st::A, st::D};
  EXPECT_EQ(m.forget(f, ad), compile_formula(m, Formula::disj({lit(st::B), lit(st::C)})));
}

TEST(Apply, ForgetRandomBothModes) {
  std::mt19937_64 rng(17);
  for (Mode mode : {Mode::compressed, Mode::uncompressed}) {
    for (int round = 0; round < 30; ++round) {
      const int vars = 6;
      Manager m(Vtree::balanced(st::iota_vars(vars)), mode);
      Formula f = st::random_formula(rng, vars, 5);
      std::vector<Var> xs{1 + static_cast<int>(st::below(rng, 3)), 4 + static_cast<int>(st::below(rng, 3))};
      NodeId g = m.forget(compile_formula(m, f), xs);
      EXPECT_EQ(st::sdd_table(m, g), exists_table(f, vars, xs));
    }
  }
}

TEST(Apply, StatsCounters) {
  Manager m(Vtree::balanced(st::iota_vars(4)));
  m.reset_stats();
  EXPECT_EQ(m.stats().recursive_calls, 0u);
  EXPECT_EQ(m.stats().cache_hits, 0u);
  NodeId a = m.literal(1, true), b = m.literal(3, true);
  NodeId r = m.conjoin(a, b);
  EXPECT_GE(m.stats().recursive_calls, 1u);
  auto before = m.snapshot_stats();
  EXPECT_EQ(m.conjoin(a, b), r);
  EXPECT_GT(m.stats().cache_hits, before.cache_hits);
  EXPECT_LE(m.stats().cache_hits, m.stats().cache_lookups);
  m.reset_stats();
  EXPECT_EQ(m.stats().recursive_calls, 0u);
  EXPECT_EQ(m.stats().cache_lookups, 0u);
  EXPECT_TRUE(m.stats().ratio_records.empty());
}

TEST(Apply, ObserverSeesTopLevelCallsOnly) {
  Manager m(Vtree::balanced(st::iota_vars(6)));
  std::vector<ApplyEvent> events;
  m.set_apply_observer([&](const ApplyEvent& e) { events.push_back(e); });
  NodeId x = compile_formula(m, Formula::conj({lit(1), lit(3), lit(5)}));
  NodeId y = m.disjoin(x, m.literal(2, true));
  ASSERT_FALSE(events.empty());
  EXPECT_EQ(events.back().result, y);
  EXPECT_EQ(events.back().op, Op::disjoin);
  std::uint64_t calls = 0;
  for (const auto& e : events) calls += e.recursive_calls;
  EXPECT_EQ(calls, m.stats().recursive_calls);
}

TEST(Apply, RatioRecordsAboveThreshold) {
  Manager m(Vtree::balanced(st::iota_vars(8)));
  m.record_ratios(0);
  std::mt19937_64 rng(3);
  NodeId a = compile_formula(m, st::random_formula(rng, 8, 5));
  NodeId b = compile_formula(m, st::random_formula(rng, 8, 5));
  m.reset_stats();
  m.conjoin(a, b);
  for (const auto& r : m.stats().ratio_records) {
    EXPECT_GT(r.size_a * r.size_b, 0u);
    EXPECT_GE(r.calls, 1u);
  }
}

TEST(Apply, DeadlineThrowsTimeout) {
  Manager m(Vtree::balanced(st::iota_vars(12)));
  m.set_deadline(std::chrono::steady_clock::now() - std::chrono::seconds(1));
  std::mt19937_64 rng(5);
  EXPECT_THROW(
      {
        for (int i = 0; i < 200; ++i) compile_formula(m, st::random_formula(rng, 12, 8));
      },
      TimeoutError);
}
