#include <gtest/gtest.h>

#include "sdd/cnf.hpp"
#include "sdd/errors.hpp"
#include "sdd/families.hpp"
#include "sdd/queries.hpp"
#include "support.hpp"

using namespace sdd;
namespace st = sdd::testing;

namespace {

Formula lit(int l) { return Formula::lit(l); }

// Truth-table answers for the clause / term queries.
bool table_entails_clause(const std::vector<bool>& t, const std::vector<int>& clause) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!t[i]) continue;
    bool sat = false;
    for (int l : clause) sat |= (((i >> (std::abs(l) - 1)) & 1) == (l > 0));
    if (!sat) return false;
  }
  return true;
}

bool table_implicant(const std::vector<bool>& t, const std::vector<int>& term) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    bool sat = true;
    for (int l : term) sat &= (((i >> (std::abs(l) - 1)) & 1) == (l > 0));
    if (sat && !t[i]) return false;
  }
  return true;
}

Assignment row_assignment(std::size_t row, int vars) {
  Assignment a(vars + 1, false);
  for (int x = 1; x <= vars; ++x) a[x] = (row >> (x - 1)) & 1;
  return a;
}

}  // namespace

TEST(Queries, ConsistencyAndValidity) {
  Manager m(st::abcd_vtree());
  EXPECT_FALSE(is_consistent(m, kFalse));
  EXPECT_TRUE(is_valid(m, kTrue));
  NodeId f = compile_formula(m, st::abcd_function());
  EXPECT_TRUE(is_consistent(m, f));
  EXPECT_FALSE(is_valid(m, f));
}

TEST(Queries, InconsistentUncompressedNode) {
  Manager m(Vtree::balanced(st::iota_vars(2)), Mode::uncompressed);
  NodeId x = m.literal(1, true);
  NodeId n = m.unchecked_decision(m.vtree().root(), {{x, kFalse}, {m.literal(1, false), kFalse}});
  EXPECT_NE(n, kFalse);
  EXPECT_FALSE(is_consistent(m, n));
  EXPECT_EQ(model_count(m, n), 0);
}

TEST(Queries, ClausalEntailment) {
  Manager m(st::abcd_vtree());
  NodeId ab = compile_formula(m, Formula::conj({lit(st::A), lit(st::B)}));
  std::vector<int> a{st::A};
  EXPECT_TRUE(entails_clause(m, ab, a));
  NodeId f = compile_formula(m, st::abcd_function());
  std::vector<int> bc{st::B, st::C}, ad{st::A, st::D};
  EXPECT_TRUE(entails_clause(m, f, bc));
  EXPECT_FALSE(entails_clause(m, f, ad));
  std::vector<int> bad{7};
  EXPECT_THROW(entails_clause(m, f, bad), InputError);
}

TEST(Queries, Implicants) {
  Manager m(st::abcd_vtree());
  NodeId f = compile_formula(m, st::abcd_function());
  std::vector<int> ab{st::A, st::B}, nbnc{-st::B, -st::C}, none;
  EXPECT_TRUE(is_implicant(m, f, ab));
  EXPECT_FALSE(is_implicant(m, f, nbnc));
  EXPECT_EQ(is_implicant(m, f, none), is_valid(m, f));
  EXPECT_TRUE(is_implicant(m, kTrue, none));
}

TEST(Queries, Equivalence) {
  Manager m(st::abcd_vtree());
  NodeId f = compile_formula(m, st::abcd_function());
  EXPECT_TRUE(equivalent(m, f, f));
  EXPECT_FALSE(equivalent(m, f, m.negate(f)));

  Cnf cnf{4, {{st::A, st::C}, {st::B, st::C}, {st::B, st::D}}};
  EXPECT_EQ(compile_cnf(m, cnf, ClauseOrder::file), compile_cnf(m, cnf, ClauseOrder::ascending_size));
}

TEST(Queries, EquivalenceUncompressed) {
  Manager u(st::abcd_vtree(), Mode::uncompressed);
  NodeId x = compile_formula(u, st::abcd_function());
  // Same function, built in a different order.
  NodeId y = compile_formula(u, Formula::disj({Formula::conj({lit(st::C), lit(st::D)}),
                                               Formula::conj({lit(st::B), Formula::disj({lit(st::A), lit(st::C)})})}));
  EXPECT_TRUE(equivalent(u, x, y));
  EXPECT_FALSE(equivalent(u, x, u.literal(st::A, true)));
}

TEST(Queries, ModelCounts) {
  Manager m(st::abcd_vtree());
  EXPECT_EQ(model_count(m, kTrue), 16);
  EXPECT_EQ(model_count(m, kFalse), 0);
  EXPECT_EQ(model_count(m, m.literal(st::A, false)), 8);
  EXPECT_EQ(model_count(m, compile_formula(m, st::abcd_function())), 8);
  EXPECT_EQ(oracle_count(st::abcd_function(), 4), 8u);

  families::FamilySpec b2{families::Family::B, 2};
  Manager fb(families::vtree_for(b2));
  EXPECT_EQ(model_count(fb, compile_formula(fb, families::formula(b2))), 6);
}

TEST(Queries, ModelCountIsExactBeyond64Bits) {
  std::vector<Var> order = st::iota_vars(80);
  Manager m(Vtree::balanced(order));
  BigInt all = BigInt(1) << 80;
  EXPECT_EQ(model_count(m, kTrue), all);
  EXPECT_EQ(model_count(m, m.literal(40, true)), all / 2);
}

TEST(Queries, SententialEntailment) {
  Manager m(st::abcd_vtree());
  NodeId f = compile_formula(m, st::abcd_function());
  EXPECT_TRUE(entails(m, f, kTrue));
  EXPECT_TRUE(entails(m, kFalse, f));
  NodeId ab = compile_formula(m, Formula::conj({lit(st::A), lit(st::B)}));
  NodeId a_or_b = compile_formula(m, Formula::disj({lit(st::A), lit(st::B)}));
  EXPECT_TRUE(entails(m, ab, a_or_b));
  EXPECT_FALSE(entails(m, a_or_b, ab));

  families::FamilySpec b2{families::Family::B, 2};
  Manager fb(families::vtree_for(b2));
  NodeId g = compile_formula(fb, families::formula(b2));
  EXPECT_TRUE(entails(fb, g, compile_formula(fb, Formula::disj({lit(b2.y(1)), lit(b2.y(2))}))));
}

TEST(Queries, ModelEnumeration) {
  Manager m(Vtree::balanced(st::iota_vars(2)));
  EXPECT_TRUE(enumerate_models(m, kFalse).empty());
  auto ab = enumerate_models(m, m.conjoin(m.literal(1, true), m.literal(2, true)));
  ASSERT_EQ(ab.size(), 1u);
  EXPECT_EQ(ab[0], (Assignment{false, true, true}));

  Manager f(st::abcd_vtree());
  NodeId x = compile_formula(f, st::abcd_function());
  auto models = enumerate_models(f, x);
  std::vector<Assignment> expected;
  // Lexicographic by variable, false first: variable 1 is the most
  // significant position.
  for (std::size_t i = 0; i < 16; ++i) {
    Assignment a(5, false);
    for (int v = 1; v <= 4; ++v) a[v] = (i >> (4 - v)) & 1;
    if (oracle_eval(st::abcd_function(), a)) expected.push_back(a);
  }
  EXPECT_EQ(models, expected);
  EXPECT_EQ(enumerate_models(f, x, 3).size(), 3u);
}

TEST(Queries, EvaluateMatchesOracle) {
  Manager m(st::abcd_vtree());
  NodeId x = compile_formula(m, st::abcd_function());
  for (std::size_t i = 0; i < 16; ++i) {
    auto a = row_assignment(i, 4);
    EXPECT_EQ(evaluate(m, x, a), oracle_eval(st::abcd_function(), a));
  }
}

TEST(Queries, RandomAgainstTruthTables) {
  std::mt19937_64 rng(23);
  for (Mode mode : {Mode::compressed, Mode::uncompressed}) {
    for (int round = 0; round < 40; ++round) {
      const int vars = 6;
      Manager m(Vtree::balanced(st::iota_vars(vars)), mode);
      Formula f = st::random_formula(rng, vars, 4), g = st::random_formula(rng, vars, 4);
      NodeId a = compile_formula(m, f), b = compile_formula(m, g);
      auto ta = oracle_truth_table(f, vars), tb = oracle_truth_table(g, vars);

      EXPECT_EQ(is_consistent(m, a), st::count_true(ta) > 0);
      EXPECT_EQ(is_valid(m, a), st::count_true(ta) == ta.size());
      EXPECT_EQ(model_count(m, a), st::count_true(ta));
      EXPECT_EQ(equivalent(m, a, b), ta == tb);
      bool se = true;
      for (std::size_t i = 0; i < ta.size(); ++i) se &= !ta[i] || tb[i];
      EXPECT_EQ(entails(m, a, b), se);

      std::vector<int> lits;
      for (int k = 0; k < 1 + static_cast<int>(st::below(rng, 3)); ++k) {
        int x = 1 + static_cast<int>(st::below(rng, vars));
        lits.push_back(st::below(rng, 2) ? x : -x);
      }
      EXPECT_EQ(entails_clause(m, a, lits), table_entails_clause(ta, lits));
      EXPECT_EQ(is_implicant(m, a, lits), table_implicant(ta, lits));

      auto models = enumerate_models(m, a);
      EXPECT_EQ(models.size(), st::count_true(ta));
      for (const auto& model : models) EXPECT_TRUE(oracle_eval(f, model));
    }
  }
}
