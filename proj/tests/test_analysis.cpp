#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace tropwfa;
using namespace testing_support;

TEST(Unambiguous, Fixtures) {
  EXPECT_FALSE(is_unambiguous(fig3()));
  EXPECT_TRUE(is_unambiguous(fig4()));
  EXPECT_TRUE(is_unambiguous(one()));
}

TEST(Unambiguous, TwoInitialStatesAcceptingTheSameWord) {
  Wfa a;
  auto p = a.add_state("p"), q = a.add_state("q");
  a.add_letter("a");
  a.set_initial(p);
  a.set_initial(q);
  a.set_accepting(p);
  a.set_accepting(q);
  EXPECT_FALSE(is_unambiguous(a));
}

TEST(Unambiguous, AgreesWithRunCounting) {
  // with at most 3 states an ambiguous automaton is ambiguous on a word of
  // length at most 9
  std::mt19937 rng(3);
  RandomSpec spec{3, 2};
  for (int i = 0; i < 60; ++i) {
    auto a = random_wfa(rng, spec);
    bool ambiguous = false;
    for (const auto& word : all_words(a.alphabet(), 9)) ambiguous = ambiguous || oracle_count_runs(a, word) > 1;
    ASSERT_EQ(is_unambiguous(a), !ambiguous) << serialize_wfa(a);
  }
}

TEST(CountRuns, Fixtures) {
  EXPECT_EQ(count_accepting_runs(fig3(), w("a a a")), 2u);
  EXPECT_EQ(count_accepting_runs(fig4(), w("a b b c")), 1u);
  EXPECT_EQ(count_accepting_runs(fig3(), w("a")), 0u);
  for (const auto& a : corpus(20))
    for (const auto& word : all_words(a.alphabet(), 4)) ASSERT_EQ(count_accepting_runs(a, word), oracle_count_runs(a, word));
}

TEST(Width, Fixtures) {
  EXPECT_EQ(width(fig4()), 2u);
  EXPECT_EQ(width(one()), 1u);
  EXPECT_EQ(width(fig3()), 2u);
}

TEST(Width, AgreesWithWordEnumeration) {
  // every reachable support of an n-state automaton is reached by a word of
  // length below 2^n
  std::mt19937 rng(5);
  RandomSpec spec{3, 2};
  for (int i = 0; i < 40; ++i) {
    auto a = random_wfa(rng, spec);
    std::size_t best = 0;
    for (const auto& word : all_words(a.alphabet(), 7))
      best = std::max(best, support(xconf(a, initial_configuration(a), word)).size());
    ASSERT_EQ(width(a), best);
  }
}

namespace {

/// Literal culling: all minimal accepting runs, then position by position
/// from the end keep the runs whose state there has the highest rank.
std::vector<StateId> oracle_canonical(const Wfa& a, const Word& word, const StateOrder& order) {
  Weight best = oracle_eval(a, word);
  std::vector<std::vector<StateId>> runs;
  for_each_run(a, word, a.initials(), [&](const std::vector<StateId>& run, Weight wt) {
    if (a.is_accepting(run.back()) && wt == best) runs.push_back(run);
  });
  for (std::size_t k = word.size() + 1; k-- > 0;) {
    std::size_t top = 0;
    for (const auto& r : runs) top = std::max(top, order.rank(r[k]));
    std::erase_if(runs, [&](const auto& r) { return order.rank(r[k]) != top; });
  }
  EXPECT_EQ(runs.size(), 1u);
  return runs.front();
}

}  // namespace

TEST(CanonicalRun, Fixtures) {
  auto a = fig3();
  auto run = canonical_run(a, w("a a a"), StateOrder::declaration(a));
  EXPECT_EQ(state_sequence(a, run.states), "q0 q2 q4 q5");
  EXPECT_EQ(run.weight(), Weight(0));
  auto b = fig4();
  EXPECT_EQ(state_sequence(b, canonical_run(b, w("a b c"), StateOrder::declaration(b)).states), "q p p s");
  auto c = one();
  EXPECT_EQ(state_sequence(c, canonical_run(c, w("a a"), StateOrder::declaration(c)).states), "s0 s0 s0");
  EXPECT_THROW(canonical_run(a, w("a"), StateOrder::declaration(a)), PreconditionError);
}

TEST(CanonicalRun, ReversedOrderPicksOtherRun) {
  auto a = fig3();
  auto order = StateOrder::from_names(a, {"q5", "q4", "q3", "q2", "q1", "q0"});
  EXPECT_EQ(state_sequence(a, canonical_run(a, w("a a a"), order).states), "q0 q1 q3 q5");
  EXPECT_THROW(StateOrder::from_names(a, {"q0", "q0", "q1", "q2", "q3", "q4"}), InputError);
}

TEST(CanonicalRun, AgreesWithCulling) {
  std::mt19937 rng(9);
  RandomSpec spec{4, 2};
  spec.density = 0.45;
  for (int i = 0; i < 40; ++i) {
    auto a = random_wfa(rng, spec);
    auto order = StateOrder::declaration(a);
    for (const auto& word : all_words(a.alphabet(), 4)) {
      if (oracle_eval(a, word).is_inf()) continue;
      ASSERT_EQ(canonical_run(a, word, order).states, oracle_canonical(a, word, order));
    }
  }
}

TEST(Difference, ZeroOnAcceptedWords) {
  auto d = difference_with_unambiguous(fig4(), fig4());
  for (const auto& word : all_words(fig4().alphabet(), 6)) {
    Weight v = eval(fig4(), word);
    EXPECT_EQ(eval(d, word), v.is_inf() ? Weight::inf() : Weight(0));
  }
  EXPECT_THROW(difference_with_unambiguous(fig3(), fig3()), PreconditionError);
}

TEST(EquivBounded, FindsShortestCounterexample) {
  EXPECT_EQ(equiv_bounded(fig3(), fig3(), 6), std::nullopt);
  auto b = fig3();
  b.set_weight(b.state_id("q3"), b.letter_id("a"), Weight(5), b.state_id("q5"));
  auto diff = equiv_bounded(fig3(), b, 6);
  EXPECT_EQ(diff, std::nullopt);  // q4 branch still gives 0
  b.set_weight(b.state_id("q4"), b.letter_id("a"), Weight(5), b.state_id("q5"));
  diff = equiv_bounded(fig3(), b, 6);
  ASSERT_TRUE(diff);
  EXPECT_EQ(*diff, w("a a a"));
  EXPECT_THROW(equiv_bounded(fig3(), fig4(), 3), InputError);
}
