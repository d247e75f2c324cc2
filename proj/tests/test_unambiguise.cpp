#include <gtest/gtest.h>

#include "support.hpp"
#include "tropwfa/unambiguise.hpp"

using namespace tropwfa;
using namespace testing_support;

namespace {

Wfa falsifier() {
  return parse_wfa(R"(wfa F
alphabet a b
states q0 r p f
initial q0
accepting f
trans q0 a 0 p
trans q0 a -5 r
trans p b 0 f
trans r b 5 f
)");
}

}  // namespace

TEST(Offset, OrderAndArithmetic) {
  EXPECT_LT(Offset::neg_inf(), Offset(-100));
  EXPECT_LT(Offset(100), Offset::pos_inf());
  EXPECT_EQ(Offset::pos_inf().plus(3), Offset::pos_inf());
  EXPECT_EQ(Offset(2).plus(-5), Offset(-3));
  EXPECT_EQ(Offset::neg_inf().to_string(), "-inf");
}

TEST(BuildUnambiguous, Fig3WindowStates) {
  auto a = fig3();
  auto order = StateOrder::declaration(a);
  auto u = build_unambiguous(a, 2, order);
  EXPECT_EQ(u.automaton.states(),
            (std::vector<std::string>{"q0|q0:0", "q1|q1:0,q2:-2", "q2|q1:2,q2:0", "q3|q3:0,q4:2", "q4|q3:-2,q4:0",
                                      "q5|q5:0"}));
  EXPECT_TRUE(is_unambiguous(u.automaton));
  EXPECT_EQ(equiv_bounded(u.automaton, a, 8), std::nullopt);
  EXPECT_EQ(u.automaton.accepting(), std::vector<StateId>{u.automaton.state_id("q5|q5:0")});

  // at the window state of q3, the transition to q5 is culled
  auto at_q3 = u.states[u.automaton.state_id("q3|q3:0,q4:2")];
  auto la = a.letter_id("a");
  EXPECT_EQ(window_successor(a, 2, at_q3, la, a.state_id("q5"), order), std::nullopt);
  EXPECT_TRUE(u.automaton.arcs(u.automaton.state_id("q3|q3:0,q4:2"), la).empty());
  auto at_q4 = u.states[u.automaton.state_id("q4|q3:-2,q4:0")];
  EXPECT_TRUE(window_successor(a, 2, at_q4, la, a.state_id("q5"), order));
}

TEST(BuildUnambiguous, CappingAtSmallBound) {
  auto a = fig3();
  auto u = build_unambiguous(a, 1, StateOrder::declaration(a));
  EXPECT_TRUE(u.automaton.has_state("q1|q1:0,q2:-inf"));
  EXPECT_TRUE(u.automaton.has_state("q2|q2:0"));
  EXPECT_THROW(build_unambiguous(a, -1, StateOrder::declaration(a)), InputError);
}

TEST(WindowSuccessor, RejectsForeignTransition) {
  auto a = fig3();
  auto s = initial_window_state(a);
  EXPECT_THROW(window_successor(a, 2, s, a.letter_id("a"), a.state_id("q5"), StateOrder::declaration(a)),
               InputError);
}

TEST(LiftCanonical, Fig3) {
  auto a = fig3();
  auto order = StateOrder::declaration(a);
  auto u = build_unambiguous(a, 2, order);
  auto run = lift_canonical(a, u, w("a a a"), order);
  EXPECT_EQ(state_sequence(u.automaton, run.states), "q0|q0:0 q2|q1:2,q2:0 q4|q3:-2,q4:0 q5|q5:0");
  EXPECT_EQ(run.weight(), Weight(0));
}

TEST(LiftCanonical, FailsExactlyBelowTheGap) {
  auto a = falsifier();
  auto order = StateOrder::declaration(a);
  auto g = find_u_witness(a, 4, 2);
  ASSERT_TRUE(g);
  EXPECT_EQ(g->gap, Weight(5));
  for (std::int64_t b = 0; b < 5; ++b) {
    auto u = build_unambiguous(a, b, order);
    EXPECT_THROW(lift_canonical(a, u, w("a b"), order), InvariantViolation) << "B=" << b;
  }
  for (std::int64_t b = 5; b <= 7; ++b) {
    auto u = build_unambiguous(a, b, order);
    auto run = lift_canonical(a, u, w("a b"), order);
    EXPECT_EQ(run.weight(), Weight(0));
    EXPECT_EQ(equiv_bounded(u.automaton, a, 6), std::nullopt);
  }
}

TEST(BuildUnambiguous, RandomAutomata) {
  std::mt19937 rng(13);
  RandomSpec spec{4, 2};
  spec.single_initial = true;
  spec.density = 0.4;
  for (int i = 0; i < 40; ++i) {
    auto a = random_wfa(rng, spec);
    auto order = StateOrder::declaration(a);
    for (std::int64_t b : {0, 2, 6}) {
      auto u = build_unambiguous(a, b, order);
      ASSERT_TRUE(is_unambiguous(u.automaton)) << serialize_wfa(a) << "B=" << b;
      for (const auto& word : all_words(a.alphabet(), 5)) {
        Weight want = oracle_eval(a, word);
        Weight got = eval(u.automaton, word);
        ASSERT_GE(got, want);
        if (want.is_inf()) continue;
        try {
          auto run = lift_canonical(a, u, word, order);
          ASSERT_EQ(got, want);
          ASSERT_EQ(run.weight(), want);
        } catch (const InvariantViolation&) {
          // a gap above b on this word
          ASSERT_TRUE(find_u_witness(a, b, word.size()));
        }
      }
      if (!find_u_witness(a, b, 5)) {
        for (const auto& word : all_words(a.alphabet(), 5)) ASSERT_EQ(eval(u.automaton, word), oracle_eval(a, word));
      }
    }
  }
}
