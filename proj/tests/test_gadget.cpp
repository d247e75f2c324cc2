#include <gtest/gtest.h>

#include "support.hpp"
#include "tropwfa/gadget.hpp"

using namespace tropwfa;
using namespace testing_support;

namespace {

GadgetOutput gadget() { return build_gadget(BaseSpec{gbase(), w("@")}); }

}  // namespace

TEST(Gadget, WidthSeven) {
  auto g = gadget();
  EXPECT_EQ(width(g.aprime), 7u);
  EXPECT_EQ(g.aprime.initials().size(), 2u);
  EXPECT_EQ(g.aprime.accepting().size(), g.aprime.num_states());
  EXPECT_EQ(g.letters.size(), 14u);
}

TEST(Gadget, DollarEntersComponents) {
  auto g = gadget();
  const auto& a = g.aprime;
  EXPECT_EQ(eval(a, w("$")), Weight(0));
  auto c = xconf(a, initial_configuration(a), w("$"));
  auto s = support(c);
  std::vector<StateId> want{g.q_a};
  want.insert(want.end(), g.q_c.begin(), g.q_c.end());
  EXPECT_EQ(s, want);
  EXPECT_EQ(eval(a, w("a")), Weight::inf());
}

TEST(Gadget, KillingLetters) {
  auto g = gadget();
  const auto& a = g.aprime;
  for (const auto& word : all_words(g.letters, 3)) {
    auto c = xconf(a, initial_configuration(a), word);
    if (std::find(word.begin(), word.end(), "a") != word.end()) {
      ASSERT_TRUE(c[g.q_a].is_inf());
    }
    auto dollar = std::find(word.begin(), word.end(), "$");
    for (int i = 0; i < 6; ++i)
      if (std::find(dollar, word.end(), "X" + std::to_string(i + 1)) != word.end()) {
        ASSERT_TRUE(c[g.q_c[i]].is_inf());
      }
  }
}

TEST(Gadget, RejectsBadBases) {
  auto bad = gbase();
  bad.add_state("dead");
  EXPECT_THROW(build_gadget(BaseSpec{bad, w("@")}), InputError);
  auto heavy = gbase();
  heavy.set_weight(0, heavy.letter_id("@"), Weight(2), 0);
  EXPECT_THROW(build_gadget(BaseSpec{heavy, w("@")}), InputError);
  EXPECT_THROW(build_gadget(BaseSpec{fig4(), w("a")}), InputError);
}

TEST(HardWord, Shape) {
  auto h = hard_word(w("@"), 1);
  EXPECT_EQ(h.w.size(), 22u);
  EXPECT_EQ(hard_word(w("@"), 2).suffixes[1], w("a"));
  EXPECT_EQ(h.suffixes[0], Word{});
  EXPECT_EQ(h.suffixes[6], w("a X1 X2 X3 X4 X5"));
  EXPECT_THROW(hard_word(w("@"), 0), InputError);
}

TEST(JumpProfile, Values) {
  auto g = gadget();
  for (std::size_t m : {1, 2, 3}) {
    auto r = check_jump_profile(g, m);
    EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures.front());
    for (int i = 0; i <= 6; ++i) EXPECT_EQ(r.values[i], Weight(i * static_cast<std::int64_t>(m)));
    EXPECT_EQ(r.q_a_minimum, Weight(0));
  }
  auto r = check_jump_profile(g, 2);
  std::vector<Weight> want;
  for (int i = 0; i <= 6; ++i) want.push_back(Weight(2 * i));
  EXPECT_EQ(r.values, want);
}

TEST(JumpProfile, MutationIsCaught) {
  auto g = gadget();
  auto c1 = g.aprime.letter_id("C1");
  g.aprime.set_weight(g.q_c[0], c1, Weight(-2), g.q_c[0]);
  auto r = check_jump_profile(g, 1);
  EXPECT_FALSE(r.ok());
  EXPECT_NE(std::find(r.failed_indices.begin(), r.failed_indices.end(), 1), r.failed_indices.end());
}

TEST(Refute, DeletingQa) {
  auto g = gadget();
  auto cand = remove_state(g.aprime, g.q_a);
  EXPECT_EQ(width(cand), 6u);
  auto r = refute_low_width_candidate(cand, g, 13);
  ASSERT_EQ(r.status, RefuteStatus::Disagreement);
  EXPECT_EQ(r.index, 0);
  EXPECT_EQ(r.candidate_value, Weight(13));
  EXPECT_EQ(r.gadget_value, Weight(0));
  EXPECT_EQ(refute_low_width_candidate(cand, g, 12).status, RefuteStatus::MTooSmall);
}

TEST(Refute, GadgetItselfIsTooWide) {
  auto g = gadget();
  auto r = refute_low_width_candidate(g.aprime, g, 13);
  EXPECT_EQ(r.status, RefuteStatus::WidthTooLarge);
  EXPECT_EQ(r.width, 7u);
  EXPECT_FALSE(r.word);
}

TEST(Refute, MergingC5AndC6) {
  auto g = gadget();
  auto cand = merge_states(g.aprime, g.q_c[4], g.q_c[5]);
  EXPECT_EQ(width(cand), 6u);
  auto r = refute_low_width_candidate(cand, g, 13);
  ASSERT_EQ(r.status, RefuteStatus::Disagreement);
  EXPECT_EQ(r.index, 6);
  EXPECT_EQ(r.candidate_value, Weight(5 * 13));
  EXPECT_EQ(r.gadget_value, Weight(6 * 13));
}

TEST(Refute, AlphabetMismatch) {
  auto g = gadget();
  EXPECT_THROW(refute_low_width_candidate(fig4(), g, 13), InputError);
}
