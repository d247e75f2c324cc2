#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tropwfa/analysis.hpp"

namespace tropwfa {

/// Base automaton for the width gadget together with its loop word ζ.
struct BaseSpec {
  Wfa base;
  Word zeta;
};

struct GadgetOutput {
  Wfa aprime;
  Word zeta;
  StateId q_a = 0;
  std::array<StateId, 6> q_c{};
  Word letters;  // "$", "C1".."C6", "a", "X1".."X6"
};

inline Word gadget_letters() {
  Word out{"$"};
  for (int i = 1; i <= 6; ++i) out.push_back("C" + std::to_string(i));
  out.push_back("a");
  for (int i = 1; i <= 6; ++i) out.push_back("X" + std::to_string(i));
  return out;
}

/// Throws InputError naming the first property the base violates.
inline void validate_base(const BaseSpec& b) {
  const auto& a = b.base;
  if (a.initials().size() != 1) throw InputError("base: must have exactly one initial state");
  for (StateId q = 0; q < a.num_states(); ++q)
    if (!a.is_accepting(q)) throw InputError("base: state '" + a.state_name(q) + "' is not accepting");
  for (const auto& l : gadget_letters())
    if (a.has_letter(l)) throw InputError("base: letter '" + l + "' is reserved for the gadget");
  if (!a.has_letter("@")) throw InputError("base: no letter '@'");
  const auto q0 = a.initials().front();
  const auto at = a.letter_id("@");
  for (StateId p = 0; p < a.num_states(); ++p)
    for (const auto& arc : a.arcs(p, at))
      if (arc.target != q0) throw InputError("base: an '@' transition does not enter the initial state");
  if (width(a) > 6) throw InputError("base: width exceeds 6");
  if (b.zeta.empty()) throw InputError("base: zeta must be non-empty");
  if (mwt(a, std::vector<StateId>{q0}, b.zeta, std::vector<StateId>{q0}) != Weight(1))
    throw InputError("base: mwt(q0 -zeta-> q0) must be 1");
}

/// Adds q_a and q_C1..q_C6. From q0 a "$" enters every q_Ci with weight 0;
/// q_Ci counts its own letter Ci with weight -1, dies on Xi and idles with
/// weight 0 on everything else; q_a idles on everything except "a".
inline GadgetOutput build_gadget(const BaseSpec& b) {
  validate_base(b);
  GadgetOutput g;
  g.aprime = b.base;
  g.aprime.set_name(b.base.name() + "_gadget");
  g.zeta = b.zeta;
  g.letters = gadget_letters();
  auto& a = g.aprime;
  for (const auto& l : g.letters) a.add_letter(l);

  auto fresh = [&](const std::string& base) {
    std::string name = base;
    while (a.has_state(name)) name += "'";
    return a.add_state(name);
  };
  g.q_a = fresh("q_a");
  for (int i = 0; i < 6; ++i) g.q_c[i] = fresh("q_C" + std::to_string(i + 1));
  for (StateId q = 0; q < a.num_states(); ++q) a.set_accepting(q);
  a.set_initial(g.q_a);

  const auto q0 = b.base.initials().front();
  const auto dollar = a.letter_id("$");
  const auto kill_a = a.letter_id("a");
  for (LetterId l = 0; l < a.num_letters(); ++l)
    if (l != kill_a) a.add_transition(g.q_a, l, Weight(0), g.q_a);
  for (int i = 0; i < 6; ++i) {
    const auto q = g.q_c[i];
    const auto own = a.letter_id("C" + std::to_string(i + 1));
    const auto kill = a.letter_id("X" + std::to_string(i + 1));
    a.add_transition(q0, dollar, Weight(0), q);
    for (LetterId l = 0; l < a.num_letters(); ++l) {
      if (l == kill) continue;
      a.add_transition(q, l, Weight(l == own ? -1 : 0), q);
    }
  }
  return g;
}

struct HardWord {
  Word w;                     // ζ^{6m} $ C1^{5m} C2^{4m} C3^{3m} C4^{2m} C5^{m}
  std::vector<Word> suffixes;  // x_0 = ε, x_1 = a, x_i = a X1 .. X_{i-1}
};

inline HardWord hard_word(const Word& zeta, std::size_t m) {
  if (m == 0) throw InputError("hard_word: m must be at least 1");
  HardWord h;
  for (std::size_t i = 0; i < 6 * m; ++i) h.w.insert(h.w.end(), zeta.begin(), zeta.end());
  h.w.push_back("$");
  for (std::size_t i = 1; i <= 5; ++i)
    for (std::size_t j = 0; j < (6 - i) * m; ++j) h.w.push_back("C" + std::to_string(i));
  h.suffixes.push_back({});
  h.suffixes.push_back({"a"});
  for (int i = 2; i <= 6; ++i) {
    auto x = h.suffixes.back();
    x.push_back("X" + std::to_string(i - 1));
    h.suffixes.push_back(std::move(x));
  }
  return h;
}

inline Word concat(Word x, const Word& y) {
  x.insert(x.end(), y.begin(), y.end());
  return x;
}

struct JumpReport {
  std::int64_t m = 0;
  std::vector<Weight> values;            // A'(w x_i), i = 0..6
  std::vector<Weight> component_minima;  // mwt(Q0 -w-> q_Ci), i = 1..6
  Weight q_a_minimum;
  std::vector<std::string> failures;
  std::vector<int> failed_indices;

  bool ok() const { return failures.empty(); }
};

inline JumpReport check_jump_profile(const GadgetOutput& g, std::size_t m) {
  auto h = hard_word(g.zeta, m);
  JumpReport r;
  r.m = static_cast<std::int64_t>(m);
  auto fail = [&](int i, const std::string& what, Weight got, Weight want) {
    r.failures.push_back("i=" + std::to_string(i) + ": " + what + " = " + got.to_string() + ", expected " +
                         want.to_string());
    if (r.failed_indices.empty() || r.failed_indices.back() != i) r.failed_indices.push_back(i);
  };
  auto c = xconf(g.aprime, initial_configuration(g.aprime), h.w);
  r.q_a_minimum = c[g.q_a];
  if (r.q_a_minimum != Weight(0)) fail(0, "mwt(Q0 -w-> q_a)", r.q_a_minimum, Weight(0));
  for (int i = 0; i <= 6; ++i) {
    const Weight want(i * r.m);
    if (i > 0) {
      r.component_minima.push_back(c[g.q_c[i - 1]]);
      if (r.component_minima.back() != want)
        fail(i, "mwt(Q0 -w-> q_C" + std::to_string(i) + ")", r.component_minima.back(), want);
    }
    r.values.push_back(eval(g.aprime, concat(h.w, h.suffixes[i])));
    if (r.values.back() != want) fail(i, "A'(w x_" + std::to_string(i) + ")", r.values.back(), want);
  }
  return r;
}

enum class RefuteStatus { Disagreement, WidthTooLarge, MTooSmall, NoDisagreement };

inline std::string to_string(RefuteStatus s) {
  switch (s) {
    case RefuteStatus::Disagreement: return "disagreement";
    case RefuteStatus::WidthTooLarge: return "width >= 7";
    case RefuteStatus::MTooSmall: return "m too small";
    case RefuteStatus::NoDisagreement: return "no disagreement";
  }
  return "?";
}

struct Refutation {
  RefuteStatus status = RefuteStatus::NoDisagreement;
  std::size_t width = 0;
  std::optional<Word> word;
  int index = -1;  // i of the disagreeing w x_i
  Weight candidate_value;
  Weight gadget_value;
};

/// A candidate of width at most 6 with m > 12·‖cand‖ must disagree with A'
/// on some w x_i; this finds the first such i.
inline Refutation refute_low_width_candidate(const Wfa& cand, const GadgetOutput& g, std::size_t m) {
  if (!same_alphabet(cand, g.aprime)) throw InputError("refute: candidate must use the gadget alphabet");
  Refutation r;
  r.width = width(cand);
  if (r.width >= 7) {
    r.status = RefuteStatus::WidthTooLarge;
    return r;
  }
  std::int64_t threshold = 0;
  if (__builtin_mul_overflow(cand.max_abs_weight(), std::int64_t{12}, &threshold) ||
      static_cast<std::uint64_t>(m) <= static_cast<std::uint64_t>(threshold)) {
    r.status = RefuteStatus::MTooSmall;
    return r;
  }
  auto h = hard_word(g.zeta, m);
  for (int i = 0; i <= 6; ++i) {
    auto word = concat(h.w, h.suffixes[i]);
    Weight want = eval(g.aprime, word);
    Weight got = eval(cand, word);
    if (got != want) {
      r.status = RefuteStatus::Disagreement;
      r.word = std::move(word);
      r.index = i;
      r.candidate_value = got;
      r.gadget_value = want;
      return r;
    }
  }
  return r;
}

}  // namespace tropwfa
