#pragma once

#include <deque>
#include <set>
#include <string>
#include <vector>

#include "tropwfa/wfa.hpp"

namespace tropwfa {

/// c0: weight 0 on every initial state, infinity elsewhere.
inline Configuration initial_configuration(const Wfa& a) {
  Configuration c(a.num_states(), Weight::inf());
  for (auto q : a.initials()) c[q] = Weight::zero();
  return c;
}

/// One min-plus step of the configuration over a single letter.
inline Configuration step(const Wfa& a, const Configuration& c, LetterId letter) {
  Configuration next(a.num_states(), Weight::inf());
  for (StateId p = 0; p < a.num_states(); ++p) {
    if (c[p].is_inf()) continue;
    for (const auto& arc : a.arcs(p, letter))
      next[arc.target] = min(next[arc.target], c[p] + arc.weight);
  }
  return next;
}

inline Configuration xconf(const Wfa& a, Configuration c, const LetterWord& w) {
  if (c.size() != a.num_states()) throw InputError("configuration size mismatch");
  for (auto l : w) c = step(a, c, l);
  return c;
}

inline Configuration xconf(const Wfa& a, const Configuration& c, const Word& w) {
  return xconf(a, c, a.encode(w));
}

/// Minimum over states in `to` of the configuration.
inline Weight min_over(const Configuration& c, const std::vector<StateId>& to) {
  Weight best = Weight::inf();
  for (auto q : to) best = min(best, c.at(q));
  return best;
}

inline Weight min_over_accepting(const Wfa& a, const Configuration& c) {
  Weight best = Weight::inf();
  for (StateId q = 0; q < a.num_states(); ++q)
    if (a.is_accepting(q)) best = min(best, c[q]);
  return best;
}

inline Weight eval(const Wfa& a, const LetterWord& w) {
  return min_over_accepting(a, xconf(a, initial_configuration(a), w));
}

/// A(w): minimal weight of an accepting run from an initial state.
inline Weight eval(const Wfa& a, const Word& w) { return eval(a, a.encode(w)); }

inline Weight mwt(const Wfa& a, const std::vector<StateId>& from, const LetterWord& w,
                  const std::vector<StateId>& to) {
  Configuration c(a.num_states(), Weight::inf());
  for (auto q : from) c.at(q) = Weight::zero();
  return min_over(xconf(a, c, w), to);
}

/// mwt(from -w-> to): minimal weight of a run from a state in `from` to a
/// state in `to` over w.
inline Weight mwt(const Wfa& a, const std::vector<StateId>& from, const Word& w,
                  const std::vector<StateId>& to) {
  return mwt(a, from, a.encode(w), to);
}

inline Weight mwt(const Wfa& a, const std::vector<std::string>& from, const Word& w,
                  const std::vector<std::string>& to) {
  return mwt(a, a.state_ids(from), a.encode(w), a.state_ids(to));
}

inline std::vector<StateId> all_states(const Wfa& a) {
  std::vector<StateId> out(a.num_states());
  for (StateId q = 0; q < out.size(); ++q) out[q] = q;
  return out;
}

/// States reachable from an initial state over finite arcs.
inline std::vector<bool> reachable_states(const Wfa& a) {
  std::vector<bool> seen(a.num_states(), false);
  std::deque<StateId> queue;
  for (auto q : a.initials()) {
    seen[q] = true;
    queue.push_back(q);
  }
  while (!queue.empty()) {
    auto p = queue.front();
    queue.pop_front();
    for (LetterId l = 0; l < a.num_letters(); ++l)
      for (const auto& arc : a.arcs(p, l))
        if (!seen[arc.target]) {
          seen[arc.target] = true;
          queue.push_back(arc.target);
        }
  }
  return seen;
}

/// States from which an accepting state is reachable over finite arcs.
inline std::vector<bool> coreachable_states(const Wfa& a) {
  std::vector<std::vector<StateId>> preds(a.num_states());
  for (StateId p = 0; p < a.num_states(); ++p)
    for (LetterId l = 0; l < a.num_letters(); ++l)
      for (const auto& arc : a.arcs(p, l)) preds[arc.target].push_back(p);
  std::vector<bool> seen(a.num_states(), false);
  std::deque<StateId> queue;
  for (auto q : a.accepting()) {
    seen[q] = true;
    queue.push_back(q);
  }
  while (!queue.empty()) {
    auto q = queue.front();
    queue.pop_front();
    for (auto p : preds[q])
      if (!seen[p]) {
        seen[p] = true;
        queue.push_back(p);
      }
  }
  return seen;
}

/// Restriction to the states with keep[q]; declaration order and alphabet
/// are preserved.
inline Wfa restrict_states(const Wfa& a, const std::vector<bool>& keep) {
  Wfa out(a.name());
  for (const auto& l : a.alphabet()) out.add_letter(l);
  std::vector<StateId> remap(a.num_states(), 0);
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (!keep[q]) continue;
    remap[q] = out.add_state(a.state_name(q));
    out.set_initial(remap[q], a.is_initial(q));
    out.set_accepting(remap[q], a.is_accepting(q));
  }
  for (StateId p = 0; p < a.num_states(); ++p) {
    if (!keep[p]) continue;
    for (LetterId l = 0; l < a.num_letters(); ++l)
      for (const auto& arc : a.arcs(p, l))
        if (keep[arc.target]) out.add_transition(remap[p], l, arc.weight, remap[arc.target]);
  }
  return out;
}

/// Removes states unreachable from the initial states. Idempotent, and eval
/// is unchanged on every word.
inline Wfa trim(const Wfa& a) { return restrict_states(a, reachable_states(a)); }

/// Additionally removes states that cannot reach an accepting state.
/// Initial states are always kept so the result still has an initial state.
inline Wfa trim_coaccessible(const Wfa& a) {
  auto reach = reachable_states(a);
  auto coreach = coreachable_states(a);
  std::vector<bool> keep(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q)
    keep[q] = reach[q] && (coreach[q] || a.is_initial(q));
  return restrict_states(a, keep);
}

inline Wfa remove_state(const Wfa& a, StateId victim) {
  std::vector<bool> keep(a.num_states(), true);
  keep.at(victim) = false;
  return restrict_states(a, keep);
}

/// Merges `drop` into `keep`: arcs of both are redirected to `keep`, taking
/// the minimum where two arcs collide. The merged state is initial (resp.
/// accepting) if either was.
inline Wfa merge_states(const Wfa& a, StateId keep, StateId drop) {
  if (keep == drop) return a;
  auto target = [&](StateId q) { return q == drop ? keep : q; };
  Wfa merged(a.name());
  for (const auto& l : a.alphabet()) merged.add_letter(l);
  std::vector<StateId> remap(a.num_states(), 0);
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (q == drop) continue;
    remap[q] = merged.add_state(a.state_name(q));
  }
  remap[drop] = remap.at(keep);
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (a.is_initial(q)) merged.set_initial(remap[q]);
    if (a.is_accepting(q)) merged.set_accepting(remap[q]);
  }
  for (StateId p = 0; p < a.num_states(); ++p)
    for (LetterId l = 0; l < a.num_letters(); ++l)
      for (const auto& arc : a.arcs(p, l)) {
        auto from = remap[target(p)];
        auto to = remap[target(arc.target)];
        merged.set_weight(from, l, min(arc.weight, merged.weight(from, l, to)), to);
      }
  return merged;
}

/// A⁻: every finite weight negated, structure unchanged.
inline Wfa negate(const Wfa& a) {
  Wfa out(a.name());
  for (const auto& l : a.alphabet()) out.add_letter(l);
  for (StateId q = 0; q < a.num_states(); ++q) {
    out.add_state(a.state_name(q));
    out.set_initial(q, a.is_initial(q));
    out.set_accepting(q, a.is_accepting(q));
  }
  for (StateId p = 0; p < a.num_states(); ++p)
    for (LetterId l = 0; l < a.num_letters(); ++l)
      for (const auto& arc : a.arcs(p, l)) out.add_transition(p, l, arc.weight.negated(), arc.target);
  return out;
}

inline bool same_alphabet(const Wfa& a, const Wfa& b) {
  std::set<std::string> x(a.alphabet().begin(), a.alphabet().end());
  std::set<std::string> y(b.alphabet().begin(), b.alphabet().end());
  return x == y;
}

inline std::string pair_name(const std::string& p, const std::string& q) {
  return "(" + p + "," + q + ")";
}

/// Product automaton: B(w) = A1(w) + A2(w). States are all pairs in
/// row-major order; the alphabet follows A1's order.
inline Wfa product(const Wfa& a1, const Wfa& a2) {
  if (!same_alphabet(a1, a2)) throw InputError("product: alphabet mismatch");
  Wfa out(a1.name() + "x" + a2.name());
  for (const auto& l : a1.alphabet()) out.add_letter(l);
  const auto n2 = a2.num_states();
  for (StateId p = 0; p < a1.num_states(); ++p)
    for (StateId q = 0; q < n2; ++q) {
      auto s = out.add_state(pair_name(a1.state_name(p), a2.state_name(q)));
      out.set_initial(s, a1.is_initial(p) && a2.is_initial(q));
      out.set_accepting(s, a1.is_accepting(p) && a2.is_accepting(q));
    }
  for (LetterId l1 = 0; l1 < a1.num_letters(); ++l1) {
    LetterId l2 = a2.letter_id(a1.letter_name(l1));
    for (StateId p = 0; p < a1.num_states(); ++p)
      for (StateId q = 0; q < n2; ++q)
        for (const auto& x : a1.arcs(p, l1))
          for (const auto& y : a2.arcs(q, l2))
            out.add_transition(p * n2 + q, l1, x.weight + y.weight, x.target * n2 + y.target);
  }
  return out;
}

/// Single initial state and at most one finite arc per (state, letter).
inline bool is_deterministic(const Wfa& a) {
  if (a.initials().size() != 1) return false;
  for (StateId p = 0; p < a.num_states(); ++p)
    for (LetterId l = 0; l < a.num_letters(); ++l)
      if (a.arcs(p, l).size() > 1) return false;
  return true;
}

inline void require_single_initial(const Wfa& a, const char* op) {
  if (a.initials().size() != 1)
    throw PreconditionError(std::string(op) + ": automaton must have exactly one initial state");
}

}  // namespace tropwfa
