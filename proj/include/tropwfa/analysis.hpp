#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tropwfa/core.hpp"

namespace tropwfa {

/// A priority order on states, "higher is better": q ⪯ p iff rank(q) <= rank(p),
/// where the rank is the position in the ranking list.
class StateOrder {
 public:
  /// Declaration order: later-declared states have higher priority.
  static StateOrder declaration(const Wfa& a) {
    StateOrder o;
    o.rank_.resize(a.num_states());
    for (StateId q = 0; q < a.num_states(); ++q) o.rank_[q] = q;
    return o;
  }

  static StateOrder from_names(const Wfa& a, const std::vector<std::string>& ranking) {
    if (ranking.size() != a.num_states())
      throw InputError("state order must list every state exactly once");
    StateOrder o;
    o.rank_.assign(a.num_states(), a.num_states());
    for (std::size_t i = 0; i < ranking.size(); ++i) {
      auto q = a.state_id(ranking[i]);
      if (o.rank_[q] != a.num_states()) throw InputError("state order repeats '" + ranking[i] + "'");
      o.rank_[q] = i;
    }
    return o;
  }

  std::size_t rank(StateId q) const { return rank_.at(q); }

  /// q ⪯ p
  bool precedes_or_equal(StateId q, StateId p) const { return rank(q) <= rank(p); }

  std::size_t size() const { return rank_.size(); }

 private:
  std::vector<std::size_t> rank_;
};

/// Forward configurations for every prefix: table[i] = xconf(c0, w[0, i)).
inline std::vector<Configuration> forward_table(const Wfa& a, const LetterWord& w) {
  std::vector<Configuration> table;
  table.reserve(w.size() + 1);
  table.push_back(initial_configuration(a));
  for (auto l : w) table.push_back(step(a, table.back(), l));
  return table;
}

/// table[i][q] = mwt(q -w[i, n)-> target set).
inline std::vector<Configuration> backward_table(const Wfa& a, const LetterWord& w,
                                                 const std::vector<bool>& targets) {
  std::vector<Configuration> table(w.size() + 1, Configuration(a.num_states(), Weight::inf()));
  for (StateId q = 0; q < a.num_states(); ++q)
    if (targets[q]) table[w.size()][q] = Weight::zero();
  for (std::size_t i = w.size(); i-- > 0;) {
    for (StateId p = 0; p < a.num_states(); ++p) {
      Weight best = Weight::inf();
      for (const auto& arc : a.arcs(p, w[i])) best = min(best, arc.weight + table[i + 1][arc.target]);
      table[i][p] = best;
    }
  }
  return table;
}

inline std::vector<bool> accepting_mask(const Wfa& a) {
  std::vector<bool> mask(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q) mask[q] = a.is_accepting(q);
  return mask;
}

/// Exact ambiguity decision through the trimmed boolean self-product: the
/// automaton is ambiguous iff some pair (p, q) with p != q lies on a pair of
/// runs from initial states to accepting states.
inline bool is_unambiguous(const Wfa& a) {
  const auto n = a.num_states();
  auto idx = [n](StateId p, StateId q) { return p * n + q; };
  std::vector<bool> reach(n * n, false);
  std::deque<std::pair<StateId, StateId>> queue;
  for (auto p : a.initials())
    for (auto q : a.initials()) {
      reach[idx(p, q)] = true;
      queue.emplace_back(p, q);
    }
  std::vector<std::vector<std::size_t>> preds(n * n);
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    for (LetterId l = 0; l < a.num_letters(); ++l)
      for (const auto& x : a.arcs(p, l))
        for (const auto& y : a.arcs(q, l)) {
          auto t = idx(x.target, y.target);
          preds[t].push_back(idx(p, q));
          if (!reach[t]) {
            reach[t] = true;
            queue.emplace_back(x.target, y.target);
          }
        }
  }
  std::vector<bool> coreach(n * n, false);
  std::deque<std::size_t> back;
  for (auto p : a.accepting())
    for (auto q : a.accepting())
      if (reach[idx(p, q)]) {
        coreach[idx(p, q)] = true;
        back.push_back(idx(p, q));
      }
  while (!back.empty()) {
    auto t = back.front();
    back.pop_front();
    for (auto s : preds[t])
      if (!coreach[s]) {
        coreach[s] = true;
        back.push_back(s);
      }
  }
  for (StateId p = 0; p < n; ++p)
    for (StateId q = 0; q < n; ++q)
      if (p != q && coreach[idx(p, q)]) return false;
  return true;
}

/// Exact number of accepting runs on w (counting DP over the run DAG).
inline std::uint64_t count_accepting_runs(const Wfa& a, const Word& word) {
  auto w = a.encode(word);
  std::vector<std::uint64_t> count(a.num_states(), 0);
  for (auto q : a.initials()) count[q] = 1;
  for (auto l : w) {
    std::vector<std::uint64_t> next(a.num_states(), 0);
    for (StateId p = 0; p < a.num_states(); ++p) {
      if (!count[p]) continue;
      for (const auto& arc : a.arcs(p, l))
        if (__builtin_add_overflow(next[arc.target], count[p], &next[arc.target]))
          throw OverflowError("run count overflow");
    }
    count = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto q : a.accepting())
    if (__builtin_add_overflow(total, count[q], &total)) throw OverflowError("run count overflow");
  return total;
}

/// Visits every support set reachable by the boolean subset construction
/// from the initial set, in BFS order.
inline void for_each_reachable_support(const Wfa& a,
                                       const std::function<void(const std::vector<bool>&)>& visit) {
  std::set<std::vector<bool>> seen;
  std::deque<std::vector<bool>> queue;
  std::vector<bool> start(a.num_states(), false);
  for (auto q : a.initials()) start[q] = true;
  seen.insert(start);
  queue.push_back(start);
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    visit(cur);
    for (LetterId l = 0; l < a.num_letters(); ++l) {
      std::vector<bool> next(a.num_states(), false);
      for (StateId p = 0; p < a.num_states(); ++p)
        if (cur[p])
          for (const auto& arc : a.arcs(p, l)) next[arc.target] = true;
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
}

/// Maximal number of simultaneously reachable states.
inline std::size_t width(const Wfa& a) {
  std::size_t best = 0;
  for_each_reachable_support(a, [&](const std::vector<bool>& s) {
    std::size_t k = 0;
    for (bool b : s) k += b;
    best = std::max(best, k);
  });
  return best;
}

/// The canonical minimal accepting run under `order`: among all minimal
/// accepting runs, keep those whose last state is ⪯-maximal, then among those
/// the ones whose previous state is maximal, down to position 0.
///
/// Minimal runs are walked backwards over the forward table; a predecessor p
/// of the fixed suffix at position k survives iff fwd[k][p] + c = fwd[k+1][q].
inline Run canonical_run(const Wfa& a, const Word& word, const StateOrder& order) {
  if (order.size() != a.num_states()) throw InputError("state order size mismatch");
  auto w = a.encode(word);
  auto fwd = forward_table(a, w);
  Weight value = min_over_accepting(a, fwd.back());
  if (value.is_inf()) throw PreconditionError("canonical_run: no accepting run");

  const auto n = w.size();
  const StateId none = a.num_states();
  auto better = [&](StateId cand, StateId cur) { return cur == none || order.rank(cand) > order.rank(cur); };
  std::vector<StateId> states(n + 1, none);
  for (StateId q = 0; q < a.num_states(); ++q)
    if (a.is_accepting(q) && fwd[n][q] == value && better(q, states[n])) states[n] = q;
  for (std::size_t k = n; k-- > 0;) {
    const auto next = states[k + 1];
    for (StateId p = 0; p < a.num_states(); ++p) {
      if (fwd[k][p].is_inf()) continue;
      Weight c = a.weight(p, w[k], next);
      if (c.is_inf() || fwd[k][p] + c != fwd[k + 1][next]) continue;
      if (better(p, states[k])) states[k] = p;
    }
  }
  return make_run(a, word, states);
}

/// product(A, negate(U)); evaluates to A(w) - U(w) where both are finite.
inline Wfa difference_with_unambiguous(const Wfa& a, const Wfa& u) {
  if (!is_unambiguous(u))
    throw PreconditionError("difference_with_unambiguous: second automaton is ambiguous");
  return product(a, negate(u));
}

/// Enumerates words over an alphabet of `letters` symbols in shortlex order,
/// level by level, carrying a per-word state. `visit` returns false to stop.
/// `extend` computes the child state for one appended letter.
template <class State, class Extend, class Visit>
void shortlex_walk(std::size_t letters, std::size_t max_len, State root, Extend extend, Visit visit) {
  std::vector<std::pair<LetterWord, State>> level;
  level.emplace_back(LetterWord{}, std::move(root));
  for (std::size_t len = 0;; ++len) {
    for (const auto& [w, s] : level)
      if (!visit(w, s)) return;
    if (len == max_len) return;
    std::vector<std::pair<LetterWord, State>> next;
    next.reserve(level.size() * letters);
    for (const auto& [w, s] : level)
      for (LetterId l = 0; l < letters; ++l) {
        auto child = w;
        child.push_back(l);
        next.emplace_back(std::move(child), extend(s, l));
      }
    level = std::move(next);
  }
}

/// First shortlex word of length <= max_len on which A and B differ.
inline std::optional<Word> equiv_bounded(const Wfa& a, const Wfa& b, std::size_t max_len) {
  if (!same_alphabet(a, b)) throw InputError("equiv_bounded: alphabet mismatch");
  std::vector<LetterId> to_b;
  for (const auto& l : a.alphabet()) to_b.push_back(b.letter_id(l));
  using Pair = std::pair<Configuration, Configuration>;
  std::optional<Word> found;
  shortlex_walk(
      a.num_letters(), max_len, Pair{initial_configuration(a), initial_configuration(b)},
      [&](const Pair& s, LetterId l) { return Pair{step(a, s.first, l), step(b, s.second, to_b[l])}; },
      [&](const LetterWord& w, const Pair& s) {
        if (min_over_accepting(a, s.first) != min_over_accepting(b, s.second)) {
          found = a.decode(w);
          return false;
        }
        return true;
      });
  return found;
}

}  // namespace tropwfa
