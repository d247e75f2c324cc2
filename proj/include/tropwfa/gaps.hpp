#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tropwfa/analysis.hpp"

namespace tropwfa {

enum class WitnessKind { U, D };

inline const char* to_string(WitnessKind k) { return k == WitnessKind::U ? "u" : "d"; }

enum class SearchMode { Fast, Exhaustive };

/// A split word xy with two runs certifying a gap after x.
///
/// rho runs over xy (through p1 after x, ending in accepting p2). chi runs
/// over x for D-type witnesses and over xy for U-type ones (through q1 after
/// x, ending in accepting q2). `gap` is the value reported by whoever built
/// the witness; verification recomputes it and never trusts it.
struct GapWitness {
  WitnessKind kind = WitnessKind::U;
  Word x;
  Word y;
  Run rho;
  Run chi;
  Weight gap;

  Word xy() const {
    Word w = x;
    w.insert(w.end(), y.begin(), y.end());
    return w;
  }
  StateId p1() const { return rho.states.at(x.size()); }
  StateId p2() const { return rho.states.back(); }
  StateId q1() const { return chi.states.at(x.size()); }
  std::optional<StateId> q2() const {
    if (chi.states.size() == x.size() + y.size() + 1) return chi.states.back();
    return std::nullopt;
  }
};

struct WitnessCheck {
  bool ok = false;
  std::string reason;
  Weight gap;
};

namespace detail {

inline void check_bound(std::int64_t bound) {
  if (bound < 0) throw InputError("gap bound must be a natural number");
}

/// Runs given as state sequences must fit the word and the automaton.
/// Returns false (with a reason) when a step has no finite transition.
inline bool weigh_run(const Wfa& a, const Word& word, const std::vector<StateId>& states,
                      std::vector<Weight>& weights, std::string& reason) {
  if (states.size() != word.size() + 1) throw InputError("malformed run: length does not match word");
  weights.clear();
  for (auto q : states)
    if (q >= a.num_states()) throw InputError("malformed run: state out of range");
  for (std::size_t i = 0; i < word.size(); ++i) {
    Weight c = a.weight(states[i], a.letter_id(word[i]), states[i + 1]);
    if (c.is_inf()) {
      reason = "no transition (" + a.state_name(states[i]) + ", " + word[i] + ", " +
               a.state_name(states[i + 1]) + ")";
      return false;
    }
    weights.push_back(c);
  }
  return true;
}

/// Backtracks a minimal run to `end` at position k over the forward table,
/// preferring the lowest-numbered predecessor.
inline std::vector<StateId> minimal_prefix(const Wfa& a, const LetterWord& w,
                                           const std::vector<Configuration>& fwd, std::size_t k,
                                           StateId end) {
  std::vector<StateId> states(k + 1);
  states[k] = end;
  for (std::size_t i = k; i-- > 0;) {
    const auto next = states[i + 1];
    for (StateId p = 0; p < a.num_states(); ++p) {
      if (fwd[i][p].is_inf()) continue;
      Weight c = a.weight(p, w[i], next);
      if (c.is_finite() && fwd[i][p] + c == fwd[i + 1][next]) {
        states[i] = p;
        break;
      }
    }
  }
  return states;
}

/// Extends from `start` at position k to the end of w along arcs that are
/// tight for the backward table, preferring the lowest-numbered target.
inline std::vector<StateId> minimal_suffix(const Wfa& a, const LetterWord& w,
                                           const std::vector<Configuration>& bwd, std::size_t k,
                                           StateId start) {
  std::vector<StateId> states{start};
  for (std::size_t i = k; i < w.size(); ++i) {
    const auto cur = states.back();
    for (const auto& arc : a.arcs(cur, w[i]))
      if (arc.weight + bwd[i + 1][arc.target] == bwd[i][cur]) {
        states.push_back(arc.target);
        break;
      }
  }
  return states;
}

inline GapWitness assemble(const Wfa& a, WitnessKind kind, const Word& word, std::size_t k,
                           std::vector<StateId> rho_states, std::vector<StateId> chi_states) {
  GapWitness g;
  g.kind = kind;
  g.x.assign(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(k));
  g.y.assign(word.begin() + static_cast<std::ptrdiff_t>(k), word.end());
  g.rho = make_run(a, word, rho_states);
  g.chi = make_run(a, kind == WitnessKind::U ? word : g.x, chi_states);
  g.gap = difference(g.rho.prefix_weight(k), g.chi.prefix_weight(k));
  return g;
}

/// Per-word tables used by every search mode.
struct WordTables {
  LetterWord w;
  std::vector<Configuration> fwd;
  std::vector<Configuration> bwd;  // to accepting states
  Weight value;
};

inline WordTables tables_for(const Wfa& a, const LetterWord& w, std::vector<Configuration> fwd) {
  WordTables t{w, std::move(fwd), {}, Weight::inf()};
  t.value = min_over_accepting(a, t.fwd.back());
  if (t.value.is_finite()) t.bwd = backward_table(a, w, accepting_mask(a));
  return t;
}

/// Witness at split k built from DP tables: rho through the on-minimal state
/// with the highest prefix weight, chi through the lowest minimal endpoint
/// (with an accepting continuation for U-type).
inline std::optional<GapWitness> witness_at_split_fast(const Wfa& a, WitnessKind kind,
                                                       std::int64_t bound, const WordTables& t,
                                                       std::size_t k) {
  const auto& fk = t.fwd[k];
  const auto& bk = t.bwd[k];
  Weight low = min_over(fk, all_states(a));
  std::optional<StateId> p1;
  for (StateId p = 0; p < a.num_states(); ++p)
    if (fk[p].is_finite() && fk[p] + bk[p] == t.value && (!p1 || fk[*p1] < fk[p])) p1 = p;
  std::optional<StateId> q1;
  for (StateId q = 0; q < a.num_states() && !q1; ++q)
    if (fk[q] == low && (kind == WitnessKind::D || bk[q].is_finite())) q1 = q;
  if (!p1 || !q1) return std::nullopt;
  if (difference(fk[*p1], low) <= Weight(bound)) return std::nullopt;

  auto word = a.decode(t.w);
  auto rho = minimal_prefix(a, t.w, t.fwd, k, *p1);
  auto rho_tail = minimal_suffix(a, t.w, t.bwd, k, *p1);
  rho.insert(rho.end(), rho_tail.begin() + 1, rho_tail.end());
  auto chi = minimal_prefix(a, t.w, t.fwd, k, *q1);
  if (kind == WitnessKind::U) {
    auto chi_tail = minimal_suffix(a, t.w, t.bwd, k, *q1);
    chi.insert(chi.end(), chi_tail.begin() + 1, chi_tail.end());
  }
  return assemble(a, kind, word, k, std::move(rho), std::move(chi));
}

/// Depth-first enumeration of runs over w[from, to) starting at `start`,
/// pruning any partial run whose weight plus the best completion exceeds
/// `budget`. Calls `emit` on every complete run with weight exactly `budget`
/// and an endpoint accepted by `accept_end`.
template <class AcceptEnd, class Emit>
void enumerate_tight_runs(const Wfa& a, const LetterWord& w, std::size_t from, std::size_t to,
                          StateId start, const std::vector<Configuration>& completion, Weight budget,
                          AcceptEnd accept_end, Emit emit) {
  std::vector<StateId> path{start};
  std::vector<Weight> partial{Weight::zero()};
  std::function<bool()> dfs = [&]() -> bool {
    const auto pos = from + path.size() - 1;
    const auto cur = path.back();
    if (pos == to) {
      if (partial.back() == budget && accept_end(cur)) return emit(path);
      return true;
    }
    for (const auto& arc : a.arcs(cur, w[pos])) {
      Weight wt = partial.back() + arc.weight;
      if (wt + completion[pos + 1 - from][arc.target] > budget) continue;
      path.push_back(arc.target);
      partial.push_back(wt);
      bool go_on = dfs();
      path.pop_back();
      partial.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  dfs();
}

/// Exhaustive counterpart of witness_at_split_fast: enumerates every minimal
/// accepting run on w and every minimal run on x explicitly.
inline std::optional<GapWitness> witness_at_split_exhaustive(const Wfa& a, WitnessKind kind,
                                                             std::int64_t bound,
                                                             const WordTables& t, std::size_t k) {
  const auto n = t.w.size();
  const auto q0 = a.initials().front();
  auto is_acc = [&](StateId q) { return a.is_accepting(q); };
  auto any = [](StateId) { return true; };

  std::optional<std::vector<StateId>> best_rho;
  Weight best_prefix = Weight::inf();
  enumerate_tight_runs(a, t.w, 0, n, q0, t.bwd, t.value, is_acc, [&](const std::vector<StateId>& run) {
    Weight prefix = Weight::zero();
    for (std::size_t i = 0; i < k; ++i) prefix += a.weight(run[i], t.w[i], run[i + 1]);
    if (!best_rho || best_prefix < prefix) {
      best_rho = run;
      best_prefix = prefix;
    }
    return true;
  });
  if (!best_rho) return std::nullopt;

  LetterWord x(t.w.begin(), t.w.begin() + static_cast<std::ptrdiff_t>(k));
  auto to_anything = backward_table(a, x, std::vector<bool>(a.num_states(), true));
  Weight low = to_anything[0][q0];
  std::optional<std::vector<StateId>> chi;
  enumerate_tight_runs(a, t.w, 0, k, q0, to_anything, low, any, [&](const std::vector<StateId>& run) {
    if (kind == WitnessKind::D) {
      chi = run;
      return false;
    }
    // accepting continuation over y: the first accepting run found by DFS
    std::vector<Configuration> tail(t.bwd.begin() + static_cast<std::ptrdiff_t>(k), t.bwd.end());
    Weight need = tail[0][run.back()];
    if (need.is_inf()) return true;
    enumerate_tight_runs(a, t.w, k, n, run.back(), tail, need, is_acc,
                         [&](const std::vector<StateId>& cont) {
                           auto full = run;
                           full.insert(full.end(), cont.begin() + 1, cont.end());
                           chi = std::move(full);
                           return false;
                         });
    return !chi.has_value();
  });
  if (!chi) return std::nullopt;
  if (difference(best_prefix, low) <= Weight(bound)) return std::nullopt;
  return assemble(a, kind, a.decode(t.w), k, *best_rho, *chi);
}

inline std::optional<GapWitness> find_witness(const Wfa& a, WitnessKind kind, std::int64_t bound,
                                              std::size_t max_len, SearchMode mode) {
  check_bound(bound);
  require_single_initial(a, "find_witness");
  std::optional<GapWitness> found;
  shortlex_walk(
      a.num_letters(), max_len, std::vector<Configuration>{initial_configuration(a)},
      [&](const std::vector<Configuration>& fwd, LetterId l) {
        auto next = fwd;
        next.push_back(step(a, fwd.back(), l));
        return next;
      },
      [&](const LetterWord& w, const std::vector<Configuration>& fwd) {
        auto t = tables_for(a, w, fwd);
        if (t.value.is_inf()) return true;
        for (std::size_t k = 0; k <= w.size(); ++k) {
          found = mode == SearchMode::Fast ? witness_at_split_fast(a, kind, bound, t, k)
                                           : witness_at_split_exhaustive(a, kind, bound, t, k);
          if (found) return false;
        }
        return true;
      });
  return found;
}

}  // namespace detail

/// Checks the witness conditions by exact DP:
///   chi[x] is a minimal-weight run on x,
///   rho is a minimal accepting run on xy,
///   wt(rho[x]) - wt(chi[x]) > bound,
/// and for U-type, chi continues over y to an accepting state. A U-type chi
/// given only over x is completed with a minimal accepting continuation.
inline WitnessCheck check_witness(const Wfa& a, WitnessKind kind, std::int64_t bound,
                                  const GapWitness& g) {
  detail::check_bound(bound);
  require_single_initial(a, "verify_witness");
  WitnessCheck res;
  const auto q0 = a.initials().front();
  const auto xy = g.xy();
  const auto k = g.x.size();
  if (g.rho.word != xy) throw InputError("malformed witness: rho is not over xy");
  std::vector<Weight> rho_w, chi_w;
  if (!detail::weigh_run(a, xy, g.rho.states, rho_w, res.reason)) return res;

  Word chi_word = g.chi.word;
  std::vector<StateId> chi_states = g.chi.states;
  if (chi_word != g.x && chi_word != xy) throw InputError("malformed witness: chi is over neither x nor xy");
  if (kind == WitnessKind::D && chi_word != g.x) {
    chi_word = g.x;
    chi_states.resize(k + 1);
  }
  if (!detail::weigh_run(a, chi_word, chi_states, chi_w, res.reason)) return res;

  if (g.rho.states.front() != q0 || chi_states.front() != q0) {
    res.reason = "runs must start in the initial state";
    return res;
  }
  if (!a.is_accepting(g.rho.states.back())) {
    res.reason = "rho is not accepting";
    return res;
  }
  if (kind == WitnessKind::U) {
    if (chi_word == xy) {
      if (!a.is_accepting(chi_states.back())) {
        res.reason = "chi is not accepting";
        return res;
      }
    } else {
      auto lw = a.encode(xy);
      auto bwd = backward_table(a, lw, accepting_mask(a));
      if (bwd[k][chi_states.back()].is_inf()) {
        res.reason = "chi cannot continue over y to an accepting state";
        return res;
      }
    }
  }

  Weight chi_x = Weight::zero();
  for (std::size_t i = 0; i < k; ++i) chi_x += chi_w[i];
  Weight rho_x = Weight::zero();
  for (std::size_t i = 0; i < k; ++i) rho_x += rho_w[i];
  Weight rho_all = rho_x;
  for (std::size_t i = k; i < rho_w.size(); ++i) rho_all += rho_w[i];

  Weight best_x = mwt(a, {q0}, g.x, all_states(a));
  if (chi_x != best_x) {
    res.reason = "chi[x] weighs " + chi_x.to_string() + " but mwt(q0 -x-> Q) = " + best_x.to_string();
    return res;
  }
  Weight best_xy = eval(a, xy);
  if (rho_all != best_xy) {
    res.reason = "rho weighs " + rho_all.to_string() + " but mwt(q0 -xy-> F) = " + best_xy.to_string();
    return res;
  }
  res.gap = difference(rho_x, chi_x);
  if (res.gap <= Weight(bound)) {
    res.reason = "gap " + res.gap.to_string() + " does not exceed " + std::to_string(bound);
    return res;
  }
  res.ok = true;
  return res;
}

inline bool verify_u_witness(const Wfa& a, std::int64_t bound, const GapWitness& g) {
  return check_witness(a, WitnessKind::U, bound, g).ok;
}

inline bool verify_d_witness(const Wfa& a, std::int64_t bound, const GapWitness& g) {
  return check_witness(a, WitnessKind::D, bound, g).ok;
}

/// Bounded search: every word with |xy| <= max_len and every split point,
/// reporting the first witness in shortlex order of (xy, |x|). "None" means
/// no witness up to max_len, not a proof of bounded gaps.
inline std::optional<GapWitness> find_u_witness(const Wfa& a, std::int64_t bound, std::size_t max_len,
                                                SearchMode mode = SearchMode::Exhaustive) {
  return detail::find_witness(a, WitnessKind::U, bound, max_len, mode);
}

inline std::optional<GapWitness> find_d_witness(const Wfa& a, std::int64_t bound, std::size_t max_len,
                                                SearchMode mode = SearchMode::Exhaustive) {
  return detail::find_witness(a, WitnessKind::D, bound, max_len, mode);
}

/// Every witness up to max_len: one per (word, split, p1, q1) combination,
/// with runs chosen by lowest-numbered backtracking.
inline std::vector<GapWitness> enumerate_witnesses(const Wfa& a, WitnessKind kind, std::int64_t bound,
                                                   std::size_t max_len) {
  detail::check_bound(bound);
  require_single_initial(a, "enumerate_witnesses");
  std::vector<GapWitness> out;
  shortlex_walk(
      a.num_letters(), max_len, std::vector<Configuration>{initial_configuration(a)},
      [&](const std::vector<Configuration>& fwd, LetterId l) {
        auto next = fwd;
        next.push_back(step(a, fwd.back(), l));
        return next;
      },
      [&](const LetterWord& w, const std::vector<Configuration>& fwd) {
        auto t = detail::tables_for(a, w, fwd);
        if (t.value.is_inf()) return true;
        auto word = a.decode(w);
        for (std::size_t k = 0; k <= w.size(); ++k) {
          const auto& fk = t.fwd[k];
          const auto& bk = t.bwd[k];
          Weight low = min_over(fk, all_states(a));
          for (StateId p = 0; p < a.num_states(); ++p) {
            if (fk[p].is_inf() || fk[p] + bk[p] != t.value) continue;
            if (difference(fk[p], low) <= Weight(bound)) continue;
            for (StateId q = 0; q < a.num_states(); ++q) {
              if (fk[q] != low || (kind == WitnessKind::U && bk[q].is_inf())) continue;
              auto rho = detail::minimal_prefix(a, w, t.fwd, k, p);
              auto tail = detail::minimal_suffix(a, w, t.bwd, k, p);
              rho.insert(rho.end(), tail.begin() + 1, tail.end());
              auto chi = detail::minimal_prefix(a, w, t.fwd, k, q);
              if (kind == WitnessKind::U) {
                auto ctail = detail::minimal_suffix(a, w, t.bwd, k, q);
                chi.insert(chi.end(), ctail.begin() + 1, ctail.end());
              }
              out.push_back(detail::assemble(a, kind, word, k, std::move(rho), std::move(chi)));
            }
          }
        }
        return true;
      });
  return out;
}

}  // namespace tropwfa
