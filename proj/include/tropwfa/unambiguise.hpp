#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tropwfa/analysis.hpp"

namespace tropwfa {

/// A value in Z ∪ {−∞, +∞}, used for window offsets before and after capping.
class Offset {
 public:
  enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

  constexpr Offset() = default;  // +∞
  constexpr Offset(std::int64_t v) : kind_(Kind::Finite), value_(v) {}  // NOLINT
  static constexpr Offset pos_inf() { return Offset(); }
  static constexpr Offset neg_inf() {
    Offset o;
    o.kind_ = Kind::NegInf;
    return o;
  }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  std::int64_t value() const {
    if (!is_finite()) throw InputError("value() of infinite offset");
    return value_;
  }

  /// Adds a finite amount; infinities absorb it.
  Offset plus(std::int64_t d) const {
    if (!is_finite()) return *this;
    std::int64_t r = 0;
    if (__builtin_add_overflow(value_, d, &r)) throw OverflowError("offset overflow");
    return Offset(r);
  }

  friend constexpr bool operator==(Offset a, Offset b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(Offset a, Offset b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (a.kind_ != Kind::Finite) return std::strong_ordering::equal;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::NegInf: return "-inf";
      case Kind::PosInf: return "inf";
      case Kind::Finite: break;
    }
    return std::to_string(value_);
  }

 private:
  Kind kind_ = Kind::PosInf;
  std::int64_t value_ = 0;
};

/// A state of the unambiguous automaton: an anchor state of A together with
/// a B-window, i.e. offsets in {−∞, −B..B, +∞} for every state of A.
struct WindowState {
  StateId anchor = 0;
  std::vector<Offset> window;

  friend bool operator==(const WindowState&, const WindowState&) = default;
  friend bool operator<(const WindowState& a, const WindowState& b) {
    if (a.anchor != b.anchor) return a.anchor < b.anchor;
    return std::lexicographical_compare(a.window.begin(), a.window.end(), b.window.begin(),
                                        b.window.end(),
                                        [](Offset x, Offset y) { return x < y; });
  }
};

/// "q|r1:v1,r2:v2" listing every entry other than +∞ in declaration order.
inline std::string window_state_name(const Wfa& a, const WindowState& s) {
  std::string out = a.state_name(s.anchor) + "|";
  bool first = true;
  for (StateId r = 0; r < s.window.size(); ++r) {
    if (s.window[r].is_pos_inf()) continue;
    if (!first) out += ",";
    first = false;
    out += a.state_name(r) + ":" + s.window[r].to_string();
  }
  return out;
}

inline WindowState initial_window_state(const Wfa& a) {
  require_single_initial(a, "unambiguise");
  WindowState s{a.initials().front(), std::vector<Offset>(a.num_states(), Offset::pos_inf())};
  s.window[s.anchor] = Offset(0);
  return s;
}

/// Successor of `s` under the focused transition (s.anchor, letter, c, target).
///
/// g(r) = min over r' of f(r') + mwt(r' -letter-> r) - c. No successor when
/// g(target) < 0, or when a state r != anchor with anchor ⪯ r attains g(target).
/// Otherwise g is capped to the window: above B becomes +∞, below −B becomes −∞.
inline std::optional<WindowState> window_successor(const Wfa& a, std::int64_t bound,
                                                   const WindowState& s, LetterId letter,
                                                   StateId target, const StateOrder& order) {
  if (bound < 0) throw InputError("window bound must be a natural number");
  if (s.window.size() != a.num_states()) throw InputError("window size mismatch");
  Weight focused = a.weight(s.anchor, letter, target);
  if (focused.is_inf()) throw InputError("window_successor: focused transition is not a transition of A");
  const std::int64_t c = focused.value();

  std::vector<Offset> g(a.num_states(), Offset::pos_inf());
  for (StateId r = 0; r < a.num_states(); ++r) {
    if (s.window[r].is_pos_inf()) continue;
    for (const auto& arc : a.arcs(r, letter)) {
      std::int64_t delta = 0;
      if (__builtin_sub_overflow(arc.weight.value(), c, &delta)) throw OverflowError("offset overflow");
      g[arc.target] = std::min(g[arc.target], s.window[r].plus(delta));
    }
  }

  const Offset at_target = g[target];
  if (at_target < Offset(0)) return std::nullopt;
  for (StateId r = 0; r < a.num_states(); ++r) {
    if (r == s.anchor || !order.precedes_or_equal(s.anchor, r) || s.window[r].is_pos_inf()) continue;
    Weight c_r = a.weight(r, letter, target);
    if (c_r.is_inf()) continue;
    std::int64_t delta = 0;
    if (__builtin_sub_overflow(c_r.value(), c, &delta)) throw OverflowError("offset overflow");
    if (s.window[r].plus(delta) == at_target) return std::nullopt;
  }

  WindowState next{target, std::move(g)};
  for (auto& v : next.window) {
    if (!v.is_finite()) continue;
    if (v.value() > bound)
      v = Offset::pos_inf();
    else if (v.value() < -bound)
      v = Offset::neg_inf();
  }
  return next;
}

/// (q, f) accepts iff q ∈ F and every accepting p has f(p) > 0, or f(p) = 0
/// and p ⪯ q.
inline bool window_accepting(const Wfa& a, const WindowState& s, const StateOrder& order) {
  if (!a.is_accepting(s.anchor)) return false;
  for (StateId p = 0; p < a.num_states(); ++p) {
    if (!a.is_accepting(p)) continue;
    const Offset v = s.window[p];
    if (v > Offset(0)) continue;
    if (v == Offset(0) && order.precedes_or_equal(p, s.anchor)) continue;
    return false;
  }
  return true;
}

struct UnambiguousResult {
  Wfa automaton;
  std::vector<WindowState> states;  // indexed like automaton's states
  std::int64_t bound = 0;

  std::optional<StateId> find(const WindowState& s) const {
    for (StateId i = 0; i < states.size(); ++i)
      if (states[i] == s) return i;
    return std::nullopt;
  }
};

/// Reachable part of the window construction from (q0, f0). Every lifted
/// transition carries the weight of the transition of A it came from.
///
/// The result is equivalent to A and unambiguous whenever A has U-type gaps
/// bounded by `bound`; that precondition is not checked here.
inline UnambiguousResult build_unambiguous(const Wfa& a, std::int64_t bound, const StateOrder& order) {
  if (bound < 0) throw InputError("window bound must be a natural number");
  if (order.size() != a.num_states()) throw InputError("state order size mismatch");
  UnambiguousResult res;
  res.bound = bound;
  res.automaton.set_name(a.name() + "_unamb");
  for (const auto& l : a.alphabet()) res.automaton.add_letter(l);

  std::map<WindowState, StateId> index;
  std::deque<StateId> queue;
  auto intern = [&](WindowState s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    auto id = res.automaton.add_state(window_state_name(a, s));
    res.automaton.set_accepting(id, window_accepting(a, s, order));
    index.emplace(s, id);
    res.states.push_back(std::move(s));
    queue.push_back(id);
    return id;
  };

  auto start = intern(initial_window_state(a));
  res.automaton.set_initial(start);
  while (!queue.empty()) {
    auto id = queue.front();
    queue.pop_front();
    for (LetterId l = 0; l < a.num_letters(); ++l) {
      const auto anchor = res.states[id].anchor;
      for (const auto& arc : a.arcs(anchor, l)) {
        auto succ = window_successor(a, bound, res.states[id], l, arc.target, order);
        if (!succ) continue;
        auto to = intern(std::move(*succ));
        res.automaton.add_transition(id, l, arc.weight, to);
      }
    }
  }
  return res;
}

/// Lifts the canonical run of A on w into the constructed automaton, step by
/// step. A step whose consistency check fails, or a lifted run ending in a
/// non-accepting state, means A has a gap above the construction's bound;
/// this is reported as InvariantViolation naming the failing position.
inline Run lift_canonical(const Wfa& a, const UnambiguousResult& u, const Word& w, const StateOrder& order) {
  Run canon = canonical_run(a, w, order);
  auto lw = a.encode(w);
  WindowState cur = initial_window_state(a);
  std::vector<StateId> lifted{*u.find(cur)};
  for (std::size_t i = 0; i < lw.size(); ++i) {
    auto next = window_successor(a, u.bound, cur, lw[i], canon.states[i + 1], order);
    if (!next)
      throw InvariantViolation("lift_canonical: transition " + std::to_string(i + 1) + " (" +
                               a.state_name(canon.states[i]) + " -" + w[i] + "-> " +
                               a.state_name(canon.states[i + 1]) +
                               ") fails a consistency check; the gap bound " +
                               std::to_string(u.bound) + " is violated");
    auto id = u.find(*next);
    if (!id) throw InvariantViolation("lift_canonical: lifted state missing from the construction");
    lifted.push_back(*id);
    cur = std::move(*next);
  }
  if (!u.automaton.is_accepting(lifted.back()))
    throw InvariantViolation("lift_canonical: lifted run ends in a non-accepting state; the gap bound " +
                             std::to_string(u.bound) + " is violated");
  return make_run(u.automaton, w, lifted);
}

}  // namespace tropwfa
