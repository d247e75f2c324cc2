#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tropwfa/error.hpp"
#include "tropwfa/weight.hpp"

namespace tropwfa {

using StateId = std::size_t;
using LetterId = std::size_t;

/// A word as a sequence of letter tokens. Letters are arbitrary non-empty
/// tokens, so multi-character letters such as "X1" are fine.
using Word = std::vector<std::string>;

/// A word resolved against one automaton's alphabet.
using LetterWord = std::vector<LetterId>;

struct Arc {
  StateId target;
  Weight weight;
};

/// A (min, +) weighted finite automaton.
///
/// The weight map is total: every (p, σ, q) has exactly one weight, and
/// triples that were never set read as infinity. Only finite arcs are stored.
class Wfa {
 public:
  Wfa() = default;
  explicit Wfa(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  StateId add_state(const std::string& name) {
    if (name.empty()) throw InputError("empty state name");
    if (state_index_.count(name)) throw InputError("duplicate state '" + name + "'");
    state_index_.emplace(name, states_.size());
    states_.push_back(name);
    initial_.push_back(false);
    accepting_.push_back(false);
    arcs_.emplace_back(alphabet_.size());
    return states_.size() - 1;
  }

  LetterId add_letter(const std::string& letter) {
    if (letter.empty()) throw InputError("empty letter");
    if (letter_index_.count(letter)) throw InputError("duplicate letter '" + letter + "'");
    letter_index_.emplace(letter, alphabet_.size());
    alphabet_.push_back(letter);
    for (auto& row : arcs_) row.emplace_back();
    return alphabet_.size() - 1;
  }

  void set_initial(StateId q, bool value = true) { initial_.at(q) = value; }
  void set_accepting(StateId q, bool value = true) { accepting_.at(q) = value; }

  /// Adds a transition. A second finite weight on the same triple is an error.
  /// Infinite weights are accepted and not stored.
  void add_transition(StateId from, LetterId letter, Weight weight, StateId to) {
    check_state(from);
    check_state(to);
    check_letter(letter);
    auto& row = arcs_[from][letter];
    auto it = find_arc(row, to);
    if (it != row.end() && it->target == to)
      throw InputError("duplicate transition (" + states_[from] + ", " +
                       alphabet_[letter] + ", " + states_[to] + ")");
    if (weight.is_inf()) return;
    row.insert(it, Arc{to, weight});
  }

  /// Sets the weight of a triple, overwriting any previous value.
  void set_weight(StateId from, LetterId letter, Weight weight, StateId to) {
    check_state(from);
    check_state(to);
    check_letter(letter);
    auto& row = arcs_[from][letter];
    auto it = find_arc(row, to);
    bool present = it != row.end() && it->target == to;
    if (weight.is_inf()) {
      if (present) row.erase(it);
    } else if (present) {
      it->weight = weight;
    } else {
      row.insert(it, Arc{to, weight});
    }
  }

  Weight weight(StateId from, LetterId letter, StateId to) const {
    const auto& row = arcs_.at(from).at(letter);
    auto it = std::lower_bound(row.begin(), row.end(), to,
                               [](const Arc& a, StateId t) { return a.target < t; });
    return (it != row.end() && it->target == to) ? it->weight : Weight::inf();
  }

  /// Finite arcs out of `from` on `letter`, sorted by target.
  std::span<const Arc> arcs(StateId from, LetterId letter) const {
    return arcs_.at(from).at(letter);
  }

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_letters() const { return alphabet_.size(); }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::string& state_name(StateId q) const { return states_.at(q); }
  const std::string& letter_name(LetterId a) const { return alphabet_.at(a); }

  bool is_initial(StateId q) const { return initial_.at(q); }
  bool is_accepting(StateId q) const { return accepting_.at(q); }

  std::vector<StateId> initials() const { return collect(initial_); }
  std::vector<StateId> accepting() const { return collect(accepting_); }

  bool has_state(const std::string& name) const { return state_index_.count(name) != 0; }
  bool has_letter(const std::string& letter) const { return letter_index_.count(letter) != 0; }

  StateId state_id(const std::string& name) const {
    auto it = state_index_.find(name);
    if (it == state_index_.end()) throw InputError("unknown state '" + name + "'");
    return it->second;
  }

  LetterId letter_id(const std::string& letter) const {
    auto it = letter_index_.find(letter);
    if (it == letter_index_.end()) throw InputError("unknown letter '" + letter + "'");
    return it->second;
  }

  LetterWord encode(const Word& w) const {
    LetterWord out;
    out.reserve(w.size());
    for (const auto& l : w) out.push_back(letter_id(l));
    return out;
  }

  Word decode(const LetterWord& w) const {
    Word out;
    out.reserve(w.size());
    for (auto l : w) out.push_back(letter_name(l));
    return out;
  }

  std::vector<StateId> state_ids(const std::vector<std::string>& names) const {
    std::vector<StateId> out;
    for (const auto& n : names) out.push_back(state_id(n));
    return out;
  }

  std::size_t num_transitions() const {
    std::size_t n = 0;
    for (const auto& row : arcs_)
      for (const auto& cell : row) n += cell.size();
    return n;
  }

  /// Largest absolute finite weight (‖A‖); 0 for an automaton without arcs.
  std::int64_t max_abs_weight() const {
    std::int64_t m = 0;
    for (const auto& row : arcs_)
      for (const auto& cell : row)
        for (const auto& arc : cell) {
          auto v = arc.weight.value();
          if (v == std::numeric_limits<std::int64_t>::min())
            throw OverflowError("weight magnitude overflow");
          m = std::max(m, v < 0 ? -v : v);
        }
    return m;
  }

  friend bool operator==(const Wfa& a, const Wfa& b) {
    if (a.name_ != b.name_ || a.states_ != b.states_ || a.alphabet_ != b.alphabet_ ||
        a.initial_ != b.initial_ || a.accepting_ != b.accepting_)
      return false;
    for (StateId p = 0; p < a.states_.size(); ++p)
      for (LetterId l = 0; l < a.alphabet_.size(); ++l) {
        const auto& x = a.arcs_[p][l];
        const auto& y = b.arcs_[p][l];
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
          if (x[i].target != y[i].target || x[i].weight != y[i].weight) return false;
      }
    return true;
  }

 private:
  static std::vector<Arc>::iterator find_arc(std::vector<Arc>& row, StateId to) {
    return std::lower_bound(row.begin(), row.end(), to,
                            [](const Arc& a, StateId t) { return a.target < t; });
  }

  static std::vector<StateId> collect(const std::vector<bool>& flags) {
    std::vector<StateId> out;
    for (StateId q = 0; q < flags.size(); ++q)
      if (flags[q]) out.push_back(q);
    return out;
  }

  void check_state(StateId q) const {
    if (q >= states_.size()) throw InputError("state index out of range");
  }
  void check_letter(LetterId l) const {
    if (l >= alphabet_.size()) throw InputError("letter index out of range");
  }

  std::string name_ = "A";
  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  std::unordered_map<std::string, StateId> state_index_;
  std::unordered_map<std::string, LetterId> letter_index_;
  std::vector<bool> initial_;
  std::vector<bool> accepting_;
  // arcs_[state][letter] sorted by target
  std::vector<std::vector<std::vector<Arc>>> arcs_;
};

/// Per-state minimal accumulated weight after some prefix.
using Configuration = std::vector<Weight>;

inline std::vector<StateId> support(const Configuration& c) {
  std::vector<StateId> out;
  for (StateId q = 0; q < c.size(); ++q)
    if (c[q].is_finite()) out.push_back(q);
  return out;
}

/// A run: states.size() == word.size() + 1 and step i reads word[i] from
/// states[i] to states[i + 1] with finite weight weights[i].
struct Run {
  Word word;
  std::vector<StateId> states;
  std::vector<Weight> weights;

  Weight weight() const {
    Weight total = Weight::zero();
    for (auto w : weights) total += w;
    return total;
  }

  /// Weight of the first `steps` transitions.
  Weight prefix_weight(std::size_t steps) const {
    Weight total = Weight::zero();
    for (std::size_t i = 0; i < steps && i < weights.size(); ++i) total += weights[i];
    return total;
  }

  friend bool operator==(const Run&, const Run&) = default;
};

/// Builds a run from a state sequence, reading weights off the automaton.
/// Throws InputError if the shape is wrong or a step has infinite weight.
inline Run make_run(const Wfa& a, const Word& w, const std::vector<StateId>& states) {
  if (states.size() != w.size() + 1) throw InputError("run length does not match word");
  Run r{w, states, {}};
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (states[i] >= a.num_states() || states[i + 1] >= a.num_states())
      throw InputError("run state out of range");
    Weight c = a.weight(states[i], a.letter_id(w[i]), states[i + 1]);
    if (c.is_inf())
      throw InputError("no transition (" + a.state_name(states[i]) + ", " + w[i] + ", " +
                       a.state_name(states[i + 1]) + ")");
    r.weights.push_back(c);
  }
  return r;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

/// Splits on whitespace; "a b  c" -> {"a", "b", "c"}.
inline Word split_word(const std::string& text) {
  Word out;
  std::string cur;
  for (char ch : text) {
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline std::string state_sequence(const Wfa& a, const std::vector<StateId>& states) {
  std::vector<std::string> names;
  for (auto q : states) names.push_back(a.state_name(q));
  return join(names);
}

}  // namespace tropwfa
