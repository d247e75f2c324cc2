#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "tropwfa/analysis.hpp"

namespace tropwfa {

/// Square min-plus matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t k) : k_(k), cells_(k * k, Weight::inf()) {}

  static Matrix identity(std::size_t k) {
    Matrix m(k);
    for (std::size_t i = 0; i < k; ++i) m.set(i, i, Weight::zero());
    return m;
  }

  std::size_t size() const { return k_; }
  Weight at(std::size_t i, std::size_t j) const { return cells_.at(i * k_ + j); }
  void set(std::size_t i, std::size_t j, Weight w) { cells_.at(i * k_ + j) = w; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.k_ != b.k_) throw InputError("matrix size mismatch");
    Matrix c(a.k_);
    for (std::size_t i = 0; i < a.k_; ++i)
      for (std::size_t l = 0; l < a.k_; ++l) {
        Weight x = a.at(i, l);
        if (x.is_inf()) continue;
        for (std::size_t j = 0; j < a.k_; ++j) c.set(i, j, min(c.at(i, j), x + b.at(l, j)));
      }
    return c;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t k_ = 0;
  std::vector<Weight> cells_;
};

using Valuation = std::vector<Weight>;

/// r' with r'_j = min_i r_i + m_{i,j}.
inline Valuation operator*(const Valuation& r, const Matrix& m) {
  if (r.size() != m.size()) throw InputError("valuation size mismatch");
  Valuation out(m.size(), Weight::inf());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i].is_inf()) continue;
    for (std::size_t j = 0; j < m.size(); ++j) out[j] = min(out[j], r[i] + m.at(i, j));
  }
  return out;
}

/// Cost register automaton: complete deterministic control, k registers
/// updated by k×k min-plus matrices, output the minimum over the fin
/// registers of the final control state. Register indices are 0-based here.
struct Cra {
  std::string name = "N";
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::size_t k = 0;
  std::size_t initial = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<std::size_t>> delta;  // [state][letter]
  std::vector<std::vector<Matrix>> upd;         // [state][letter]
  std::vector<std::vector<std::size_t>> fin;    // [state]

  std::size_t letter_id(const std::string& l) const {
    auto it = std::find(alphabet.begin(), alphabet.end(), l);
    if (it == alphabet.end()) throw InputError("unknown letter '" + l + "'");
    return static_cast<std::size_t>(it - alphabet.begin());
  }

  std::size_t state_id(const std::string& s) const {
    auto it = std::find(states.begin(), states.end(), s);
    if (it == states.end()) throw InputError("unknown state '" + s + "'");
    return static_cast<std::size_t>(it - states.begin());
  }

  void validate() const {
    const auto n = states.size();
    if (n == 0) throw InputError("cra: no control states");
    if (initial >= n) throw InputError("cra: initial state out of range");
    if (accepting.size() != n || delta.size() != n || upd.size() != n || fin.size() != n)
      throw InputError("cra: per-state tables must cover every state");
    for (std::size_t q = 0; q < n; ++q) {
      if (delta[q].size() != alphabet.size() || upd[q].size() != alphabet.size())
        throw InputError("cra: delta must be total on state '" + states[q] + "'");
      for (std::size_t l = 0; l < alphabet.size(); ++l) {
        if (delta[q][l] >= n) throw InputError("cra: delta target out of range");
        if (upd[q][l].size() != k) throw InputError("cra: update matrix must be k×k");
      }
      for (auto i : fin[q])
        if (i >= k) throw InputError("cra: fin register out of range on '" + states[q] + "'");
    }
  }

  friend bool operator==(const Cra&, const Cra&) = default;
};

inline Weight cra_eval(const Cra& n, const Word& word) {
  n.validate();
  std::size_t q = n.initial;
  Valuation r(n.k, Weight::zero());
  for (const auto& token : word) {
    auto l = n.letter_id(token);
    r = r * n.upd[q][l];
    q = n.delta[q][l];
  }
  if (!n.accepting[q]) return Weight::inf();
  Weight best = Weight::inf();
  for (auto i : n.fin[q]) best = min(best, r[i]);
  return best;
}

/// States Q×[k] named "q#i" (1-based), initials (q0, i) for every i.
inline Wfa cra_to_wfa(const Cra& n) {
  n.validate();
  Wfa out(n.name);
  for (const auto& l : n.alphabet) out.add_letter(l);
  auto id = [&](std::size_t q, std::size_t i) { return q * n.k + i; };
  for (std::size_t q = 0; q < n.states.size(); ++q)
    for (std::size_t i = 0; i < n.k; ++i) out.add_state(n.states[q] + "#" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n.k; ++i) out.set_initial(id(n.initial, i));
  for (std::size_t q = 0; q < n.states.size(); ++q)
    if (n.accepting[q])
      for (auto i : n.fin[q]) out.set_accepting(id(q, i));
  for (std::size_t q = 0; q < n.states.size(); ++q)
    for (LetterId l = 0; l < n.alphabet.size(); ++l) {
      const auto& m = n.upd[q][l];
      for (std::size_t i = 0; i < n.k; ++i)
        for (std::size_t j = 0; j < n.k; ++j)
          if (m.at(i, j).is_finite()) out.add_transition(id(q, i), l, m.at(i, j), id(n.delta[q][l], j));
    }
  return out;
}

inline std::string subset_name(const Wfa& a, const std::vector<StateId>& members) {
  std::string out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) out += (i ? "," : "") + a.state_name(members[i]);
  return out + "}";
}

/// Subset construction with one register per member of the current support.
/// Members are ordered by increasing rank of `order`; register i holds the
/// i-th member. k = width(A); unused registers have INF rows and columns.
inline Cra wfa_to_cra(const Wfa& a, const StateOrder& order) {
  if (order.size() != a.num_states()) throw InputError("state order size mismatch");
  auto sorted = [&](const std::vector<bool>& s) {
    std::vector<StateId> out;
    for (StateId q = 0; q < s.size(); ++q)
      if (s[q]) out.push_back(q);
    std::sort(out.begin(), out.end(), [&](StateId x, StateId y) { return order.rank(x) < order.rank(y); });
    return out;
  };

  Cra n;
  n.name = a.name();
  n.alphabet = a.alphabet();
  n.k = width(a);
  std::map<std::vector<bool>, std::size_t> index;
  std::vector<std::vector<StateId>> members;
  std::deque<std::vector<bool>> queue;
  auto intern = [&](const std::vector<bool>& s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    auto id = members.size();
    index.emplace(s, id);
    members.push_back(sorted(s));
    queue.push_back(s);
    return id;
  };

  std::vector<bool> start(a.num_states(), false);
  for (auto q : a.initials()) start[q] = true;
  n.initial = intern(start);
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    const auto id = index.at(cur);
    std::vector<std::size_t> row_delta;
    std::vector<Matrix> row_upd;
    for (LetterId l = 0; l < a.num_letters(); ++l) {
      std::vector<bool> next(a.num_states(), false);
      for (StateId p = 0; p < a.num_states(); ++p)
        if (cur[p])
          for (const auto& arc : a.arcs(p, l)) next[arc.target] = true;
      auto to = intern(next);
      Matrix m(n.k);
      const auto& src = members[id];
      const auto& dst = members[to];
      for (std::size_t i = 0; i < src.size(); ++i)
        for (std::size_t j = 0; j < dst.size(); ++j) m.set(i, j, a.weight(src[i], l, dst[j]));
      row_delta.push_back(to);
      row_upd.push_back(std::move(m));
    }
    if (n.delta.size() <= id) {
      n.delta.resize(id + 1);
      n.upd.resize(id + 1);
    }
    n.delta[id] = std::move(row_delta);
    n.upd[id] = std::move(row_upd);
  }

  n.delta.resize(members.size());
  n.upd.resize(members.size());
  for (std::size_t id = 0; id < members.size(); ++id) {
    n.states.push_back(subset_name(a, members[id]));
    std::vector<std::size_t> fin;
    for (std::size_t i = 0; i < members[id].size(); ++i)
      if (a.is_accepting(members[id][i])) fin.push_back(i);
    n.accepting.push_back(!fin.empty());
    n.fin.push_back(std::move(fin));
  }
  n.validate();
  return n;
}

inline Cra wfa_to_cra(const Wfa& a) { return wfa_to_cra(a, StateOrder::declaration(a)); }

}  // namespace tropwfa
