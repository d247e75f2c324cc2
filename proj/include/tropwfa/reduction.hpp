#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropwfa/gaps.hpp"

namespace tropwfa {

// ---------------------------------------------------------------------------
// Automata with initial and final weight vectors

/// A WFA with initial and final weight vectors. The initial/accepting flags
/// of `structure` are ignored; a run is accepting iff
/// init(start) + wt + fin(end) < ∞.
struct WfaIF {
  Wfa structure;
  std::vector<Weight> init;
  std::vector<Weight> fin;

  void validate() const {
    if (init.size() != structure.num_states() || fin.size() != structure.num_states())
      throw InputError("WfaIF: init/fin vectors must cover every state");
  }
};

/// min over runs of init(p) + wt(run) + fin(q).
inline Weight eval_if(const WfaIF& a, const Word& word) {
  a.validate();
  Configuration c = xconf(a.structure, a.init, word);
  Weight best = Weight::inf();
  for (StateId q = 0; q < c.size(); ++q) best = min(best, c[q] + a.fin[q]);
  return best;
}

/// Initial weight 0 on the initial states, final weight 0 on the accepting
/// states, ∞ elsewhere.
inline WfaIF to_wfaif(const Wfa& a) {
  WfaIF out{a, std::vector<Weight>(a.num_states(), Weight::inf()),
            std::vector<Weight>(a.num_states(), Weight::inf())};
  for (auto q : a.initials()) out.init[q] = Weight::zero();
  for (auto q : a.accepting()) out.fin[q] = Weight::zero();
  return out;
}

namespace detail {

inline std::string fresh_name(const Wfa& a, std::string base) {
  while (a.has_state(base)) base += "'";
  return base;
}

}  // namespace detail

/// Removes initial and final weights: adds fresh states s0, sf and letters
/// "s", "f" with (s0, s, init(q), q) and (q, f, fin(q), sf). Then
/// B(s·w·f) = A(w) for every w, and B is ∞ on words not of that shape.
/// States not reachable from a finite-init state or not co-reachable to a
/// finite-fin state are dropped first.
inline Wfa normalize_if(const WfaIF& a) {
  a.validate();
  const auto& s = a.structure;
  if (s.has_letter("s") || s.has_letter("f"))
    throw InputError("normalize_if: letters 's' and 'f' are reserved; rename them first");

  Wfa marked = s;
  for (StateId q = 0; q < s.num_states(); ++q) {
    marked.set_initial(q, a.init[q].is_finite());
    marked.set_accepting(q, a.fin[q].is_finite());
  }
  auto reach = reachable_states(marked);
  auto coreach = coreachable_states(marked);

  Wfa out(s.name());
  for (const auto& l : s.alphabet()) out.add_letter(l);
  auto start = out.add_state(detail::fresh_name(s, "s0"));
  std::vector<std::optional<StateId>> remap(s.num_states());
  for (StateId q = 0; q < s.num_states(); ++q)
    if (reach[q] && coreach[q]) remap[q] = out.add_state(s.state_name(q));
  auto finish = out.add_state(detail::fresh_name(out, "sf"));
  auto ls = out.add_letter("s");
  auto lf = out.add_letter("f");
  out.set_initial(start);
  out.set_accepting(finish);
  for (StateId p = 0; p < s.num_states(); ++p) {
    if (!remap[p]) continue;
    for (LetterId l = 0; l < s.num_letters(); ++l)
      for (const auto& arc : s.arcs(p, l))
        if (remap[arc.target]) out.add_transition(*remap[p], l, arc.weight, *remap[arc.target]);
    out.add_transition(start, ls, a.init[p], *remap[p]);
    out.add_transition(*remap[p], lf, a.fin[p], finish);
  }
  return out;
}

/// Single initial and single accepting state: returns `a` unchanged if it
/// already has that shape, otherwise normalize_if(to_wfaif(a)). In the
/// latter case words are read as s·w·f.
inline Wfa normalize(const Wfa& a) {
  if (a.initials().size() == 1 && a.accepting().size() == 1) return a;
  return normalize_if(to_wfaif(a));
}

// ---------------------------------------------------------------------------
// Commitments, updates and the reduction automaton

/// ⊥ (unavailable), ↛ (not on an accepting run), → (on an accepting run).
enum class Mark : std::uint8_t { Bot, NoAcc, Acc };

using Commitment = std::vector<Mark>;

/// A mark for every ordered pair of states.
class Update {
 public:
  Update() = default;
  explicit Update(std::size_t n) : n_(n), cells_(n * n, Mark::Bot) {}

  Mark at(StateId p, StateId q) const { return cells_.at(p * n_ + q); }
  void set(StateId p, StateId q, Mark m) { cells_.at(p * n_ + q) = m; }
  std::size_t size() const { return n_; }

  friend bool operator==(const Update&, const Update&) = default;
  friend bool operator<(const Update& a, const Update& b) { return a.cells_ < b.cells_; }

 private:
  std::size_t n_ = 0;
  std::vector<Mark> cells_;
};

struct GammaLetter {
  LetterId base = 0;
  Update update;

  friend bool operator==(const GammaLetter&, const GammaLetter&) = default;
};

inline char mark_symbol(Mark m) { return m == Mark::Acc ? '>' : '!'; }

/// "σ|p>q,p!r": → as '>', ↛ as '!', ⊥ omitted; pairs in row-major order.
inline std::string gamma_letter_name(const Wfa& a, const GammaLetter& g) {
  std::string out = a.letter_name(g.base) + "|";
  bool first = true;
  for (StateId p = 0; p < a.num_states(); ++p)
    for (StateId q = 0; q < a.num_states(); ++q) {
      Mark m = g.update.at(p, q);
      if (m == Mark::Bot) continue;
      if (!first) out += ",";
      first = false;
      out += a.state_name(p) + mark_symbol(m) + a.state_name(q);
    }
  return out;
}

/// "q|p>,r!": the anchor, then every non-⊥ commitment entry.
inline std::string commitment_state_name(const Wfa& a, StateId q, const Commitment& f) {
  std::string out = a.state_name(q) + "|";
  bool first = true;
  for (StateId p = 0; p < f.size(); ++p) {
    if (f[p] == Mark::Bot) continue;
    if (!first) out += ",";
    first = false;
    out += a.state_name(p) + mark_symbol(f[p]);
  }
  return out;
}

/// The commitment an update induces: → if some incoming pair is →, ↛ if
/// some incoming pair is available but none is →, ⊥ otherwise.
inline Commitment induced_commitment(const Update& u) {
  Commitment g(u.size(), Mark::Bot);
  for (StateId p = 0; p < u.size(); ++p)
    for (StateId q = 0; q < u.size(); ++q) {
      Mark m = u.at(p, q);
      if (m == Mark::Acc) g[q] = Mark::Acc;
      else if (m == Mark::NoAcc && g[q] == Mark::Bot) g[q] = Mark::NoAcc;
    }
  return g;
}

/// The four consistency checks of a reduction transition
/// ((q, f), (σ, α), c, (p, g)).
inline bool reduction_transition_consistent(const Wfa& a, StateId q, const Commitment& f,
                                            const GammaLetter& letter, StateId p, const Commitment& g) {
  const auto n = a.num_states();
  if (a.weight(q, letter.base, p).is_inf()) return false;  // Δ-consistency
  for (StateId r = 0; r < n; ++r)
    for (StateId t = 0; t < n; ++t)
      if (a.weight(r, letter.base, t).is_inf() != (letter.update.at(r, t) == Mark::Bot)) return false;
  for (StateId r = 0; r < n; ++r) {
    bool out_acc = false, in_acc = false;
    for (StateId t = 0; t < n; ++t) {
      out_acc = out_acc || letter.update.at(r, t) == Mark::Acc;
      in_acc = in_acc || letter.update.at(t, r) == Mark::Acc;
    }
    if ((f[r] == Mark::Acc) != out_acc) return false;
    if ((g[r] == Mark::Acc) != in_acc) return false;
  }
  return true;
}

struct Reduction {
  Wfa automaton;
  StateId final_state = 0;                                // q_fin of the source
  std::vector<std::pair<StateId, Commitment>> states;     // indexed like automaton's states
  std::vector<GammaLetter> letters;                       // indexed like automaton's alphabet
};

namespace detail {

inline void check_reduction_input(const Wfa& a) {
  require_single_initial(a, "build_reduction");
  if (a.accepting().size() != 1)
    throw InputError("build_reduction: automaton must have exactly one accepting state; normalize first");
  for (const auto& name : a.states())
    if (name.find_first_of("|,>!") != std::string::npos)
      throw InputError("build_reduction: state name '" + name + "' contains a reserved character");
}

/// Every update on `letter` consistent with source commitment f: available
/// pairs are marked, rows with f(r) = → get a non-empty set of → targets, and
/// all other rows are ↛.
inline std::vector<Update> consistent_updates(const Wfa& a, const Commitment& f, LetterId letter) {
  const auto n = a.num_states();
  std::vector<Update> out;
  Update base(n);
  std::vector<StateId> acc_rows;
  for (StateId r = 0; r < n; ++r) {
    const auto arcs = a.arcs(r, letter);
    for (const auto& arc : arcs) base.set(r, arc.target, Mark::NoAcc);
    if (f[r] == Mark::Acc) {
      if (arcs.empty()) return out;
      acc_rows.push_back(r);
    }
  }
  std::function<void(std::size_t, Update&)> expand = [&](std::size_t i, Update& cur) {
    if (i == acc_rows.size()) {
      out.push_back(cur);
      return;
    }
    const auto r = acc_rows[i];
    const auto arcs = a.arcs(r, letter);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << arcs.size()); ++mask) {
      for (std::size_t j = 0; j < arcs.size(); ++j)
        cur.set(r, arcs[j].target, (mask >> j) & 1 ? Mark::Acc : Mark::NoAcc);
      expand(i + 1, cur);
    }
    for (const auto& arc : arcs) cur.set(r, arc.target, Mark::NoAcc);
  };
  expand(0, base);
  return out;
}

}  // namespace detail

/// The reduction automaton over Q × Com and Σ × Updt, restricted to states
/// reachable from (q0, f0) and to Γ-letters that label some transition.
/// The next commitment is the one induced by the update, so commitments
/// evolve deterministically along a Γ-word.
inline Reduction build_reduction(const Wfa& a) {
  detail::check_reduction_input(a);
  const auto n = a.num_states();
  Reduction red;
  red.final_state = a.accepting().front();
  red.automaton.set_name(a.name() + "_red");

  std::map<std::pair<StateId, Commitment>, StateId> index;
  std::map<std::string, LetterId> letter_index;
  std::deque<StateId> queue;
  auto intern = [&](StateId q, Commitment f) {
    auto key = std::make_pair(q, f);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    auto id = red.automaton.add_state(commitment_state_name(a, q, f));
    bool accepting = q == red.final_state && f[q] == Mark::Acc;
    for (StateId p = 0; p < n && accepting; ++p)
      if (p != q && f[p] == Mark::Acc) accepting = false;
    red.automaton.set_accepting(id, accepting);
    index.emplace(key, id);
    red.states.push_back(std::move(key));
    queue.push_back(id);
    return id;
  };
  auto intern_letter = [&](const GammaLetter& g) {
    auto name = gamma_letter_name(a, g);
    auto it = letter_index.find(name);
    if (it != letter_index.end()) return it->second;
    auto id = red.automaton.add_letter(name);
    red.letters.push_back(g);
    letter_index.emplace(name, id);
    return id;
  };

  Commitment f0(n, Mark::Bot);
  const auto q0 = a.initials().front();
  f0[q0] = Mark::Acc;
  red.automaton.set_initial(intern(q0, f0));

  std::map<std::pair<Commitment, LetterId>, std::vector<std::pair<Update, Commitment>>> cache;
  while (!queue.empty()) {
    auto id = queue.front();
    queue.pop_front();
    for (LetterId l = 0; l < a.num_letters(); ++l) {
      const auto q = red.states[id].first;
      if (a.arcs(q, l).empty()) continue;
      const auto f = red.states[id].second;
      auto key = std::make_pair(f, l);
      auto it = cache.find(key);
      if (it == cache.end()) {
        std::vector<std::pair<Update, Commitment>> options;
        for (auto& u : detail::consistent_updates(a, f, l)) {
          auto g = induced_commitment(u);
          options.emplace_back(std::move(u), std::move(g));
        }
        it = cache.emplace(key, std::move(options)).first;
      }
      for (const auto& [u, g] : it->second) {
        for (const auto& arc : a.arcs(q, l)) {
          auto to = intern(arc.target, g);
          auto letter = intern_letter(GammaLetter{l, u});
          red.automaton.add_transition(id, letter, arc.weight, to);
        }
      }
    }
  }
  return red;
}

/// Update and commitment tracks for a word over Σ.
///
/// α_i(p, q) is ⊥ when the σ_i-transition is missing, → when p is reachable
/// after σ_1..σ_{i-1} and q reaches q_fin over σ_{i+1}..σ_n, ↛ otherwise;
/// f_i is the commitment induced by α_i, with f_0 = {q0: →}. When w is
/// accepted, every run of A on w paired with the commitment track is a run
/// of the reduction, accepting whenever the original run is.
struct Tracks {
  std::vector<Update> updates;          // α_1..α_n
  std::vector<Commitment> commitments;  // f_0..f_n
  bool accepted = false;                // tracks are consistent only if true
};

inline Tracks make_tracks(const Wfa& a, const Word& word) {
  detail::check_reduction_input(a);
  const auto n = a.num_states();
  const auto w = a.encode(word);
  const auto q0 = a.initials().front();
  const auto qfin = a.accepting().front();

  std::vector<std::vector<bool>> reach(w.size() + 1, std::vector<bool>(n, false));
  reach[0][q0] = true;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (StateId p = 0; p < n; ++p)
      if (reach[i][p])
        for (const auto& arc : a.arcs(p, w[i])) reach[i + 1][arc.target] = true;
  std::vector<std::vector<bool>> co(w.size() + 1, std::vector<bool>(n, false));
  co[w.size()][qfin] = true;
  for (std::size_t i = w.size(); i-- > 0;)
    for (StateId p = 0; p < n; ++p)
      for (const auto& arc : a.arcs(p, w[i]))
        if (co[i + 1][arc.target]) co[i][p] = true;

  Tracks t;
  t.accepted = co[0][q0];
  Commitment f0(n, Mark::Bot);
  f0[q0] = Mark::Acc;
  t.commitments.push_back(f0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    Update u(n);
    for (StateId p = 0; p < n; ++p)
      for (const auto& arc : a.arcs(p, w[i]))
        u.set(p, arc.target, reach[i][p] && co[i + 1][arc.target] ? Mark::Acc : Mark::NoAcc);
    t.commitments.push_back(induced_commitment(u));
    t.updates.push_back(std::move(u));
  }
  return t;
}

namespace detail {

inline StateId reduction_state(const Wfa& a, const Reduction& red, StateId q, const Commitment& f) {
  auto name = commitment_state_name(a, q, f);
  if (!red.automaton.has_state(name))
    throw InvariantViolation("reduction state '" + name + "' is not reachable in the reduction");
  return red.automaton.state_id(name);
}

}  // namespace detail

/// Transports a U-type witness of A to a D-type witness of the reduction
/// with the same gap, via the update/commitment tracks of xy.
inline GapWitness lift_u_to_d_witness(const Wfa& a, const Reduction& red, std::int64_t bound,
                                      const GapWitness& u) {
  auto check = check_witness(a, WitnessKind::U, bound, u);
  if (!check.ok) throw PreconditionError("lift_u_to_d_witness: not a U-type witness: " + check.reason);
  const auto xy = u.xy();
  auto tracks = make_tracks(a, xy);
  Word gamma_word;
  for (std::size_t i = 0; i < xy.size(); ++i) {
    auto name = gamma_letter_name(a, GammaLetter{a.letter_id(xy[i]), tracks.updates[i]});
    if (!red.automaton.has_letter(name))
      throw InvariantViolation("lift_u_to_d_witness: letter '" + name + "' missing from the reduction");
    gamma_word.push_back(name);
  }
  const auto k = u.x.size();
  auto chi_states = u.chi.states;
  if (chi_states.size() != xy.size() + 1) {
    // chi given only over x: complete it with a minimal accepting continuation
    auto lw = a.encode(xy);
    auto bwd = backward_table(a, lw, accepting_mask(a));
    auto tail = detail::minimal_suffix(a, lw, bwd, k, chi_states.back());
    chi_states.insert(chi_states.end(), tail.begin() + 1, tail.end());
  }
  std::vector<StateId> rho, chi;
  for (std::size_t i = 0; i <= xy.size(); ++i)
    rho.push_back(detail::reduction_state(a, red, u.rho.states[i], tracks.commitments[i]));
  for (std::size_t i = 0; i <= k; ++i)
    chi.push_back(detail::reduction_state(a, red, chi_states[i], tracks.commitments[i]));

  GapWitness d = detail::assemble(red.automaton, WitnessKind::D, gamma_word, k, rho, chi);
  auto verdict = check_witness(red.automaton, WitnessKind::D, bound, d);
  if (!verdict.ok) throw InvariantViolation("lift_u_to_d_witness: lifted witness rejected: " + verdict.reason);
  return d;
}

/// Projects a D-type witness of the trimmed reduction back to A and extends
/// chi over y to q_fin. `trimmed` must be trim_coaccessible(red.automaton).
inline GapWitness project_d_to_u_witness(const Reduction& red, const Wfa& trimmed, const Wfa& a,
                                         std::int64_t bound, const GapWitness& d) {
  auto check = check_witness(trimmed, WitnessKind::D, bound, d);
  if (!check.ok) throw PreconditionError("project_d_to_u_witness: not a D-type witness: " + check.reason);

  auto project_word = [&](const Word& gw) {
    Word out;
    for (const auto& l : gw) out.push_back(a.letter_name(red.letters.at(red.automaton.letter_id(l)).base));
    return out;
  };
  auto project_state = [&](StateId s) {
    return red.states.at(red.automaton.state_id(trimmed.state_name(s))).first;
  };

  GapWitness u;
  u.kind = WitnessKind::U;
  u.x = project_word(d.x);
  u.y = project_word(d.y);
  const auto xy = u.xy();
  const auto k = u.x.size();
  std::vector<StateId> rho, chi;
  for (auto s : d.rho.states) rho.push_back(project_state(s));
  for (std::size_t i = 0; i <= k; ++i) chi.push_back(project_state(d.chi.states[i]));

  auto lw = a.encode(xy);
  std::vector<bool> final_only(a.num_states(), false);
  final_only[red.final_state] = true;
  auto bwd = backward_table(a, lw, final_only);
  if (bwd[k][chi.back()].is_inf())
    throw InvariantViolation("project_d_to_u_witness: chi cannot be extended over y to the final state");
  auto tail = detail::minimal_suffix(a, lw, bwd, k, chi.back());
  chi.insert(chi.end(), tail.begin() + 1, tail.end());

  u = detail::assemble(a, WitnessKind::U, xy, k, rho, chi);
  auto verdict = check_witness(a, WitnessKind::U, bound, u);
  if (!verdict.ok) throw InvariantViolation("project_d_to_u_witness: projected witness rejected: " + verdict.reason);
  return u;
}

}  // namespace tropwfa
