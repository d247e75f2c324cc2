#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tropwfa/io.hpp"

namespace testing_support {

using namespace tropwfa;

inline Wfa fixture(const std::string& name) { return parse_wfa(read_file(std::string(FIXTURE_DIR) + "/" + name)); }
inline Wfa fig3() { return fixture("fig3.wfa"); }
inline Wfa fig4() { return fixture("fig4.wfa"); }
inline Wfa one() { return fixture("one.wfa"); }
inline Wfa gbase() { return fixture("gbase.wfa"); }

inline std::vector<Wfa> corpus_fixtures() { return {fig3(), fig4(), one(), gbase()}; }

inline Word w(const std::string& text) { return split_word(text); }

/// All words over `alphabet` of length <= max_len, shortest first.
inline std::vector<Word> all_words(const std::vector<std::string>& alphabet, std::size_t max_len) {
  std::vector<Word> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (const auto& l : alphabet) {
        auto next = out[i];
        next.push_back(l);
        out.push_back(std::move(next));
      }
    begin = end;
  }
  return out;
}

/// Every run (as a state sequence) from any state in `starts` over the word,
/// by plain depth-first enumeration of the transition relation.
inline void for_each_run(const Wfa& a, const Word& word, const std::vector<StateId>& starts,
                         const std::function<void(const std::vector<StateId>&, Weight)>& visit) {
  std::vector<StateId> path;
  std::function<void(std::size_t, Weight)> go = [&](std::size_t i, Weight acc) {
    if (i == word.size()) {
      visit(path, acc);
      return;
    }
    auto l = a.letter_id(word[i]);
    for (StateId q = 0; q < a.num_states(); ++q) {
      Weight c = a.weight(path.back(), l, q);
      if (c.is_inf()) continue;
      path.push_back(q);
      go(i + 1, acc + c);
      path.pop_back();
    }
  };
  for (auto s : starts) {
    path = {s};
    go(0, Weight::zero());
  }
}

/// Minimum over accepting runs from initial states, by enumeration.
inline Weight oracle_eval(const Wfa& a, const Word& word) {
  Weight best = Weight::inf();
  for_each_run(a, word, a.initials(), [&](const std::vector<StateId>& run, Weight wt) {
    if (a.is_accepting(run.back())) best = min(best, wt);
  });
  return best;
}

inline std::size_t oracle_count_runs(const Wfa& a, const Word& word) {
  std::size_t n = 0;
  for_each_run(a, word, a.initials(), [&](const std::vector<StateId>& run, Weight) {
    n += a.is_accepting(run.back());
  });
  return n;
}

/// min over runs of init(start) + wt + fin(end), by enumeration.
inline Weight oracle_eval_if(const WfaIF& a, const Word& word) {
  Weight best = Weight::inf();
  for_each_run(a.structure, word, all_states(a.structure), [&](const std::vector<StateId>& run, Weight wt) {
    best = min(best, a.init[run.front()] + wt + a.fin[run.back()]);
  });
  return best;
}

struct RandomSpec {
  std::size_t max_states = 5;
  std::size_t letters = 3;
  std::int64_t lo = -3, hi = 3;
  double density = 0.3;
  bool single_initial = false;
  bool single_accepting = false;
};

inline Wfa random_wfa(std::mt19937& rng, const RandomSpec& spec, const std::string& name = "R") {
  std::uniform_int_distribution<std::size_t> nstates(1, spec.max_states);
  std::uniform_int_distribution<std::int64_t> weight(spec.lo, spec.hi);
  std::bernoulli_distribution edge(spec.density), coin(0.4);
  Wfa a(name);
  const auto n = nstates(rng);
  for (std::size_t l = 0; l < spec.letters; ++l) a.add_letter(std::string(1, static_cast<char>('a' + l)));
  for (std::size_t q = 0; q < n; ++q) a.add_state("q" + std::to_string(q));
  std::uniform_int_distribution<StateId> pick(0, n - 1);
  a.set_initial(0);
  if (!spec.single_initial)
    for (StateId q = 1; q < n; ++q)
      if (coin(rng)) a.set_initial(q);
  if (spec.single_accepting) {
    a.set_accepting(pick(rng));
  } else {
    for (StateId q = 0; q < n; ++q)
      if (coin(rng)) a.set_accepting(q);
  }
  for (StateId p = 0; p < n; ++p)
    for (LetterId l = 0; l < spec.letters; ++l)
      for (StateId q = 0; q < n; ++q)
        if (edge(rng)) a.add_transition(p, l, Weight(weight(rng)), q);
  return a;
}

inline WfaIF random_wfaif(std::mt19937& rng, const RandomSpec& spec) {
  std::uniform_int_distribution<std::int64_t> weight(spec.lo, spec.hi);
  std::bernoulli_distribution coin(0.5);
  WfaIF out{random_wfa(rng, spec, "I"), {}, {}};
  for (StateId q = 0; q < out.structure.num_states(); ++q) {
    out.structure.set_initial(q, false);
    out.structure.set_accepting(q, false);
    out.init.push_back(coin(rng) ? Weight(weight(rng)) : Weight::inf());
    out.fin.push_back(coin(rng) ? Weight(weight(rng)) : Weight::inf());
  }
  return out;
}

/// Corpus of the four fixtures plus `count` seeded random automata.
inline std::vector<Wfa> corpus(std::size_t count, unsigned seed = 7, RandomSpec spec = {}) {
  auto out = corpus_fixtures();
  std::mt19937 rng(seed);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_wfa(rng, spec, "R" + std::to_string(i)));
  return out;
}

}  // namespace testing_support
