#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "support.hpp"
#include "tropwfa/cli.hpp"
#include "tropwfa/gadget.hpp"
#include "tropwfa/unambiguise.hpp"

using namespace tropwfa;
using namespace testing_support;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::vector<Wfa> semantics_corpus() {
  RandomSpec spec;
  spec.max_states = 5;
  spec.letters = 3;
  return corpus(50, 1234, spec);
}

Check semantics() {
  Check c;
  for (const auto& a : semantics_corpus())
    for (const auto& word : all_words(a.alphabet(), 6))
      c.require(eval(a, word) == oracle_eval(a, word), a.name() + " on '" + join(word) + "'");
  return c;
}

Check product_and_negation() {
  Check c;
  auto all = semantics_corpus();
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& a = all[i];
    std::vector<const Wfa*> partners{&a};
    if (i + 1 < all.size() && same_alphabet(a, all[i + 1])) partners.push_back(&all[i + 1]);
    for (const auto* b : partners) {
      auto p = product(a, *b);
      for (const auto& word : all_words(a.alphabet(), 6))
        c.require(eval(p, word) == oracle_eval(a, word) + oracle_eval(*b, word),
                  "product " + a.name() + "x" + b->name() + " on '" + join(word) + "'");
    }
    if (!is_unambiguous(a)) continue;
    auto n = negate(a);
    for (const auto& word : all_words(a.alphabet(), 6)) {
      Weight v = oracle_eval(a, word);
      c.require(eval(n, word) == (v.is_inf() ? v : v.negated()), "negate " + a.name() + " on '" + join(word) + "'");
    }
  }
  return c;
}

Check fig3_reproduction() {
  Check c;
  auto a = fig3();
  auto order = StateOrder::declaration(a);
  c.require(eval(a, w("a a a")) == Weight(0), "eval(FIG3, aaa) != 0");
  c.require(state_sequence(a, canonical_run(a, w("a a a"), order).states) == "q0 q2 q4 q5", "canonical run");
  c.require(!find_u_witness(a, 2, 6), "find_u_witness(FIG3, 2, 6) found a witness");
  auto g = find_u_witness(a, 1, 3);
  c.require(g && g->gap == Weight(2) && verify_u_witness(a, 1, *g), "find_u_witness(FIG3, 1, 3) has no gap-2 witness");
  auto u = build_unambiguous(a, 2, order);
  c.require(is_unambiguous(u.automaton), "build_unambiguous(FIG3, 2) is ambiguous");
  c.require(!equiv_bounded(u.automaton, a, 8), "build_unambiguous(FIG3, 2) differs from FIG3");
  const auto q3 = u.automaton.state_id("q3|q3:0,q4:2");
  c.require(u.automaton.arcs(q3, a.letter_id("a")).empty(), "q3 -> q5 present at the window state");
  return c;
}

Check fig4_reproduction() {
  Check c;
  auto a = fig4();
  c.require(is_unambiguous(a), "FIG4 ambiguous");
  std::int64_t previous_x = -1;
  for (std::int64_t b = 0; b <= 4; ++b) {
    auto g = find_d_witness(a, b, 6);
    if (!g) {
      c.require(false, "find_d_witness(FIG4, " + std::to_string(b) + ", 6): none; a gap above " + std::to_string(b) +
                           " needs x = a b^" + std::to_string(b + 1) + " and |xy| = " + std::to_string(b + 3));
      continue;
    }
    c.require(verify_d_witness(a, b, *g), "unverified D witness at B=" + std::to_string(b));
    c.require(static_cast<std::int64_t>(g->x.size()) > previous_x, "gap does not grow with |x|");
    previous_x = static_cast<std::int64_t>(g->x.size());
  }
  c.require(!find_u_witness(a, 0, 8), "find_u_witness(FIG4, 0, 8) found a witness");
  auto t = trim_coaccessible(build_reduction(a).automaton);
  c.require(is_deterministic(t), "trimmed reduction not deterministic");
  c.require(t.states() == std::vector<std::string>{"q|q>", "p|p>,r!", "r|p!,r>", "s|s>"}, "trimmed reduction shape");
  return c;
}

Check witness_transport() {
  Check c;
  auto a = fig3();
  auto red = build_reduction(a);
  auto trimmed = trim_coaccessible(red.automaton);
  std::size_t n = 0;
  for (std::int64_t b : {0, 1})
    for (const auto& u : enumerate_witnesses(a, WitnessKind::U, b, 3)) {
      ++n;
      try {
        auto d = lift_u_to_d_witness(a, red, b, u);
        c.require(d.gap == u.gap && verify_d_witness(red.automaton, b, d), "lifted witness differs");
        GapWitness dt = d;
        for (auto* run : {&dt.rho, &dt.chi})
          for (auto& s : run->states) s = trimmed.state_id(red.automaton.state_name(s));
        auto back = project_d_to_u_witness(red, trimmed, a, b, dt);
        c.require(back.gap == u.gap && verify_u_witness(a, b, back), "projected witness differs");
      } catch (const std::exception& e) {
        c.require(false, e.what());
      }
    }
  c.require(n > 0, "no U witnesses to transport");
  return c;
}

Check cra_round_trip() {
  Check c;
  for (const auto& a : semantics_corpus()) {
    auto n = wfa_to_cra(a);
    c.require(n.k == width(a), "register count != width for " + a.name());
    auto b = cra_to_wfa(n);
    c.require(width(b) <= n.k, "cra_to_wfa width > k for " + a.name());
    c.require(!equiv_bounded(a, b, 6), "round trip differs for " + a.name());
    for (const auto& word : all_words(a.alphabet(), 6))
      c.require(cra_eval(n, word) == eval(a, word), "cra_eval differs for " + a.name());
  }
  return c;
}

Check gadget() {
  Check c;
  auto g = build_gadget(BaseSpec{gbase(), w("@")});
  c.require(width(g.aprime) == 7, "width(A') != 7");
  for (std::size_t m : {1, 2, 3}) {
    auto r = check_jump_profile(g, m);
    c.require(r.ok(), r.ok() ? "" : r.failures.front());
  }
  auto cand = remove_state(g.aprime, g.q_a);
  c.require(width(cand) == 6, "candidate width != 6");
  auto r = refute_low_width_candidate(cand, g, 13);
  c.require(r.status == RefuteStatus::Disagreement && r.index == 0, "refuter did not reject at w x_0");
  return c;
}

Check normalization() {
  Check c;
  std::mt19937 rng(99);
  RandomSpec spec{4, 2};
  for (int i = 0; i < 20; ++i) {
    auto a = random_wfaif(rng, spec);
    auto b = normalize_if(a);
    for (const auto& word : all_words(a.structure.alphabet(), 5)) {
      Word wrapped{"s"};
      wrapped.insert(wrapped.end(), word.begin(), word.end());
      wrapped.push_back("f");
      c.require(eval(b, wrapped) == oracle_eval_if(a, word), "normalize_if differs on '" + join(word) + "'");
    }
    for (const auto& word : all_words(b.alphabet(), 5)) {
      bool shaped = word.size() >= 2 && word.front() == "s" && word.back() == "f" &&
                    std::count(word.begin(), word.end(), "s") == 1 && std::count(word.begin(), word.end(), "f") == 1;
      if (!shaped) c.require(eval(b, word).is_inf(), "finite off the s.w.f shape on '" + join(word) + "'");
    }
  }
  return c;
}

Check cli_contract() {
  Check c;
  for (auto name : {"fig3.wfa", "fig4.wfa", "one.wfa", "gbase.wfa"}) {
    auto text = serialize_wfa(fixture(name));
    c.require(serialize_wfa(parse_wfa(text)) == text, std::string("round trip of ") + name);
  }
  auto code = [](std::vector<std::string> args) {
    std::ostringstream out, err;
    return cli::run_command(args, out, err);
  };
  const std::string fx = FIXTURE_DIR;
  c.require(code({"eval", "--input", fx + "/fig3.wfa", "--word", "a a a"}) == 0, "exit 0 on eval");
  c.require(code({"unambiguous", "--input", fx + "/fig3.wfa"}) == 1, "exit 1 on ambiguous input");
  c.require(code({"find-witness", "--type", "u", "--input", fx + "/fig3.wfa", "--bound", "2", "--maxlen", "6"}) == 1,
            "exit 1 when no witness");
  c.require(code({"eval", "--input", fx + "/fig3.wfa", "--word", "z"}) == 2, "exit 2 on unknown letter");
  c.require(code({"no-such-command"}) == 2, "exit 2 on usage error");
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Check()> run;
  };
  std::vector<Criterion> all{
      {1, "semantics oracle", 10, semantics},
      {2, "product additivity and negation", 10, product_and_negation},
      {3, "FIG3 reproduction", 5, fig3_reproduction},
      {4, "FIG4 reproduction", 10, fig4_reproduction},
      {5, "witness transport", 10, witness_transport},
      {6, "CRA round trip", 20, cra_round_trip},
      {7, "width gadget", 10, gadget},
      {8, "initial/final weight normalization", 5, normalization},
      {9, "CLI round trip and exit codes", 5, cli_contract},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto start = std::chrono::steady_clock::now();
    Check res;
    try {
      res = c.run();
    } catch (const std::exception& e) {
      res.ok = false;
      res.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (res.ok && secs > c.limit) {
      res.ok = false;
      res.detail = "over time limit";
    }
    failed += !res.ok;
    std::printf("criterion %d %-36s %s  %.2fs/%.0fs%s%s\n", c.id, c.name, res.ok ? "PASS" : "FAIL", secs, c.limit,
                res.detail.empty() ? "" : "  ", res.detail.c_str());
  }
  return failed ? 1 : 0;
}
