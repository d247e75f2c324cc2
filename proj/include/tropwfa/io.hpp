#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "tropwfa/cra.hpp"
#include "tropwfa/gaps.hpp"
#include "tropwfa/reduction.hpp"

namespace tropwfa {

namespace detail {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

/// Splits into whitespace-separated tokens, skipping blank lines and lines
/// whose first token starts with '#'.
inline std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  for (std::size_t n = 1; std::getline(in, raw); ++n) {
    Line line{n, split_word(raw)};
    if (line.tokens.empty() || line.tokens.front().front() == '#') continue;
    out.push_back(std::move(line));
  }
  return out;
}

[[noreturn]] inline void fail(const Line& line, const std::string& msg) {
  throw InputError("line " + std::to_string(line.number) + ": " + msg);
}

inline void expect_arity(const Line& line, std::size_t n) {
  if (line.tokens.size() != n)
    fail(line, "'" + line.tokens.front() + "' expects " + std::to_string(n - 1) + " argument(s)");
}

inline std::string header_name(const Line& line) {
  if (line.tokens.size() > 2) fail(line, "header takes at most one name");
  return line.tokens.size() == 2 ? line.tokens[1] : std::string("A");
}

template <class F>
auto at_line(const Line& line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError& e) {
    fail(line, e.what());
  }
}

inline void check_token(const std::string& t, const char* what) {
  if (t.empty() || t.front() == '#' || std::any_of(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }))
    throw InputError(std::string("cannot serialize ") + what + " '" + t + "'");
}

/// Parses the shared body of wfa and wfaif documents. `extra` handles lines
/// with other keywords and returns false if it does not recognise them.
template <class Extra>
Wfa parse_wfa_body(const std::vector<Line>& lines, const std::string& kind, Extra&& extra) {
  if (lines.empty() || lines.front().tokens.front() != kind)
    throw InputError("expected '" + kind + "' header");
  Wfa a(header_name(lines.front()));
  std::set<std::string> seen_sections;
  std::set<std::tuple<StateId, LetterId, StateId>> seen_trans;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto& key = line.tokens.front();
    const std::vector<std::string> args(line.tokens.begin() + 1, line.tokens.end());
    auto once = [&] {
      if (!seen_sections.insert(key).second) fail(line, "repeated '" + key + "' line");
    };
    if (key == "alphabet") {
      once();
      for (const auto& l : args) at_line(line, [&] { return a.add_letter(l); });
    } else if (key == "states") {
      once();
      for (const auto& s : args) at_line(line, [&] { return a.add_state(s); });
    } else if (key == "initial" && kind == "wfa") {
      once();
      for (const auto& s : args) at_line(line, [&] { a.set_initial(a.state_id(s)); return 0; });
    } else if (key == "accepting" && kind == "wfa") {
      once();
      for (const auto& s : args) at_line(line, [&] { a.set_accepting(a.state_id(s)); return 0; });
    } else if (key == "trans") {
      expect_arity(line, 5);
      at_line(line, [&] {
        auto p = a.state_id(args[0]);
        auto l = a.letter_id(args[1]);
        auto w = parse_weight(args[2]);
        auto q = a.state_id(args[3]);
        if (!seen_trans.emplace(p, l, q).second) throw InputError("duplicate transition");
        if (w.is_finite()) a.add_transition(p, l, w, q);
        return 0;
      });
    } else if (!extra(a, line)) {
      fail(line, "unknown keyword '" + key + "'");
    }
  }
  return a;
}

inline void write_wfa_body(std::ostringstream& out, const Wfa& a, bool flags) {
  for (const auto& l : a.alphabet()) check_token(l, "letter");
  for (const auto& s : a.states()) check_token(s, "state");
  out << "alphabet";
  for (const auto& l : a.alphabet()) out << ' ' << l;
  out << "\nstates";
  for (const auto& s : a.states()) out << ' ' << s;
  out << '\n';
  if (flags) {
    out << "initial";
    for (auto q : a.initials()) out << ' ' << a.state_name(q);
    out << "\naccepting";
    for (auto q : a.accepting()) out << ' ' << a.state_name(q);
    out << '\n';
  }
  for (StateId p = 0; p < a.num_states(); ++p)
    for (LetterId l = 0; l < a.num_letters(); ++l)
      for (const auto& arc : a.arcs(p, l))
        out << "trans " << a.state_name(p) << ' ' << a.letter_name(l) << ' ' << arc.weight << ' '
            << a.state_name(arc.target) << '\n';
}

}  // namespace detail

inline Wfa parse_wfa(const std::string& text) {
  auto lines = detail::tokenize(text);
  auto a = detail::parse_wfa_body(lines, "wfa", [](Wfa&, const detail::Line&) { return false; });
  if (a.initials().empty()) throw InputError("no initial state");
  return a;
}

inline std::string serialize_wfa(const Wfa& a) {
  detail::check_token(a.name(), "name");
  std::ostringstream out;
  out << "wfa " << a.name() << '\n';
  detail::write_wfa_body(out, a, true);
  return out.str();
}

inline WfaIF parse_wfaif(const std::string& text) {
  auto lines = detail::tokenize(text);
  std::vector<std::tuple<detail::Line, std::string, Weight>> init, fin;
  auto extra = [&](Wfa&, const detail::Line& line) {
    const auto& key = line.tokens.front();
    if (key != "init" && key != "fin") return false;
    detail::expect_arity(line, 3);
    auto w = detail::at_line(line, [&] { return parse_weight(line.tokens[2]); });
    (key == "init" ? init : fin).emplace_back(line, line.tokens[1], w);
    return true;
  };
  WfaIF out;
  out.structure = detail::parse_wfa_body(lines, "wfaif", extra);
  out.init.assign(out.structure.num_states(), Weight::inf());
  out.fin.assign(out.structure.num_states(), Weight::inf());
  auto apply = [&](auto& entries, std::vector<Weight>& vec, const char* what) {
    std::set<StateId> seen;
    for (const auto& [line, name, w] : entries) {
      auto q = detail::at_line(line, [&] { return out.structure.state_id(name); });
      if (!seen.insert(q).second) detail::fail(line, std::string("duplicate ") + what + " weight");
      vec[q] = w;
    }
  };
  apply(init, out.init, "init");
  apply(fin, out.fin, "fin");
  return out;
}

inline std::string serialize_wfaif(const WfaIF& a) {
  a.validate();
  const auto& s = a.structure;
  detail::check_token(s.name(), "name");
  std::ostringstream out;
  out << "wfaif " << s.name() << '\n';
  detail::write_wfa_body(out, s, false);
  for (StateId q = 0; q < s.num_states(); ++q)
    if (a.init[q].is_finite()) out << "init " << s.state_name(q) << ' ' << a.init[q] << '\n';
  for (StateId q = 0; q < s.num_states(); ++q)
    if (a.fin[q].is_finite()) out << "fin " << s.state_name(q) << ' ' << a.fin[q] << '\n';
  return out.str();
}

/// CRA documents list registers 1-based in `fin` lines; each `upd T a` line
/// is followed by k rows of k weights.
inline Cra parse_cra(const std::string& text) {
  auto lines = detail::tokenize(text);
  if (lines.empty() || lines.front().tokens.front() != "cra") throw InputError("expected 'cra' header");
  Cra n;
  n.name = detail::header_name(lines.front());
  bool have_k = false, have_initial = false;
  std::set<std::string> seen_sections;
  std::vector<std::vector<bool>> have_delta, have_upd;
  auto need_structure = [&](const detail::Line& line) {
    if (!have_k || n.states.empty()) detail::fail(line, "'states' and 'registers' must come first");
  };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto& key = line.tokens.front();
    const std::vector<std::string> args(line.tokens.begin() + 1, line.tokens.end());
    auto once = [&] {
      if (!seen_sections.insert(key).second) detail::fail(line, "repeated '" + key + "' line");
    };
    if (key == "alphabet") {
      once();
      for (const auto& l : args) {
        if (std::find(n.alphabet.begin(), n.alphabet.end(), l) != n.alphabet.end())
          detail::fail(line, "duplicate letter '" + l + "'");
        n.alphabet.push_back(l);
      }
    } else if (key == "states") {
      once();
      if (!seen_sections.count("alphabet")) detail::fail(line, "'alphabet' must precede 'states'");
      for (const auto& s : args) {
        if (std::find(n.states.begin(), n.states.end(), s) != n.states.end())
          detail::fail(line, "duplicate state '" + s + "'");
        n.states.push_back(s);
      }
      const auto q = n.states.size(), l = n.alphabet.size();
      n.accepting.assign(q, false);
      n.fin.assign(q, {});
      n.delta.assign(q, std::vector<std::size_t>(l, 0));
      n.upd.assign(q, std::vector<Matrix>(l));
      have_delta.assign(q, std::vector<bool>(l, false));
      have_upd.assign(q, std::vector<bool>(l, false));
    } else if (key == "registers") {
      once();
      detail::expect_arity(line, 2);
      n.k = detail::at_line(line, [&] {
        auto w = parse_weight(args[0]);
        if (w.is_inf() || w.value() < 0) throw InputError("register count must be a natural number");
        return static_cast<std::size_t>(w.value());
      });
      have_k = true;
    } else if (key == "initial") {
      once();
      detail::expect_arity(line, 2);
      n.initial = detail::at_line(line, [&] { return n.state_id(args[0]); });
      have_initial = true;
    } else if (key == "accepting") {
      once();
      for (const auto& s : args) n.accepting[detail::at_line(line, [&] { return n.state_id(s); })] = true;
    } else if (key == "delta") {
      need_structure(line);
      detail::expect_arity(line, 4);
      auto q = detail::at_line(line, [&] { return n.state_id(args[0]); });
      auto l = detail::at_line(line, [&] { return n.letter_id(args[1]); });
      if (have_delta[q][l]) detail::fail(line, "duplicate delta entry");
      n.delta[q][l] = detail::at_line(line, [&] { return n.state_id(args[2]); });
      have_delta[q][l] = true;
    } else if (key == "upd") {
      need_structure(line);
      detail::expect_arity(line, 3);
      auto q = detail::at_line(line, [&] { return n.state_id(args[0]); });
      auto l = detail::at_line(line, [&] { return n.letter_id(args[1]); });
      if (have_upd[q][l]) detail::fail(line, "duplicate upd block");
      Matrix m(n.k);
      for (std::size_t r = 0; r < n.k; ++r) {
        if (++i >= lines.size()) detail::fail(line, "truncated upd block");
        const auto& row = lines[i];
        if (row.tokens.size() != n.k) detail::fail(row, "upd row must have " + std::to_string(n.k) + " entries");
        for (std::size_t c = 0; c < n.k; ++c) m.set(r, c, detail::at_line(row, [&] { return parse_weight(row.tokens[c]); }));
      }
      n.upd[q][l] = std::move(m);
      have_upd[q][l] = true;
    } else if (key == "fin") {
      need_structure(line);
      if (args.empty()) detail::fail(line, "'fin' expects a state");
      auto q = detail::at_line(line, [&] { return n.state_id(args[0]); });
      if (!n.fin[q].empty()) detail::fail(line, "duplicate fin line");
      for (std::size_t j = 1; j < args.size(); ++j) {
        auto idx = detail::at_line(line, [&] { return parse_weight(args[j]); });
        if (idx.is_inf() || idx.value() < 1 || static_cast<std::size_t>(idx.value()) > n.k)
          detail::fail(line, "register index out of range");
        n.fin[q].push_back(static_cast<std::size_t>(idx.value() - 1));
      }
    } else {
      detail::fail(line, "unknown keyword '" + key + "'");
    }
  }
  if (!have_initial) throw InputError("no initial state");
  for (std::size_t q = 0; q < n.states.size(); ++q)
    for (std::size_t l = 0; l < n.alphabet.size(); ++l) {
      if (!have_delta[q][l]) throw InputError("delta missing for (" + n.states[q] + ", " + n.alphabet[l] + ")");
      if (!have_upd[q][l]) throw InputError("upd missing for (" + n.states[q] + ", " + n.alphabet[l] + ")");
    }
  n.validate();
  return n;
}

inline std::string serialize_cra(const Cra& n) {
  n.validate();
  detail::check_token(n.name, "name");
  for (const auto& l : n.alphabet) detail::check_token(l, "letter");
  for (const auto& s : n.states) detail::check_token(s, "state");
  std::ostringstream out;
  out << "cra " << n.name << "\nalphabet";
  for (const auto& l : n.alphabet) out << ' ' << l;
  out << "\nstates";
  for (const auto& s : n.states) out << ' ' << s;
  out << "\nregisters " << n.k << "\ninitial " << n.states[n.initial] << "\naccepting";
  for (std::size_t q = 0; q < n.states.size(); ++q)
    if (n.accepting[q]) out << ' ' << n.states[q];
  out << '\n';
  for (std::size_t q = 0; q < n.states.size(); ++q)
    for (std::size_t l = 0; l < n.alphabet.size(); ++l)
      out << "delta " << n.states[q] << ' ' << n.alphabet[l] << ' ' << n.states[n.delta[q][l]] << '\n';
  for (std::size_t q = 0; q < n.states.size(); ++q)
    for (std::size_t l = 0; l < n.alphabet.size(); ++l) {
      out << "upd " << n.states[q] << ' ' << n.alphabet[l] << '\n';
      const auto& m = n.upd[q][l];
      for (std::size_t r = 0; r < n.k; ++r) {
        for (std::size_t c = 0; c < n.k; ++c) out << (c ? " " : "  ") << m.at(r, c);
        out << '\n';
      }
    }
  for (std::size_t q = 0; q < n.states.size(); ++q) {
    if (n.fin[q].empty()) continue;
    out << "fin " << n.states[q];
    for (auto i : n.fin[q]) out << ' ' << i + 1;
    out << '\n';
  }
  return out.str();
}

/// Witness documents name states of `a`; runs are kept as given and only
/// checked by check_witness.
inline GapWitness parse_witness(const std::string& text, const Wfa& a) {
  auto lines = detail::tokenize(text);
  if (lines.empty() || lines.front().tokens.front() != "witness") throw InputError("expected 'witness' header");
  detail::expect_arity(lines.front(), 2);
  GapWitness g;
  const auto& kind = lines.front().tokens[1];
  if (kind == "u") g.kind = WitnessKind::U;
  else if (kind == "d") g.kind = WitnessKind::D;
  else detail::fail(lines.front(), "witness kind must be 'u' or 'd'");

  std::set<std::string> seen;
  std::vector<StateId> rho, chi;
  bool have_rho = false, have_chi = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto& key = line.tokens.front();
    const std::vector<std::string> args(line.tokens.begin() + 1, line.tokens.end());
    if (!seen.insert(key).second) detail::fail(line, "repeated '" + key + "' line");
    if (key == "x" || key == "y") {
      for (const auto& l : args) detail::at_line(line, [&] { return a.letter_id(l); });
      (key == "x" ? g.x : g.y) = args;
    } else if (key == "rho" || key == "chi") {
      auto ids = detail::at_line(line, [&] { return a.state_ids(args); });
      (key == "rho" ? rho : chi) = ids;
      (key == "rho" ? have_rho : have_chi) = true;
    } else if (key == "gap") {
      detail::expect_arity(line, 2);
      g.gap = detail::at_line(line, [&] { return parse_weight(args[0]); });
    } else {
      detail::fail(line, "unknown keyword '" + key + "'");
    }
  }
  if (!have_rho || !have_chi) throw InputError("witness needs 'rho' and 'chi' lines");
  const auto xy = g.xy();
  if (rho.size() != xy.size() + 1) throw InputError("rho must have |xy|+1 states");
  if (chi.size() == g.x.size() + 1) g.chi.word = g.x;
  else if (chi.size() == xy.size() + 1) g.chi.word = xy;
  else throw InputError("chi must have |x|+1 or |xy|+1 states");
  g.rho.word = xy;
  g.rho.states = std::move(rho);
  g.chi.states = std::move(chi);
  return g;
}

inline std::string serialize_witness(const GapWitness& g, const Wfa& a) {
  std::ostringstream out;
  out << "witness " << to_string(g.kind) << "\nx";
  for (const auto& l : g.x) out << ' ' << l;
  out << "\ny";
  for (const auto& l : g.y) out << ' ' << l;
  out << "\nrho";
  for (auto q : g.rho.states) out << ' ' << a.state_name(q);
  out << "\nchi";
  for (auto q : g.chi.states) out << ' ' << a.state_name(q);
  out << "\ngap " << g.gap << '\n';
  return out.str();
}

inline Word parse_word_document(const std::string& text) {
  auto lines = detail::tokenize(text);
  if (lines.size() != 1 || lines.front().tokens.front() != "word") throw InputError("expected a single 'word' line");
  return Word(lines.front().tokens.begin() + 1, lines.front().tokens.end());
}

inline std::string serialize_word(const Word& w) {
  std::string out = "word";
  for (const auto& l : w) out += " " + l;
  return out + "\n";
}

/// First token of the first non-comment line: wfa, wfaif, cra, witness or word.
inline std::string document_kind(const std::string& text) {
  auto lines = detail::tokenize(text);
  if (lines.empty()) throw InputError("empty document");
  const auto& k = lines.front().tokens.front();
  if (k != "wfa" && k != "wfaif" && k != "cra" && k != "witness" && k != "word")
    throw InputError("unknown document kind '" + k + "'");
  return k;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace tropwfa
