#pragma once

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tropwfa/cra.hpp"
#include "tropwfa/gadget.hpp"
#include "tropwfa/io.hpp"
#include "tropwfa/reduction.hpp"
#include "tropwfa/unambiguise.hpp"

namespace tropwfa::cli {

using nlohmann::json;

inline json to_json(Weight w) { return w.is_inf() ? json("inf") : json(w.value()); }

/// Result of a command: key/value fields and optionally a document. In kv
/// mode a document is printed verbatim instead of the fields.
class Output {
 public:
  void set(const std::string& key, json value) { fields_.emplace_back(key, std::move(value)); }
  void document(std::string kind, std::string text) { doc_ = {std::move(kind), std::move(text)}; }

  void emit(std::ostream& out, bool as_json) const {
    if (as_json) {
      json j = json::object();
      for (const auto& [k, v] : fields_) j[k] = v;
      if (doc_) {
        j["kind"] = doc_->first;
        j["document"] = doc_->second;
      }
      out << j.dump() << '\n';
      return;
    }
    if (doc_) {
      out << doc_->second;
      return;
    }
    for (const auto& [k, v] : fields_) out << k << '=' << plain(v) << '\n';
  }

 private:
  static std::string plain(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + plain(v[i]);
      return s;
    }
    return v.dump();
  }

  std::vector<std::pair<std::string, json>> fields_;
  std::optional<std::pair<std::string, std::string>> doc_;
};

struct Options {
  std::string input, other, witness, candidate;
  std::string word, from, to, order, zeta = "@";
  std::string type = "u", mode = "exhaustive";
  std::int64_t bound = 0;
  std::size_t maxlen = 6, m = 1;
  bool coaccessible = false, trimmed = false;
};

inline Wfa load_wfa(const std::string& path) { return parse_wfa(read_file(path)); }

inline StateOrder load_order(const Wfa& a, const std::string& order) {
  if (order.empty()) return StateOrder::declaration(a);
  return StateOrder::from_names(a, split_word(order));
}

inline GadgetOutput load_gadget(const Options& o) {
  return build_gadget(BaseSpec{load_wfa(o.input), split_word(o.zeta)});
}

inline json word_json(const Word& w) { return json(join(w)); }

/// Runs one subcommand. Exit codes: 0 success/true/found, 1 false/none,
/// 2 usage or input error.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tropical min-plus weighted automata workbench", "tropwfa"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "kv";
  app.add_option("--format", format, "kv or json")->check(CLI::IsMember({"kv", "json"}));
  Options o;

  auto input = [&](CLI::App* c, const char* help = "input file") {
    c->add_option("--input", o.input, help)->required();
  };
  auto word = [&](CLI::App* c) { c->add_option("--word", o.word, "space-separated letters")->required(); };
  auto bound = [&](CLI::App* c) {
    c->add_option("--bound", o.bound, "gap bound B")->required()->check(CLI::NonNegativeNumber);
  };
  auto order = [&](CLI::App* c) { c->add_option("--order", o.order, "state ranking, lowest priority first"); };
  auto gadget_base = [&](CLI::App* c) {
    input(c, "base automaton");
    c->add_option("--zeta", o.zeta, "loop word of the base");
  };

  auto* c_eval = app.add_subcommand("eval", "evaluate a word");
  input(c_eval);
  word(c_eval);
  auto* c_mwt = app.add_subcommand("mwt", "minimal run weight between state sets");
  input(c_mwt);
  c_mwt->add_option("--word", o.word)->required();
  c_mwt->add_option("--from", o.from)->required();
  c_mwt->add_option("--to", o.to)->required();
  auto* c_trim = app.add_subcommand("trim", "remove unreachable states");
  input(c_trim);
  c_trim->add_flag("--coaccessible", o.coaccessible, "also remove states that cannot accept");
  auto* c_negate = app.add_subcommand("negate", "negate every weight");
  input(c_negate);
  auto* c_product = app.add_subcommand("product", "sum automaton");
  input(c_product);
  c_product->add_option("--other", o.other)->required();
  auto* c_det = app.add_subcommand("deterministic", "determinism test");
  input(c_det);
  auto* c_unamb = app.add_subcommand("unambiguous", "exact ambiguity test");
  input(c_unamb);
  auto* c_width = app.add_subcommand("width", "maximal support size");
  input(c_width);
  auto* c_canon = app.add_subcommand("canonical-run", "canonical minimal accepting run");
  input(c_canon);
  word(c_canon);
  order(c_canon);
  auto* c_equiv = app.add_subcommand("equiv", "bounded equivalence");
  input(c_equiv);
  c_equiv->add_option("--other", o.other)->required();
  c_equiv->add_option("--maxlen", o.maxlen);
  auto* c_find = app.add_subcommand("find-witness", "bounded gap-witness search");
  input(c_find);
  bound(c_find);
  c_find->add_option("--type", o.type)->check(CLI::IsMember({"u", "d"}));
  c_find->add_option("--maxlen", o.maxlen);
  c_find->add_option("--mode", o.mode)->check(CLI::IsMember({"fast", "exhaustive"}));
  auto* c_verify = app.add_subcommand("verify-witness", "check a gap witness");
  input(c_verify);
  bound(c_verify);
  c_verify->add_option("--witness", o.witness)->required();
  auto* c_unambiguise = app.add_subcommand("unambiguise", "window construction");
  input(c_unambiguise);
  bound(c_unambiguise);
  order(c_unambiguise);
  auto* c_norm = app.add_subcommand("normalize", "remove initial/final weights");
  input(c_norm, "wfa or wfaif file");
  auto* c_reduce = app.add_subcommand("reduce", "reduction automaton");
  input(c_reduce);
  c_reduce->add_flag("--trim", o.trimmed, "trim to coaccessible states");
  auto* c_lift = app.add_subcommand("lift-witness", "U-type witness of A to D-type witness of the reduction");
  input(c_lift);
  bound(c_lift);
  c_lift->add_option("--witness", o.witness)->required();
  auto* c_project = app.add_subcommand("project-witness",
                                       "D-type witness of the trimmed reduction to U-type witness of A");
  input(c_project);
  bound(c_project);
  c_project->add_option("--witness", o.witness)->required();
  auto* c_w2c = app.add_subcommand("wfa2cra", "WFA to CRA with width-many registers");
  input(c_w2c);
  order(c_w2c);
  auto* c_c2w = app.add_subcommand("cra2wfa", "CRA to WFA");
  input(c_c2w, "cra file");
  auto* c_ceval = app.add_subcommand("cra-eval", "evaluate a CRA");
  input(c_ceval, "cra file");
  word(c_ceval);
  auto* c_gbuild = app.add_subcommand("gadget-build", "width gadget over a base automaton");
  gadget_base(c_gbuild);
  auto* c_gcheck = app.add_subcommand("gadget-check", "jump profile of the gadget");
  gadget_base(c_gcheck);
  c_gcheck->add_option("--m", o.m)->check(CLI::PositiveNumber);
  auto* c_grefute = app.add_subcommand("gadget-refute", "refute a low-width candidate");
  gadget_base(c_grefute);
  c_grefute->add_option("--candidate", o.candidate)->required();
  c_grefute->add_option("--m", o.m)->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  Output res;
  int code = 0;
  auto boolean = [&](const char* key, bool v) {
    res.set(key, v);
    code = v ? 0 : 1;
  };
  try {
    if (c_eval->parsed()) {
      res.set("value", to_json(eval(load_wfa(o.input), split_word(o.word))));
    } else if (c_mwt->parsed()) {
      auto a = load_wfa(o.input);
      res.set("value", to_json(mwt(a, split_word(o.from), split_word(o.word), split_word(o.to))));
    } else if (c_trim->parsed()) {
      auto a = load_wfa(o.input);
      res.document("wfa", serialize_wfa(o.coaccessible ? trim_coaccessible(a) : trim(a)));
    } else if (c_negate->parsed()) {
      res.document("wfa", serialize_wfa(negate(load_wfa(o.input))));
    } else if (c_product->parsed()) {
      res.document("wfa", serialize_wfa(product(load_wfa(o.input), load_wfa(o.other))));
    } else if (c_det->parsed()) {
      boolean("deterministic", is_deterministic(load_wfa(o.input)));
    } else if (c_unamb->parsed()) {
      boolean("unambiguous", is_unambiguous(load_wfa(o.input)));
    } else if (c_width->parsed()) {
      res.set("width", width(load_wfa(o.input)));
    } else if (c_canon->parsed()) {
      auto a = load_wfa(o.input);
      auto run = canonical_run(a, split_word(o.word), load_order(a, o.order));
      res.set("states", state_sequence(a, run.states));
      res.set("weight", to_json(run.weight()));
    } else if (c_equiv->parsed()) {
      auto diff = equiv_bounded(load_wfa(o.input), load_wfa(o.other), o.maxlen);
      boolean("equivalent", !diff);
      if (diff) res.set("counterexample", word_json(*diff));
    } else if (c_find->parsed()) {
      auto a = load_wfa(o.input);
      auto kind = o.type == "u" ? WitnessKind::U : WitnessKind::D;
      auto mode = o.mode == "fast" ? SearchMode::Fast : SearchMode::Exhaustive;
      auto w = kind == WitnessKind::U ? find_u_witness(a, o.bound, o.maxlen, mode)
                                      : find_d_witness(a, o.bound, o.maxlen, mode);
      if (w) {
        res.set("found", true);
        res.set("gap", to_json(w->gap));
        res.document("witness", serialize_witness(*w, a));
      } else {
        res.set("found", false);
        code = 1;
      }
    } else if (c_verify->parsed()) {
      auto a = load_wfa(o.input);
      auto w = parse_witness(read_file(o.witness), a);
      auto check = check_witness(a, w.kind, o.bound, w);
      boolean("valid", check.ok);
      if (check.ok) res.set("gap", to_json(check.gap));
      else res.set("reason", check.reason);
    } else if (c_unambiguise->parsed()) {
      auto a = load_wfa(o.input);
      res.document("wfa", serialize_wfa(build_unambiguous(a, o.bound, load_order(a, o.order)).automaton));
    } else if (c_norm->parsed()) {
      auto text = read_file(o.input);
      auto kind = document_kind(text);
      if (kind == "wfaif") res.document("wfa", serialize_wfa(normalize_if(parse_wfaif(text))));
      else if (kind == "wfa") res.document("wfa", serialize_wfa(normalize(parse_wfa(text))));
      else throw InputError("normalize expects a wfa or wfaif document");
    } else if (c_reduce->parsed()) {
      auto red = build_reduction(load_wfa(o.input));
      res.document("wfa", serialize_wfa(o.trimmed ? trim_coaccessible(red.automaton) : red.automaton));
    } else if (c_lift->parsed()) {
      auto a = load_wfa(o.input);
      auto red = build_reduction(a);
      auto u = parse_witness(read_file(o.witness), a);
      auto d = lift_u_to_d_witness(a, red, o.bound, u);
      res.set("gap", to_json(d.gap));
      res.document("witness", serialize_witness(d, red.automaton));
    } else if (c_project->parsed()) {
      auto a = load_wfa(o.input);
      auto red = build_reduction(a);
      auto trimmed = trim_coaccessible(red.automaton);
      auto d = parse_witness(read_file(o.witness), trimmed);
      auto u = project_d_to_u_witness(red, trimmed, a, o.bound, d);
      res.set("gap", to_json(u.gap));
      res.document("witness", serialize_witness(u, a));
    } else if (c_w2c->parsed()) {
      auto a = load_wfa(o.input);
      res.document("cra", serialize_cra(wfa_to_cra(a, load_order(a, o.order))));
    } else if (c_c2w->parsed()) {
      res.document("wfa", serialize_wfa(cra_to_wfa(parse_cra(read_file(o.input)))));
    } else if (c_ceval->parsed()) {
      res.set("value", to_json(cra_eval(parse_cra(read_file(o.input)), split_word(o.word))));
    } else if (c_gbuild->parsed()) {
      res.document("wfa", serialize_wfa(load_gadget(o).aprime));
    } else if (c_gcheck->parsed()) {
      auto report = check_jump_profile(load_gadget(o), o.m);
      json values = json::array(), minima = json::array();
      for (auto v : report.values) values.push_back(to_json(v));
      for (auto v : report.component_minima) minima.push_back(to_json(v));
      boolean("ok", report.ok());
      res.set("m", report.m);
      res.set("values", values);
      res.set("component_minima", minima);
      res.set("q_a_minimum", to_json(report.q_a_minimum));
      for (const auto& f : report.failures) err << "failure: " << f << '\n';
    } else if (c_grefute->parsed()) {
      auto g = load_gadget(o);
      auto r = refute_low_width_candidate(load_wfa(o.candidate), g, o.m);
      res.set("status", to_string(r.status));
      res.set("width", r.width);
      if (r.word) {
        res.set("index", r.index);
        res.set("word", word_json(*r.word));
        res.set("candidate_value", to_json(r.candidate_value));
        res.set("gadget_value", to_json(r.gadget_value));
      } else {
        code = 1;
      }
    }
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  res.emit(out, format == "json");
  return code;
}

}  // namespace tropwfa::cli
