#include "fsf/cli.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "fsf/cfg.hpp"
#include "fsf/cfg_io.hpp"
#include "fsf/dfa.hpp"
#include "fsf/error.hpp"
#include "fsf/final_language.hpp"
#include "fsf/finalization.hpp"
#include "fsf/language.hpp"
#include "fsf/lqg.hpp"
#include "fsf/re_construction.hpp"
#include "fsf/regular_construction.hpp"
#include "fsf/text.hpp"

namespace fsf::cli {

namespace {

struct Bounds {
  std::size_t max_len = 6;
  std::size_t max_steps = 64;
  std::size_t max_form_len = 32;
  std::size_t node_cap = 1'000'000;
  std::size_t queue_cap = 0;

  SearchBounds search() const { return {max_form_len, max_steps, node_cap}; }
  LqgBounds queue() const { return {max_len, max_steps, queue_cap, node_cap}; }
};

void add_bounds(CLI::App* cmd, Bounds& b) {
  cmd->add_option("--max-len", b.max_len, "longest terminal string considered")->capture_default_str();
  cmd->add_option("--max-steps", b.max_steps, "derivation step bound")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-form-len", b.max_form_len, "sentential form length bound")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--node-cap", b.node_cap, "search node cap")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--queue-cap", b.queue_cap, "queue length bound for queue grammars (0: 2*max-len+8, or 2*target length+8 for member)")
      ->capture_default_str();
}

/// Prefixes loader diagnostics with the file path.
template <typename Loader>
auto with_path(const std::string& path, Loader load) {
  try {
    return load();
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

Cfg read_cfg(const std::string& path) {
  return with_path(path, [&] { return load_grammar(path); });
}
Dfa read_dfa(const std::string& path) {
  return with_path(path, [&] { return load_dfa(path); });
}
Lqg read_lqg(const std::string& path) {
  return with_path(path, [&] { return load_lqg(path); });
}
FinalLanguage read_final(const std::string& spec) {
  return with_path(spec, [&] { return parse_final_spec(spec); });
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string render_names(const std::vector<std::string>& w) {
  if (w.empty()) return std::string(text::kEpsilon);
  const bool compact = std::all_of(w.begin(), w.end(), [](const std::string& s) { return s.size() == 1; });
  return text::join(w, compact ? "" : " ");
}

void print_trace(std::ostream& out, const Cfg& g, const DerivationTrace& t) {
  auto forms = replay_forms(g, t);
  for (std::size_t i = 0; i < t.steps.size(); ++i)
    out << "step " << i + 1 << ": rule " << Cfg::label(t.steps[i].rule) << " at " << t.steps[i].pos << " => "
        << g.render(forms[i + 1]) << "\n";
}

std::string file_kind(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return text::peek_kind(in);
}

// ---------------------------------------------------------------------------
// Language sources for enumerate / equiv.

struct LanguageSet {
  std::vector<std::vector<std::string>> words;  // in the source's report order
  bool complete = true;
};

LanguageSet cfg_words(const Cfg& g, std::size_t max_len) {
  LanguageSet s;
  for (const auto& w : enumerate_language(g, max_len)) s.words.push_back(g.names(w));
  return s;
}

LanguageSet finalized_words(const Cfg& g, const FinalLanguage& f, const Bounds& b) {
  if (const auto* r = std::get_if<FinalLanguage::Regular>(&f.variant())) {
    // Exact: compile to an ordinary grammar first.
    return cfg_words(build_finalized_cfg(g, r->dfa).grammar, b.max_len);
  }
  FinalizationInstance inst(g, f);
  auto lang = finalized_language(inst, b.search(), b.max_len);
  LanguageSet s;
  s.complete = lang.complete;
  for (const auto& w : lang.words) s.words.push_back(g.names(w));
  return s;
}

LanguageSet source_words(const std::string& src, const Bounds& b) {
  auto colon = src.find(':');
  if (colon == std::string::npos)
    throw Error("language source '" + src + "' must be cfg:<path>, lqg:<path> or final:<cfg>,<spec>");
  const std::string kind = src.substr(0, colon);
  const std::string rest = src.substr(colon + 1);
  if (kind == "cfg") return cfg_words(read_cfg(rest), b.max_len);
  if (kind == "lqg") {
    Lqg q = read_lqg(rest);
    auto lang = lqg_enumerate(q, b.queue());
    LanguageSet s;
    s.complete = lang.complete;
    for (const auto& w : lang.words) s.words.push_back(q.names(w));
    return s;
  }
  if (kind == "final") {
    auto comma = rest.find(',');
    if (comma == std::string::npos) throw Error("final source needs the form final:<cfg>,<spec>");
    return finalized_words(read_cfg(rest.substr(0, comma)), read_final(rest.substr(comma + 1)), b);
  }
  throw Error("unknown language source kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Subcommands.

int cmd_validate(const std::string& path, bool print, std::ostream& out) {
  const std::string kind = file_kind(path);
  if (kind == "cfg") {
    Cfg g = read_cfg(path);
    if (print) {
      out << print_grammar(g);
    } else {
      out << "valid: cfg\nrules: " << g.rules().size() << "\n";
    }
  } else if (kind == "dfa") {
    Dfa m = read_dfa(path);
    if (print) {
      out << print_dfa(m);
    } else {
      out << "valid: dfa\nstates: " << m.states().size() << "\n";
    }
  } else if (kind == "lqg" || kind == "qg") {
    Lqg q = read_lqg(path);
    if (print) {
      out << print_lqg(q);
    } else {
      auto nf = normal_form(q);
      out << "valid: " << kind << "\nrules: " << q.rules().size() << "\nnormal-form: " << yes_no(nf.holds);
      if (nf.offending) out << " (rule r" << *nf.offending + 1 << ")";
      out << "\n";
    }
  } else {
    throw Error(path + ": unknown or missing 'kind:' header");
  }
  return kOk;
}

int cmd_classify(const std::string& path, std::ostream& out) {
  Cfg g = read_cfg(path);
  auto r = classify(g);
  out << "propagating: " << yes_no(r.propagating) << "\n"
      << "linear: " << yes_no(r.linear) << "\n"
      << "minimal-linear: " << yes_no(r.minimal_linear) << "\n"
      << "palindromial: " << yes_no(r.palindromial) << "\n";
  if (r.marker) out << "marker: " << g.name(*r.marker) << "\n";
  return kOk;
}

struct SourceArgs {
  std::string grammar;
  std::string final_spec;
  std::string lqg;
  std::string source;
};

int cmd_enumerate(const SourceArgs& a, bool forms, const Bounds& b, std::ostream& out) {
  if (forms) {
    if (a.grammar.empty()) throw Error("--forms needs --grammar");
    Cfg g = read_cfg(a.grammar);
    auto graph = enumerate_forms(g, b.max_form_len, b.max_steps, b.node_cap);
    for (std::size_t n = 0; n < graph.size(); ++n) out << g.render(graph.form(n)) << "\n";
    out << "complete: " << yes_no(graph.exhausted()) << "\n";
    return graph.capped() ? kInconclusive : kOk;
  }
  std::string src = a.source;
  if (src.empty()) {
    if (!a.lqg.empty())
      src = "lqg:" + a.lqg;
    else if (!a.grammar.empty() && !a.final_spec.empty())
      src = "final:" + a.grammar + "," + a.final_spec;
    else if (!a.grammar.empty())
      src = "cfg:" + a.grammar;
    else
      throw Error("enumerate needs --source, --grammar or --lqg");
  }
  auto s = source_words(src, b);
  for (const auto& w : s.words) out << render_names(w) << "\n";
  out << "complete: " << yes_no(s.complete) << "\n";
  return kOk;
}

int cmd_member(const SourceArgs& a, const std::string& target, const Bounds& b, std::ostream& out) {
  if (!a.lqg.empty()) {
    Lqg q = read_lqg(a.lqg);
    Word w = q.parse_word(target);
    auto v = lqg_member_bounded(q, w, b.queue());
    if (v.found()) {
      for (std::size_t i = 0; i < v.rules.size(); ++i) {
        const auto& c = v.configs[i + 1];
        out << "step " << i + 1 << ": rule r" << v.rules[i] + 1 << " => "
            << (c.consumed.empty() ? std::string() : text::join(q.names(c.consumed), " ") + " ") << "# "
            << (c.queue.empty() ? std::string() : text::join(q.names(c.queue), " ") + " ")
            << q.states()[c.state] << "\n";
      }
    }
    const bool complete = v.outcome != LqgVerdict::Outcome::exhausted_truncated;
    out << "member: " << (v.found() ? "yes" : complete ? "no" : "unknown") << "\n";
    out << "complete: " << yes_no(complete) << "\n";
    return v.found() ? kOk : complete ? kFails : kInconclusive;
  }
  if (a.grammar.empty()) throw Error("member needs --grammar or --lqg");
  Cfg g = read_cfg(a.grammar);
  Word w = g.parse_word(target);
  if (a.final_spec.empty()) {
    for (SymbolId s : w)
      if (!g.is_terminal(s)) throw Error("target symbol '" + g.name(s) + "' is not a terminal");
    auto r = cfg_member(g, w);
    if (r.trace) print_trace(out, g, *r.trace);
    out << "member: " << yes_no(r.accepted) << "\ncomplete: yes\n";
    return r.accepted ? kOk : kFails;
  }
  FinalizationInstance inst(g, read_final(a.final_spec));
  auto v = finalized_member_bounded(inst, w, b.search());
  if (v.found()) {
    print_trace(out, g, *v.trace);
    out << "final form: " << g.render(v.final_form) << "\n";
  }
  const bool complete = v.outcome != MembershipVerdict::Outcome::exhausted_truncated;
  out << "member: " << (v.found() ? "yes" : complete ? "no" : "unknown") << "\n";
  out << "complete: " << yes_no(complete) << "\n";
  return v.found() ? kOk : complete ? kFails : kInconclusive;
}

int cmd_finalize_regular(const std::string& grammar, const std::string& dfa, const std::string& target,
                         bool no_prune, std::ostream& out) {
  Cfg g = read_cfg(grammar);
  Dfa m = read_dfa(dfa);
  if (target.empty()) {
    out << print_grammar(build_finalized_cfg(g, m, {!no_prune}).grammar);
    return kOk;
  }
  Word w = g.parse_word(target);
  auto v = finalized_member_regular(g, m, w);
  if (v.trace) print_trace(out, v.compiled, *v.trace);
  out << "member: " << yes_no(v.accepted) << "\ncomplete: yes\n";
  return v.accepted ? kOk : kFails;
}

int cmd_queue_to_cfg(const std::string& lqg, const std::string& table, bool literal, std::ostream& out) {
  Lqg q = read_lqg(lqg);
  ReConstructionOptions opts;
  opts.literal = literal;
  auto re = build_re_cfg(q, opts);
  if (!table.empty()) {
    std::ofstream t(table);
    if (!t) throw Error("cannot write '" + table + "'");
    t << encoding_table(q, re.encoding);
  }
  out << print_grammar(re.grammar);
  return kOk;
}

int cmd_equiv(const std::string& left, const std::string& right, const Bounds& b, std::ostream& out) {
  auto l = source_words(left, b);
  auto r = source_words(right, b);
  std::set<std::vector<std::string>> ls(l.words.begin(), l.words.end());
  std::set<std::vector<std::string>> rs(r.words.begin(), r.words.end());
  auto by_shortlex = [](const std::vector<std::string>& x, const std::vector<std::string>& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  };
  std::vector<std::vector<std::string>> only_left, only_right;
  for (const auto& w : ls)
    if (!rs.count(w)) only_left.push_back(w);
  for (const auto& w : rs)
    if (!ls.count(w)) only_right.push_back(w);
  std::sort(only_left.begin(), only_left.end(), by_shortlex);
  std::sort(only_right.begin(), only_right.end(), by_shortlex);

  // A word missing from an incomplete side may only be out of reach.
  const bool conclusive_left = !only_left.empty() && r.complete;
  const bool conclusive_right = !only_right.empty() && l.complete;
  const bool complete = l.complete && r.complete;
  out << "left: " << ls.size() << " words\nright: " << rs.size() << " words\n";
  if (only_left.empty() && only_right.empty()) {
    out << "equivalent: yes\ncomplete: " << yes_no(complete) << "\n";
    return complete ? kOk : kInconclusive;
  }
  if (!only_left.empty()) out << "witness: " << render_names(only_left.front()) << " (left only)\n";
  if (!only_right.empty()) out << "witness: " << render_names(only_right.front()) << " (right only)\n";
  if (conclusive_left || conclusive_right) {
    out << "equivalent: no\ncomplete: yes\n";
    return kFails;
  }
  out << "equivalent: unknown\ncomplete: no\n";
  return kInconclusive;
}

DerivationTrace parse_steps(const Cfg& g, const std::string& steps) {
  DerivationTrace t;
  t.start = g.start();
  for (const auto& tok : text::split_ws(steps)) {
    auto at = tok.find('@');
    if (at == std::string::npos) throw Error("step '" + tok + "' must look like r<k>@<pos>");
    auto rule = g.rule_index(tok.substr(0, at));
    if (!rule) throw Error("unknown rule '" + tok.substr(0, at) + "'");
    std::size_t pos = 0;
    const std::string p = tok.substr(at + 1);
    if (p.empty() || !std::all_of(p.begin(), p.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw Error("bad position in step '" + tok + "'");
    pos = std::stoul(p);
    t.steps.push_back({*rule, pos});
  }
  return t;
}

int cmd_derive(const std::string& grammar, const std::string& final_spec, const std::string& steps,
               std::ostream& out) {
  Cfg g = read_cfg(grammar);
  auto trace = parse_steps(g, steps);
  print_trace(out, g, trace);
  Word form = replay(g, trace);
  out << "form: " << g.render(form) << "\n";
  if (!final_spec.empty()) {
    FinalizationInstance inst(g, read_final(final_spec));
    out << "final: " << yes_no(inst.is_final(form)) << "\n";
    const bool contributes = inst.contributes(form);
    out << "contributes: " << yes_no(contributes) << "\n";
    if (contributes) out << "word: " << g.render(project(form, g.terminal_mask())) << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fsf: grammars filtered by a final language"};
  app.name("fsf");
  app.require_subcommand(1);

  Bounds bounds;
  SourceArgs src;
  std::string file, target, dfa, table, steps, left, right;
  bool print = false, forms = false, no_prune = false, literal = false;

  auto* validate = app.add_subcommand("validate", "check a cfg, dfa or lqg file");
  validate->add_option("file", file, "artifact file")->required();
  validate->add_flag("--print", print, "print the canonical form");

  auto* classify_cmd = app.add_subcommand("classify", "classify a grammar");
  classify_cmd->add_option("--grammar,grammar", src.grammar, "cfg file")->required();

  auto* enumerate = app.add_subcommand("enumerate", "list a language up to --max-len");
  enumerate->add_option("--source", src.source, "cfg:<path>, lqg:<path> or final:<cfg>,<spec>");
  enumerate->add_option("--grammar", src.grammar, "cfg file");
  enumerate->add_option("--final", src.final_spec, "final language spec");
  enumerate->add_option("--lqg", src.lqg, "queue grammar file");
  enumerate->add_flag("--forms", forms, "list sentential forms instead");
  add_bounds(enumerate, bounds);

  auto* member = app.add_subcommand("member", "decide membership of a target string");
  member->add_option("--grammar", src.grammar, "cfg file");
  member->add_option("--final", src.final_spec, "final language spec");
  member->add_option("--lqg", src.lqg, "queue grammar file");
  member->add_option("--target", target, "target string")->required();
  add_bounds(member, bounds);

  auto* finalize = app.add_subcommand("finalize-regular", "compile a grammar with a regular final language");
  finalize->add_option("--grammar", src.grammar, "cfg file")->required();
  finalize->add_option("--dfa", dfa, "dfa file")->required();
  finalize->add_option("--target", target, "decide this string instead of printing the grammar");
  finalize->add_flag("--no-prune", no_prune, "keep useless wrapped nonterminals");

  auto* queue = app.add_subcommand("queue-to-cfg", "compile a normal-form queue grammar");
  queue->add_option("--lqg", src.lqg, "queue grammar file")->required();
  queue->add_option("--table", table, "write the codeword table here");
  queue->add_flag("--literal", literal, "textbook rule shapes (over-generates)");

  auto* equiv = app.add_subcommand("equiv", "compare two languages up to --max-len");
  equiv->add_option("--left", left, "language source")->required();
  equiv->add_option("--right", right, "language source")->required();
  add_bounds(equiv, bounds);

  auto* derive = app.add_subcommand("derive", "replay a derivation");
  derive->add_option("--grammar", src.grammar, "cfg file")->required();
  derive->add_option("--steps", steps, "steps r<k>@<pos>, space separated")->required();
  derive->add_option("--final", src.final_spec, "final language spec");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*validate) return cmd_validate(file, print, out);
    if (*classify_cmd) return cmd_classify(src.grammar, out);
    if (*enumerate) return cmd_enumerate(src, forms, bounds, out);
    if (*member) return cmd_member(src, target, bounds, out);
    if (*finalize) return cmd_finalize_regular(src.grammar, dfa, target, no_prune, out);
    if (*queue) return cmd_queue_to_cfg(src.lqg, table, literal, out);
    if (*equiv) return cmd_equiv(left, right, bounds, out);
    if (*derive) return cmd_derive(src.grammar, src.final_spec, steps, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kInconclusive;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace fsf::cli
