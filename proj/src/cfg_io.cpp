#include "fsf/cfg_io.hpp"

#include <fstream>
#include <sstream>

#include "fsf/error.hpp"
#include "fsf/text.hpp"

namespace fsf {

Cfg parse_grammar(std::istream& in) {
  auto doc = text::read_document(in);
  if (doc.kind != "cfg")
    throw Error("expected 'kind: cfg', found '" + doc.kind + "'", doc.kind_line);
  CfgBuilder b;
  bool have_start = false;
  for (const auto& d : doc.directives) {
    if (d.key == "terminals") {
      for (auto& t : text::split_ws(d.value)) b.terminal(std::move(t), d.line);
    } else if (d.key == "nonterminals") {
      for (auto& n : text::split_ws(d.value)) b.nonterminal(std::move(n), d.line);
    } else if (d.key == "start") {
      auto toks = text::split_ws(d.value);
      if (toks.size() != 1) throw Error("start expects exactly one symbol", d.line);
      if (have_start) throw Error("duplicate start directive", d.line);
      have_start = true;
      b.start(toks[0], d.line);
    } else if (d.key == "rule") {
      auto toks = text::split_ws(d.value);
      if (toks.size() < 3 || toks[1] != "->")
        throw Error("malformed rule (expected 'rule: A -> x')", d.line);
      std::vector<std::string> rhs(toks.begin() + 2, toks.end());
      if (rhs.size() == 1 && rhs[0] == text::kEpsilon) {
        rhs.clear();
      } else {
        for (const auto& s : rhs)
          if (s == text::kEpsilon || s == "->")
            throw Error("'" + s + "' cannot appear inside a right-hand side", d.line);
      }
      b.rule(toks[0], std::move(rhs), d.line);
    } else {
      throw Error("unknown directive '" + d.key + "'", d.line);
    }
  }
  return b.build();
}

Cfg parse_grammar_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_grammar(in);
}

Cfg load_grammar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_grammar(in);
}

std::string print_grammar(const Cfg& g) {
  std::ostringstream out;
  out << "kind: cfg\n";
  out << "terminals:";
  for (SymbolId t : g.terminals()) out << ' ' << g.name(t);
  out << "\nnonterminals:";
  for (SymbolId n : g.nonterminals()) out << ' ' << g.name(n);
  out << "\nstart: " << g.name(g.start()) << '\n';
  for (const auto& r : g.rules()) {
    out << "rule: " << g.name(r.lhs) << " ->";
    if (r.rhs.empty()) out << ' ' << text::kEpsilon;
    for (SymbolId s : r.rhs) out << ' ' << g.name(s);
    out << '\n';
  }
  return out.str();
}

}  // namespace fsf
