#include "fsf/dfa.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>

#include "fsf/error.hpp"
#include "fsf/text.hpp"

namespace fsf {

namespace {

constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

std::optional<std::size_t> index_in(const std::vector<std::string>& v, std::string_view name) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == name) return i;
  return std::nullopt;
}

void check_unique(const std::vector<std::string>& v, const char* what) {
  std::set<std::string> seen;
  for (const auto& s : v) {
    text::check_token(s, 0);
    if (!seen.insert(s).second) throw Error(std::string("duplicate ") + what + " '" + s + "'");
  }
}

}  // namespace

Dfa::Dfa(std::vector<std::string> states, std::vector<std::string> alphabet, std::string start,
         std::vector<std::string> finals, const std::vector<Transition>& transitions)
    : states_(std::move(states)), alphabet_(std::move(alphabet)) {
  if (states_.empty()) throw Error("a DFA needs at least one state");
  check_unique(states_, "state");
  check_unique(alphabet_, "input symbol");
  for (const auto& a : alphabet_)
    if (index_in(states_, a)) throw Error("'" + a + "' is both a state and an input symbol");

  auto st = index_in(states_, start);
  if (!st) throw Error("unknown start state '" + start + "'");
  start_ = *st;

  final_.assign(states_.size(), false);
  for (const auto& f : finals) {
    auto i = index_in(states_, f);
    if (!i) throw Error("unknown final state '" + f + "'");
    final_[*i] = true;
  }

  table_.assign(states_.size() * alphabet_.size(), kUnset);
  for (const auto& t : transitions) {
    auto p = index_in(states_, t.from);
    auto a = index_in(alphabet_, t.symbol);
    auto q = index_in(states_, t.to);
    if (!p) throw Error("unknown state '" + t.from + "'", t.line);
    if (!a) throw Error("unknown input symbol '" + t.symbol + "'", t.line);
    if (!q) throw Error("unknown state '" + t.to + "'", t.line);
    auto& cell = table_[*p * alphabet_.size() + *a];
    if (cell != kUnset) throw Error("duplicate transition for (" + t.from + ", " + t.symbol + ")", t.line);
    cell = *q;
  }
  for (std::size_t p = 0; p < states_.size(); ++p)
    for (std::size_t a = 0; a < alphabet_.size(); ++a)
      if (table_[p * alphabet_.size() + a] == kUnset)
        throw Error("missing transition for (" + states_[p] + ", " + alphabet_[a] + ")");

  live_ = final_;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t p = 0; p < states_.size(); ++p) {
      if (live_[p]) continue;
      for (std::size_t a = 0; a < alphabet_.size(); ++a)
        if (live_[next(p, a)]) {
          live_[p] = true;
          changed = true;
          break;
        }
    }
  }
}

std::vector<std::size_t> Dfa::finals() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < final_.size(); ++i)
    if (final_[i]) out.push_back(i);
  return out;
}

std::optional<std::size_t> Dfa::state_index(std::string_view name) const {
  return index_in(states_, name);
}

std::optional<std::size_t> Dfa::symbol_index(std::string_view name) const {
  return index_in(alphabet_, name);
}

std::size_t Dfa::run(std::span<const std::size_t> symbols) const {
  std::size_t q = start_;
  for (std::size_t a : symbols) q = next(q, a);
  return q;
}

std::size_t dfa_run(const Dfa& m, const std::vector<std::string>& w) {
  std::size_t q = m.start();
  for (const auto& s : w) {
    auto a = m.symbol_index(s);
    if (!a) throw Error("symbol '" + s + "' is not in the DFA alphabet");
    q = m.next(q, *a);
  }
  return q;
}

Dfa parse_dfa(std::istream& in) {
  auto doc = text::read_document(in);
  if (doc.kind != "dfa") throw Error("expected 'kind: dfa', found '" + doc.kind + "'", doc.kind_line);
  std::vector<std::string> states, alphabet, finals;
  std::optional<std::string> start;
  std::vector<Dfa::Transition> trans;
  std::size_t last_line = doc.kind_line;
  for (const auto& d : doc.directives) {
    last_line = d.line;
    auto toks = text::split_ws(d.value);
    for (const auto& t : toks) text::check_token(t, d.line);
    if (d.key == "states") {
      states.insert(states.end(), toks.begin(), toks.end());
    } else if (d.key == "alphabet") {
      alphabet.insert(alphabet.end(), toks.begin(), toks.end());
    } else if (d.key == "start") {
      if (toks.size() != 1) throw Error("start expects exactly one state", d.line);
      if (start) throw Error("duplicate start directive", d.line);
      start = toks[0];
    } else if (d.key == "final") {
      finals.insert(finals.end(), toks.begin(), toks.end());
    } else if (d.key == "trans") {
      if (toks.size() != 3) throw Error("malformed transition (expected 'trans: p a q')", d.line);
      trans.push_back({toks[0], toks[1], toks[2], d.line});
    } else {
      throw Error("unknown directive '" + d.key + "'", d.line);
    }
  }
  if (!start) throw Error("missing start state", last_line);
  try {
    return Dfa(std::move(states), std::move(alphabet), *start, std::move(finals), trans);
  } catch (const Error& e) {
    if (e.line() != 0) throw;
    throw Error(e.message(), last_line);
  }
}

Dfa parse_dfa_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dfa(in);
}

Dfa load_dfa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_dfa(in);
}

std::string print_dfa(const Dfa& m) {
  std::ostringstream out;
  out << "kind: dfa\nstates:";
  for (const auto& s : m.states()) out << ' ' << s;
  out << "\nalphabet:";
  for (const auto& a : m.alphabet()) out << ' ' << a;
  out << "\nstart: " << m.states()[m.start()] << "\nfinal:";
  for (std::size_t f : m.finals()) out << ' ' << m.states()[f];
  out << '\n';
  for (std::size_t p = 0; p < m.state_count(); ++p)
    for (std::size_t a = 0; a < m.alphabet().size(); ++a)
      out << "trans: " << m.states()[p] << ' ' << m.alphabet()[a] << ' '
          << m.states()[m.next(p, a)] << '\n';
  return out.str();
}

}  // namespace fsf
