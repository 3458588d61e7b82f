#include "fsf/re_construction.hpp"

#include <algorithm>
#include <unordered_set>

#include "fsf/error.hpp"
#include "fsf/text.hpp"

namespace fsf {

PsiSet build_psi(const Lqg& g) {
  auto nf = normal_form(g);
  if (!nf.holds)
    throw Error("queue grammar is not in normal form (rule " + std::to_string(*nf.offending + 1) + ")");
  PsiSet psi;
  for (const auto& r : g.rules()) {
    PsiPair p{r.a, r.b};
    if (std::find(psi.begin(), psi.end(), p) == psi.end()) psi.push_back(p);
  }
  std::sort(psi.begin(), psi.end(), [&](const PsiPair& x, const PsiPair& y) {
    const auto& xa = g.symbols()[x.a];
    const auto& ya = g.symbols()[y.a];
    if (xa != ya) return xa < ya;
    return g.states()[x.b] < g.states()[y.b];
  });
  return psi;
}

std::optional<std::size_t> EncodingScheme::index_of(SymbolId a, StateId b) const {
  for (std::size_t i = 0; i < psi.size(); ++i)
    if (psi[i].a == a && psi[i].b == b) return i;
  return std::nullopt;
}

const std::string& EncodingScheme::code(SymbolId a, StateId b) const {
  auto i = index_of(a, b);
  if (!i) throw Error("pair is not in Psi");
  return codes[*i];
}

EncodingScheme build_encoding(const PsiSet& psi) {
  if (psi.empty()) throw Error("cannot encode an empty Psi");
  EncodingScheme e;
  e.psi = psi;
  e.width = 1;
  while ((std::size_t{1} << e.width) < psi.size() + 1) ++e.width;
  const std::size_t all_ones = (std::size_t{1} << e.width) - 1;
  for (std::size_t v = 0; e.codes.size() < psi.size(); ++v) {
    if (v == all_ones) continue;
    std::string code(e.width, '0');
    for (std::size_t bit = 0; bit < e.width; ++bit)
      if (v & (std::size_t{1} << bit)) code[e.width - 1 - bit] = '1';
    e.codes.push_back(std::move(code));
  }
  return e;
}

SubstitutionTables build_tables(const Lqg& g, const EncodingScheme& e) {
  SubstitutionTables t;
  t.nu.resize(g.symbols().size());
  t.mu.resize(g.states().size());
  for (std::size_t i = 0; i < e.psi.size(); ++i) {
    t.nu[e.psi[i].a].push_back(e.codes[i]);
    t.mu[e.psi[i].b].emplace_back(e.codes[i].rbegin(), e.codes[i].rend());
  }
  return t;
}

std::string_view to_string(ReStep step) {
  switch (step) {
    case ReStep::start: return "start";
    case ReStep::nonterminal_phase: return "nonterminal-phase";
    case ReStep::phase_switch: return "phase-switch";
    case ReStep::terminal_phase: return "terminal-phase";
    case ReStep::accepting: return "accepting";
    case ReStep::direct_terminal: return "direct-terminal";
    case ReStep::direct_accept: return "direct-accept";
  }
  return "?";
}

std::string j_name(std::string_view state, int phase) {
  return "<" + std::string(state) + "." + std::to_string(phase) + ">";
}

namespace {

std::vector<std::string> bits(const std::string& code) {
  std::vector<std::string> out;
  for (char c : code) out.emplace_back(1, c);
  return out;
}

/// All concatenations u1 u2 ... with ui drawn from nu[y_i].
std::vector<std::string> substitute(const std::vector<std::vector<std::string>>& nu, const Word& y) {
  std::vector<std::string> out{""};
  for (SymbolId s : y) {
    std::vector<std::string> next;
    for (const auto& prefix : out)
      for (const auto& c : nu[s]) next.push_back(prefix + c);
    out = std::move(next);
    if (out.empty()) break;
  }
  return out;
}

struct Emitter {
  CfgBuilder& builder;
  std::vector<ReStep>& provenance;
  std::unordered_set<std::string> keys;

  void add(const std::string& lhs, std::vector<std::string> rhs, ReStep step) {
    std::string key = lhs;
    for (const auto& s : rhs) key += " " + s;
    if (!keys.insert(key).second) return;
    builder.rule(lhs, std::move(rhs));
    provenance.push_back(step);
  }
};

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

ReCfg build_re_cfg(const Lqg& q, const ReConstructionOptions& options) {
  for (const auto& a : q.symbols())
    if (a == "0" || a == "1") throw Error("symbol '" + a + "' collides with the codeword alphabet {0,1,#}");
  for (const auto& p : q.states())
    if (p == "0" || p == "1") throw Error("state '" + p + "' collides with the codeword alphabet {0,1,#}");
  for (SymbolId t : q.terminals())
    if (text::is_reserved_spelling(q.symbols()[t]))
      throw Error("terminal '" + q.symbols()[t] + "' uses the reserved <...> spelling");

  const PsiSet psi = build_psi(q);
  EncodingScheme enc = build_encoding(psi);
  const SubstitutionTables tables = build_tables(q, enc);

  const auto terminals = q.terminals();
  const bool s_taken =
      std::any_of(terminals.begin(), terminals.end(), [&](SymbolId t) { return q.symbols()[t] == "S"; });
  const std::string start = s_taken ? "<S>" : "S";

  CfgBuilder b;
  for (SymbolId t : terminals) b.terminal(q.symbols()[t]);
  b.nonterminal(start);
  for (StateId p = 0; p < q.states().size(); ++p) {
    if (q.is_final(p)) continue;
    b.nonterminal(j_name(q.states()[p], 1));
    b.nonterminal(j_name(q.states()[p], 2));
  }
  b.nonterminal("0");
  b.nonterminal("1");
  b.nonterminal("#");
  b.start(start);

  std::vector<ReStep> provenance;
  Emitter out{b, provenance, {}};
  auto all_t = [&](const Word& x) {
    return std::all_of(x.begin(), x.end(), [&](SymbolId s) { return q.is_terminal(s); });
  };
  auto all_n = [&](const Word& x) {
    return std::none_of(x.begin(), x.end(), [&](SymbolId s) { return q.is_terminal(s); });
  };
  auto name_of = [&](StateId p) { return q.states()[p]; };
  auto own_code = [&](const QueueRule& r) {
    const auto& c = enc.code(r.a, r.b);
    return bits(std::string(c.rbegin(), c.rend()));
  };
  // Codes appended on the right of a rule whose next state is p.
  auto right_codes = [&](const QueueRule& r) {
    std::vector<std::vector<std::string>> out;
    if (options.literal) {
      if (!q.is_final(r.c))
        for (const auto& v : tables.mu[r.c]) out.push_back(bits(v));
    } else {
      out.push_back(own_code(r));
    }
    return out;
  };

  // Step 1 and its extensions for start rules that append terminals.
  for (const auto& r : q.rules()) {
    if (r.a != q.start_symbol() || r.b != q.start_state()) continue;
    if (all_n(r.x) && !q.is_final(r.c)) {
      for (const auto& u : substitute(tables.nu, r.x)) {
        auto head = concat(bits(u), {j_name(name_of(r.c), 1)});
        if (options.literal) {
          for (const auto& v : right_codes(r)) out.add(start, concat(head, v), ReStep::start);
        } else {
          out.add(start, head, ReStep::start);
        }
      }
    }
    if (!options.literal && all_t(r.x)) {
      auto y = q.names(r.x);
      if (q.is_final(r.c))
        out.add(start, concat(y, {"#"}), ReStep::direct_accept);
      else
        out.add(start, concat(y, {j_name(name_of(r.c), 2)}), ReStep::direct_terminal);
    }
  }
  // Step 2.
  for (const auto& r : q.rules()) {
    if (!all_n(r.x) || q.is_final(r.c)) continue;
    for (const auto& u : substitute(tables.nu, r.x))
      for (const auto& v : right_codes(r))
        out.add(j_name(name_of(r.b), 1), concat(concat(bits(u), {j_name(name_of(r.c), 1)}), v),
                ReStep::nonterminal_phase);
  }
  // Step 3.
  for (StateId p = 0; p < q.states().size(); ++p)
    if (!q.is_final(p)) out.add(j_name(name_of(p), 1), {j_name(name_of(p), 2)}, ReStep::phase_switch);
  // Steps 4 and 5.
  for (const auto& r : q.rules()) {
    if (!all_t(r.x)) continue;
    auto y = q.names(r.x);
    if (!q.is_final(r.c)) {
      for (const auto& v : right_codes(r))
        out.add(j_name(name_of(r.b), 2), concat(concat(y, {j_name(name_of(r.c), 2)}), v),
                ReStep::terminal_phase);
    } else {
      auto rhs = concat(y, {"#"});
      if (!options.literal) rhs = concat(rhs, own_code(r));
      out.add(j_name(name_of(r.b), 2), rhs, ReStep::accepting);
    }
  }

  return ReCfg{b.build(), FinalLanguage::marked_palindrome({"0", "1"}, "#"), std::move(enc),
               std::move(provenance)};
}

std::string encoding_table(const Lqg& q, const EncodingScheme& e) {
  std::string out;
  for (std::size_t i = 0; i < e.psi.size(); ++i)
    out += "iota: " + q.symbols()[e.psi[i].a] + " " + q.states()[e.psi[i].b] + " -> " + e.codes[i] + "\n";
  return out;
}

bool omega_member(const Cfg& g, std::span<const SymbolId> form) {
  auto is = [&](SymbolId s, std::string_view n) { return g.name(s) == n; };
  auto bit = [&](SymbolId s) { return is(s, "0") || is(s, "1"); };
  auto hash = std::find_if(form.begin(), form.end(), [&](SymbolId s) { return is(s, "#"); });
  if (hash == form.end()) return false;
  auto x_end = std::find_if_not(form.begin(), hash, bit);
  if (x_end == form.begin()) return false;
  if (!std::all_of(x_end, hash, [&](SymbolId s) { return g.is_terminal(s); })) return false;
  auto z = std::span<const SymbolId>(hash + 1, form.end());
  const auto x_len = static_cast<std::size_t>(x_end - form.begin());
  if (z.size() != x_len) return false;
  return std::equal(form.begin(), x_end, z.rbegin());
}

}  // namespace fsf
