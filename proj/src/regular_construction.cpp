#include "fsf/regular_construction.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "fsf/error.hpp"
#include "fsf/text.hpp"

namespace fsf {

std::vector<Decomposition> decompose_rhs(std::span<const SymbolId> rhs, const SymbolMask& w) {
  std::vector<std::size_t> optional_positions;
  for (std::size_t i = 0; i < rhs.size(); ++i)
    if (!w[rhs[i]]) optional_positions.push_back(i);
  if (optional_positions.size() >= 8 * sizeof(std::size_t) - 1)
    throw Error("right-hand side too long to decompose");

  std::vector<Decomposition> out;
  const std::size_t combos = std::size_t{1} << optional_positions.size();
  for (std::size_t mask = 0; mask < combos; ++mask) {
    Decomposition d;
    std::size_t next_optional = 0;
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      if (w[rhs[i]]) {
        d.picks.push_back(i);
      } else {
        if (mask & (std::size_t{1} << next_optional)) d.picks.push_back(i);
        ++next_optional;
      }
    }
    if (!d.picks.empty()) out.push_back(std::move(d));
  }
  return out;
}

std::string wrapped_name(std::string_view p, std::string_view a, std::string_view q) {
  std::string out = "<";
  out += p;
  out += '.';
  out += a;
  out += '.';
  out += q;
  out += '>';
  return out;
}

std::string start_wrapper_name(std::string_view qs, std::string_view s) {
  return wrapped_name(qs, s, "QF");
}

std::optional<WrappedSymbol> parse_wrapped(std::string_view token) {
  if (!text::is_reserved_spelling(token)) return std::nullopt;
  std::string_view body = token.substr(1, token.size() - 2);
  auto first = body.find('.');
  auto last = body.rfind('.');
  if (first == std::string_view::npos || first == last) return std::nullopt;
  WrappedSymbol w{std::string(body.substr(0, first)),
                  std::string(body.substr(first + 1, last - first - 1)),
                  std::string(body.substr(last + 1))};
  if (w.left.empty() || w.core.empty() || w.right.empty()) return std::nullopt;
  if (w.right == "QF") return std::nullopt;
  return w;
}

std::string_view to_string(ConstructionStep step) {
  switch (step) {
    case ConstructionStep::start: return "start";
    case ConstructionStep::chained: return "chained";
    case ConstructionStep::copied: return "copied";
    case ConstructionStep::terminal: return "terminal";
    case ConstructionStep::erased: return "erased";
    case ConstructionStep::start_bridge: return "start-bridge";
    case ConstructionStep::w_bridge: return "w-bridge";
    case ConstructionStep::w_free_copy: return "w-free-copy";
  }
  return "?";
}

namespace {

struct PendingRule {
  std::string lhs;
  std::vector<std::string> rhs;
  ConstructionStep step;
};

class RuleCollector {
 public:
  void add(std::string lhs, std::vector<std::string> rhs, ConstructionStep step) {
    std::string key = lhs;
    for (const auto& s : rhs) {
      key += ' ';
      key += s;
    }
    if (!keys_.insert(std::move(key)).second) return;
    rules_.push_back({std::move(lhs), std::move(rhs), step});
  }
  std::vector<PendingRule>& rules() { return rules_; }

 private:
  std::unordered_set<std::string> keys_;
  std::vector<PendingRule> rules_;
};

void check_state_name(const std::string& q) {
  if (q == "QF") throw Error("DFA state name 'QF' is reserved for the start wrapper");
  for (char c : q)
    if (c == '.' || c == '<' || c == '>')
      throw Error("DFA state name '" + q + "' may not contain '.', '<' or '>'");
}

}  // namespace

FinalizedCfg build_finalized_cfg(const Cfg& g, const Dfa& m, const RegularConstructionOptions& options) {
  for (std::size_t s = 0; s < g.symbol_count(); ++s)
    if (text::is_reserved_spelling(g.name(static_cast<SymbolId>(s))))
      throw Error("grammar symbol '" + g.name(static_cast<SymbolId>(s)) +
                  "' uses the reserved <...> spelling");
  for (const auto& q : m.states()) check_state_name(q);

  const auto& sigma = m.alphabet();
  SymbolMask w(g.symbol_count(), false);
  std::vector<std::size_t> dfa_symbol(g.symbol_count(), 0);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    auto id = g.find(sigma[i]);
    if (!id) throw Error("DFA input symbol '" + sigma[i] + "' is not in the grammar's total alphabet");
    w[*id] = true;
    dfa_symbol[*id] = i;
  }

  const auto& states = m.states();
  const std::size_t nq = states.size();
  const std::string qs = states[m.start()];
  const std::string& start_name = g.name(g.start());
  const std::string start_wrapper = start_wrapper_name(qs, start_name);
  auto wrap = [&](std::size_t p, SymbolId a, std::size_t q) {
    return wrapped_name(states[p], g.name(a), states[q]);
  };
  auto w_free = [&](const Word& rhs) {
    return std::none_of(rhs.begin(), rhs.end(), [&](SymbolId s) { return w[s]; });
  };

  RuleCollector out;

  for (std::size_t qf : m.finals())
    out.add(start_wrapper, {wrap(m.start(), g.start(), qf)}, ConstructionStep::start);
  if (m.accepting(m.start())) out.add(start_wrapper, {start_name}, ConstructionStep::start_bridge);

  for (const Rule& r : g.rules()) {
    for (const auto& d : decompose_rhs(r.rhs, w)) {
      const std::size_t n = d.picks.size();
      // Odometer over q_1 ... q_{n+1}.
      std::vector<std::size_t> qseq(n + 1, 0);
      for (;;) {
        std::vector<std::string> rhs;
        rhs.reserve(r.rhs.size());
        std::size_t j = 0;
        for (std::size_t i = 0; i < r.rhs.size(); ++i) {
          if (j < n && d.picks[j] == i) {
            rhs.push_back(wrap(qseq[j], r.rhs[i], qseq[j + 1]));
            ++j;
          } else {
            rhs.push_back(g.name(r.rhs[i]));
          }
        }
        out.add(wrap(qseq[0], r.lhs, qseq[n]), std::move(rhs), ConstructionStep::chained);
        std::size_t k = 0;
        while (k <= n && ++qseq[k] == nq) qseq[k++] = 0;
        if (k > n) break;
      }
    }
  }

  for (const Rule& r : g.rules()) {
    if (!w_free(r.rhs)) continue;
    out.add(g.name(r.lhs), g.names(r.rhs),
            w[r.lhs] ? ConstructionStep::w_free_copy : ConstructionStep::copied);
  }

  for (SymbolId s = 0; s < g.symbol_count(); ++s) {
    if (!w[s]) continue;
    for (std::size_t p = 0; p < nq; ++p) {
      const std::size_t q = m.next(p, dfa_symbol[s]);
      if (g.is_terminal(s)) {
        out.add(wrap(p, s, q), {g.name(s)}, ConstructionStep::terminal);
      } else {
        out.add(wrap(p, s, q), {}, ConstructionStep::erased);
        out.add(wrap(p, s, p), {g.name(s)}, ConstructionStep::w_bridge);
      }
    }
  }

  auto& rules = out.rules();

  // Symbols of H: T and N of G, the start wrapper, then wrapped symbols in
  // order of first appearance.
  std::unordered_map<std::string, bool> is_original;
  for (SymbolId s = 0; s < g.symbol_count(); ++s) is_original[g.name(s)] = g.is_terminal(s);
  std::vector<std::string> wrapped;
  std::unordered_set<std::string> wrapped_seen{start_wrapper};
  auto note = [&](const std::string& s) {
    if (!is_original.count(s) && wrapped_seen.insert(s).second) wrapped.push_back(s);
  };
  for (const auto& r : rules) {
    note(r.lhs);
    for (const auto& s : r.rhs) note(s);
  }

  std::vector<bool> keep(rules.size(), true);
  if (options.prune) {
    std::unordered_set<std::string> productive;
    for (SymbolId t : g.terminals()) productive.insert(g.name(t));
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& r : rules) {
        if (productive.count(r.lhs)) continue;
        if (std::all_of(r.rhs.begin(), r.rhs.end(), [&](const std::string& s) { return productive.count(s) > 0; })) {
          productive.insert(r.lhs);
          changed = true;
        }
      }
    }
    std::unordered_map<std::string, std::vector<std::size_t>> by_lhs;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const auto& r = rules[i];
      keep[i] = std::all_of(r.rhs.begin(), r.rhs.end(), [&](const std::string& s) { return productive.count(s) > 0; });
      if (keep[i]) by_lhs[r.lhs].push_back(i);
    }
    std::unordered_set<std::string> reachable{start_wrapper};
    std::vector<std::string> stack{start_wrapper};
    while (!stack.empty()) {
      auto sym = std::move(stack.back());
      stack.pop_back();
      auto it = by_lhs.find(sym);
      if (it == by_lhs.end()) continue;
      for (std::size_t i : it->second)
        for (const auto& s : rules[i].rhs)
          if (reachable.insert(s).second) stack.push_back(s);
    }
    for (std::size_t i = 0; i < rules.size(); ++i)
      if (keep[i] && !reachable.count(rules[i].lhs)) keep[i] = false;

    std::unordered_set<std::string> used;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (!keep[i]) continue;
      used.insert(rules[i].lhs);
      for (const auto& s : rules[i].rhs) used.insert(s);
    }
    std::erase_if(wrapped, [&](const std::string& s) { return !used.count(s); });
  }

  CfgBuilder b;
  for (SymbolId t : g.terminals()) b.terminal(g.name(t));
  for (SymbolId n : g.nonterminals()) b.nonterminal(g.name(n));
  b.nonterminal(start_wrapper);
  for (const auto& s : wrapped) b.nonterminal(s);
  b.start(start_wrapper);
  std::vector<ConstructionStep> provenance;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (!keep[i]) continue;
    b.rule(rules[i].lhs, rules[i].rhs);
    provenance.push_back(rules[i].step);
  }
  return FinalizedCfg{b.build(), std::move(provenance)};
}

}  // namespace fsf
