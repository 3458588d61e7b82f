#include "fsf/cfg.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "fsf/error.hpp"
#include "fsf/text.hpp"

namespace fsf {

CfgBuilder& CfgBuilder::terminal(std::string name, std::size_t line) {
  terminals_.push_back({std::move(name), line});
  return *this;
}

CfgBuilder& CfgBuilder::nonterminal(std::string name, std::size_t line) {
  nonterminals_.push_back({std::move(name), line});
  return *this;
}

CfgBuilder& CfgBuilder::start(std::string name, std::size_t line) {
  start_ = Decl{std::move(name), line};
  return *this;
}

CfgBuilder& CfgBuilder::rule(std::string lhs, std::vector<std::string> rhs, std::size_t line) {
  rules_.push_back({std::move(lhs), std::move(rhs), line});
  return *this;
}

bool CfgBuilder::declares(std::string_view name) const {
  auto same = [&](const Decl& d) { return d.name == name; };
  return std::any_of(terminals_.begin(), terminals_.end(), same) ||
         std::any_of(nonterminals_.begin(), nonterminals_.end(), same);
}

Cfg CfgBuilder::build() const {
  Cfg g;
  auto declare = [&](const Decl& d) {
    text::check_token(d.name, d.line);
    if (g.index_.count(d.name)) throw Error("symbol '" + d.name + "' declared twice", d.line);
    g.index_.emplace(d.name, static_cast<SymbolId>(g.names_.size()));
    g.names_.push_back(d.name);
    if (d.name.size() != 1) g.compact_ = false;
  };
  for (const auto& d : terminals_) declare(d);
  g.terminal_count_ = g.names_.size();
  for (const auto& d : nonterminals_) declare(d);

  if (!start_) throw Error("missing start symbol");
  auto s = g.find(start_->name);
  if (!s) throw Error("start symbol '" + start_->name + "' is not declared", start_->line);
  if (g.is_terminal(*s)) throw Error("start must be a nonterminal", start_->line);
  g.start_ = *s;

  g.by_lhs_.assign(g.names_.size(), {});
  std::set<Rule, decltype([](const Rule& a, const Rule& b) {
             return std::tie(a.lhs, a.rhs) < std::tie(b.lhs, b.rhs);
           })>
      seen;
  g.rules_.reserve(rules_.size());
  for (const auto& r : rules_) {
    Rule rule;
    auto lhs = g.find(r.lhs);
    if (!lhs) throw Error("undeclared symbol '" + r.lhs + "'", r.line);
    if (g.is_terminal(*lhs))
      throw Error("rule left-hand side '" + r.lhs + "' is a terminal", r.line);
    rule.lhs = *lhs;
    rule.rhs.reserve(r.rhs.size());
    for (const auto& name : r.rhs) {
      auto id = g.find(name);
      if (!id) throw Error("undeclared symbol '" + name + "'", r.line);
      rule.rhs.push_back(*id);
    }
    if (!seen.insert(rule).second) throw Error("duplicate rule", r.line);
    g.by_lhs_[rule.lhs].push_back(g.rules_.size());
    g.rules_.push_back(std::move(rule));
  }
  return g;
}

std::optional<SymbolId> Cfg::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SymbolId Cfg::id(std::string_view name) const {
  auto id = find(name);
  if (!id) throw Error("unknown symbol '" + std::string(name) + "'");
  return *id;
}

std::vector<SymbolId> Cfg::terminals() const {
  std::vector<SymbolId> out(terminal_count_);
  for (std::size_t i = 0; i < terminal_count_; ++i) out[i] = static_cast<SymbolId>(i);
  return out;
}

std::vector<SymbolId> Cfg::nonterminals() const {
  std::vector<SymbolId> out;
  for (std::size_t i = terminal_count_; i < names_.size(); ++i)
    out.push_back(static_cast<SymbolId>(i));
  return out;
}

std::string Cfg::label(std::size_t rule_index) { return "r" + std::to_string(rule_index + 1); }

std::optional<std::size_t> Cfg::rule_index(std::string_view label) const {
  if (label.size() < 2 || label[0] != 'r') return std::nullopt;
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(label.data() + 1, label.data() + label.size(), n);
  if (ec != std::errc() || ptr != label.data() + label.size()) return std::nullopt;
  if (n == 0 || n > rules_.size()) return std::nullopt;
  return n - 1;
}

SymbolMask Cfg::mask(const std::vector<std::string>& names) const {
  SymbolMask m(symbol_count(), false);
  for (const auto& n : names) m[id(n)] = true;
  return m;
}

SymbolMask Cfg::terminal_mask() const {
  SymbolMask m(symbol_count(), false);
  for (std::size_t i = 0; i < terminal_count_; ++i) m[i] = true;
  return m;
}

Word Cfg::word(const std::vector<std::string>& names) const {
  Word w;
  w.reserve(names.size());
  for (const auto& n : names) w.push_back(id(n));
  return w;
}

std::vector<std::string> Cfg::names(std::span<const SymbolId> w) const {
  std::vector<std::string> out;
  out.reserve(w.size());
  for (SymbolId s : w) out.push_back(names_[s]);
  return out;
}

Word Cfg::parse_word(std::string_view input) const {
  std::string_view body = text::trim(input);
  if (body.empty() || body == text::kEpsilon) return {};
  auto tokens = text::split_ws(body);
  if (tokens.size() > 1) return word(tokens);
  Word w;
  std::size_t i = 0;
  while (i < body.size()) {
    std::size_t best = 0;
    SymbolId best_id = 0;
    for (std::size_t s = 0; s < names_.size(); ++s) {
      const auto& n = names_[s];
      if (n.size() > best && body.substr(i, n.size()) == n) {
        best = n.size();
        best_id = static_cast<SymbolId>(s);
      }
    }
    if (best == 0)
      throw Error("cannot split '" + std::string(body) + "' into symbols at offset " +
                  std::to_string(i));
    w.push_back(best_id);
    i += best;
  }
  return w;
}

std::string Cfg::render(std::span<const SymbolId> w) const {
  if (w.empty()) return std::string(text::kEpsilon);
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !compact_) out += ' ';
    out += names_[w[i]];
  }
  return out;
}

bool operator==(const Cfg& a, const Cfg& b) {
  return a.names_ == b.names_ && a.terminal_count_ == b.terminal_count_ &&
         a.start_ == b.start_ && a.rules_ == b.rules_;
}

bool shortlex_less(const Cfg& g, std::span<const SymbolId> a, std::span<const SymbolId> b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    return g.name(a[i]) < g.name(b[i]);
  }
  return false;
}

Word project(std::span<const SymbolId> form, const SymbolMask& keep) {
  Word out;
  for (SymbolId s : form)
    if (keep[s]) out.push_back(s);
  return out;
}

Word derive_step(const Cfg& g, std::span<const SymbolId> form, std::size_t rule_index,
                 std::size_t pos) {
  if (rule_index >= g.rules().size()) throw Error("unknown rule index");
  if (pos >= form.size())
    throw Error("position " + std::to_string(pos) + " out of range for form of length " +
                std::to_string(form.size()));
  const Rule& r = g.rule(rule_index);
  if (form[pos] != r.lhs)
    throw Error("symbol '" + g.name(form[pos]) + "' at position " + std::to_string(pos) +
                " does not match left-hand side '" + g.name(r.lhs) + "' of " +
                Cfg::label(rule_index));
  Word out;
  out.reserve(form.size() - 1 + r.rhs.size());
  out.insert(out.end(), form.begin(), form.begin() + static_cast<std::ptrdiff_t>(pos));
  out.insert(out.end(), r.rhs.begin(), r.rhs.end());
  out.insert(out.end(), form.begin() + static_cast<std::ptrdiff_t>(pos) + 1, form.end());
  return out;
}

std::vector<Word> replay_forms(const Cfg& g, const DerivationTrace& trace) {
  std::vector<Word> forms{Word{trace.start}};
  for (const auto& step : trace.steps) forms.push_back(derive_step(g, forms.back(), step.rule, step.pos));
  return forms;
}

Word replay(const Cfg& g, const DerivationTrace& trace) {
  Word form{trace.start};
  for (const auto& step : trace.steps) form = derive_step(g, form, step.rule, step.pos);
  return form;
}

SymbolMask rewritable(const Cfg& g) {
  SymbolMask m(g.symbol_count(), false);
  for (const auto& r : g.rules()) m[r.lhs] = true;
  return m;
}

ClassificationReport classify(const Cfg& g) {
  ClassificationReport rep;
  const auto& rules = g.rules();
  const SymbolMask active = rewritable(g);

  rep.propagating = std::all_of(rules.begin(), rules.end(), [](const Rule& r) { return !r.rhs.empty(); });

  auto count_if_mask = [](const Word& w, auto pred) {
    return static_cast<std::size_t>(std::count_if(w.begin(), w.end(), pred));
  };
  rep.linear = std::all_of(rules.begin(), rules.end(), [&](const Rule& r) {
    return count_if_mask(r.rhs, [&](SymbolId s) { return active[s]; }) <= 1;
  });

  // Minimal linear: N = {S}, a single terminal-only rule S -> # whose marker
  // occurs in no other rule.
  const auto nts = g.nonterminals();
  bool only_start = nts.size() == 1 && nts[0] == g.start();
  std::optional<std::size_t> terminating;
  bool unique_terminating = true;
  bool literal_linear = true;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    auto nonterminals = count_if_mask(rules[i].rhs, [&](SymbolId s) { return g.is_nonterminal(s); });
    if (nonterminals > 1) literal_linear = false;
    if (nonterminals == 0) {
      if (terminating) unique_terminating = false;
      terminating = i;
    }
  }
  if (only_start && literal_linear && terminating && unique_terminating) {
    const Word& rhs = rules[*terminating].rhs;
    if (rhs.size() == 1 && g.is_terminal(rhs[0])) {
      SymbolId marker = rhs[0];
      bool reused = false;
      for (std::size_t i = 0; i < rules.size(); ++i) {
        if (i == *terminating) continue;
        if (std::find(rules[i].rhs.begin(), rules[i].rhs.end(), marker) != rules[i].rhs.end())
          reused = true;
      }
      if (!reused) {
        rep.minimal_linear = true;
        rep.marker = marker;
      }
    }
  }

  if (rep.minimal_linear && rules.size() >= 2) {
    rep.palindromial = std::all_of(rules.begin(), rules.end(), [&](const Rule& r) {
      if (r.rhs.size() == 1 && r.rhs[0] == *rep.marker) return true;
      return r.rhs.size() == 3 && r.rhs[1] == g.start() && r.rhs[0] == r.rhs[2] &&
             g.is_terminal(r.rhs[0]);
    });
  }
  return rep;
}

}  // namespace fsf
