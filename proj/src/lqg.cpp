#include "fsf/lqg.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "fsf/error.hpp"
#include "fsf/text.hpp"

namespace fsf {

std::vector<SymbolId> Lqg::terminals() const {
  std::vector<SymbolId> out;
  for (SymbolId a = 0; a < symbols_.size(); ++a)
    if (terminal_[a]) out.push_back(a);
  return out;
}

std::vector<StateId> Lqg::finals() const {
  std::vector<StateId> out;
  for (StateId q = 0; q < states_.size(); ++q)
    if (final_[q]) out.push_back(q);
  return out;
}

std::optional<SymbolId> Lqg::find_symbol(std::string_view name) const {
  for (SymbolId a = 0; a < symbols_.size(); ++a)
    if (symbols_[a] == name) return a;
  return std::nullopt;
}

std::optional<StateId> Lqg::find_state(std::string_view name) const {
  for (StateId q = 0; q < states_.size(); ++q)
    if (states_[q] == name) return q;
  return std::nullopt;
}

std::vector<std::string> Lqg::names(std::span<const SymbolId> w) const {
  std::vector<std::string> out;
  out.reserve(w.size());
  for (SymbolId a : w) out.push_back(symbols_[a]);
  return out;
}

Word Lqg::parse_word(std::string_view input) const {
  std::string_view body = text::trim(input);
  if (body.empty() || body == text::kEpsilon) return {};
  auto tokens = text::split_ws(body);
  Word w;
  if (tokens.size() > 1) {
    for (const auto& t : tokens) {
      auto a = find_symbol(t);
      if (!a) throw Error("unknown symbol '" + t + "'");
      w.push_back(*a);
    }
    return w;
  }
  std::size_t i = 0;
  while (i < body.size()) {
    std::size_t best = 0;
    SymbolId best_id = 0;
    for (SymbolId a = 0; a < symbols_.size(); ++a) {
      const auto& n = symbols_[a];
      if (n.size() > best && body.substr(i, n.size()) == n) {
        best = n.size();
        best_id = a;
      }
    }
    if (best == 0)
      throw Error("cannot split '" + std::string(body) + "' into symbols at offset " + std::to_string(i));
    w.push_back(best_id);
    i += best;
  }
  return w;
}

std::string Lqg::render(std::span<const SymbolId> w) const {
  if (w.empty()) return std::string(text::kEpsilon);
  const bool compact =
      std::all_of(symbols_.begin(), symbols_.end(), [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !compact) out += ' ';
    out += symbols_[w[i]];
  }
  return out;
}

NormalFormReport normal_form(const Lqg& g) {
  NormalFormReport r;
  for (std::size_t i = 0; i < g.rules().size(); ++i) {
    const auto& rule = g.rules()[i];
    bool ok = !g.is_terminal(rule.a) && !g.is_final(rule.b);
    const bool all_t = std::all_of(rule.x.begin(), rule.x.end(), [&](SymbolId s) { return g.is_terminal(s); });
    const bool all_n = std::none_of(rule.x.begin(), rule.x.end(), [&](SymbolId s) { return g.is_terminal(s); });
    ok = ok && (all_t || all_n);
    if (!ok) {
      r.holds = false;
      r.offending = i;
      return r;
    }
  }
  return r;
}

LqgValidation lqg_validate(const RawLqg& raw) {
  Lqg g;
  std::unordered_map<std::string, SymbolId> sym;
  std::unordered_map<std::string, StateId> st;
  for (const auto& a : raw.symbols) {
    text::check_token(a, 0);
    if (a == "#") throw Error("'#' is reserved and cannot be in V");
    if (!sym.emplace(a, static_cast<SymbolId>(g.symbols_.size())).second)
      throw Error("duplicate symbol '" + a + "' in V");
    g.symbols_.push_back(a);
  }
  for (const auto& q : raw.states) {
    text::check_token(q, 0);
    if (q == "#") throw Error("'#' is reserved and cannot be in U");
    if (sym.count(q)) throw Error("'" + q + "' is in both V and U");
    if (!st.emplace(q, static_cast<StateId>(g.states_.size())).second)
      throw Error("duplicate state '" + q + "' in U");
    g.states_.push_back(q);
  }
  g.terminal_.assign(g.symbols_.size(), false);
  for (const auto& t : raw.terminals) {
    auto it = sym.find(t);
    if (it == sym.end()) throw Error("terminal '" + t + "' is not in V");
    if (g.terminal_[it->second]) throw Error("duplicate terminal '" + t + "'");
    g.terminal_[it->second] = true;
  }
  g.final_.assign(g.states_.size(), false);
  for (const auto& f : raw.finals) {
    auto it = st.find(f);
    if (it == st.end()) throw Error("final state '" + f + "' is not in U");
    if (g.final_[it->second]) throw Error("duplicate final state '" + f + "'");
    g.final_[it->second] = true;
  }

  auto a0 = sym.find(raw.start_symbol);
  auto q0 = st.find(raw.start_state);
  if (a0 == sym.end() || g.terminal_[a0->second])
    throw Error("start symbol '" + raw.start_symbol + "' must be in V - T", raw.start_line);
  if (q0 == st.end() || g.final_[q0->second])
    throw Error("start state '" + raw.start_state + "' must be in U - D", raw.start_line);
  g.start_symbol_ = a0->second;
  g.start_state_ = q0->second;

  for (const auto& r : raw.rules) {
    QueueRule q;
    auto a = sym.find(r.a);
    if (a == sym.end()) throw Error("rule symbol '" + r.a + "' is not in V", r.line);
    auto b = st.find(r.b);
    if (b == st.end()) throw Error("rule state '" + r.b + "' is not in U", r.line);
    if (g.final_[b->second]) throw Error("rule state '" + r.b + "' is in D", r.line);
    auto c = st.find(r.c);
    if (c == st.end()) throw Error("rule target state '" + r.c + "' is not in U", r.line);
    q.a = a->second;
    q.b = b->second;
    q.c = c->second;
    for (const auto& s : r.x) {
      auto it = sym.find(s);
      if (it == sym.end()) throw Error("appended symbol '" + s + "' is not in V", r.line);
      q.x.push_back(it->second);
    }
    if (std::find(g.rules_.begin(), g.rules_.end(), q) != g.rules_.end())
      throw Error("duplicate rule", r.line);
    g.rules_.push_back(std::move(q));
  }

  g.ordinary_ = raw.ordinary;
  if (raw.ordinary) {
    for (SymbolId a = 0; a < g.symbols_.size(); ++a) {
      bool has = std::any_of(g.rules_.begin(), g.rules_.end(), [&](const QueueRule& r) { return r.a == a; });
      if (!has) throw Error("ordinary queue grammar has no rule for symbol '" + g.symbols_[a] + "'");
    }
  }
  auto report = normal_form(g);
  return LqgValidation{std::move(g), report};
}

LqgConfig lqg_initial(const Lqg& g) { return LqgConfig{{}, {g.start_symbol()}, g.start_state()}; }

LqgConfig lqg_step(const Lqg& g, const LqgConfig& c, std::size_t rule_index) {
  if (rule_index >= g.rules().size()) throw Error("no rule with index " + std::to_string(rule_index));
  const auto& r = g.rules()[rule_index];
  if (c.queue.empty()) throw Error("cannot step: the queue is empty");
  if (c.queue.front() != r.a)
    throw Error("rule consumes '" + g.symbols()[r.a] + "' but the queue head is '" +
                g.symbols()[c.queue.front()] + "'");
  if (c.state != r.b)
    throw Error("rule applies in state '" + g.states()[r.b] + "' but the state is '" +
                g.states()[c.state] + "'");
  LqgConfig next;
  next.consumed = c.consumed;
  next.consumed.push_back(r.a);
  next.queue.assign(c.queue.begin() + 1, c.queue.end());
  next.queue.insert(next.queue.end(), r.x.begin(), r.x.end());
  next.state = r.c;
  return next;
}

LqgConfig lqg_step(const Lqg& g, const LqgConfig& c, const QueueRule& rule) {
  auto it = std::find(g.rules().begin(), g.rules().end(), rule);
  if (it == g.rules().end()) throw Error("not a rule of the grammar");
  return lqg_step(g, c, static_cast<std::size_t>(it - g.rules().begin()));
}

namespace {

struct QNode {
  std::size_t parent;
  std::size_t rule;
  std::size_t depth;
  Word queue;
  StateId state;
};

constexpr std::size_t kRoot = static_cast<std::size_t>(-1);

std::string config_key(const Word& queue, StateId state) {
  std::string key(reinterpret_cast<const char*>(&state), sizeof state);
  key.append(reinterpret_cast<const char*>(queue.data()), queue.size() * sizeof(SymbolId));
  return key;
}

/// Breadth-first search over (queue, state); history does not influence the
/// future, so it is dropped. `on_accept` sees the accepting node and returns
/// true to stop.
class QueueSearch {
 public:
  QueueSearch(const Lqg& g, const LqgBounds& b, std::size_t max_len,
              std::optional<std::span<const SymbolId>> target)
      : g_(g), b_(b), max_len_(max_len), target_(target) {
    // Terminals that no rule consumes are permanent once appended.
    sticky_terminals_ = std::none_of(g.rules().begin(), g.rules().end(),
                                     [&](const QueueRule& r) { return g.is_terminal(r.a); });
    by_state_.resize(g.states().size());
    next_.assign(g.symbols().size(), std::vector<std::vector<StateId>>(g.states().size()));
    for (std::size_t i = 0; i < g.rules().size(); ++i) {
      const auto& r = g.rules()[i];
      by_state_[r.b].push_back(i);
      auto& targets = next_[r.a][r.b];
      if (std::find(targets.begin(), targets.end(), r.c) == targets.end()) targets.push_back(r.c);
    }
  }

  template <typename OnAccept>
  void run(OnAccept on_accept) {
    push(kRoot, 0, 0, {g_.start_symbol()}, g_.start_state());
    for (std::size_t head = 0; head < nodes_.size(); ++head) {
      const QNode cur = nodes_[head];
      if (cur.queue.empty()) continue;
      for (std::size_t ri : by_state_[cur.state]) {
        const auto& r = g_.rules()[ri];
        if (r.a != cur.queue.front()) continue;
        Word q(cur.queue.begin() + 1, cur.queue.end());
        q.insert(q.end(), r.x.begin(), r.x.end());
        const std::size_t depth = cur.depth + 1;
        if (depth > b_.max_steps) {
          cut_ = true;
          continue;
        }
        if (g_.is_final(r.c)) {
          if (!accepts(q)) continue;
          accepted_.push_back({head, ri, depth, std::move(q), r.c});
          if (on_accept(accepted_.back())) return;
          continue;
        }
        if (!promising(q, r.c)) continue;
        if (q.size() > b_.effective_queue_cap()) {
          cut_ = true;
          continue;
        }
        if (!push(head, ri, depth, std::move(q), r.c)) return;
      }
    }
  }

  bool cut() const { return cut_; }
  bool capped() const { return capped_; }
  std::size_t size() const { return nodes_.size(); }

  std::vector<std::size_t> rules_to(const QNode& leaf) const {
    std::vector<std::size_t> out{leaf.rule};
    for (std::size_t n = leaf.parent; n != 0 && n != kRoot; n = nodes_[n].parent) out.push_back(nodes_[n].rule);
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  bool accepts(const Word& q) const {
    if (q.size() > max_len_) return false;
    if (!std::all_of(q.begin(), q.end(), [&](SymbolId s) { return g_.is_terminal(s); })) return false;
    return !target_ || std::equal(q.begin(), q.end(), target_->begin(), target_->end());
  }

  /// Every nonterminal now in the queue must be consumed, in order, before
  /// anything appended later. Tracks the states in which each can be
  /// consumed; an empty set means the configuration can never accept.
  bool consumable(const Word& q, StateId state) const {
    auto last_n = std::find_if(q.rbegin(), q.rend(), [&](SymbolId s) { return !g_.is_terminal(s); });
    const auto prefix = static_cast<std::size_t>(q.rend() - last_n);
    std::vector<char> cur(g_.states().size(), 0), nxt(g_.states().size(), 0);
    cur[state] = 1;
    for (std::size_t i = 0; i < prefix; ++i) {
      std::fill(nxt.begin(), nxt.end(), 0);
      bool any = false;
      for (StateId b = 0; b < cur.size(); ++b) {
        if (!cur[b]) continue;
        for (StateId c : next_[q[i]][b]) {
          nxt[c] = 1;
          any = true;
        }
      }
      if (!any) return false;
      cur.swap(nxt);
    }
    return true;
  }

  bool promising(const Word& q, StateId state) const {
    if (!consumable(q, state)) return false;
    if (!sticky_terminals_) return true;
    auto first_t = std::find_if(q.begin(), q.end(), [&](SymbolId s) { return g_.is_terminal(s); });
    // A nonterminal behind a terminal can never reach the head.
    if (std::any_of(first_t, q.end(), [&](SymbolId s) { return !g_.is_terminal(s); })) return false;
    const auto terminals = static_cast<std::size_t>(q.end() - first_t);
    if (terminals > max_len_) return false;
    if (target_) {
      if (terminals > target_->size()) return false;
      if (!std::equal(first_t, q.end(), target_->begin())) return false;
    }
    return true;
  }

  bool push(std::size_t parent, std::size_t rule, std::size_t depth, Word q, StateId state) {
    if (!seen_.insert(config_key(q, state)).second) return true;
    if (nodes_.size() >= b_.node_cap) {
      capped_ = true;
      return false;
    }
    nodes_.push_back({parent, rule, depth, std::move(q), state});
    return true;
  }

  const Lqg& g_;
  const LqgBounds& b_;
  std::size_t max_len_;
  std::optional<std::span<const SymbolId>> target_;
  bool sticky_terminals_ = false;
  std::vector<std::vector<std::size_t>> by_state_;
  std::vector<std::vector<std::vector<StateId>>> next_;  // [a][b] -> targets c
  std::vector<QNode> nodes_;
  std::vector<QNode> accepted_;
  std::unordered_set<std::string> seen_;
  bool cut_ = false;
  bool capped_ = false;
};

}  // namespace

LqgLanguage lqg_enumerate(const Lqg& g, const LqgBounds& b) {
  if (b.max_steps == 0) throw Error("max_steps must be at least 1");
  QueueSearch search(g, b, b.max_len, std::nullopt);
  std::set<Word> words;
  search.run([&](const QNode& n) {
    words.insert(n.queue);
    return false;
  });
  if (search.capped())
    throw BudgetExceeded("queue grammar search exceeded the node cap of " + std::to_string(b.node_cap));
  LqgLanguage out;
  out.words.assign(words.begin(), words.end());
  std::sort(out.words.begin(), out.words.end(), [&](const Word& x, const Word& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return g.names(x) < g.names(y);
  });
  out.complete = !search.cut();
  return out;
}

LqgVerdict lqg_member_bounded(const Lqg& g, std::span<const SymbolId> target, const LqgBounds& b) {
  LqgVerdict v;
  for (SymbolId s : target)
    if (s >= g.symbols().size() || !g.is_terminal(s)) {
      v.outcome = LqgVerdict::Outcome::exhausted_complete;
      return v;
    }
  // max_len is ignored here; size the default queue cap from the target instead
  LqgBounds sized = b;
  if (sized.queue_cap == 0) sized.queue_cap = LqgBounds{target.size(), 0, 0, 0}.effective_queue_cap();
  QueueSearch search(g, sized, target.size(), target);
  std::optional<std::vector<std::size_t>> hit;
  search.run([&](const QNode& n) {
    hit = search.rules_to(n);
    return true;
  });
  v.nodes = search.size();
  if (hit) {
    v.outcome = LqgVerdict::Outcome::found;
    v.rules = std::move(*hit);
    v.configs.push_back(lqg_initial(g));
    for (std::size_t r : v.rules) v.configs.push_back(lqg_step(g, v.configs.back(), r));
  } else if (!search.cut() && !search.capped()) {
    v.outcome = LqgVerdict::Outcome::exhausted_complete;
  }
  return v;
}

Lqg parse_lqg(std::istream& in) {
  auto doc = text::read_document(in);
  RawLqg raw;
  if (doc.kind == "qg") {
    raw.ordinary = true;
  } else if (doc.kind != "lqg") {
    throw Error("expected 'kind: lqg' or 'kind: qg', found '" + doc.kind + "'", doc.kind_line);
  }
  bool have_start = false;
  std::size_t last_line = doc.kind_line;
  for (const auto& d : doc.directives) {
    last_line = d.line;
    if (d.key == "rule") {
      auto arrow = d.value.find("->");
      if (arrow == std::string::npos) throw Error("malformed rule (expected 'rule: a q -> x , p')", d.line);
      auto lhs = text::split_ws(std::string_view(d.value).substr(0, arrow));
      std::string_view rest = std::string_view(d.value).substr(arrow + 2);
      auto comma = rest.rfind(',');
      if (lhs.size() != 2 || comma == std::string_view::npos)
        throw Error("malformed rule (expected 'rule: a q -> x , p')", d.line);
      auto x = text::split_ws(rest.substr(0, comma));
      auto c = text::split_ws(rest.substr(comma + 1));
      if (c.size() != 1) throw Error("malformed rule: expected one target state after ','", d.line);
      if (x.size() == 1 && x[0] == text::kEpsilon) x.clear();
      for (const auto& t : lhs) text::check_token(t, d.line);
      for (const auto& t : x) text::check_token(t, d.line);
      text::check_token(c[0], d.line);
      raw.rules.push_back({lhs[0], lhs[1], std::move(x), c[0], d.line});
      continue;
    }
    auto toks = text::split_ws(d.value);
    for (const auto& t : toks) text::check_token(t, d.line);
    if (d.key == "V") {
      raw.symbols.insert(raw.symbols.end(), toks.begin(), toks.end());
    } else if (d.key == "T") {
      raw.terminals.insert(raw.terminals.end(), toks.begin(), toks.end());
    } else if (d.key == "U") {
      raw.states.insert(raw.states.end(), toks.begin(), toks.end());
    } else if (d.key == "D") {
      raw.finals.insert(raw.finals.end(), toks.begin(), toks.end());
    } else if (d.key == "start") {
      if (have_start) throw Error("duplicate start directive", d.line);
      if (toks.size() != 2) throw Error("start expects a symbol and a state", d.line);
      raw.start_symbol = toks[0];
      raw.start_state = toks[1];
      raw.start_line = d.line;
      have_start = true;
    } else {
      throw Error("unknown directive '" + d.key + "'", d.line);
    }
  }
  if (!have_start) throw Error("missing start directive", last_line);
  try {
    return lqg_validate(raw).grammar;
  } catch (const Error& e) {
    if (e.line() != 0) throw;
    throw Error(e.message(), last_line);
  }
}

Lqg parse_lqg_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_lqg(in);
}

Lqg load_lqg(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_lqg(in);
}

std::string print_lqg(const Lqg& g) {
  auto line = [](std::string key, const std::vector<std::string>& items) {
    return items.empty() ? key + ":\n" : key + ": " + text::join(items, " ") + "\n";
  };
  std::vector<std::string> t, d;
  for (SymbolId a : g.terminals()) t.push_back(g.symbols()[a]);
  for (StateId q : g.finals()) d.push_back(g.states()[q]);
  std::string out = g.ordinary() ? "kind: qg\n" : "kind: lqg\n";
  out += line("V", g.symbols());
  out += line("T", t);
  out += line("U", g.states());
  out += line("D", d);
  out += "start: " + g.symbols()[g.start_symbol()] + " " + g.states()[g.start_state()] + "\n";
  for (const auto& r : g.rules()) {
    out += "rule: " + g.symbols()[r.a] + " " + g.states()[r.b] + " -> ";
    out += r.x.empty() ? std::string(text::kEpsilon) : text::join(g.names(r.x), " ");
    out += " , " + g.states()[r.c] + "\n";
  }
  return out;
}

}  // namespace fsf
