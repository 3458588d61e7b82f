#include "fsf/language.hpp"

#include <algorithm>
#include <unordered_set>

#include "fsf/error.hpp"

namespace fsf {

namespace {

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = w.size();
    for (SymbolId s : w) h ^= s + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

using WordSet = std::unordered_set<Word, WordHash>;

std::size_t candidate_count(std::size_t alphabet, std::size_t max_len, std::size_t cap) {
  std::size_t total = 0;
  std::size_t power = 1;
  for (std::size_t l = 0; l <= max_len; ++l) {
    total += power;
    if (total > cap) return total;
    if (alphabet != 0 && power > cap / alphabet + 1) return cap + 1;
    power *= alphabet;
    if (alphabet == 0) break;
  }
  return total;
}

}  // namespace

std::vector<Word> enumerate_language(const Cfg& g, std::size_t max_len, std::size_t work_cap) {
  if (candidate_count(g.terminal_count(), max_len, work_cap) > work_cap)
    throw BudgetExceeded("enumeration budget exceeded: |T|=" + std::to_string(g.terminal_count()) +
                         ", max_len=" + std::to_string(max_len));

  const auto& rules = g.rules();
  std::vector<WordSet> lang(g.symbol_count());
  // Rules to revisit when a nonterminal's word set grows.
  std::vector<std::vector<std::size_t>> users(g.symbol_count());
  for (std::size_t ri = 0; ri < rules.size(); ++ri)
    for (SymbolId s : rules[ri].rhs)
      if (g.is_nonterminal(s)) users[s].push_back(ri);

  std::vector<std::size_t> work(rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i) work[i] = rules.size() - 1 - i;
  std::vector<bool> queued(rules.size(), true);

  while (!work.empty()) {
    const std::size_t ri = work.back();
    work.pop_back();
    queued[ri] = false;
    const Rule& r = rules[ri];

    WordSet partial{Word{}};
    for (SymbolId s : r.rhs) {
      WordSet next;
      if (g.is_terminal(s)) {
        for (const auto& p : partial) {
          if (p.size() + 1 > max_len) continue;
          Word q = p;
          q.push_back(s);
          next.insert(std::move(q));
        }
      } else {
        for (const auto& p : partial)
          for (const auto& x : lang[s]) {
            if (p.size() + x.size() > max_len) continue;
            Word q = p;
            q.insert(q.end(), x.begin(), x.end());
            next.insert(std::move(q));
          }
      }
      partial = std::move(next);
      if (partial.empty()) break;
    }

    bool grew = false;
    for (auto& w : partial)
      if (lang[r.lhs].insert(w).second) grew = true;
    if (grew)
      for (std::size_t u : users[r.lhs])
        if (!queued[u]) {
          queued[u] = true;
          work.push_back(u);
        }
  }

  std::vector<Word> out(lang[g.start()].begin(), lang[g.start()].end());
  std::sort(out.begin(), out.end(),
            [&](const Word& a, const Word& b) { return shortlex_less(g, a, b); });
  return out;
}

namespace {

class SpanParser {
 public:
  SpanParser(const Cfg& g, std::span<const SymbolId> w)
      : g_(g), w_(w), n_(w.size()), width_(n_ + 1),
        derived_(g.symbol_count() * width_ * width_, false),
        witness_(g.symbol_count() * width_ * width_) {}

  bool run() {
    for (std::size_t len = 0; len <= n_; ++len) {
      for (std::size_t i = 0; i + len <= n_; ++i) {
        const std::size_t j = i + len;
        // Unit and nullable rules can make a span depend on itself; iterate
        // to a fixpoint. A witness is only recorded when its children were
        // already derived, so witnesses never form cycles.
        bool changed = true;
        while (changed) {
          changed = false;
          for (std::size_t ri = 0; ri < g_.rules().size(); ++ri) {
            const Rule& r = g_.rule(ri);
            if (derived_[slot(r.lhs, i, j)]) continue;
            if (auto cuts = match(r, i, j)) {
              derived_[slot(r.lhs, i, j)] = true;
              witness_[slot(r.lhs, i, j)] = {ri, std::move(*cuts)};
              changed = true;
            }
          }
        }
      }
    }
    return derived_[slot(g_.start(), 0, n_)];
  }

  DerivationTrace trace() const {
    DerivationTrace t;
    t.start = g_.start();
    emit(g_.start(), 0, n_, t);
    return t;
  }

 private:
  struct Witness {
    std::size_t rule = 0;
    std::vector<std::size_t> cuts;  // boundaries of rhs symbols, size rhs+1
  };

  std::size_t slot(SymbolId a, std::size_t i, std::size_t j) const {
    return (static_cast<std::size_t>(a) * width_ + i) * width_ + j;
  }

  std::optional<std::vector<std::size_t>> match(const Rule& r, std::size_t i, std::size_t j) const {
    const std::size_t k = r.rhs.size();
    // back[m][p]: predecessor boundary after m symbols end at p (npos = unreached).
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::vector<std::size_t>> back(k + 1, std::vector<std::size_t>(width_, npos));
    back[0][i] = i;
    for (std::size_t m = 0; m < k; ++m) {
      const SymbolId x = r.rhs[m];
      bool any = false;
      for (std::size_t p = i; p <= j; ++p) {
        if (back[m][p] == npos) continue;
        if (g_.is_terminal(x)) {
          if (p < j && w_[p] == x && back[m + 1][p + 1] == npos) {
            back[m + 1][p + 1] = p;
            any = true;
          }
        } else {
          for (std::size_t q = p; q <= j; ++q)
            if (derived_[slot(x, p, q)] && back[m + 1][q] == npos) {
              back[m + 1][q] = p;
              any = true;
            }
        }
      }
      if (!any) return std::nullopt;
    }
    if (back[k][j] == npos) return std::nullopt;
    std::vector<std::size_t> cuts(k + 1);
    cuts[k] = j;
    for (std::size_t m = k; m > 0; --m) cuts[m - 1] = back[m][cuts[m]];
    return cuts;
  }

  void emit(SymbolId a, std::size_t i, std::size_t j, DerivationTrace& t) const {
    const Witness& wit = witness_[slot(a, i, j)];
    // In a leftmost derivation everything left of the rewritten nonterminal
    // is the terminal prefix w[0, i).
    t.steps.push_back({wit.rule, i});
    const Rule& r = g_.rule(wit.rule);
    for (std::size_t m = 0; m < r.rhs.size(); ++m)
      if (g_.is_nonterminal(r.rhs[m])) emit(r.rhs[m], wit.cuts[m], wit.cuts[m + 1], t);
  }

  const Cfg& g_;
  std::span<const SymbolId> w_;
  std::size_t n_;
  std::size_t width_;
  std::vector<bool> derived_;
  std::vector<Witness> witness_;
};

}  // namespace

MemberResult cfg_member(const Cfg& g, std::span<const SymbolId> w) {
  for (SymbolId s : w)
    if (s >= g.symbol_count() || !g.is_terminal(s)) return {};
  SpanParser parser(g, w);
  if (!parser.run()) return {};
  return {true, parser.trace()};
}

}  // namespace fsf
