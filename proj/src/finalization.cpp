#include "fsf/finalization.hpp"

#include <algorithm>
#include <set>

#include "fsf/error.hpp"
#include "fsf/language.hpp"
#include "fsf/regular_construction.hpp"

namespace fsf {

FinalizationInstance::FinalizationInstance(Cfg g, FinalLanguage f)
    : g_(std::move(g)), f_(std::move(f)) {
  local_.assign(g_.symbol_count(), -1);
  w_.assign(g_.symbol_count(), false);
  const auto& alpha = f_.alphabet();
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    auto id = g_.find(alpha[i]);
    if (!id)
      throw Error("final alphabet symbol '" + alpha[i] + "' is not in the grammar's total alphabet");
    local_[*id] = static_cast<std::ptrdiff_t>(i);
    w_[*id] = true;
  }
  active_ = rewritable(g_);
  blocking_.assign(g_.symbol_count(), false);
  for (SymbolId n : g_.nonterminals()) blocking_[n] = !w_[n];
}

std::vector<std::size_t> FinalizationInstance::final_projection(std::span<const SymbolId> form) const {
  std::vector<std::size_t> out;
  for (SymbolId s : form)
    if (local_[s] >= 0) out.push_back(static_cast<std::size_t>(local_[s]));
  return out;
}

bool FinalizationInstance::is_final(std::span<const SymbolId> form) const {
  return f_.accepts(final_projection(form));
}

bool FinalizationInstance::contributes(std::span<const SymbolId> form) const {
  for (SymbolId s : form)
    if (blocking_[s]) return false;
  return is_final(form);
}

bool FinalizationInstance::may_contribute(std::span<const SymbolId> form) const {
  std::vector<std::vector<std::size_t>> segments(1);
  for (SymbolId s : form) {
    if (active_[s]) {
      if (!segments.back().empty() || segments.size() == 1) segments.emplace_back();
      continue;
    }
    // A nonterminal outside W with no rules can never be erased.
    if (blocking_[s]) return false;
    if (local_[s] >= 0) segments.back().push_back(static_cast<std::size_t>(local_[s]));
  }
  return f_.viable(segments);
}

FinalForms finalized_forms(const FinalizationInstance& inst, const SearchBounds& b) {
  FinalForms out;
  std::vector<std::size_t> nodes;
  out.graph = FormExplorer(inst.grammar(), b)
                  .visit([&](const FormGraph& graph, std::size_t node) {
                    if (inst.is_final(graph.form(node))) nodes.push_back(node);
                    return false;
                  })
                  .run();
  out.nodes = std::move(nodes);
  return out;
}

namespace {

std::size_t terminal_count(const Cfg& g, std::span<const SymbolId> form) {
  return static_cast<std::size_t>(
      std::count_if(form.begin(), form.end(), [&](SymbolId s) { return g.is_terminal(s); }));
}

/// Does `target` match run0 * run1 * ... * runk, where each * is an
/// arbitrary (possibly empty) string? `gaps` is false when the form has no
/// rewritable nonterminal, in which case the match must be exact.
bool skeleton_matches(const std::vector<Word>& runs, bool gaps, std::span<const SymbolId> target) {
  if (!gaps) return runs.size() == 1 && std::equal(runs[0].begin(), runs[0].end(), target.begin(), target.end());
  const Word& head = runs.front();
  const Word& tail = runs.back();
  if (head.size() + tail.size() > target.size()) return false;
  if (!std::equal(head.begin(), head.end(), target.begin())) return false;
  if (!std::equal(tail.begin(), tail.end(), target.end() - static_cast<std::ptrdiff_t>(tail.size())))
    return false;
  auto cursor = target.begin() + static_cast<std::ptrdiff_t>(head.size());
  const auto limit = target.end() - static_cast<std::ptrdiff_t>(tail.size());
  for (std::size_t i = 1; i + 1 < runs.size(); ++i) {
    if (runs[i].empty()) continue;
    auto hit = std::search(cursor, limit, runs[i].begin(), runs[i].end());
    if (hit == limit) return false;
    cursor = hit + static_cast<std::ptrdiff_t>(runs[i].size());
  }
  return true;
}

struct MemberSearch {
  MembershipVerdict verdict;
  bool capped = false;
};

MemberSearch search_member(const FinalizationInstance& inst, std::span<const SymbolId> target,
                           const SearchBounds& b) {
  MemberSearch out;
  const Cfg& g = inst.grammar();
  for (SymbolId s : target)
    if (s >= g.symbol_count() || !g.is_terminal(s)) {
      out.verdict.outcome = MembershipVerdict::Outcome::exhausted_complete;
      return out;
    }
  const SymbolMask active = rewritable(g);
  std::optional<std::size_t> hit;
  auto graph = FormExplorer(g, b)
                   .keep([&](std::span<const SymbolId> form) {
                     std::vector<Word> runs(1);
                     bool gaps = false;
                     for (SymbolId s : form) {
                       if (g.is_terminal(s)) {
                         runs.back().push_back(s);
                       } else if (active[s]) {
                         gaps = true;
                         if (!runs.back().empty() || runs.size() == 1) runs.emplace_back();
                       }
                     }
                     return skeleton_matches(runs, gaps, target) && inst.may_contribute(form);
                   })
                   .visit([&](const FormGraph& fg, std::size_t node) {
                     auto form = fg.form(node);
                     if (!inst.contributes(form)) return false;
                     Word t = project(form, g.terminal_mask());
                     if (!std::equal(t.begin(), t.end(), target.begin(), target.end())) return false;
                     hit = node;
                     return true;
                   })
                   .run();
  out.verdict.nodes = graph.size();
  out.capped = graph.capped();
  if (hit) {
    out.verdict.outcome = MembershipVerdict::Outcome::found;
    out.verdict.trace = graph.trace(*hit);
    auto f = graph.form(*hit);
    out.verdict.final_form.assign(f.begin(), f.end());
  } else if (graph.exhausted()) {
    out.verdict.outcome = MembershipVerdict::Outcome::exhausted_complete;
  } else {
    out.verdict.outcome = MembershipVerdict::Outcome::exhausted_truncated;
  }
  return out;
}

}  // namespace

FinalizedLanguage finalized_language(const FinalizationInstance& inst, const SearchBounds& b,
                                     std::size_t max_len) {
  const Cfg& g = inst.grammar();
  const SymbolMask terminals = g.terminal_mask();
  std::set<Word> seen;
  std::vector<std::pair<Word, DerivationTrace>> found;
  auto graph = FormExplorer(g, b)
                   .keep([&](std::span<const SymbolId> form) {
                     return terminal_count(g, form) <= max_len && inst.may_contribute(form);
                   })
                   .visit([&](const FormGraph& fg, std::size_t node) {
                     auto form = fg.form(node);
                     if (!inst.contributes(form)) return false;
                     Word w = project(form, terminals);
                     if (seen.insert(w).second) found.emplace_back(std::move(w), fg.trace(node));
                     return false;
                   })
                   .run();
  std::sort(found.begin(), found.end(),
            [&](const auto& a, const auto& b2) { return shortlex_less(g, a.first, b2.first); });
  FinalizedLanguage out;
  out.complete = graph.exhausted();
  for (auto& [w, t] : found) {
    out.words.push_back(std::move(w));
    out.certificates.push_back(std::move(t));
  }
  return out;
}

MembershipVerdict finalized_member_bounded(const FinalizationInstance& inst,
                                           std::span<const SymbolId> target,
                                           const SearchBounds& b) {
  return search_member(inst, target, b).verdict;
}

namespace {

// Slowly growing infinite form spaces would otherwise take unbounded rounds
// before reaching the node cap.
constexpr std::size_t kDeepeningCeiling = 1 << 14;

}  // namespace

MembershipVerdict find_by_deepening(const FinalizationInstance& inst,
                                    std::span<const SymbolId> target, std::size_t node_cap) {
  SearchBounds b{2 * target.size() + 4, 2 * target.size() + 4, node_cap};
  for (;;) {
    auto r = search_member(inst, target, b);
    if (r.verdict.outcome != MembershipVerdict::Outcome::exhausted_truncated || r.capped ||
        b.max_steps >= kDeepeningCeiling)
      return r.verdict;
    b.max_form_len *= 2;
    b.max_steps *= 2;
  }
}

RegularVerdict finalized_member_regular(const Cfg& g, const Dfa& m,
                                        std::span<const SymbolId> target) {
  RegularVerdict out{false, build_finalized_cfg(g, m).grammar, std::nullopt};
  Word w;
  for (SymbolId s : target) {
    if (s >= g.symbol_count() || !g.is_terminal(s)) return out;
    auto id = out.compiled.find(g.name(s));
    if (!id) return out;
    w.push_back(*id);
  }
  auto res = cfg_member(out.compiled, w);
  out.accepted = res.accepted;
  out.trace = std::move(res.trace);
  return out;
}

}  // namespace fsf
