#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fsf/cfg.hpp"
#include "fsf/dfa.hpp"
#include "fsf/final_language.hpp"
#include "fsf/form_search.hpp"

namespace fsf {

/// A grammar G together with a final language F over W ⊆ V.
class FinalizationInstance {
 public:
  /// Throws fsf::Error unless every symbol of W is in G's total alphabet.
  FinalizationInstance(Cfg g, FinalLanguage f);

  const Cfg& grammar() const { return g_; }
  const FinalLanguage& final_language() const { return f_; }
  const SymbolMask& w_mask() const { return w_; }
  /// N − W: nonterminals that must be absent from a contributing final form.
  const SymbolMask& blocking_mask() const { return blocking_; }

  /// The weak identity onto W, as indices into the final language alphabet.
  std::vector<std::size_t> final_projection(std::span<const SymbolId> form) const;
  /// final_member(F, project(form, W)).
  bool is_final(std::span<const SymbolId> form) const;
  /// A final form with no symbol of N − W.
  bool contributes(std::span<const SymbolId> form) const;

  /// Sound pruning test: false means no form derivable from `form` is final
  /// with all of N − W erased.
  bool may_contribute(std::span<const SymbolId> form) const;

 private:
  Cfg g_;
  FinalLanguage f_;
  std::vector<std::ptrdiff_t> local_;  // SymbolId -> index in W or -1
  SymbolMask w_;
  SymbolMask blocking_;
  SymbolMask active_;
};

using SearchBounds = FormLimits;

/// φ(G, F) restricted to the forms enumerate_forms(g, bounds) visits.
struct FinalForms {
  FormGraph graph;
  std::vector<std::size_t> nodes;  // final forms, in BFS order
};

FinalForms finalized_forms(const FinalizationInstance& inst, const SearchBounds& b);

/// L(G, F) ∩ T^{≤max_len} as far as the bounded search reaches.
struct FinalizedLanguage {
  std::vector<Word> words;                    // shortlex, deduplicated
  std::vector<DerivationTrace> certificates;  // parallel to words
  /// The pruned search space was exhausted: `words` is exactly
  /// L(G, F) ∩ T^{≤max_len}.
  bool complete = false;
};

FinalizedLanguage finalized_language(const FinalizationInstance& inst, const SearchBounds& b,
                                     std::size_t max_len);

struct MembershipVerdict {
  enum class Outcome { found, exhausted_complete, exhausted_truncated };
  Outcome outcome = Outcome::exhausted_truncated;
  std::optional<DerivationTrace> trace;  // set iff found
  Word final_form;                       // the certified form when found
  std::size_t nodes = 0;                 // forms stored by the search

  bool found() const { return outcome == Outcome::found; }
};

/// Searches for a final form y with project(y, T) = target and no symbol of
/// N − W. Forms whose terminal skeleton cannot extend to the target, or
/// whose fixed W-symbols cannot complete into F, are pruned. The verdict is
/// exhausted_complete only when the pruned search space was fully explored.
MembershipVerdict finalized_member_bounded(const FinalizationInstance& inst,
                                           std::span<const SymbolId> target,
                                           const SearchBounds& b);

/// Repeats finalized_member_bounded with growing length and step bounds
/// until the verdict is found or complete, or the node cap truncates it.
MembershipVerdict find_by_deepening(const FinalizationInstance& inst,
                                    std::span<const SymbolId> target,
                                    std::size_t node_cap = 1'000'000);

struct RegularVerdict {
  bool accepted = false;
  Cfg compiled;                          // H with L(H) = L(G, F)
  std::optional<DerivationTrace> trace;  // derivation in H when accepted
};

/// Exact decision for a regular final language via the finalized-CFG
/// compiler and general CFG membership.
RegularVerdict finalized_member_regular(const Cfg& g, const Dfa& m,
                                        std::span<const SymbolId> target);

}  // namespace fsf
