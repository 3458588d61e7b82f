#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fsf/cfg.hpp"

namespace fsf {

/// Exactly L(G) ∩ T^{≤max_len}, in shortlex order. Computed as a least
/// fixpoint of per-nonterminal word sets truncated at max_len, so ε-rules and
/// unit cycles need no normalization. Throws BudgetExceeded when
/// Σ_{ℓ≤max_len} |T|^ℓ exceeds work_cap.
std::vector<Word> enumerate_language(const Cfg& g, std::size_t max_len,
                                     std::size_t work_cap = 10'000'000);

struct MemberResult {
  bool accepted = false;
  /// Leftmost derivation of the word, present iff accepted.
  std::optional<DerivationTrace> trace;
};

/// Exact membership for an arbitrary CFG (ε-rules and unit cycles allowed),
/// by span-indexed dynamic programming over all rule right-hand sides.
MemberResult cfg_member(const Cfg& g, std::span<const SymbolId> w);

}  // namespace fsf
