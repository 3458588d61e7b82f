#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fsf/cfg.hpp"
#include "fsf/dfa.hpp"

namespace fsf {

/// One way to read a right-hand side as y0 X1 y1 ... Xn yn: the picked
/// positions become state-wrapped symbols, the rest stay as gaps.
struct Decomposition {
  std::vector<std::size_t> picks;  // increasing positions into the rhs, n >= 1
};

/// Every decomposition in which each W-symbol is picked and each other
/// symbol is independently picked or left in a gap, with at least one pick.
/// Ordered by the bitmask over the optional positions (first optional
/// position is the least significant bit).
std::vector<Decomposition> decompose_rhs(std::span<const SymbolId> rhs, const SymbolMask& w);

/// A state-wrapped symbol <p.a.q>.
struct WrappedSymbol {
  std::string left;
  std::string core;
  std::string right;
};

std::string wrapped_name(std::string_view p, std::string_view a, std::string_view q);
/// <qs.S.QF>
std::string start_wrapper_name(std::string_view qs, std::string_view s);
/// Decodes a <p.a.q> token (state names never contain '.'); nullopt for
/// anything else, including the start wrapper.
std::optional<WrappedSymbol> parse_wrapped(std::string_view token);

/// Which construction step produced a rule of H.
enum class ConstructionStep {
  start,          // <qs.S.QF> -> <qs.S.qf>
  chained,        // state-chained rule over one decomposition
  copied,         // A -> α verbatim, A ∉ W, α over V − W
  terminal,       // <p.a.q> -> a for a ∈ W ∩ T
  erased,         // <p.B.q> -> ε for B ∈ W ∩ N
  start_bridge,   // <qs.S.QF> -> S when ε ∈ F
  w_bridge,       // <p.B.p> -> B for B ∈ W ∩ N
  w_free_copy,    // B -> α verbatim, B ∈ W ∩ N, α over V − W
};

std::string_view to_string(ConstructionStep step);

struct FinalizedCfg {
  Cfg grammar;
  std::vector<ConstructionStep> provenance;  // parallel to grammar.rules()
};

struct RegularConstructionOptions {
  /// Drop wrapped nonterminals that are unreachable or unproductive.
  bool prune = true;
};

/// Compiles (G, M) into a CFG H with L(H) = L(G, L(M)), W = Σ of M. Throws
/// fsf::Error if Σ ⊄ V, if G uses a reserved <...> spelling, or if a state
/// name contains '.', '<' or '>' or is the literal QF.
FinalizedCfg build_finalized_cfg(const Cfg& g, const Dfa& m,
                                 const RegularConstructionOptions& options = {});

}  // namespace fsf
