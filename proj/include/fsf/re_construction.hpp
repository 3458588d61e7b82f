#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fsf/cfg.hpp"
#include "fsf/final_language.hpp"
#include "fsf/lqg.hpp"

namespace fsf {

/// A (queue symbol, state) pair that heads some rule.
struct PsiPair {
  SymbolId a = 0;
  StateId b = 0;
  friend bool operator==(const PsiPair&, const PsiPair&) = default;
};

/// Ψ, ordered by (symbol name, state name).
using PsiSet = std::vector<PsiPair>;

/// Throws fsf::Error if g is not in normal form.
PsiSet build_psi(const Lqg& g);

/// ι: Ψ → {0,1}^n − {1^n}, assigned in Ψ order by counting upwards in
/// binary and skipping the all-ones word.
struct EncodingScheme {
  std::size_t width = 0;
  PsiSet psi;
  std::vector<std::string> codes;  // parallel to psi, over '0'/'1'

  std::optional<std::size_t> index_of(SymbolId a, StateId b) const;
  /// ι(ab); throws if ab ∉ Ψ.
  const std::string& code(SymbolId a, StateId b) const;
};

/// Throws fsf::Error for an empty Ψ.
EncodingScheme build_encoding(const PsiSet& psi);

/// ν(a) = {ι(aq) : aq ∈ Ψ} and μ(q) = {ι(aq)^R : aq ∈ Ψ}, in Ψ order.
struct SubstitutionTables {
  std::vector<std::vector<std::string>> nu;  // indexed by SymbolId of Q
  std::vector<std::vector<std::string>> mu;  // indexed by StateId of Q
};

SubstitutionTables build_tables(const Lqg& g, const EncodingScheme& e);

enum class ReStep {
  start,              // S -> u <p.1>
  nonterminal_phase,  // <q.1> -> u <p.1> ι(aq)^R
  phase_switch,       // <q.1> -> <q.2>
  terminal_phase,     // <q.2> -> y <p.2> ι(aq)^R
  accepting,          // <q.2> -> y # ι(aq)^R
  direct_terminal,    // S -> y <p.2>, start rule appending terminals
  direct_accept,      // S -> y #, start rule entering D
};

std::string_view to_string(ReStep step);

struct ReConstructionOptions {
  /// Emit the rules exactly as the textbook steps read, where each rule
  /// appends a code guessed from μ(p) instead of the code of the pair it
  /// consumes. That variant over-generates; it is kept for comparison.
  bool literal = false;
};

struct ReCfg {
  Cfg grammar;
  FinalLanguage final_language;  // marked palindromes over {0,1} with #
  EncodingScheme encoding;
  std::vector<ReStep> provenance;  // parallel to grammar.rules()
};

/// Spelling of the J-symbol <p,i>.
std::string j_name(std::string_view state, int phase);

/// Compiles a normal-form left-extended queue grammar Q into a propagating
/// CFG G with L(Q) = L(G, {w#w^R | w ∈ {0,1}*}). The start symbol of G is S
/// (or <S> if S ∈ T); 0, 1 and # are nonterminals without rules. Throws
/// fsf::Error if Q is not in normal form, Ψ is empty, 0 or 1 is in V ∪ U,
/// or a terminal uses a reserved <...> spelling.
ReCfg build_re_cfg(const Lqg& q, const ReConstructionOptions& options = {});

/// Lines "iota: A q0 -> 010" in Ψ order.
std::string encoding_table(const Lqg& q, const EncodingScheme& e);

/// form = x y # z with x ∈ {0,1}+, y over the terminals of g, z = x^R.
bool omega_member(const Cfg& g, std::span<const SymbolId> form);

}  // namespace fsf
