#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fsf {

/// Index of a symbol inside one grammar's total alphabet. Terminals come
/// first (declaration order), then nonterminals (declaration order).
using SymbolId = std::uint32_t;

/// A string over a grammar's total alphabet: a sentential form, a terminal
/// word, or a rule right-hand side.
using Word = std::vector<SymbolId>;

/// Membership flags indexed by SymbolId.
using SymbolMask = std::vector<bool>;

struct Rule {
  SymbolId lhs = 0;
  Word rhs;

  friend bool operator==(const Rule&, const Rule&) = default;
};

class Cfg;

/// Collects declarations by name and validates them into a Cfg.
class CfgBuilder {
 public:
  CfgBuilder& terminal(std::string name, std::size_t line = 0);
  CfgBuilder& nonterminal(std::string name, std::size_t line = 0);
  CfgBuilder& start(std::string name, std::size_t line = 0);
  CfgBuilder& rule(std::string lhs, std::vector<std::string> rhs, std::size_t line = 0);

  bool declares(std::string_view name) const;

  /// Throws fsf::Error (with the offending line when known) if a rule uses an
  /// undeclared symbol, the start symbol is not a declared nonterminal, a
  /// symbol is declared twice, or a rule repeats.
  Cfg build() const;

 private:
  struct Decl {
    std::string name;
    std::size_t line;
  };
  struct PendingRule {
    std::string lhs;
    std::vector<std::string> rhs;
    std::size_t line;
  };
  std::vector<Decl> terminals_;
  std::vector<Decl> nonterminals_;
  std::optional<Decl> start_;
  std::vector<PendingRule> rules_;
};

/// A context-free grammar (V, T, P, S). Immutable once built.
class Cfg {
 public:
  std::size_t symbol_count() const { return names_.size(); }
  const std::string& name(SymbolId id) const { return names_[id]; }
  std::optional<SymbolId> find(std::string_view name) const;
  /// Throws fsf::Error for an unknown name.
  SymbolId id(std::string_view name) const;

  bool is_terminal(SymbolId id) const { return id < terminal_count_; }
  bool is_nonterminal(SymbolId id) const { return id >= terminal_count_; }
  std::size_t terminal_count() const { return terminal_count_; }
  std::vector<SymbolId> terminals() const;
  std::vector<SymbolId> nonterminals() const;

  SymbolId start() const { return start_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const Rule& rule(std::size_t index) const { return rules_[index]; }
  std::span<const std::size_t> rules_for(SymbolId lhs) const { return by_lhs_[lhs]; }

  /// Stable rule label: "r" followed by the 1-based declaration index.
  static std::string label(std::size_t rule_index);
  /// Inverse of label(); nullopt for unknown labels.
  std::optional<std::size_t> rule_index(std::string_view label) const;

  SymbolMask mask(const std::vector<std::string>& names) const;
  SymbolMask terminal_mask() const;

  /// Resolves names to ids; throws fsf::Error for unknown names.
  Word word(const std::vector<std::string>& names) const;
  std::vector<std::string> names(std::span<const SymbolId> w) const;

  /// True when every symbol name is one character long, so words can be
  /// rendered without separators.
  bool compact_spelling() const { return compact_; }

  /// Parses user-supplied text into symbols: whitespace-separated tokens if
  /// the text contains whitespace, otherwise greedy longest-match against the
  /// symbol names. "eps" or "" is the empty word. Throws on unknown symbols.
  Word parse_word(std::string_view text) const;
  /// Renders a word: concatenated when compact_spelling(), else
  /// space-separated; the empty word renders as "eps".
  std::string render(std::span<const SymbolId> w) const;

  /// Same symbols (by name and kind, in declaration order), same start, same
  /// rule sequence.
  friend bool operator==(const Cfg& a, const Cfg& b);

 private:
  friend class CfgBuilder;
  Cfg() = default;

  std::vector<std::string> names_;
  std::unordered_map<std::string, SymbolId> index_;
  std::size_t terminal_count_ = 0;
  SymbolId start_ = 0;
  std::vector<Rule> rules_;
  std::vector<std::vector<std::size_t>> by_lhs_;
  bool compact_ = true;
};

/// Shortlex order over words, comparing symbols by name.
bool shortlex_less(const Cfg& g, std::span<const SymbolId> a, std::span<const SymbolId> b);

/// The weak identity onto `keep`: symbols in the mask survive in order, all
/// others are erased.
Word project(std::span<const SymbolId> form, const SymbolMask& keep);

/// Replaces the nonterminal at `pos` by the right-hand side of rule
/// `rule_index`. Throws fsf::Error if pos is out of range or the symbol there
/// is not the rule's left-hand side.
Word derive_step(const Cfg& g, std::span<const SymbolId> form, std::size_t rule_index,
                 std::size_t pos);

/// A replayable derivation: rule applications with the zero-based position
/// of the rewritten nonterminal.
struct DerivationTrace {
  struct Step {
    std::size_t rule = 0;
    std::size_t pos = 0;
    friend bool operator==(const Step&, const Step&) = default;
  };
  SymbolId start = 0;
  std::vector<Step> steps;
};

/// All forms along the trace, starting with the start symbol. Throws
/// fsf::Error if a step does not apply.
std::vector<Word> replay_forms(const Cfg& g, const DerivationTrace& trace);
/// The last form of replay_forms().
Word replay(const Cfg& g, const DerivationTrace& trace);

struct ClassificationReport {
  bool propagating = false;
  bool linear = false;
  bool minimal_linear = false;
  bool palindromial = false;
  std::optional<SymbolId> marker;
};

/// Nonterminals that have no rules can never be rewritten; linearity counts
/// only nonterminals that have at least one rule. Minimal linearity and the
/// palindromial test use the declared nonterminal alphabet literally.
ClassificationReport classify(const Cfg& g);

/// Nonterminals with at least one rule.
SymbolMask rewritable(const Cfg& g);

}  // namespace fsf
