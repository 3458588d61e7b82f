#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fsf/cfg.hpp"
#include "fsf/dfa.hpp"

namespace fsf {

/// A palindromial grammar: S -> # plus rules S -> aSa, a a single terminal.
class PalindromialGrammar {
 public:
  const Cfg& grammar() const { return g_; }
  SymbolId marker() const { return marker_; }
  /// Terminals a with a rule S -> aSa.
  const std::vector<SymbolId>& paired() const { return paired_; }

 private:
  friend PalindromialGrammar palg_validate(const Cfg& g);
  PalindromialGrammar(Cfg g, SymbolId marker, std::vector<SymbolId> paired)
      : g_(std::move(g)), marker_(marker), paired_(std::move(paired)) {}

  Cfg g_;
  SymbolId marker_;
  std::vector<SymbolId> paired_;
};

/// Wraps g if it is palindromial; otherwise throws fsf::Error naming the
/// first violated condition.
PalindromialGrammar palg_validate(const Cfg& g);

/// A final language F ⊆ W* behind one membership interface. Strings are
/// handled as sequences of indices into alphabet() (the set W).
class FinalLanguage {
 public:
  struct Regular {
    Dfa dfa;
  };
  struct MarkedPalindrome {
    std::vector<std::string> base;
    std::string marker;
  };
  struct EvenPalindrome {
    std::vector<std::string> base;
  };
  struct Palindromial {
    PalindromialGrammar grammar;
  };
  using Variant = std::variant<Regular, MarkedPalindrome, EvenPalindrome, Palindromial>;

  static FinalLanguage regular(Dfa m);
  /// { u # u^R : u ∈ base* }. Throws if the marker is in the base alphabet.
  static FinalLanguage marked_palindrome(std::vector<std::string> base, std::string marker);
  /// { u u^R : u ∈ base* }.
  static FinalLanguage even_palindrome(std::vector<std::string> base);
  static FinalLanguage palindromial(PalindromialGrammar g);

  const Variant& variant() const { return variant_; }
  /// W, in a fixed order (DFA alphabet order; base then marker; the
  /// palindromial grammar's terminal order).
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  std::optional<std::size_t> index_of(std::string_view symbol) const;

  bool accepts(std::span<const std::size_t> w) const;

  /// Necessary condition for a string whose W-symbols are only partly known:
  /// `segments` are the fixed runs, and an unknown (possibly empty) string
  /// may still be inserted between consecutive segments. With one segment
  /// this is accepts(). False means no completion is in F.
  bool viable(const std::vector<std::vector<std::size_t>>& segments) const;

  /// Human-readable spec string (the CLI syntax).
  std::string describe() const;

 private:
  FinalLanguage(Variant v, std::vector<std::string> alphabet);
  bool palindrome_shape(std::span<const std::size_t> w) const;

  Variant variant_;
  std::vector<std::string> alphabet_;
  std::optional<std::size_t> marker_;   // index of the center marker, if any
  std::vector<bool> pairable_;          // symbols allowed off-center
};

/// W of the final language.
std::vector<std::string> alphabet_of(const FinalLanguage& f);

/// True iff w ∈ F. Symbols outside W reject rather than raise.
bool final_member(const FinalLanguage& f, const std::vector<std::string>& w);

/// Parses `dfa:<path>`, `markpal:<a,b,...>:<marker>`, `evenpal:<a,b,...>` or
/// `palg:<path>`.
FinalLanguage parse_final_spec(std::string_view spec);

}  // namespace fsf
