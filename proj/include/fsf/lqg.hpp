#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fsf/cfg.hpp"

namespace fsf {

using StateId = std::uint32_t;

/// A quadruple (a, b, x, c): consume a in state b, append x, enter c.
struct QueueRule {
  SymbolId a = 0;
  StateId b = 0;
  Word x;
  StateId c = 0;

  friend bool operator==(const QueueRule&, const QueueRule&) = default;
};

/// Name-level input to lqg_validate, as read from a file.
struct RawQueueRule {
  std::string a;
  std::string b;
  std::vector<std::string> x;
  std::string c;
  std::size_t line = 0;
};

struct RawLqg {
  std::vector<std::string> symbols;    // V
  std::vector<std::string> terminals;  // T
  std::vector<std::string> states;     // U
  std::vector<std::string> finals;     // D
  std::string start_symbol;
  std::string start_state;
  std::size_t start_line = 0;
  std::vector<RawQueueRule> rules;
  /// An ordinary queue grammar: every symbol of V must head some rule.
  bool ordinary = false;
};

struct LqgValidation;

/// A left-extended queue grammar (V, T, U, D, s, R). Symbols are indexed in
/// V order, states in U order.
class Lqg {
 public:
  const std::vector<std::string>& symbols() const { return symbols_; }
  const std::vector<std::string>& states() const { return states_; }
  bool is_terminal(SymbolId a) const { return terminal_[a]; }
  bool is_final(StateId q) const { return final_[q]; }
  std::vector<SymbolId> terminals() const;
  std::vector<StateId> finals() const;
  SymbolId start_symbol() const { return start_symbol_; }
  StateId start_state() const { return start_state_; }
  const std::vector<QueueRule>& rules() const { return rules_; }
  bool ordinary() const { return ordinary_; }

  std::optional<SymbolId> find_symbol(std::string_view name) const;
  std::optional<StateId> find_state(std::string_view name) const;
  std::vector<std::string> names(std::span<const SymbolId> w) const;
  /// Whitespace-separated tokens, or greedy longest match when the text has
  /// no whitespace; "eps" or "" is the empty word. Throws on unknown symbols.
  Word parse_word(std::string_view text) const;
  /// Concatenated when every symbol name is one character, else
  /// space-separated; the empty word renders as "eps".
  std::string render(std::span<const SymbolId> w) const;

  friend bool operator==(const Lqg&, const Lqg&) = default;

 private:
  friend LqgValidation lqg_validate(const RawLqg& raw);
  Lqg() = default;

  std::vector<std::string> symbols_;
  std::vector<bool> terminal_;
  std::vector<std::string> states_;
  std::vector<bool> final_;
  SymbolId start_symbol_ = 0;
  StateId start_state_ = 0;
  std::vector<QueueRule> rules_;
  bool ordinary_ = false;
};

/// Whether every rule (a, b, x, c) has a ∈ V − T, b ∈ U − D and
/// x ∈ (V − T)* ∪ T*.
struct NormalFormReport {
  bool holds = true;
  std::optional<std::size_t> offending;  // index of the first violating rule
};

NormalFormReport normal_form(const Lqg& g);

struct LqgValidation {
  Lqg grammar;
  NormalFormReport normal_form;
};

/// Throws fsf::Error (with line numbers when known) if V ∩ U ≠ ∅, T ⊄ V,
/// D ⊄ U, '#' is in V ∪ U, the start pair is not in (V − T)(U − D), a rule
/// component is outside its alphabet, a rule repeats, or an ordinary grammar
/// leaves some symbol of V without a rule. A normal-form failure is only
/// reported.
LqgValidation lqg_validate(const RawLqg& raw);

/// w # r q, with w the consumed history.
struct LqgConfig {
  Word consumed;
  Word queue;
  StateId state = 0;

  friend bool operator==(const LqgConfig&, const LqgConfig&) = default;
};

/// (ε, a0, q0) for s = a0 q0.
LqgConfig lqg_initial(const Lqg& g);

/// Applies rule `rule_index`. Throws fsf::Error if the queue is empty or its
/// head or the state does not match the rule.
LqgConfig lqg_step(const Lqg& g, const LqgConfig& c, std::size_t rule_index);

/// Applies an explicit quadruple; throws if it is not a rule of g.
LqgConfig lqg_step(const Lqg& g, const LqgConfig& c, const QueueRule& rule);

struct LqgBounds {
  std::size_t max_len = 6;
  std::size_t max_steps = 64;
  /// 0 selects 2 * max_len + 8 (membership uses the target length).
  std::size_t queue_cap = 0;
  std::size_t node_cap = 1'000'000;

  std::size_t effective_queue_cap() const { return queue_cap ? queue_cap : 2 * max_len + 8; }
};

struct LqgLanguage {
  std::vector<Word> words;  // shortlex by symbol name
  /// No configuration was cut by max_steps or queue_cap.
  bool complete = false;
};

/// All v ∈ T^{≤max_len} accepted within the bounds, breadth-first. Throws
/// BudgetExceeded when more than node_cap configurations are stored.
LqgLanguage lqg_enumerate(const Lqg& g, const LqgBounds& b);

struct LqgVerdict {
  enum class Outcome { found, exhausted_complete, exhausted_truncated };
  Outcome outcome = Outcome::exhausted_truncated;
  std::vector<std::size_t> rules;     // rule indices, when found
  std::vector<LqgConfig> configs;     // initial config plus one per rule
  std::size_t nodes = 0;

  bool found() const { return outcome == Outcome::found; }
};

/// Searches for #s ⇒* w # target f with f ∈ D. b.max_len is ignored; the
/// target length takes its place.
LqgVerdict lqg_member_bounded(const Lqg& g, std::span<const SymbolId> target, const LqgBounds& b);

/// `kind: lqg` (or `kind: qg` for an ordinary queue grammar).
Lqg parse_lqg(std::istream& in);
Lqg parse_lqg_text(std::string_view text);
Lqg load_lqg(const std::string& path);
std::string print_lqg(const Lqg& g);

}  // namespace fsf
