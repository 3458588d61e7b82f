#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fsf {

/// A deterministic finite automaton with a total transition function.
class Dfa {
 public:
  struct Transition {
    std::string from;
    std::string symbol;
    std::string to;
    std::size_t line = 0;
  };

  /// Throws fsf::Error on unknown names, duplicate or missing transitions
  /// (there is no implicit sink), or a state/alphabet name clash.
  Dfa(std::vector<std::string> states, std::vector<std::string> alphabet, std::string start,
      std::vector<std::string> finals, const std::vector<Transition>& transitions);

  std::size_t state_count() const { return states_.size(); }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  std::size_t start() const { return start_; }
  bool accepting(std::size_t state) const { return final_[state]; }
  std::vector<std::size_t> finals() const;
  std::size_t next(std::size_t state, std::size_t symbol) const {
    return table_[state * alphabet_.size() + symbol];
  }
  /// A final state is reachable from `state`.
  bool live(std::size_t state) const { return live_[state]; }

  std::optional<std::size_t> state_index(std::string_view name) const;
  std::optional<std::size_t> symbol_index(std::string_view name) const;

  /// Runs on alphabet indices.
  std::size_t run(std::span<const std::size_t> symbols) const;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  std::size_t start_ = 0;
  std::vector<bool> final_;
  std::vector<std::size_t> table_;
  std::vector<bool> live_;
};

/// The state reached on `w`. Throws fsf::Error for a symbol outside Σ.
std::size_t dfa_run(const Dfa& m, const std::vector<std::string>& w);

/// `kind: dfa` / `states:` / `alphabet:` / `start:` / `final:` /
/// `trans: p a q` (one per transition).
Dfa parse_dfa(std::istream& in);
Dfa parse_dfa_text(std::string_view text);
Dfa load_dfa(const std::string& path);
std::string print_dfa(const Dfa& m);

}  // namespace fsf
