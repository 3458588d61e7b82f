#pragma once

#include <istream>
#include <string>
#include <string_view>

#include "fsf/cfg.hpp"

namespace fsf {

/// Reads the `kind: cfg` text format:
///
///   kind: cfg
///   terminals: a b #
///   nonterminals: S A
///   start: S
///   rule: S -> a S b
///   rule: S -> eps
///
/// Throws fsf::Error with the offending line number.
Cfg parse_grammar(std::istream& in);
Cfg parse_grammar_text(std::string_view text);
Cfg load_grammar(const std::string& path);

/// Canonical form: sections in the order above, one line per section,
/// rules in declaration order.
std::string print_grammar(const Cfg& g);

}  // namespace fsf
