#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace fsf::text {

/// One `key: value` line of the line-oriented artifact formats.
struct Directive {
  std::size_t line = 0;
  std::string key;
  std::string value;
};

struct Document {
  std::string kind;
  std::size_t kind_line = 0;
  std::vector<Directive> directives;
};

/// Reads all directives, skipping blank lines and `//` comments. Throws
/// fsf::Error on a line without a `key:` prefix. The first directive must be
/// `kind:`; it is split off into Document::kind.
Document read_document(std::istream& in);

/// Returns the value of the first `kind:` directive, or "" if there is none.
std::string peek_kind(std::istream& in);

std::vector<std::string> split_ws(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Symbol tokens: non-empty, no whitespace, no ',' and not the reserved
/// words `eps` / `->`. Throws fsf::Error otherwise.
void check_token(std::string_view token, std::size_t line);

/// Tokens of the form `<...>` are produced by the grammar constructions.
bool is_reserved_spelling(std::string_view token);

inline constexpr std::string_view kEpsilon = "eps";

}  // namespace fsf::text
