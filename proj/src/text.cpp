#include "fsf/text.hpp"

#include <cctype>
#include <sstream>

#include "fsf/error.hpp"

namespace fsf::text {

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

void check_token(std::string_view token, std::size_t line) {
  if (token.empty()) throw Error("empty symbol", line);
  if (token == kEpsilon || token == "->")
    throw Error("'" + std::string(token) + "' is reserved and cannot name a symbol", line);
  for (char c : token) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',')
      throw Error("invalid symbol '" + std::string(token) + "'", line);
  }
}

bool is_reserved_spelling(std::string_view token) {
  return token.size() >= 2 && token.front() == '<' && token.back() == '>';
}

Document read_document(std::istream& in) {
  Document doc;
  std::string raw;
  std::size_t line = 0;
  bool saw_kind = false;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string_view body = trim(raw);
    if (body.empty() || body.substr(0, 2) == "//") continue;
    std::size_t colon = body.find(':');
    if (colon == std::string_view::npos || colon == 0)
      throw Error("malformed line (expected 'key: value')", line);
    Directive d{line, std::string(trim(body.substr(0, colon))),
                std::string(trim(body.substr(colon + 1)))};
    if (!saw_kind) {
      if (d.key != "kind") throw Error("first directive must be 'kind:'", line);
      doc.kind = d.value;
      doc.kind_line = line;
      saw_kind = true;
      continue;
    }
    if (d.key == "kind") throw Error("duplicate 'kind:' directive", line);
    doc.directives.push_back(std::move(d));
  }
  if (!saw_kind) throw Error("missing 'kind:' directive");
  return doc;
}

std::string peek_kind(std::istream& in) {
  std::string raw;
  while (std::getline(in, raw)) {
    std::string_view body = trim(raw);
    if (body.empty() || body.substr(0, 2) == "//") continue;
    std::size_t colon = body.find(':');
    if (colon == std::string_view::npos) return "";
    if (trim(body.substr(0, colon)) != "kind") return "";
    return std::string(trim(body.substr(colon + 1)));
  }
  return "";
}

}  // namespace fsf::text
