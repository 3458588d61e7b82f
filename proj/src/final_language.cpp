#include "fsf/final_language.hpp"

#include <algorithm>
#include <set>

#include "fsf/cfg_io.hpp"
#include "fsf/error.hpp"
#include "fsf/text.hpp"

namespace fsf {

PalindromialGrammar palg_validate(const Cfg& g) {
  const auto nts = g.nonterminals();
  if (nts.size() != 1 || nts[0] != g.start())
    throw Error("not minimal linear: the start symbol must be the only nonterminal");
  const auto& rules = g.rules();
  std::optional<std::size_t> terminating;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto& rhs = rules[i].rhs;
    auto starts = std::count(rhs.begin(), rhs.end(), g.start());
    if (starts > 1) throw Error("not minimal linear: rule " + Cfg::label(i) + " is not linear");
    if (starts == 0) {
      if (terminating)
        throw Error("not minimal linear: more than one rule without a nonterminal");
      terminating = i;
    }
  }
  if (!terminating) throw Error("not minimal linear: no terminating rule S -> #");
  const auto& term = rules[*terminating].rhs;
  if (term.size() != 1)
    throw Error("not minimal linear: the terminating rule must rewrite S to a single marker");
  const SymbolId marker = term[0];
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (i == *terminating) continue;
    const auto& rhs = rules[i].rhs;
    if (std::find(rhs.begin(), rhs.end(), marker) != rhs.end())
      throw Error("marker '" + g.name(marker) + "' reused in rule " + Cfg::label(i));
  }
  if (rules.size() < 2) throw Error("card(P) < 2");
  std::vector<SymbolId> paired;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (i == *terminating) continue;
    const auto& rhs = rules[i].rhs;
    auto s = std::find(rhs.begin(), rhs.end(), g.start()) - rhs.begin();
    const std::size_t left = static_cast<std::size_t>(s);
    const std::size_t right = rhs.size() - left - 1;
    if (left != 1 || right != 1)
      throw Error("rule " + Cfg::label(i) + " is not of the form S -> a S a with a single terminal");
    if (rhs[0] != rhs[2]) throw Error("rule " + Cfg::label(i) + " has x != y in S -> x S y");
    paired.push_back(rhs[0]);
  }
  return PalindromialGrammar(g, marker, std::move(paired));
}

FinalLanguage::FinalLanguage(Variant v, std::vector<std::string> alphabet)
    : variant_(std::move(v)), alphabet_(std::move(alphabet)) {
  std::set<std::string> seen;
  for (const auto& a : alphabet_)
    if (!seen.insert(a).second) throw Error("duplicate symbol '" + a + "' in final alphabet");
}

FinalLanguage FinalLanguage::regular(Dfa m) {
  auto alpha = m.alphabet();
  return FinalLanguage(Regular{std::move(m)}, std::move(alpha));
}

FinalLanguage FinalLanguage::marked_palindrome(std::vector<std::string> base, std::string marker) {
  for (const auto& b : base) text::check_token(b, 0);
  text::check_token(marker, 0);
  if (std::find(base.begin(), base.end(), marker) != base.end())
    throw Error("marker '" + marker + "' must not be in the base alphabet");
  auto alpha = base;
  alpha.push_back(marker);
  FinalLanguage f(MarkedPalindrome{std::move(base), marker}, std::move(alpha));
  f.marker_ = f.alphabet_.size() - 1;
  f.pairable_.assign(f.alphabet_.size(), true);
  f.pairable_.back() = false;
  return f;
}

FinalLanguage FinalLanguage::even_palindrome(std::vector<std::string> base) {
  for (const auto& b : base) text::check_token(b, 0);
  auto alpha = base;
  FinalLanguage f(EvenPalindrome{std::move(base)}, std::move(alpha));
  f.pairable_.assign(f.alphabet_.size(), true);
  return f;
}

FinalLanguage FinalLanguage::palindromial(PalindromialGrammar g) {
  const Cfg& cfg = g.grammar();
  std::vector<std::string> alpha;
  for (SymbolId t : cfg.terminals()) alpha.push_back(cfg.name(t));
  std::vector<bool> pairable(alpha.size(), false);
  for (SymbolId a : g.paired()) pairable[a] = true;
  const std::size_t marker = g.marker();
  FinalLanguage f(Palindromial{std::move(g)}, std::move(alpha));
  f.marker_ = marker;
  f.pairable_ = std::move(pairable);
  return f;
}

std::optional<std::size_t> FinalLanguage::index_of(std::string_view symbol) const {
  for (std::size_t i = 0; i < alphabet_.size(); ++i)
    if (alphabet_[i] == symbol) return i;
  return std::nullopt;
}

bool FinalLanguage::palindrome_shape(std::span<const std::size_t> w) const {
  const std::size_t n = w.size();
  if (marker_) {
    if (n % 2 == 0 || w[n / 2] != *marker_) return false;
  } else if (n % 2 != 0) {
    return false;
  }
  for (std::size_t i = 0; i < n / 2; ++i) {
    if (w[i] != w[n - 1 - i] || !pairable_[w[i]]) return false;
  }
  return true;
}

bool FinalLanguage::accepts(std::span<const std::size_t> w) const {
  for (std::size_t s : w)
    if (s >= alphabet_.size()) return false;
  if (const auto* r = std::get_if<Regular>(&variant_)) return r->dfa.accepting(r->dfa.run(w));
  return palindrome_shape(w);
}

bool FinalLanguage::viable(const std::vector<std::vector<std::size_t>>& segments) const {
  if (segments.empty()) return true;
  if (segments.size() == 1) return accepts(segments[0]);
  for (const auto& seg : segments)
    for (std::size_t s : seg)
      if (s >= alphabet_.size()) return false;

  if (const auto* r = std::get_if<Regular>(&variant_))
    return r->dfa.live(r->dfa.run(segments.front()));

  if (marker_) {
    std::size_t markers = 0;
    for (const auto& seg : segments) markers += static_cast<std::size_t>(std::count(seg.begin(), seg.end(), *marker_));
    if (markers > 1) return false;
  }
  const auto& first = segments.front();
  const auto& last = segments.back();
  const std::size_t k = std::min(first.size(), last.size());
  for (std::size_t i = 0; i < k; ++i)
    if (first[i] != last[last.size() - 1 - i]) return false;
  return true;
}

std::string FinalLanguage::describe() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Regular>) {
          return "dfa";
        } else if constexpr (std::is_same_v<T, MarkedPalindrome>) {
          return "markpal:" + text::join(v.base, ",") + ":" + v.marker;
        } else if constexpr (std::is_same_v<T, EvenPalindrome>) {
          return "evenpal:" + text::join(v.base, ",");
        } else {
          return "palg";
        }
      },
      variant_);
}

std::vector<std::string> alphabet_of(const FinalLanguage& f) { return f.alphabet(); }

bool final_member(const FinalLanguage& f, const std::vector<std::string>& w) {
  std::vector<std::size_t> idx;
  idx.reserve(w.size());
  for (const auto& s : w) {
    auto i = f.index_of(s);
    if (!i) return false;
    idx.push_back(*i);
  }
  return f.accepts(idx);
}

namespace {

std::vector<std::string> symbol_list(std::string_view s) {
  if (s.empty()) return {};
  auto parts = text::split(s, ',');
  for (auto& p : parts) p = std::string(text::trim(p));
  return parts;
}

}  // namespace

FinalLanguage parse_final_spec(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw Error("final language spec '" + std::string(spec) + "' lacks a '<kind>:' prefix");
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view rest = spec.substr(colon + 1);
  if (kind == "dfa") return FinalLanguage::regular(load_dfa(std::string(rest)));
  if (kind == "palg") return FinalLanguage::palindromial(palg_validate(load_grammar(std::string(rest))));
  if (kind == "evenpal") return FinalLanguage::even_palindrome(symbol_list(rest));
  if (kind == "markpal") {
    auto last = rest.rfind(':');
    if (last == std::string_view::npos)
      throw Error("markpal spec needs the form markpal:<a,b,...>:<marker>");
    return FinalLanguage::marked_palindrome(symbol_list(rest.substr(0, last)),
                                            std::string(rest.substr(last + 1)));
  }
  throw Error("unknown final language kind '" + std::string(kind) + "'");
}

}  // namespace fsf
