#include "doctest.h"
#include "fsf/cfg_io.hpp"
#include "fsf/dfa.hpp"
#include "fsf/error.hpp"
#include "fsf/final_language.hpp"
#include "fsf/language.hpp"
#include "oracles.hpp"

using namespace fsf;
using namespace fsf::testing;

namespace {

Names chars(const std::string& s) {
  Names out;
  for (char c : s) out.emplace_back(1, c);
  return out;
}

std::vector<Names> all_strings(const Names& alphabet, std::size_t max_len) {
  std::vector<Names> out{{}};
  std::vector<Names> layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Names> next;
    for (const auto& w : layer)
      for (const auto& a : alphabet) {
        auto v = w;
        v.push_back(a);
        next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace

TEST_SUITE("final-languages") {

TEST_CASE("dfa_run on the '#' acceptor") {
  Dfa m = load_dfa(data_path("hash.dfa"));
  CHECK(m.accepting(dfa_run(m, {"#"})));
  CHECK(dfa_run(m, {}) == m.start());
  auto sink = dfa_run(m, {"#", "#"});
  CHECK_FALSE(m.accepting(sink));
  CHECK_FALSE(m.live(sink));
  CHECK_THROWS_AS(dfa_run(m, {"x"}), Error);
}

TEST_CASE("dfa files must be total and consistent") {
  const char* bad[] = {
      "kind: dfa\nstates: p q\nalphabet: a\nstart: p\nfinal: q\ntrans: p a q\n",
      "kind: dfa\nstates: p\nalphabet: a\nstart: p\nfinal: p\ntrans: p a p\ntrans: p a p\n",
      "kind: dfa\nstates: p\nalphabet: a\nstart: r\nfinal: p\ntrans: p a p\n",
      "kind: dfa\nstates: p a\nalphabet: a\nstart: p\nfinal: p\ntrans: p a p\ntrans: a a a\n",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_dfa_text(text), Error);
  }
}

TEST_CASE("marked and even palindromes") {
  auto f = FinalLanguage::marked_palindrome({"X", "Y"}, "#");
  CHECK(final_member(f, chars("YXX#XXY")));
  CHECK_FALSE(final_member(f, chars("YXX#XXYY")));
  CHECK(final_member(f, chars("#")));
  CHECK_FALSE(final_member(f, chars("X#X#X")));
  CHECK_FALSE(final_member(f, chars("XZ#ZX")));
  CHECK(alphabet_of(f) == Names{"X", "Y", "#"});
  CHECK_THROWS_AS(FinalLanguage::marked_palindrome({"X", "#"}, "#"), Error);

  auto e = FinalLanguage::even_palindrome({"0", "1"});
  CHECK(final_member(e, {}));
  CHECK(final_member(e, chars("0110")));
  CHECK_FALSE(final_member(e, chars("010")));
  CHECK(alphabet_of(e) == Names{"0", "1"});
}

TEST_CASE("palindromial grammars") {
  auto pal = palg_validate(load_grammar(data_path("pal.cfg")));
  CHECK(pal.grammar().name(pal.marker()) == "#");
  CHECK(pal.paired().size() == 2);

  CHECK_THROWS_AS(palg_validate(load_grammar(data_path("g0.cfg"))), Error);
  CHECK_THROWS_AS(
      palg_validate(parse_grammar_text("kind: cfg\nterminals: #\nnonterminals: S\nstart: S\nrule: S -> #\n")),
      Error);

  auto f = FinalLanguage::palindromial(palg_validate(load_grammar(data_path("ex2_final.cfg"))));
  CHECK(final_member(f, chars("ABCD#DCBA")));
  CHECK_FALSE(final_member(f, chars("ABCD#DCAB")));
}

TEST_CASE("regular final language alphabet") {
  auto f = FinalLanguage::regular(load_dfa(data_path("one_hash.dfa")));
  CHECK(alphabet_of(f) == Names{"X", "Y", "#"});
  CHECK(final_member(f, chars("XX#Y")));
  CHECK_FALSE(final_member(f, chars("X#Y#")));
}

TEST_CASE("final language specs") {
  auto f = parse_final_spec("markpal:X,Y:#");
  CHECK(alphabet_of(f) == Names{"X", "Y", "#"});
  CHECK(alphabet_of(parse_final_spec("evenpal:0,1")) == Names{"0", "1"});
  CHECK(alphabet_of(parse_final_spec("dfa:" + data_path("hash.dfa"))) == Names{"#"});
  CHECK(final_member(parse_final_spec("palg:" + data_path("pal.cfg")), chars("01#10")));
  CHECK_THROWS_AS(parse_final_spec("markpal:X,Y"), Error);
  CHECK_THROWS_AS(parse_final_spec("nope:1"), Error);
  CHECK_THROWS_AS(parse_final_spec("X,Y"), Error);
}

TEST_CASE("property: palindromial backend agrees with the grammar itself") {
  for (auto [file, max_len] : {std::pair{"pal.cfg", 9}, std::pair{"ex2_final.cfg", 7}}) {
    Cfg g = load_grammar(data_path(file));
    auto f = FinalLanguage::palindromial(palg_validate(g));
    Names alphabet;
    for (SymbolId t : g.terminals()) alphabet.push_back(g.name(t));
    for (const auto& w : all_strings(alphabet, max_len))
      REQUIRE(final_member(f, w) == cfg_member(g, g.word(w)).accepted);
  }
}

TEST_CASE("property: marked palindrome backend against the definition") {
  auto f = FinalLanguage::marked_palindrome({"X", "Y"}, "#");
  for (const auto& w : all_strings({"X", "Y", "#"}, 8)) {
    bool member = is_marked_palindrome(w, "#");
    REQUIRE(final_member(f, w) == member);
    if (member && w.size() > 1) {
      // flipping any off-center symbol breaks membership
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == "#") continue;
        auto v = w;
        v[i] = v[i] == "X" ? "Y" : "X";
        CHECK_FALSE(final_member(f, v));
      }
    }
  }
}

TEST_CASE("property: viable() never rejects a completable pattern") {
  Rng rng(21);
  auto f = FinalLanguage::marked_palindrome({"X", "Y"}, "#");
  auto idx = [&](const Names& w) {
    std::vector<std::size_t> out;
    for (const auto& s : w) out.push_back(*f.index_of(s));
    return out;
  };
  for (int i = 0; i < 2000; ++i) {
    Names half;
    for (std::size_t k = rng.below(5); k > 0; --k) half.push_back(rng.coin() ? "X" : "Y");
    Names w = half;
    w.push_back("#");
    w.insert(w.end(), half.rbegin(), half.rend());
    // cut w into segments, dropping random gaps between them
    std::vector<std::vector<std::size_t>> segments(1);
    bool gap = false;
    for (const auto& s : w) {
      auto r = rng.below(4);
      if (r <= 1 && !gap) {
        segments.emplace_back();
        gap = true;
      }
      if (r == 0) continue;
      segments.back().push_back(*f.index_of(s));
      gap = false;
    }
    CHECK(f.viable(segments));
    CHECK(f.viable({idx(w)}) == f.accepts(idx(w)));
  }
}

TEST_CASE("property: random DFAs must be total") {
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    Names alphabet{"a", "b"};
    Dfa m = random_dfa(rng, alphabet, 3);
    auto text = print_dfa(m);
    CHECK(print_dfa(parse_dfa_text(text)) == text);
    // dropping any one transition line leaves the machine partial
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
      auto nl = text.find('\n', pos);
      lines.push_back(text.substr(pos, nl - pos));
      pos = nl + 1;
    }
    for (std::size_t k = 0; k < lines.size(); ++k) {
      if (lines[k].rfind("trans:", 0) != 0) continue;
      std::string cut;
      for (std::size_t j = 0; j < lines.size(); ++j)
        if (j != k) cut += lines[j] + "\n";
      CHECK_THROWS_AS(parse_dfa_text(cut), Error);
    }
  }
}

}  // TEST_SUITE
