#include <algorithm>

#include "doctest.h"
#include "fsf/cfg.hpp"
#include "fsf/cfg_io.hpp"
#include "fsf/error.hpp"
#include "fsf/form_search.hpp"
#include "fsf/language.hpp"
#include "oracles.hpp"

using namespace fsf;
using namespace fsf::testing;

namespace {

const char* const kPal = R"(kind: cfg
terminals: 0 1 #
nonterminals: S
start: S
rule: S -> 0 S 0
rule: S -> 1 S 1
rule: S -> #
)";

NameSet as_names(const Cfg& g, const std::vector<Word>& ws) {
  NameSet out;
  for (const auto& w : ws) out.insert(g.names(w));
  return out;
}

std::set<Word> graph_forms(const FormGraph& fg) {
  std::set<Word> out;
  for (std::size_t i = 0; i < fg.size(); ++i) {
    auto f = fg.form(i);
    out.emplace(f.begin(), f.end());
  }
  return out;
}

std::vector<Word> all_words(const Cfg& g, std::size_t max_len) {
  std::vector<Word> out{{}};
  std::vector<Word> layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (SymbolId t : g.terminals()) {
        auto v = w;
        v.push_back(t);
        next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace

TEST_SUITE("grammar-core") {

TEST_CASE("loading the morphology grammar") {
  Cfg g = load_grammar(data_path("ex1.cfg"));
  CHECK(g.name(g.start()) == "S");
  CHECK(g.terminal_count() == 6);
  CHECK(g.rules().size() == 11);
  CHECK(g.name(g.rule(0).lhs) == "S");
  CHECK(g.names(g.rule(0).rhs) == Names{"A", "#", "B"});
}

TEST_CASE("a terminal start symbol is rejected") {
  const char* text = "kind: cfg\nterminals: a\nnonterminals: S\nstart: a\nrule: S -> a\n";
  try {
    parse_grammar_text(text);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("start must be a nonterminal") != std::string::npos);
    CHECK(e.line() == 4);
  }
}

TEST_CASE("eps gives an empty right-hand side") {
  Cfg g = parse_grammar_text("kind: cfg\nterminals: a\nnonterminals: S\nstart: S\nrule: S -> eps\n");
  REQUIRE(g.rules().size() == 1);
  CHECK(g.rule(0).rhs.empty());
  CHECK_FALSE(classify(g).propagating);
}

TEST_CASE("malformed grammar files report a line") {
  const char* bad[] = {
      "kind: cfg\nterminals: a\nnonterminals: S\nstart: S\nrule: S a\n",
      "kind: cfg\nterminals: a\nnonterminals: S\nstart: S\nrule: S -> b\n",
      "kind: cfg\nterminals: a\nnonterminals: S\nstart: S\nrule: S -> a\nrule: S -> a\n",
      "kind: cfg\nterminals: a a\nnonterminals: S\nstart: S\n",
      "kind: cfg\nterminals: a\nnonterminals: S\nstart: S\nbogus: x\n",
      "kind: cfg\nterminals: a\nnonterminals: S\nstart: S\nrule: a -> S\n",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    try {
      parse_grammar_text(text);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.line() > 0);
    }
  }
}

TEST_CASE("classification") {
  Cfg pal = parse_grammar_text(kPal);
  auto r = classify(pal);
  CHECK(r.palindromial);
  CHECK(r.minimal_linear);
  CHECK(r.linear);
  CHECK(r.propagating);
  REQUIRE(r.marker);
  CHECK(pal.name(*r.marker) == "#");

  auto e1 = classify(load_grammar(data_path("ex1.cfg")));
  CHECK(e1.propagating);
  CHECK_FALSE(e1.linear);

  auto g0 = classify(load_grammar(data_path("g0.cfg")));
  CHECK(g0.minimal_linear);
  CHECK_FALSE(g0.palindromial);
}

TEST_CASE("projection") {
  Cfg g = load_grammar(data_path("ex1.cfg"));
  Word y = g.parse_word("theYXX#1X1X0Y");
  CHECK(g.render(project(y, g.mask({"X", "Y", "#"}))) == "YXX#XXY");
  CHECK(g.render(project(y, g.terminal_mask())) == "the#110");
  CHECK(project(Word{}, g.mask({"X"})).empty());
}

TEST_CASE("derive_step") {
  Cfg g = load_grammar(data_path("ex1.cfg"));
  Word s{g.start()};
  Word f = derive_step(g, s, 0, 0);
  CHECK(g.render(f) == "A#B");
  CHECK(g.render(derive_step(g, f, 2, 2)) == "A#0Y");
  CHECK_THROWS_AS(derive_step(g, f, 2, 0), Error);
  CHECK_THROWS_AS(derive_step(g, f, 2, 7), Error);
}

TEST_CASE("enumerate_forms examples") {
  Cfg g = load_grammar(data_path("ex1.cfg"));
  auto forms = graph_forms(enumerate_forms(g, 5, 2));
  CHECK(forms.count(g.parse_word("A#B")) == 1);
  CHECK(forms.count(g.parse_word("tAX#B")) == 1);

  auto zero = graph_forms(enumerate_forms(g, 5, 0));
  CHECK(zero == std::set<Word>{Word{g.start()}});

  Cfg ss = parse_grammar_text("kind: cfg\nterminals: a\nnonterminals: S\nstart: S\nrule: S -> S S\nrule: S -> a\n");
  std::set<Word> expect;
  for (const char* w : {"S", "SS", "aS", "Sa", "aa", "a"}) expect.insert(ss.parse_word(w));
  CHECK(graph_forms(enumerate_forms(ss, 2, 3)) == expect);
}

TEST_CASE("enumerate_language examples") {
  Cfg pal = parse_grammar_text(kPal);
  CHECK(as_names(pal, enumerate_language(pal, 3)) == NameSet{{"#"}, {"0", "#", "0"}, {"1", "#", "1"}});

  Cfg g0 = load_grammar(data_path("g0.cfg"));
  CHECK(as_names(g0, enumerate_language(g0, 5)) ==
        NameSet{{"#"}, {"0", "#", "1"}, {"0", "0", "#", "1", "1"}});

  Cfg dead = parse_grammar_text("kind: cfg\nterminals: a\nnonterminals: S\nstart: S\nrule: S -> a S\n");
  CHECK(enumerate_language(dead, 6).empty());
}

TEST_CASE("cfg_member examples") {
  Cfg pal = parse_grammar_text(kPal);
  CHECK(cfg_member(pal, pal.parse_word("01#10")).accepted);
  CHECK_FALSE(cfg_member(pal, pal.parse_word("0#1")).accepted);
  CHECK_FALSE(cfg_member(pal, Word{}).accepted);

  Cfg e = parse_grammar_text("kind: cfg\nterminals: a\nnonterminals: S A\nstart: S\nrule: S -> A A\nrule: A -> eps\n");
  CHECK(cfg_member(e, Word{}).accepted);
}

TEST_CASE("word parsing and rendering") {
  Cfg g = load_grammar(data_path("ex1.cfg"));
  CHECK(g.parse_word("eps").empty());
  CHECK(g.render(Word{}) == "eps");
  CHECK(g.parse_word("t h e") == g.parse_word("the"));
  CHECK_THROWS_AS(g.parse_word("thz"), Error);
}

TEST_CASE("property: enumerate_forms matches naive expansion") {
  Rng rng(11);
  for (int i = 0; i < 150; ++i) {
    CfgShape shape;
    shape.propagating = i % 2 == 0;
    Cfg g = random_cfg(rng, shape);
    CAPTURE(print_grammar(g));
    auto fg = enumerate_forms(g, 5, 4);
    REQUIRE_FALSE(fg.capped());
    CHECK(graph_forms(fg) == naive_forms(g, 5, 4));
    for (std::size_t n = 0; n < fg.size(); ++n) {
      auto f = fg.form(n);
      CHECK(replay(g, fg.trace(n)) == Word(f.begin(), f.end()));
      CHECK(fg.trace(n).steps.size() == fg.depth(n));
    }
  }
}

TEST_CASE("property: enumerate_language agrees with naive expansion and cfg_member") {
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    CfgShape shape;
    shape.propagating = i % 3 != 0;
    Cfg g = random_cfg(rng, shape);
    CAPTURE(print_grammar(g));
    auto lang = enumerate_language(g, 4);
    CHECK(std::is_sorted(lang.begin(), lang.end(),
                         [&](const Word& a, const Word& b) { return shortlex_less(g, a, b); }));
    if (shape.propagating) CHECK(as_names(g, lang) == naive_language(g, 4, 200));
    std::set<Word> in(lang.begin(), lang.end());
    for (const auto& w : all_words(g, 4)) {
      auto m = cfg_member(g, w);
      CHECK(m.accepted == (in.count(w) == 1));
      if (m.accepted) {
        REQUIRE(m.trace);
        CHECK(replay(g, *m.trace) == w);
      }
    }
  }
}

TEST_CASE("property: projection is a homomorphism") {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    Cfg g = random_cfg(rng, {});
    auto keep = g.mask(random_w(rng, g));
    Word x, y;
    for (std::size_t k = rng.below(6); k > 0; --k) x.push_back(static_cast<SymbolId>(rng.below(g.symbol_count())));
    for (std::size_t k = rng.below(6); k > 0; --k) y.push_back(static_cast<SymbolId>(rng.below(g.symbol_count())));
    Word xy = x;
    xy.insert(xy.end(), y.begin(), y.end());
    Word px = project(x, keep), py = project(y, keep);
    px.insert(px.end(), py.begin(), py.end());
    CHECK(project(xy, keep) == px);
  }
}

TEST_CASE("property: classification implications and round trip") {
  Rng rng(14);
  for (int i = 0; i < 300; ++i) {
    CfgShape shape;
    shape.propagating = i % 2 == 0;
    shape.max_nonterminals = 1 + i % 4;
    Cfg g = random_cfg(rng, shape);
    auto r = classify(g);
    if (r.palindromial) CHECK(r.minimal_linear);
    if (r.minimal_linear) CHECK(r.linear);
    CHECK(r.propagating == std::all_of(g.rules().begin(), g.rules().end(),
                                       [](const Rule& x) { return !x.rhs.empty(); }));
    auto text = print_grammar(g);
    CHECK(parse_grammar_text(text) == g);
    CHECK(print_grammar(parse_grammar_text(text)) == text);
  }
}

}  // TEST_SUITE
