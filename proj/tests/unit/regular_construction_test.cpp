#include <algorithm>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fsf/cfg_io.hpp"
#include "fsf/error.hpp"
#include "fsf/finalization.hpp"
#include "fsf/language.hpp"
#include "fsf/regular_construction.hpp"
#include "oracles.hpp"
#include "structure.hpp"

using namespace fsf;
using namespace fsf::testing;

namespace {

std::vector<std::vector<std::size_t>> pick_sets(const Cfg& g, const char* rhs, const std::vector<std::string>& w) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& d : decompose_rhs(g.parse_word(rhs), g.mask(w))) out.push_back(d.picks);
  return out;
}

NameSet as_names(const Cfg& g, const std::vector<Word>& ws) {
  NameSet out;
  for (const auto& w : ws) out.insert(g.names(w));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_structure(const Cfg& g, const Dfa& m, const FinalizedCfg& h) {
  auto v = structure_violations(g, m, h);
  CHECK_MESSAGE(v.empty(), (v.empty() ? "" : v.front()));
}

}  // namespace

TEST_SUITE("regular-construction") {

TEST_CASE("decompose_rhs") {
  Cfg g = parse_grammar_text("kind: cfg\nterminals: a b\nnonterminals: S X\nstart: S\nrule: S -> a X b\n");
  auto with_x = pick_sets(g, "a X b", {"X"});
  std::set<std::vector<std::size_t>> got(with_x.begin(), with_x.end());
  CHECK(with_x.size() == 4);
  CHECK(got == std::set<std::vector<std::size_t>>{{1}, {0, 1}, {1, 2}, {0, 1, 2}});

  auto no_w = pick_sets(g, "a b", {"X"});
  CHECK(std::set<std::vector<std::size_t>>(no_w.begin(), no_w.end()) ==
        std::set<std::vector<std::size_t>>{{0}, {1}, {0, 1}});
  CHECK(decompose_rhs(Word{}, g.mask({"X"})).empty());
}

TEST_CASE("wrapped names") {
  CHECK(wrapped_name("p", "A", "q") == "<p.A.q>");
  CHECK(start_wrapper_name("q0", "S") == "<q0.S.QF>");
  auto w = parse_wrapped("<p.A.q>");
  REQUIRE(w);
  CHECK(w->left == "p");
  CHECK(w->core == "A");
  CHECK(w->right == "q");
  CHECK_FALSE(parse_wrapped("<q0.S.QF>"));
  CHECK_FALSE(parse_wrapped("A"));
}

TEST_CASE("the counting grammar with the '#' acceptor") {
  Cfg g0 = load_grammar(data_path("g0.cfg"));
  Dfa m = load_dfa(data_path("hash.dfa"));
  auto h = build_finalized_cfg(g0, m);
  CHECK(as_names(h.grammar, enumerate_language(h.grammar, 5)) ==
        NameSet{{"#"}, {"0", "#", "1"}, {"0", "0", "#", "1", "1"}});
  check_structure(g0, m, h);
  CHECK(print_grammar(h.grammar) == read_file(data_path("g0_h.cfg")));
  CHECK(parse_grammar_text(print_grammar(h.grammar)) == h.grammar);
}

TEST_CASE("size accounting before deduplication") {
  Cfg g0 = load_grammar(data_path("g0.cfg"));
  Dfa m = load_dfa(data_path("hash.dfa"));
  auto h = build_finalized_cfg(g0, m, {false});
  // S -> 0 S 1: three one-pick, three two-pick and one three-pick
  // decompositions; S -> #: one single pick. |Q| = 3.
  const std::size_t expected = 3 * 9 + 3 * 27 + 1 * 81 + 1 * 9;
  CHECK(std::count(h.provenance.begin(), h.provenance.end(), ConstructionStep::chained) == expected);
  check_structure(g0, m, h);
}

TEST_CASE("no final state gives the empty language") {
  Cfg g0 = load_grammar(data_path("g0.cfg"));
  Dfa m = load_dfa(data_path("empty.dfa"));
  auto h = build_finalized_cfg(g0, m);
  CHECK(std::count(h.provenance.begin(), h.provenance.end(), ConstructionStep::start) == 0);
  CHECK(enumerate_language(h.grammar, 7).empty());
}

TEST_CASE("morphology grammar with exactly one '#'") {
  Cfg g = load_grammar(data_path("ex1.cfg"));
  Dfa m = load_dfa(data_path("one_hash.dfa"));
  auto h = build_finalized_cfg(g, m);
  check_structure(g, m, h);
  FinalizationInstance inst(g, FinalLanguage::regular(m));
  auto lang = finalized_language(inst, {24, 64, 1'000'000}, 6);
  CHECK(lang.complete);
  CHECK(as_names(h.grammar, enumerate_language(h.grammar, 6)) == as_names(g, lang.words));
}

TEST_CASE("construction preconditions") {
  Cfg g0 = load_grammar(data_path("g0.cfg"));
  Dfa foreign = parse_dfa_text("kind: dfa\nstates: p\nalphabet: z\nstart: p\nfinal: p\ntrans: p z p\n");
  CHECK_THROWS_AS(build_finalized_cfg(g0, foreign), Error);
  Dfa qf = parse_dfa_text("kind: dfa\nstates: QF\nalphabet: #\nstart: QF\nfinal: QF\ntrans: QF # QF\n");
  CHECK_THROWS_AS(build_finalized_cfg(g0, qf), Error);
  Dfa dotted = parse_dfa_text("kind: dfa\nstates: p.1\nalphabet: #\nstart: p.1\nfinal: p.1\ntrans: p.1 # p.1\n");
  CHECK_THROWS_AS(build_finalized_cfg(g0, dotted), Error);
  Cfg reserved =
      parse_grammar_text("kind: cfg\nterminals: #\nnonterminals: S <x>\nstart: S\nrule: S -> #\nrule: <x> -> #\n");
  CHECK_THROWS_AS(build_finalized_cfg(reserved, load_dfa(data_path("hash.dfa"))), Error);
}

TEST_CASE("property: structure and equivalence on random instances") {
  Rng rng(41);
  for (int i = 0; i < 60; ++i) {
    Cfg g = random_cfg(rng, {});
    auto w = random_w(rng, g);
    Dfa m = random_dfa(rng, w, 3);
    CAPTURE(print_grammar(g));
    CAPTURE(print_dfa(m));
    auto h = build_finalized_cfg(g, m);
    check_structure(g, m, h);
    CHECK(parse_grammar_text(print_grammar(h.grammar)) == h.grammar);

    // pruning only removes useless rules
    auto full = build_finalized_cfg(g, m, {false});
    check_structure(g, m, full);
    CHECK(enumerate_language(h.grammar, 4) == enumerate_language(full.grammar, 4));

    auto in_f = [&](const Names& x) { return m.accepting(dfa_run(m, x)); };
    auto oracle = naive_finalized(g, w, in_f, 8, 8, 4);
    auto lh = as_names(h.grammar, enumerate_language(h.grammar, 4));
    CHECK(std::includes(lh.begin(), lh.end(), oracle.begin(), oracle.end()));
    FinalizationInstance inst(g, FinalLanguage::regular(m));
    for (const auto& x : lh) CHECK(find_by_deepening(inst, g.word(x)).found());
  }
}

}  // TEST_SUITE
