#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fsf/cli.hpp"
#include "oracles.hpp"

using namespace fsf;
using namespace fsf::testing;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("fsf_cli_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("round trip of the golden corpus") {
  for (const auto& entry : std::filesystem::directory_iterator(FSF_TEST_DATA)) {
    const auto path = entry.path().string();
    CAPTURE(path);
    auto r = run({"validate", path, "--print"});
    CHECK(r.status == cli::kOk);
    CHECK(r.out == read_file(path));
  }
}

TEST_CASE("membership statuses") {
  auto yes = run({"member", "--grammar", data_path("ex1.cfg"), "--final", "markpal:X,Y:#", "--target", "the#110"});
  CHECK(yes.status == cli::kOk);
  CHECK(has(yes.out, "step 1: rule r1 at 0 => A#B"));
  CHECK(has(yes.out, "member: yes"));

  for (const char* w : {"the#100", "the#1100"}) {
    auto no = run({"member", "--grammar", data_path("ex1.cfg"), "--final", "markpal:X,Y:#", "--target", w});
    CHECK(no.status == cli::kFails);
    CHECK(has(no.out, "complete: yes"));
  }

  auto q = run({"member", "--lqg", data_path("anbncn.lqg"), "--target", "aabbcc"});
  CHECK(q.status == cli::kOk);

  auto tiny = run({"member", "--grammar", data_path("ex2.cfg"), "--final", "palg:" + data_path("ex2_final.cfg"),
                   "--target", "1010#1001", "--node-cap", "3"});
  CHECK(tiny.status == cli::kInconclusive);
}

TEST_CASE("equiv on the compiled counting grammar") {
  auto same = run({"equiv", "--left", "cfg:" + data_path("g0_h.cfg"), "--right",
                   "final:" + data_path("g0.cfg") + ",dfa:" + data_path("hash.dfa"), "--max-len", "5"});
  CHECK(same.status == cli::kOk);
  CHECK(has(same.out, "equivalent: yes"));

  std::string h = read_file(data_path("g0_h.cfg"));
  auto cut = h.find("rule: <q0.#.q1> -> #\n");
  REQUIRE(cut != std::string::npos);
  h.erase(cut, std::string("rule: <q0.#.q1> -> #\n").size());
  auto broken = temp_file("h_cut.cfg", h);
  auto diff = run({"equiv", "--left", "cfg:" + broken, "--right",
                   "final:" + data_path("g0.cfg") + ",dfa:" + data_path("hash.dfa"), "--max-len", "5"});
  CHECK(diff.status == cli::kFails);
  CHECK(has(diff.out, "witness:"));
  CHECK(has(diff.out, "equivalent: no"));
}

TEST_CASE("finalize-regular and queue-to-cfg") {
  auto h = run({"finalize-regular", "--grammar", data_path("g0.cfg"), "--dfa", data_path("hash.dfa")});
  CHECK(h.status == cli::kOk);
  CHECK(h.out == read_file(data_path("g0_h.cfg")));

  auto t = run({"finalize-regular", "--grammar", data_path("g0.cfg"), "--dfa", data_path("hash.dfa"), "--target",
                "0#11"});
  CHECK(t.status == cli::kFails);

  auto table = std::filesystem::temp_directory_path() / "fsf_cli_test_table.txt";
  auto g = run({"queue-to-cfg", "--lqg", data_path("anbncn.lqg"), "--table", table.string()});
  CHECK(g.status == cli::kOk);
  CHECK(has(g.out, "kind: cfg"));
  CHECK(has(read_file(table.string()), "iota: "));

  auto mixed = run({"queue-to-cfg", "--lqg", data_path("mixed.lqg")});
  CHECK(mixed.status == cli::kInputError);
}

TEST_CASE("enumerate, classify and derive") {
  auto e = run({"enumerate", "--lqg", data_path("anbncn.lqg"), "--max-len", "9"});
  CHECK(e.status == cli::kOk);
  CHECK(has(e.out, "aaabbbccc"));

  auto c = run({"classify", data_path("pal.cfg")});
  CHECK(c.status == cli::kOk);
  CHECK(has(c.out, "palindromial: yes"));

  auto d = run({"derive", "--grammar", data_path("ex1.cfg"), "--steps", "r1@0 r8@0", "--final", "markpal:X,Y:#"});
  CHECK(d.status == cli::kOk);
  CHECK(has(d.out, "tAX#B"));
  auto bad = run({"derive", "--grammar", data_path("ex1.cfg"), "--steps", "r1@0 r8@2"});
  CHECK(bad.status == cli::kInputError);
}

TEST_CASE("output is deterministic") {
  std::vector<std::string> args{"enumerate", "--grammar", data_path("ex2.cfg"), "--final",
                                "palg:" + data_path("ex2_final.cfg"), "--max-len", "7"};
  auto a = run(args), b = run(args);
  CHECK(a.status == b.status);
  CHECK(a.out == b.out);
}

TEST_CASE("usage and input errors") {
  CHECK(run({}).status == cli::kInputError);
  CHECK(run({"frobnicate"}).status == cli::kInputError);
  CHECK(run({"member", "--grammar", data_path("ex1.cfg")}).status == cli::kInputError);
  CHECK(run({"validate", data_path("missing.cfg")}).status == cli::kInputError);
  CHECK(run({"member", "--grammar", data_path("ex1.cfg"), "--final", "bogus:1", "--target", "a"}).status ==
        cli::kInputError);
}

TEST_CASE("property: damaged files are input errors with a line number") {
  Rng rng(71);
  for (const char* f : {"ex1.cfg", "ex2.cfg", "hash.dfa", "anbncn.lqg", "guess.lqg"}) {
    std::string text = read_file(data_path(f));
    for (int i = 0; i < 40; ++i) {
      std::vector<std::string> lines;
      std::istringstream in(text);
      for (std::string l; std::getline(in, l);) lines.push_back(l);
      std::size_t k = 1 + rng.below(lines.size() - 1);
      switch (rng.below(3)) {
        case 0: lines[k] = "garbage line"; break;
        case 1: lines[k] = lines[k].substr(0, lines[k].find(':') + 1) + " -> -> ,"; break;
        default: lines[k] += " ??"; break;
      }
      std::string damaged;
      for (const auto& l : lines) damaged += l + "\n";
      auto path = temp_file(f, damaged);
      auto r = run({"validate", path});
      CAPTURE(damaged);
      if (r.status == cli::kOk) continue;  // some edits stay well formed
      CHECK(r.status == cli::kInputError);
      CHECK(has(r.err, "line"));
    }
  }
}

}  // TEST_SUITE
