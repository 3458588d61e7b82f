#pragma once

// Independent reference implementations used by the tests. They share no
// search code with the library: plain breadth-first expansion over std::set,
// no pruning, no dynamic programming.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fsf/cfg.hpp"
#include "fsf/dfa.hpp"
#include "fsf/lqg.hpp"

namespace fsf::testing {

std::string data_path(const std::string& name);

using Names = std::vector<std::string>;
using NameSet = std::set<Names>;

/// Every form reachable from S within max_steps steps through forms of length
/// at most max_form_len.
std::set<Word> naive_forms(const Cfg& g, std::size_t max_form_len, std::size_t max_steps);

/// Terminal strings of length <= max_len among naive_forms. Exact for
/// propagating grammars when max_form_len >= max_len.
NameSet naive_language(const Cfg& g, std::size_t max_len, std::size_t max_steps = 64);

/// {project(y, T) : y within the bounds, y has no symbol of N - W,
/// in_f(project(y, W))}, restricted to strings of length <= max_len.
NameSet naive_finalized(const Cfg& g, const std::vector<std::string>& w,
                        const std::function<bool(const Names&)>& in_f, std::size_t max_form_len,
                        std::size_t max_steps, std::size_t max_len);

/// {w # σ(w) : w ∈ {t,h,e}+}, σ(t) = σ(h) = 1, σ(e) = 0, length <= max_len.
NameSet morphology_set(std::size_t max_len);

/// {u # v : u, v ∈ {0,1}+, |u| = |v| <= max_half, value(u) > value(v)}.
NameSet comparison_set(std::size_t max_half);

/// Straight simulation of a queue grammar with full history, no pruning.
NameSet naive_queue_language(const Lqg& q, std::size_t max_len, std::size_t max_steps,
                             std::size_t queue_cap);

/// Recovers (rule, position) for each consecutive pair of forms, or nullopt
/// if some form is not a one-step successor of the previous one.
std::optional<DerivationTrace> trace_from_forms(const Cfg& g, const std::vector<Word>& forms);

bool is_marked_palindrome(const Names& w, const std::string& marker);

struct Rng {
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine); }
  bool coin() { return below(2) == 1; }
  std::mt19937_64 engine;
};

struct CfgShape {
  std::size_t max_nonterminals = 4;
  std::size_t max_terminals = 3;
  std::size_t max_rules = 8;
  std::size_t max_rhs = 3;
  bool propagating = true;
};

/// Nonterminals S A B C, terminals a b c (prefixes thereof). S always has a
/// rule. With propagating = false, ε-rules and unit rules are likely.
Cfg random_cfg(Rng& rng, const CfgShape& shape);

/// A non-empty random subset of the grammar's total alphabet.
std::vector<std::string> random_w(Rng& rng, const Cfg& g);

/// A random total DFA over `alphabet` with 1..max_states states p0, p1, ...
Dfa random_dfa(Rng& rng, const std::vector<std::string>& alphabet, std::size_t max_states);

/// A random normal-form queue grammar over V - T = {S, A, B}, T = {a, b},
/// U = {q0, p, r, f}, D = {f}.
Lqg random_normal_lqg(Rng& rng);

std::string render(const Names& w);

}  // namespace fsf::testing
