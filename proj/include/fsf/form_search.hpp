#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <unordered_set>
#include <vector>

#include "fsf/cfg.hpp"

namespace fsf {

struct FormLimits {
  std::size_t max_form_len = 32;
  std::size_t max_steps = 64;
  std::size_t node_cap = 1'000'000;
};

/// The breadth-first graph of sentential forms explored from the start
/// symbol. Every stored form has one witness trace (its BFS parent chain),
/// which is a shortest derivation among those respecting the length bound.
class FormGraph {
 public:
  std::size_t size() const { return nodes_.size(); }
  std::span<const SymbolId> form(std::size_t node) const;
  std::size_t depth(std::size_t node) const { return nodes_[node].depth; }
  DerivationTrace trace(std::size_t node) const;

  /// Some new successor was dropped by max_form_len or max_steps.
  bool bounded() const { return bounded_; }
  /// The node cap stopped the exploration.
  bool capped() const { return capped_; }
  /// A visitor asked to stop.
  bool stopped() const { return stopped_; }
  /// Every form that survives the filter was reached and expanded.
  bool exhausted() const { return !bounded_ && !capped_ && !stopped_; }

 private:
  friend class FormExplorer;

  struct Node {
    std::uint32_t parent;
    std::uint32_t rule;
    std::uint32_t pos;
    std::uint32_t depth;
    std::size_t offset;
    std::uint32_t length;
  };

  struct Hash {
    const FormGraph* graph;
    std::size_t operator()(std::uint32_t node) const;
  };
  struct Eq {
    const FormGraph* graph;
    bool operator()(std::uint32_t a, std::uint32_t b) const;
  };

  SymbolId start_ = 0;
  std::vector<SymbolId> arena_;
  std::vector<Node> nodes_;
  bool bounded_ = false;
  bool capped_ = false;
  bool stopped_ = false;
};

/// Breadth-first exploration of sentential forms. Successors of a form are
/// generated leftmost position first, and at each position in rule
/// declaration order. `keep` may prune forms that provably cannot contribute
/// (pruned forms do not count as bound cuts); `visit` sees every stored node
/// in BFS order and may return true to stop.
class FormExplorer {
 public:
  using Filter = std::function<bool(std::span<const SymbolId>)>;
  using Visitor = std::function<bool(const FormGraph&, std::size_t)>;

  FormExplorer(const Cfg& g, FormLimits limits) : g_(g), limits_(limits) {}

  FormExplorer& keep(Filter f) {
    keep_ = std::move(f);
    return *this;
  }
  FormExplorer& visit(Visitor v) {
    visit_ = std::move(v);
    return *this;
  }

  FormGraph run() const;

 private:
  const Cfg& g_;
  FormLimits limits_;
  Filter keep_;
  Visitor visit_;
};

/// Exactly the sentential forms reachable from S in at most max_steps steps
/// through forms no longer than max_form_len. FormGraph::capped() signals
/// that the node cap truncated the set.
FormGraph enumerate_forms(const Cfg& g, std::size_t max_form_len, std::size_t max_steps,
                          std::size_t node_cap = 1'000'000);

}  // namespace fsf
