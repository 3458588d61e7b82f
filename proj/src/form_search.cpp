#include "fsf/form_search.hpp"

#include <algorithm>
#include <limits>

namespace fsf {

namespace {

constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();

}  // namespace

std::span<const SymbolId> FormGraph::form(std::size_t node) const {
  const Node& n = nodes_[node];
  return {arena_.data() + n.offset, n.length};
}

DerivationTrace FormGraph::trace(std::size_t node) const {
  DerivationTrace t;
  t.start = start_;
  std::uint32_t cur = static_cast<std::uint32_t>(node);
  while (nodes_[cur].parent != kNoParent) {
    t.steps.push_back({nodes_[cur].rule, nodes_[cur].pos});
    cur = nodes_[cur].parent;
  }
  std::reverse(t.steps.begin(), t.steps.end());
  return t;
}

std::size_t FormGraph::Hash::operator()(std::uint32_t node) const {
  auto f = graph->form(node);
  std::size_t h = 1469598103934665603ull;
  for (SymbolId s : f) {
    h ^= s + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

bool FormGraph::Eq::operator()(std::uint32_t a, std::uint32_t b) const {
  auto fa = graph->form(a);
  auto fb = graph->form(b);
  return std::equal(fa.begin(), fa.end(), fb.begin(), fb.end());
}

FormGraph FormExplorer::run() const {
  FormGraph graph;
  graph.start_ = g_.start();
  std::unordered_set<std::uint32_t, FormGraph::Hash, FormGraph::Eq> seen(
      1024, FormGraph::Hash{&graph}, FormGraph::Eq{&graph});

  graph.arena_.push_back(g_.start());
  graph.nodes_.push_back({kNoParent, 0, 0, 0, 0, 1});
  if (keep_ && !keep_(graph.form(0))) {
    graph.nodes_.clear();
    graph.arena_.clear();
    return graph;
  }
  seen.insert(0);
  if (visit_ && visit_(graph, 0)) {
    graph.stopped_ = true;
    return graph;
  }

  for (std::size_t cur = 0; cur < graph.nodes_.size(); ++cur) {
    const auto node = graph.nodes_[cur];
    for (std::uint32_t pos = 0; pos < node.length; ++pos) {
      SymbolId sym = graph.arena_[node.offset + pos];
      if (g_.is_terminal(sym)) continue;
      for (std::size_t ri : g_.rules_for(sym)) {
        const Rule& r = g_.rule(ri);
        const std::size_t len = node.length - 1 + r.rhs.size();
        // Materialize the successor at the arena tail.
        const std::size_t offset = graph.arena_.size();
        for (std::uint32_t i = 0; i < pos; ++i) {
          SymbolId s = graph.arena_[node.offset + i];
          graph.arena_.push_back(s);
        }
        graph.arena_.insert(graph.arena_.end(), r.rhs.begin(), r.rhs.end());
        for (std::uint32_t i = pos + 1; i < node.length; ++i) {
          SymbolId s = graph.arena_[node.offset + i];
          graph.arena_.push_back(s);
        }

        const auto id = static_cast<std::uint32_t>(graph.nodes_.size());
        graph.nodes_.push_back({static_cast<std::uint32_t>(cur), static_cast<std::uint32_t>(ri), pos,
                                node.depth + 1, offset, static_cast<std::uint32_t>(len)});
        auto discard = [&] {
          graph.nodes_.pop_back();
          graph.arena_.resize(offset);
        };
        if (len <= limits_.max_form_len && seen.count(id)) {
          discard();
          continue;
        }
        if (keep_ && !keep_(graph.form(id))) {
          discard();
          continue;
        }
        if (len > limits_.max_form_len || node.depth + 1 > limits_.max_steps) {
          graph.bounded_ = true;
          discard();
          continue;
        }
        if (graph.nodes_.size() > limits_.node_cap) {
          graph.capped_ = true;
          discard();
          return graph;
        }
        seen.insert(id);
        if (visit_ && visit_(graph, id)) {
          graph.stopped_ = true;
          return graph;
        }
      }
    }
  }
  return graph;
}

FormGraph enumerate_forms(const Cfg& g, std::size_t max_form_len, std::size_t max_steps,
                          std::size_t node_cap) {
  return FormExplorer(g, {max_form_len, max_steps, node_cap}).run();
}

}  // namespace fsf
