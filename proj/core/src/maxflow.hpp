#ifndef FAIRDIV_SRC_MAXFLOW_HPP_
#define FAIRDIV_SRC_MAXFLOW_HPP_

#include <algorithm>
#include <cstddef>
#include <queue>
#include <vector>

#include "fairdiv/rational.hpp"

namespace fairdiv::detail {

// Dinic's algorithm over exact rationals. Shortest augmenting paths keep the
// running time polynomial independent of the capacities.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes) : graph_(nodes), level_(nodes), iter_(nodes) {}

  // Returns the index of the forward edge.
  std::size_t add_edge(std::size_t from, std::size_t to, const Rational& capacity) {
    edges_.push_back({to, capacity, Rational(0)});
    graph_[from].push_back(edges_.size() - 1);
    edges_.push_back({from, Rational(0), Rational(0)});
    graph_[to].push_back(edges_.size() - 1);
    return edges_.size() - 2;
  }

  Rational run(std::size_t source, std::size_t sink) {
    Rational total(0);
    while (bfs(source, sink)) {
      std::fill(iter_.begin(), iter_.end(), 0);
      while (true) {
        Rational pushed = dfs(source, sink, Rational(-1));
        if (pushed.sign() <= 0) break;
        total += pushed;
      }
    }
    return total;
  }

  const Rational& flow(std::size_t edge) const { return edges_[edge].flow; }

  // Nodes from which `sink` is reachable in the residual graph.
  std::vector<bool> can_reach(std::size_t sink) const {
    std::vector<bool> seen(graph_.size(), false);
    std::queue<std::size_t> todo;
    seen[sink] = true;
    todo.push(sink);
    while (!todo.empty()) {
      const std::size_t v = todo.front();
      todo.pop();
      // Residual edge u -> v exists iff the reverse of an edge out of v has
      // positive residual capacity.
      for (std::size_t id : graph_[v]) {
        const std::size_t u = edges_[id].to;
        const Edge& back = edges_[id ^ 1];
        if (!seen[u] && back.capacity - back.flow > Rational(0)) {
          seen[u] = true;
          todo.push(u);
        }
      }
    }
    return seen;
  }

 private:
  struct Edge {
    std::size_t to;
    Rational capacity;
    Rational flow;
  };

  bool bfs(std::size_t source, std::size_t sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> todo;
    level_[source] = 0;
    todo.push(source);
    while (!todo.empty()) {
      const std::size_t v = todo.front();
      todo.pop();
      for (std::size_t id : graph_[v]) {
        const Edge& e = edges_[id];
        if (level_[e.to] < 0 && e.capacity - e.flow > Rational(0)) {
          level_[e.to] = level_[v] + 1;
          todo.push(e.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  // limit < 0 means unbounded.
  Rational dfs(std::size_t v, std::size_t sink, const Rational& limit) {
    if (v == sink) return limit;
    for (std::size_t& k = iter_[v]; k < graph_[v].size(); ++k) {
      const std::size_t id = graph_[v][k];
      Edge& e = edges_[id];
      const Rational residual = e.capacity - e.flow;
      if (residual.sign() <= 0 || level_[e.to] != level_[v] + 1) continue;
      const Rational cap = limit.sign() < 0 ? residual : min(limit, residual);
      Rational pushed = dfs(e.to, sink, cap);
      if (pushed.sign() > 0) {
        e.flow += pushed;
        edges_[id ^ 1].flow -= pushed;
        return pushed;
      }
    }
    return Rational(0);
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> graph_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
};

}  // namespace fairdiv::detail

#endif  // FAIRDIV_SRC_MAXFLOW_HPP_
