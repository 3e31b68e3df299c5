#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mtype/errors.hpp"
#include "mtype/metric_space.hpp"

namespace mtype {

// Weighted undirected graph with positive rational edge lengths.  Always
// connected, loop-free, and without parallel edges.
class MetricGraph {
 public:
  struct Edge {
    std::size_t u, v;
    Rational len;
  };

  static MetricGraph create(std::vector<std::string> labels,
                            std::vector<Edge> edges) {
    MetricGraph g;
    g.labels_ = std::move(labels);
    g.edges_ = std::move(edges);
    const std::size_t n = g.labels_.size();
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto& e : g.edges_) {
      if (e.u >= n || e.v >= n) throw IndexOutOfRange("edge endpoint out of range");
      if (e.u == e.v) throw Error("self-loop not allowed");
      if (!(e.len > 0)) throw Error("edge length must be positive");
      if (!seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second)
        throw Error("parallel edge not allowed");
    }
    g.adj_.assign(n, {});
    for (std::size_t k = 0; k < g.edges_.size(); ++k) {
      g.adj_[g.edges_[k].u].push_back({g.edges_[k].v, k});
      g.adj_[g.edges_[k].v].push_back({g.edges_[k].u, k});
    }
    for (auto& a : g.adj_) std::sort(a.begin(), a.end());
    // Connectivity: n = 0 is vacuously fine, a single vertex is connected.
    if (n > 0) {
      std::vector<bool> vis(n, false);
      std::vector<std::size_t> stack{0};
      vis[0] = true;
      while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (const auto& [v, k] : g.adj_[u])
          if (!vis[v]) {
            vis[v] = true;
            stack.push_back(v);
          }
      }
      for (std::size_t i = 0; i < n; ++i)
        if (!vis[i]) throw Disconnected("vertex " + std::to_string(i) +
                                        " unreachable from vertex 0");
    }
    return g;
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Edge>& edges() const { return edges_; }
  // Neighbors of u as (vertex, edge index), sorted by vertex.
  const std::vector<std::pair<std::size_t, std::size_t>>& neighbors(
      std::size_t u) const {
    return adj_[u];
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj_;
};

namespace detail {

inline std::vector<std::vector<Rational>> all_pairs_distances(
    const MetricGraph& g) {
  const std::size_t n = g.size();
  // Floyd-Warshall with an explicit reachability mask; the graph is
  // connected so the mask ends up all-true.
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, 0));
  std::vector<std::vector<bool>> ok(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) ok[i][i] = true;
  for (const auto& e : g.edges()) {
    if (!ok[e.u][e.v] || e.len < d[e.u][e.v]) {
      d[e.u][e.v] = e.len;
      d[e.v][e.u] = e.len;
      ok[e.u][e.v] = ok[e.v][e.u] = true;
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (!ok[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!ok[k][j]) continue;
        const Rational via = d[i][k] + d[k][j];
        if (!ok[i][j] || via < d[i][j]) {
          d[i][j] = via;
          ok[i][j] = true;
        }
      }
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!ok[i][j]) throw Disconnected("graph is not connected");
  return d;
}

}  // namespace detail

inline FiniteMetricSpace graph_metric(const MetricGraph& g) {
  const auto d = detail::all_pairs_distances(g);
  const std::size_t n = g.size();
  SquareMatrix<Scalar> m(n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Scalar(d[i][j]);
  return FiniteMetricSpace::from_matrix(g.labels(), std::move(m));
}

// Lexicographically smallest shortest vertex path from u to v.  Greedy step:
// among neighbors admitting a shortest completion, take the smallest index.
// Shortest paths never revisit vertices, so greedy prefix choice is the
// lexicographic minimum.
inline std::vector<std::size_t> lex_min_shortest_path(
    const MetricGraph& g, const std::vector<std::vector<Rational>>& dist,
    std::size_t u, std::size_t v) {
  std::vector<std::size_t> path{u};
  std::size_t cur = u;
  while (cur != v) {
    std::optional<std::size_t> next;
    for (const auto& [w, k] : g.neighbors(cur)) {
      if (g.edges()[k].len + dist[w][v] == dist[cur][v]) {
        next = w;
        break;
      }
    }
    if (!next) throw Error("no shortest-path step found");
    path.push_back(*next);
    cur = *next;
  }
  return path;
}

// Unit-length n-cycle; its graph metric equals cycle(n).
inline MetricGraph cycle_graph(int n) {
  if (n < 3) throw OutOfRange("cycle needs at least 3 vertices");
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  std::vector<MetricGraph::Edge> edges;
  for (int i = 0; i < n; ++i) {
    labels[static_cast<std::size_t>(i)] = std::to_string(i);
    edges.push_back({static_cast<std::size_t>(i),
                     static_cast<std::size_t>((i + 1) % n), Rational(1)});
  }
  return MetricGraph::create(std::move(labels), std::move(edges));
}

}  // namespace mtype
