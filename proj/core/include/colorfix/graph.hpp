#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace colorfix {

using Vertex = std::int32_t;

// Simple undirected graph, immutable after construction.
//
// Adjacency is stored CSR-style with each neighbor list sorted ascending;
// duplicate edges and self-loops are rejected at build time.  Everything the
// resampling engine needs (balls of radius <= 3, the canonical N^3 indexing,
// triangle / clique tests) is computed on demand -- the graphs here are desk
// scale, so there is no precomputed distance structure to go stale.
class Graph {
 public:
  Graph() = default;

  // Builds from an edge list over vertices {0, ..., n-1}.
  // Throws InvalidArgument on out-of-range endpoints, self-loops, duplicates.
  static Graph build(Vertex n, std::span<const std::pair<Vertex, Vertex>> edges);
  static Graph build(Vertex n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    return build(n, std::span<const std::pair<Vertex, Vertex>>(edges));
  }

  Vertex vertex_count() const { return n_; }
  std::size_t edge_count() const { return flat_.size() / 2; }

  int degree(Vertex v) const {
    check_vertex(v);
    return static_cast<int>(offset_[v + 1] - offset_[v]);
  }

  // Maximum degree (Delta); 0 for the edgeless graph.
  int max_degree() const { return max_degree_; }

  // Neighbors of v, sorted ascending.
  std::span<const Vertex> neighbors(Vertex v) const {
    check_vertex(v);
    return {flat_.data() + offset_[v], flat_.data() + offset_[v + 1]};
  }

  bool has_edge(Vertex u, Vertex v) const;

  // All vertices w with dist(v, w) <= d, sorted ascending (v included, d >= 0).
  std::vector<Vertex> within_distance(Vertex v, int d) const;

  // 1-indexed canonical naming of the radius-3 ball around v: omega(v, ell) is
  // the ell-th smallest vertex of within_distance(v, 3).  Transcript records
  // address recursion targets this way, so an out-of-range ell is a hard error
  // rather than a clamp.
  Vertex omega(Vertex v, std::size_t ell) const;

  bool is_triangle_free() const;

  // True iff the graph has no clique on k+1 vertices (i.e. omega(G) <= k).
  // Exact branch-and-bound; fine for desk-scale inputs.
  bool clique_number_at_most(int k) const;

  // Edge list with u < v, lexicographically sorted.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

 private:
  void check_vertex(Vertex v) const;

  Vertex n_ = 0;
  std::vector<std::size_t> offset_;  // n_+1 entries
  std::vector<Vertex> flat_;         // concatenated sorted neighbor lists
  int max_degree_ = 0;
};

}  // namespace colorfix
