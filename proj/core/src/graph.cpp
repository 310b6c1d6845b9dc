#include "colorfix/graph.hpp"

#include <algorithm>
#include <string>

#include "colorfix/errors.hpp"

namespace colorfix {

void Graph::check_vertex(Vertex v) const {
  if (v < 0 || v >= n_)
    throw InvalidArgument("vertex " + std::to_string(v) + " out of range [0, " +
                          std::to_string(n_) + ")");
}

Graph Graph::build(Vertex n, std::span<const std::pair<Vertex, Vertex>> edges) {
  if (n < 0) throw InvalidArgument("negative vertex count");
  Graph g;
  g.n_ = n;

  std::vector<std::pair<Vertex, Vertex>> norm;
  norm.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw InvalidArgument("edge (" + std::to_string(u) + ", " +
                            std::to_string(v) + ") out of range for n=" +
                            std::to_string(n));
    if (u == v)
      throw InvalidArgument("self-loop at vertex " + std::to_string(u));
    norm.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(norm.begin(), norm.end());
  if (std::adjacent_find(norm.begin(), norm.end()) != norm.end()) {
    auto it = std::adjacent_find(norm.begin(), norm.end());
    throw InvalidArgument("duplicate edge (" + std::to_string(it->first) +
                          ", " + std::to_string(it->second) + ")");
  }

  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : norm) {
    ++deg[u];
    ++deg[v];
  }
  g.offset_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex v = 0; v < n; ++v) g.offset_[v + 1] = g.offset_[v] + deg[v];
  g.flat_.resize(2 * norm.size());

  std::vector<std::size_t> cursor(g.offset_.begin(), g.offset_.end() - 1);
  for (auto [u, v] : norm) {
    g.flat_[cursor[u]++] = v;
    g.flat_[cursor[v]++] = u;
  }
  // norm is sorted by (min, max), so each u's list of larger neighbors arrives
  // in order, but smaller neighbors interleave; sort each list to be safe.
  for (Vertex v = 0; v < n; ++v)
    std::sort(g.flat_.begin() + g.offset_[v], g.flat_.begin() + g.offset_[v + 1]);

  g.max_degree_ = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Vertex> Graph::within_distance(Vertex v, int d) const {
  check_vertex(v);
  if (d < 0) throw InvalidArgument("negative radius");
  std::vector<Vertex> frontier{v};
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  seen[v] = 1;
  std::vector<Vertex> ball{v};
  for (int level = 0; level < d && !frontier.empty(); ++level) {
    std::vector<Vertex> next;
    for (Vertex u : frontier) {
      for (Vertex w : neighbors(u)) {
        if (!seen[w]) {
          seen[w] = 1;
          next.push_back(w);
          ball.push_back(w);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(ball.begin(), ball.end());
  return ball;
}

Vertex Graph::omega(Vertex v, std::size_t ell) const {
  auto ball = within_distance(v, 3);
  if (ell < 1 || ell > ball.size())
    throw InvalidArgument("omega index " + std::to_string(ell) +
                          " out of range [1, " + std::to_string(ball.size()) +
                          "] around vertex " + std::to_string(v));
  return ball[ell - 1];
}

bool Graph::is_triangle_free() const {
  // For each edge u<v, intersect the sorted lists of larger neighbors.
  for (Vertex u = 0; u < n_; ++u) {
    auto nu = neighbors(u);
    for (Vertex v : nu) {
      if (v <= u) continue;
      auto nv = neighbors(v);
      auto a = nu.begin();
      auto b = nv.begin();
      while (a != nu.end() && b != nv.end()) {
        if (*a == *b) {
          if (*a > v) return false;  // triangle u<v<*a
          ++a;
          ++b;
        } else if (*a < *b) {
          ++a;
        } else {
          ++b;
        }
      }
    }
  }
  return true;
}

namespace {

// Is there a clique of size `want` inside `candidates` (all adjacent to the
// current partial clique)?  Candidates are sorted; classic extension search.
bool has_clique(const Graph& g, std::vector<Vertex>& candidates, int want) {
  if (want <= 0) return true;
  if (static_cast<int>(candidates.size()) < want) return false;
  for (std::size_t i = 0; i + want <= candidates.size(); ++i) {
    Vertex u = candidates[i];
    std::vector<Vertex> next;
    auto nu = g.neighbors(u);
    // next = candidates[i+1..] ∩ N(u)
    std::set_intersection(candidates.begin() + i + 1, candidates.end(),
                          nu.begin(), nu.end(), std::back_inserter(next));
    if (has_clique(g, next, want - 1)) return true;
  }
  return false;
}

}  // namespace

bool Graph::clique_number_at_most(int k) const {
  if (k < 0) return n_ == 0;
  if (k >= n_) return true;
  std::vector<Vertex> all(static_cast<std::size_t>(n_));
  for (Vertex v = 0; v < n_; ++v) all[v] = v;
  return !has_clique(*this, all, k + 1);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

}  // namespace colorfix
