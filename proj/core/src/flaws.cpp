#include "colorfix/flaws.hpp"

#include <algorithm>

#include "colorfix/errors.hpp"

namespace colorfix {

int b_radius(Variant variant) {
  return variant == Variant::kTriangleFree ? 2 : 3;
}
int z_radius(Variant variant) {
  return variant == Variant::kTriangleFree ? 3 : 2;
}

bool b_holds(const Graph& g, const ListAssignment& lists,
             const PartialColoring& sigma, Vertex v, const FlawParams& params) {
  return available_count(g, lists, sigma, v) < params.L;
}

bool z_holds_tf(const Graph& g, const ListAssignment& lists,
                const PartialColoring& sigma, Vertex v,
                const FlawParams& params) {
  ColorMask lv = available_mask(g, lists, sigma, v);
  long long sum = 0;
  for (Vertex u : g.neighbors(v)) {
    if (!sigma.is_blank(u)) continue;
    sum += available_mask(g, lists, sigma, u).intersect_count(lv);
  }
  const int lv_size = lv.count() + 1;
  return static_cast<double>(sum) > (params.L * lv_size) / 10.0;
}

bool z_holds_kr(const Graph& g, const ListAssignment& lists,
                const PartialColoring& sigma, Vertex v,
                const FlawParams& params) {
  (void)lists;
  int blanks = 0;
  for (Vertex u : g.neighbors(v))
    if (sigma.is_blank(u)) ++blanks;
  return blanks >= params.L;
}

bool flaw_holds(const Graph& g, const ListAssignment& lists,
                const PartialColoring& sigma, Flaw f, const FlawParams& params) {
  if (f.kind == FlawKind::kB) return b_holds(g, lists, sigma, f.vertex, params);
  return params.variant == Variant::kTriangleFree
             ? z_holds_tf(g, lists, sigma, f.vertex, params)
             : z_holds_kr(g, lists, sigma, f.vertex, params);
}

std::optional<Flaw> least_flaw_in_range(const Graph& g,
                                        const ListAssignment& lists,
                                        const PartialColoring& sigma, Vertex v,
                                        const FlawParams& params) {
  FlawScanner scanner(g, lists, sigma);
  return scanner.least_in_range(v, params);
}

std::vector<Flaw> all_flaws(const Graph& g, const ListAssignment& lists,
                            const PartialColoring& sigma,
                            const FlawParams& params) {
  FlawScanner scanner(g, lists, sigma);
  return scanner.all(params);
}

ScanBall make_scan_ball(const Graph& g, Vertex center, int radius) {
  ScanBall ball;
  ball.center = center;
  ball.radius = radius;
  std::vector<int> level(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<Vertex> frontier{center};
  level[center] = 0;
  ball.verts.push_back(center);
  for (int d = 0; d < radius && !frontier.empty(); ++d) {
    std::vector<Vertex> next;
    for (Vertex u : frontier)
      for (Vertex w : g.neighbors(u))
        if (level[w] < 0) {
          level[w] = d + 1;
          next.push_back(w);
          ball.verts.push_back(w);
        }
    frontier = std::move(next);
  }
  std::sort(ball.verts.begin(), ball.verts.end());
  ball.dist.resize(ball.verts.size());
  for (std::size_t i = 0; i < ball.verts.size(); ++i)
    ball.dist[i] = level[ball.verts[i]];
  return ball;
}

FlawScanner::FlawScanner(const Graph& g, const ListAssignment& lists,
                         const PartialColoring& sigma)
    : g_(g), lists_(lists), sigma_(sigma) {
  if (lists.vertex_count() != g.vertex_count() ||
      sigma.vertex_count() != g.vertex_count())
    throw InvalidArgument("graph / lists / coloring sizes disagree");
  mask_.assign(static_cast<std::size_t>(g.vertex_count()),
               ColorMask(lists.palette_size()));
  stamp_.assign(static_cast<std::size_t>(g.vertex_count()), 0);
}

const ColorMask& FlawScanner::avail_mask(Vertex v) {
  if (stamp_[v] != epoch_) {
    ColorMask& mask = mask_[v];
    mask.assign_from(lists_.list_mask(v));
    for (Vertex u : g_.neighbors(v)) {
      Color c = sigma_.color(u);
      if (c != kBlank) mask.clear(c);
    }
    stamp_[v] = epoch_;
  }
  return mask_[v];
}

long long FlawScanner::blank_pressure(Vertex v) {
  // Reordered sum: sum_{c in L_v} |T_{v,c}| == sum over blank neighbors u of
  // |(L_v \ Blank) ∩ (L_u \ Blank)| (the Blank column contributes nothing).
  // The reference stays valid across avail_mask(u) calls: mask_ never
  // reallocates and u != v.
  const ColorMask& lv = avail_mask(v);
  long long sum = 0;
  for (Vertex u : g_.neighbors(v)) {
    if (!sigma_.is_blank(u)) continue;
    sum += avail_mask(u).intersect_count(lv);
  }
  return sum;
}

int FlawScanner::blank_neighbor_count(Vertex v) const {
  int blanks = 0;
  for (Vertex u : g_.neighbors(v))
    if (sigma_.is_blank(u)) ++blanks;
  return blanks;
}

bool FlawScanner::holds(Flaw f, const FlawParams& params) {
  if (f.kind == FlawKind::kB) return avail_count(f.vertex) < params.L;
  if (params.variant == Variant::kTriangleFree) {
    const int lv_size = avail_count(f.vertex);
    return static_cast<double>(blank_pressure(f.vertex)) >
           (params.L * lv_size) / 10.0;
  }
  return blank_neighbor_count(f.vertex) >= params.L;
}

std::optional<Flaw> FlawScanner::least_in_ball(const ScanBall& ball,
                                               const FlawParams& params,
                                               std::optional<Flaw> cursor) {
  const int rb = b_radius(params.variant);
  const int rz = z_radius(params.variant);
  if (ball.radius < std::max(rb, rz))
    throw InvalidArgument("scan ball radius too small for variant");

  if (!cursor || cursor->kind == FlawKind::kB) {
    const Vertex from = cursor ? cursor->vertex : 0;
    for (std::size_t i = 0; i < ball.verts.size(); ++i) {
      if (ball.dist[i] > rb || ball.verts[i] < from) continue;
      Flaw f{FlawKind::kB, ball.verts[i]};
      if (holds(f, params)) return f;
    }
  }
  const Vertex from = (cursor && cursor->kind == FlawKind::kZ) ? cursor->vertex : 0;
  for (std::size_t i = 0; i < ball.verts.size(); ++i) {
    if (ball.dist[i] > rz || ball.verts[i] < from) continue;
    Flaw f{FlawKind::kZ, ball.verts[i]};
    if (holds(f, params)) return f;
  }
  return std::nullopt;
}

std::optional<Flaw> FlawScanner::least_in_range(Vertex center,
                                                const FlawParams& params,
                                                std::optional<Flaw> cursor) {
  const int rmax = std::max(b_radius(params.variant), z_radius(params.variant));
  return least_in_ball(make_scan_ball(g_, center, rmax), params, cursor);
}

std::vector<Flaw> FlawScanner::all(const FlawParams& params) {
  std::vector<Flaw> out;
  for (Vertex v = 0; v < g_.vertex_count(); ++v)
    if (holds({FlawKind::kB, v}, params)) out.push_back({FlawKind::kB, v});
  for (Vertex v = 0; v < g_.vertex_count(); ++v)
    if (holds({FlawKind::kZ, v}, params)) out.push_back({FlawKind::kZ, v});
  return out;
}

}  // namespace colorfix
