#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "colorfix/coloring.hpp"
#include "colorfix/graph.hpp"

namespace colorfix {

// The two local defect kinds the resampling loop repairs:
//   B_v: the available list of v has shrunk below L        (|L_v| < L)
//   Z_v: too much "blank pressure" around v                 (variant-specific)
enum class FlawKind : std::uint8_t { kB = 0, kZ = 1 };

enum class Variant : std::uint8_t {
  kTriangleFree,  // single-vertex uniform redraws, radii B<=2 / Z<=3
  kCliqueFree,    // whole-neighborhood redraws,    radii B<=3 / Z<=2
};

// Total order on flaws: every B precedes every Z; ties break by vertex label
// ascending.  The default <=> on (kind, vertex) implements exactly that.
struct Flaw {
  FlawKind kind;
  Vertex vertex;
  auto operator<=>(const Flaw&) const = default;
};

struct FlawParams {
  Variant variant = Variant::kTriangleFree;
  // The threshold L is a real parameter (the defaults are fractional powers
  // of the max degree), compared against integer counts:
  //   B_v  holds iff  |L_v| < L                      (strict)
  //   Z_v (triangle-free) iff  sum_{c in L_v} |T_{v,c}| > (L * |L_v|) / 10
  //                                                   (strict; Blank term 0)
  //   Z_v (clique-free)   iff  #blank neighbors >= L  (non-strict)
  double L = 0.0;
  double epsilon = 0.0;  // informational (used by parameter resolution)
  int r = 0;             // clique-free order bound; informational here
};

// Scan radius (distance from the vertex being repaired) for each flaw kind.
int b_radius(Variant variant);
int z_radius(Variant variant);

bool b_holds(const Graph& g, const ListAssignment& lists,
             const PartialColoring& sigma, Vertex v, const FlawParams& params);
bool z_holds_tf(const Graph& g, const ListAssignment& lists,
                const PartialColoring& sigma, Vertex v, const FlawParams& params);
bool z_holds_kr(const Graph& g, const ListAssignment& lists,
                const PartialColoring& sigma, Vertex v, const FlawParams& params);
bool flaw_holds(const Graph& g, const ListAssignment& lists,
                const PartialColoring& sigma, Flaw f, const FlawParams& params);

// Least holding flaw (in the order above) among B_w with dist(w,v) <=
// b_radius and Z_w with dist(w,v) <= z_radius; nullopt if none holds.
std::optional<Flaw> least_flaw_in_range(const Graph& g,
                                        const ListAssignment& lists,
                                        const PartialColoring& sigma, Vertex v,
                                        const FlawParams& params);

// Every holding flaw in the whole graph, sorted (all B ascending, then all Z).
std::vector<Flaw> all_flaws(const Graph& g, const ListAssignment& lists,
                            const PartialColoring& sigma,
                            const FlawParams& params);

// Ball of radius `radius` around `center`: vertices sorted ascending with the
// matching distances.  Doubles as the canonical N^3 naming when radius == 3
// (verts[ell-1] == omega(center, ell)).
struct ScanBall {
  Vertex center = 0;
  int radius = 0;
  std::vector<Vertex> verts;  // sorted ascending, includes center
  std::vector<int> dist;      // parallel to verts
};

ScanBall make_scan_ball(const Graph& g, Vertex center, int radius);

// Scan workspace bound to one (graph, lists, coloring) triple.
//
// Availability masks are recomputed per scan epoch rather than per query:
// callers bump the epoch (invalidate()) after every batch of recolorings, so
// a single scan over a radius-3 ball computes each L_u once instead of
// deg(u) times.  Results are bit-identical to the stateless functions above;
// the engines cross-check that in paranoid mode.
class FlawScanner {
 public:
  FlawScanner(const Graph& g, const ListAssignment& lists,
              const PartialColoring& sigma);

  // Invalidate all cached masks (O(1)); call after recoloring any vertex.
  void invalidate() { ++epoch_; }

  const ColorMask& avail_mask(Vertex v);
  int avail_count(Vertex v) { return avail_mask(v).count() + 1; }
  long long blank_pressure(Vertex v);  // sum_{c in L_v} |T_{v,c}|
  int blank_neighbor_count(Vertex v) const;

  bool holds(Flaw f, const FlawParams& params);

  // Least holding flaw with dist(w, center) <= b_radius for B_w / z_radius
  // for Z_w.  With `cursor` set, candidates strictly below it are skipped
  // (the caller guarantees they cannot hold; see the engine's monotonicity
  // argument).  The ball must have radius >= max(b_radius, z_radius).
  std::optional<Flaw> least_in_ball(const ScanBall& ball,
                                    const FlawParams& params,
                                    std::optional<Flaw> cursor = std::nullopt);
  std::optional<Flaw> least_in_range(Vertex center, const FlawParams& params,
                                     std::optional<Flaw> cursor = std::nullopt);

  std::vector<Flaw> all(const FlawParams& params);

 private:
  const Graph& g_;
  const ListAssignment& lists_;
  const PartialColoring& sigma_;
  std::vector<ColorMask> mask_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 1;
};

}  // namespace colorfix
