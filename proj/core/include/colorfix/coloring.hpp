#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "colorfix/graph.hpp"

namespace colorfix {

// Colors are dense ids 0..palette_size-1.  Blank is a reserved sentinel
// outside the id space: it means "uncolored", is always available to every
// vertex, and never conflicts across an edge.
using Color = std::int32_t;
inline constexpr Color kBlank = -1;

// Canonical color order used by every enumeration and every uniform draw in
// this library: real colors ascending by id, Blank last.

// Fixed-width bitset over the palette; words of 64.
class ColorMask {
 public:
  ColorMask() = default;
  explicit ColorMask(int palette_size)
      : bits_(static_cast<std::size_t>((palette_size + 63) / 64), 0) {}

  void set(Color c) { bits_[c >> 6] |= 1ull << (c & 63); }
  void clear(Color c) { bits_[c >> 6] &= ~(1ull << (c & 63)); }
  bool test(Color c) const { return (bits_[c >> 6] >> (c & 63)) & 1; }
  int count() const;
  int intersect_count(const ColorMask& other) const;
  Color nth(int k) const;  // k-th set color, 0-based; requires k < count()
  void assign_from(const ColorMask& other) { bits_ = other.bits_; }
  std::vector<Color> to_sorted_colors() const;
  bool operator==(const ColorMask&) const = default;

 private:
  std::vector<std::uint64_t> bits_;
};

// Per-vertex color lists C_v (Blank is implicit and excluded from storage).
// Lists are sorted ascending and duplicate-free.  `declared_q` records the
// nominal list size from the run configuration; actual lists may differ when
// loaded from a file.
class ListAssignment {
 public:
  // Every vertex gets an independently drawn uniform q-subset of
  // {0, ..., palette_size-1}.  palette_size == q yields identical lists
  // (ordinary q-coloring).
  static ListAssignment uniform_random(const Graph& g, int q, int palette_size,
                                       std::uint64_t seed);

  // Explicit lists (color ids already dense).  `names` maps dense id ->
  // external name when lists came from a file with string colors.
  static ListAssignment from_lists(std::vector<std::vector<Color>> lists,
                                   int palette_size,
                                   std::vector<std::string> names = {},
                                   int declared_q = 0);

  Vertex vertex_count() const { return static_cast<Vertex>(lists_.size()); }
  int palette_size() const { return palette_size_; }
  int declared_q() const { return declared_q_; }

  std::span<const Color> list(Vertex v) const { return lists_[v]; }
  const ColorMask& list_mask(Vertex v) const { return masks_[v]; }
  bool vertex_has_color(Vertex v, Color c) const {
    return c != kBlank && masks_[v].test(c);
  }

  // External name of a dense color id ("ids are their own names" by default).
  std::string color_name(Color c) const;
  const std::vector<std::string>& color_names() const { return names_; }

 private:
  std::vector<std::vector<Color>> lists_;
  std::vector<ColorMask> masks_;
  std::vector<std::string> names_;
  int palette_size_ = 0;
  int declared_q_ = 0;
};

// Mutable partial coloring; every vertex starts Blank.
class PartialColoring {
 public:
  PartialColoring() = default;
  explicit PartialColoring(Vertex n)
      : color_(static_cast<std::size_t>(n), kBlank) {}

  Vertex vertex_count() const { return static_cast<Vertex>(color_.size()); }
  Color color(Vertex v) const { return color_[v]; }
  bool is_blank(Vertex v) const { return color_[v] == kBlank; }
  void set(Vertex v, Color c) { color_[v] = c; }

  const std::vector<Color>& data() const { return color_; }
  void restore(const std::vector<Color>& snapshot) { color_ = snapshot; }

  bool operator==(const PartialColoring&) const = default;

 private:
  std::vector<Color> color_;
};

// All-Blank starting point of every run.
PartialColoring init_blank(const Graph& g, const ListAssignment& lists);

// L_v: colors of C_v not appearing on N_v, plus Blank.  Depends only on the
// colors of N_v.  Returned in canonical order (ascending, Blank last).
std::vector<Color> available_list(const Graph& g, const ListAssignment& lists,
                                  const PartialColoring& sigma, Vertex v);

// |L_v| without materializing the list (includes the Blank slot).
int available_count(const Graph& g, const ListAssignment& lists,
                    const PartialColoring& sigma, Vertex v);

// Mask of L_v minus Blank (all real colors of C_v not on N_v).
ColorMask available_mask(const Graph& g, const ListAssignment& lists,
                         const PartialColoring& sigma, Vertex v);

// T_{v,c}: Blank neighbors u of v with c in L_u; empty for c == Blank.
// Sorted ascending.
std::vector<Vertex> t_set(const Graph& g, const ListAssignment& lists,
                          const PartialColoring& sigma, Vertex v, Color c);

// L*_u for u in N_v: colors of C_u not appearing on any neighbor of u outside
// N_v, plus Blank.  (v itself lies outside N_v, so v's color counts.)
std::vector<Color> external_list(const Graph& g, const ListAssignment& lists,
                                 const PartialColoring& sigma, Vertex v,
                                 Vertex u);
ColorMask external_mask(const Graph& g, const ListAssignment& lists,
                        const PartialColoring& sigma, Vertex v, Vertex u);

// Full proper list coloring: no Blank vertex, every color from its list, no
// monochromatic edge.  `why` (optional) receives a human-readable reason for
// the first violation found.
bool is_proper_full(const Graph& g, const ListAssignment& lists,
                    const PartialColoring& sigma, std::string* why = nullptr);

// Partial validity: colored vertices use list colors and no edge joins two
// equal non-Blank colors.  The resampling loop maintains this as an
// invariant; tests and the verifier call it directly.
bool is_proper_partial(const Graph& g, const ListAssignment& lists,
                       const PartialColoring& sigma, std::string* why = nullptr);

}  // namespace colorfix
