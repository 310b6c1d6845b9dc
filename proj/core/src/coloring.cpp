#include "colorfix/coloring.hpp"

#include <algorithm>
#include <bit>

#include "colorfix/errors.hpp"
#include "colorfix/rng.hpp"

namespace colorfix {

int ColorMask::count() const {
  int total = 0;
  for (std::uint64_t w : bits_) total += std::popcount(w);
  return total;
}

int ColorMask::intersect_count(const ColorMask& other) const {
  int total = 0;
  const std::size_t words = std::min(bits_.size(), other.bits_.size());
  for (std::size_t i = 0; i < words; ++i)
    total += std::popcount(bits_[i] & other.bits_[i]);
  return total;
}

Color ColorMask::nth(int k) const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    std::uint64_t w = bits_[i];
    const int pop = std::popcount(w);
    if (k >= pop) {
      k -= pop;
      continue;
    }
    while (k > 0) {
      w &= w - 1;
      --k;
    }
    return static_cast<Color>(i * 64 + std::countr_zero(w));
  }
  throw InvalidArgument("ColorMask::nth index out of range");
}

std::vector<Color> ColorMask::to_sorted_colors() const {
  std::vector<Color> out;
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t word = bits_[w];
    while (word) {
      int b = std::countr_zero(word);
      out.push_back(static_cast<Color>(w * 64 + b));
      word &= word - 1;
    }
  }
  return out;
}

ListAssignment ListAssignment::uniform_random(const Graph& g, int q,
                                              int palette_size,
                                              std::uint64_t seed) {
  if (q < 0 || palette_size < q)
    throw InvalidArgument("uniform lists need 0 <= q <= palette_size");
  Rng rng(Rng::derive(seed, "lists"));
  std::vector<std::vector<Color>> lists(static_cast<std::size_t>(g.vertex_count()));
  std::vector<Color> palette(static_cast<std::size_t>(palette_size));
  for (int c = 0; c < palette_size; ++c) palette[c] = c;
  for (auto& list : lists) {
    // Partial Fisher-Yates: first q entries become a uniform q-subset.
    for (int i = 0; i < q; ++i) {
      std::size_t j = i + rng.below(static_cast<std::uint64_t>(palette_size - i));
      std::swap(palette[i], palette[j]);
    }
    list.assign(palette.begin(), palette.begin() + q);
    std::sort(list.begin(), list.end());
  }
  return from_lists(std::move(lists), palette_size, {}, q);
}

ListAssignment ListAssignment::from_lists(std::vector<std::vector<Color>> lists,
                                          int palette_size,
                                          std::vector<std::string> names,
                                          int declared_q) {
  ListAssignment out;
  out.palette_size_ = palette_size;
  out.declared_q_ = declared_q;
  out.names_ = std::move(names);
  if (!out.names_.empty() &&
      out.names_.size() != static_cast<std::size_t>(palette_size))
    throw InvalidArgument("color name table size does not match palette");
  out.masks_.reserve(lists.size());
  for (auto& list : lists) {
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end())
      throw InvalidArgument("duplicate color in a vertex list");
    ColorMask mask(palette_size);
    for (Color c : list) {
      if (c < 0 || c >= palette_size)
        throw InvalidArgument("color id " + std::to_string(c) +
                              " outside palette of size " +
                              std::to_string(palette_size));
      mask.set(c);
    }
    out.masks_.push_back(std::move(mask));
  }
  out.lists_ = std::move(lists);
  return out;
}

std::string ListAssignment::color_name(Color c) const {
  if (c == kBlank) return "blank";
  if (!names_.empty()) return names_[static_cast<std::size_t>(c)];
  return std::to_string(c);
}

PartialColoring init_blank(const Graph& g, const ListAssignment& lists) {
  if (lists.vertex_count() != g.vertex_count())
    throw InvalidArgument("list assignment does not cover the graph");
  return PartialColoring(g.vertex_count());
}

ColorMask available_mask(const Graph& g, const ListAssignment& lists,
                         const PartialColoring& sigma, Vertex v) {
  ColorMask mask(lists.palette_size());
  mask.assign_from(lists.list_mask(v));
  for (Vertex u : g.neighbors(v)) {
    Color c = sigma.color(u);
    if (c != kBlank) mask.clear(c);
  }
  return mask;
}

std::vector<Color> available_list(const Graph& g, const ListAssignment& lists,
                                  const PartialColoring& sigma, Vertex v) {
  auto out = available_mask(g, lists, sigma, v).to_sorted_colors();
  out.push_back(kBlank);
  return out;
}

int available_count(const Graph& g, const ListAssignment& lists,
                    const PartialColoring& sigma, Vertex v) {
  return available_mask(g, lists, sigma, v).count() + 1;
}

std::vector<Vertex> t_set(const Graph& g, const ListAssignment& lists,
                          const PartialColoring& sigma, Vertex v, Color c) {
  std::vector<Vertex> out;
  if (c == kBlank) return out;  // T_{v,Blank} is empty by definition
  if (c < 0 || c >= lists.palette_size())
    throw InvalidArgument("t_set: color id out of range");
  for (Vertex u : g.neighbors(v)) {
    if (!sigma.is_blank(u)) continue;
    // c in L_u  <=>  c in C_u and no neighbor of u wears c
    if (!lists.vertex_has_color(u, c)) continue;
    bool blocked = false;
    for (Vertex w : g.neighbors(u)) {
      if (sigma.color(w) == c) {
        blocked = true;
        break;
      }
    }
    if (!blocked) out.push_back(u);
  }
  return out;
}

ColorMask external_mask(const Graph& g, const ListAssignment& lists,
                        const PartialColoring& sigma, Vertex v, Vertex u) {
  if (!g.has_edge(u, v))
    throw InvalidArgument("external_list: u must be a neighbor of v");
  ColorMask mask(lists.palette_size());
  mask.assign_from(lists.list_mask(u));
  auto nv = g.neighbors(v);
  for (Vertex w : g.neighbors(u)) {
    if (std::binary_search(nv.begin(), nv.end(), w)) continue;  // inside N_v
    Color c = sigma.color(w);
    if (c != kBlank) mask.clear(c);
  }
  return mask;
}

std::vector<Color> external_list(const Graph& g, const ListAssignment& lists,
                                 const PartialColoring& sigma, Vertex v,
                                 Vertex u) {
  auto out = external_mask(g, lists, sigma, v, u).to_sorted_colors();
  out.push_back(kBlank);
  return out;
}

bool is_proper_partial(const Graph& g, const ListAssignment& lists,
                       const PartialColoring& sigma, std::string* why) {
  if (sigma.vertex_count() != g.vertex_count() ||
      lists.vertex_count() != g.vertex_count())
    throw InvalidArgument("graph / lists / coloring sizes disagree");
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    Color c = sigma.color(v);
    if (c == kBlank) continue;
    if (!lists.vertex_has_color(v, c)) {
      if (why)
        *why = "vertex " + std::to_string(v) + " wears color " +
               lists.color_name(c) + " which is not in its list";
      return false;
    }
    for (Vertex u : g.neighbors(v)) {
      if (u > v && sigma.color(u) == c) {
        if (why)
          *why = "edge (" + std::to_string(v) + ", " + std::to_string(u) +
                 ") is monochromatic in color " + lists.color_name(c);
        return false;
      }
    }
  }
  return true;
}

bool is_proper_full(const Graph& g, const ListAssignment& lists,
                    const PartialColoring& sigma, std::string* why) {
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (sigma.is_blank(v)) {
      if (why) *why = "vertex " + std::to_string(v) + " is blank";
      return false;
    }
  }
  return is_proper_partial(g, lists, sigma, why);
}

}  // namespace colorfix
