#include "colorfix/completion.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>
#include <utility>

#include "colorfix/errors.hpp"

namespace colorfix {

namespace {

void require_flaw_free(const Graph& g, const ListAssignment& lists,
                       const PartialColoring& sigma, const FlawParams& params,
                       const char* who) {
  std::string why;
  if (!is_proper_partial(g, lists, sigma, &why)) {
    throw CompletionError(CompletionError::Kind::kPreconditionViolated, -1,
                          std::string(who) + ": coloring is not proper: " + why);
  }
  const std::vector<Flaw> flaws = all_flaws(g, lists, sigma, params);
  if (!flaws.empty()) {
    throw CompletionError(CompletionError::Kind::kPreconditionViolated,
                          flaws.front().vertex,
                          std::string(who) + ": coloring still has flaws");
  }
}

}  // namespace

CompletionOutcome moser_tardos_complete(const Graph& g, const ListAssignment& lists,
                                        PartialColoring& sigma,
                                        const FlawParams& params, Rng& rng,
                                        long long iteration_cap) {
  require_flaw_free(g, lists, sigma, params, "moser_tardos_complete");
  const Vertex n = g.vertex_count();
  std::vector<Vertex> blanks;
  std::vector<char> is_blank_entry(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (sigma.is_blank(v)) {
      blanks.push_back(v);
      is_blank_entry[v] = 1;
    }
  }
  CompletionOutcome out;
  out.blank_at_entry = static_cast<long long>(blanks.size());

  // Frozen lists: entry availability minus Blank.  Colored vertices never
  // move and frozen lists exclude their colors, so every conflict that can
  // ever arise sits on an edge between two entry-blank vertices.
  std::vector<std::vector<Color>> frozen(n);
  for (Vertex v : blanks) {
    std::vector<Color> d = available_list(g, lists, sigma, v);
    d.pop_back();  // canonical order puts Blank last
    if (d.empty()) {
      throw CompletionError(CompletionError::Kind::kIterationCapExceeded, v,
                            "moser_tardos_complete: vertex has an empty frozen list "
                            "(instance outside the completion regime)");
    }
    frozen[v] = std::move(d);
  }
  for (Vertex v : blanks) {
    sigma.set(v, frozen[v][rng.below(frozen[v].size())]);
  }

  std::set<std::pair<Vertex, Vertex>> conflicts;
  auto refresh_around = [&](Vertex x) {
    for (Vertex y : g.neighbors(x)) {
      if (!is_blank_entry[y]) continue;
      const auto key = std::minmax(x, y);
      if (sigma.color(x) == sigma.color(y)) {
        conflicts.insert(key);
      } else {
        conflicts.erase(key);
      }
    }
  };
  for (Vertex v : blanks) {
    for (Vertex w : g.neighbors(v)) {
      if (w > v && is_blank_entry[w] && sigma.color(v) == sigma.color(w)) {
        conflicts.emplace(v, w);
      }
    }
  }

  const long long cap =
      iteration_cap > 0 ? iteration_cap : 100ll * static_cast<long long>(blanks.size());
  while (!conflicts.empty()) {
    const auto [u, w] = *conflicts.begin();  // least conflict: (min, max) endpoint order
    if (out.resample_rounds >= cap) {
      throw CompletionError(CompletionError::Kind::kIterationCapExceeded, u,
                            "moser_tardos_complete: redraw cap exceeded");
    }
    sigma.set(u, frozen[u][rng.below(frozen[u].size())]);
    sigma.set(w, frozen[w][rng.below(frozen[w].size())]);
    ++out.resample_rounds;
    refresh_around(u);
    refresh_around(w);
  }

  std::string why;
  if (!is_proper_full(g, lists, sigma, &why)) {
    throw Error("moser_tardos_complete produced an invalid coloring: " + why);
  }
  return out;
}

CompletionOutcome greedy_complete(const Graph& g, const ListAssignment& lists,
                                  PartialColoring& sigma,
                                  const FlawParams& params) {
  require_flaw_free(g, lists, sigma, params, "greedy_complete");
  CompletionOutcome out;
  const Vertex n = g.vertex_count();
  for (Vertex v = 0; v < n; ++v) {
    if (!sigma.is_blank(v)) continue;
    ++out.blank_at_entry;
    const std::vector<Color> d = available_list(g, lists, sigma, v);
    if (d.size() <= 1) {  // nothing but Blank left
      throw CompletionError(CompletionError::Kind::kGreedyStuck, v,
                            "greedy_complete: no color available for vertex " +
                                std::to_string(v));
    }
    sigma.set(v, d.front());  // least available color
  }
  std::string why;
  if (!is_proper_full(g, lists, sigma, &why)) {
    throw Error("greedy_complete produced an invalid coloring: " + why);
  }
  return out;
}

LocalLemmaReport local_lemma_diagnostic(const Graph& g, const ListAssignment& lists,
                                        const PartialColoring& sigma,
                                        const FlawParams& params) {
  const Vertex n = g.vertex_count();
  std::vector<char> blank(n, 0);
  std::vector<ColorMask> fmask(n);
  std::vector<int> fsize(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (!sigma.is_blank(v)) continue;
    blank[v] = 1;
    fmask[v] = available_mask(g, lists, sigma, v);  // non-Blank part only
    fsize[v] = fmask[v].count();
  }

  // Per-vertex mass: sum over incident events of their probability.
  std::vector<double> vertex_mass(n, 0.0);
  bool empty_list = false;
  LocalLemmaReport rep;
  for (Vertex v = 0; v < n; ++v) {
    if (!blank[v]) continue;
    if (fsize[v] == 0) empty_list = true;
    for (Vertex w : g.neighbors(v)) {
      if (!blank[w]) continue;
      const int common = fmask[v].intersect_count(fmask[w]);
      if (v < w) rep.event_count += common;
      if (fsize[v] == 0 || fsize[w] == 0) continue;
      vertex_mass[v] += static_cast<double>(common) /
                        (static_cast<double>(fsize[v]) * static_cast<double>(fsize[w]));
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!blank[v]) continue;
    for (Vertex w : g.neighbors(v)) {
      if (!blank[w] || w < v) continue;
      const int common = fmask[v].intersect_count(fmask[w]);
      if (common == 0) continue;
      if (fsize[v] == 0 || fsize[w] == 0) continue;
      const double fu = static_cast<double>(fsize[v]);
      const double fv = static_cast<double>(fsize[w]);
      const double edge_mass = static_cast<double>(common) / (fu * fv);
      // Events at either endpoint; the edge's own events sit at both, so
      // subtract one copy.
      const double mass = vertex_mass[v] + vertex_mass[w] - edge_mass;
      rep.max_dependency_mass = std::max(rep.max_dependency_mass, mass);
      const double bound = params.L * ((fu + 1.0) + (fv + 1.0)) / 10.0 / (fu * fv);
      rep.max_formula_bound = std::max(rep.max_formula_bound, bound);
    }
  }
  if (empty_list) {
    rep.max_dependency_mass = std::numeric_limits<double>::infinity();
  }
  rep.condition_holds = rep.max_dependency_mass < 0.25;
  return rep;
}

}  // namespace colorfix
