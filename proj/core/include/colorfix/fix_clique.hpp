#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "colorfix/coloring.hpp"
#include "colorfix/fix_triangle.hpp"
#include "colorfix/flaws.hpp"
#include "colorfix/graph.hpp"
#include "colorfix/rng.hpp"

namespace colorfix {

// ---------------------------------------------------------------------------
// Clique-variant neighborhood colorings.
//
// For the clique-bounded variant a redraw of N_v replaces sigma on N_v by a
// uniform member of the valid neighborhood colorings: chi(u) is Blank or a
// color from u's outside-available list (candidate colors of u minus colors
// worn by neighbors of u outside N_v), and every non-Blank color class of chi
// is independent inside N_v.  A Pca is one such chi, indexed like nl.members.
// ---------------------------------------------------------------------------
using Pca = std::vector<Color>;

// Validity under nl: entries in their domains, classes independent.
bool pca_valid(const NeighborhoodLists& nl, const Pca& chi);

// All valid colorings in canonical enumeration order (members ascending as
// mixed-radix digits, domains in canonical order).  Throws BudgetExceeded
// when the product domain size exceeds `budget`.
std::vector<Pca> enumerate_pca(const NeighborhoodLists& nl, long long budget);

long long count_pca(const NeighborhoodLists& nl, long long budget);

// Exact uniform draw.  Tries product draws with rejection first (each
// attempt draws from the product measure and keeps valid outcomes, which
// restricted to valid outcomes is uniform); after `rejection_attempts`
// misses it falls back to counting and unranking, still exact.
Pca sample_pca_uniform(const NeighborhoodLists& nl, Rng& rng, long long budget,
                       int rejection_attempts = 64);

// Replaces color class i of chi by a uniformly random independent subset of
// Q_i = {u : i in domain(u), chi(u) in {i, Blank}}; members of Q_i left out
// of the new class become Blank, everything else keeps its color.  The empty
// subset counts.  Budget bounds 2^|Q_i|.
Pca resample_color_class(const NeighborhoodLists& nl, const Pca& chi, Color i,
                         Rng& rng, long long budget);

// Deterministic extension: give every listed blank position (ascending) the
// least non-Blank domain color admissible against the evolving chi; nullopt
// when some position has no admissible color.
std::optional<Pca> extend_blank_assignment(const NeighborhoodLists& nl, Pca chi,
                                           const std::vector<int>& blank_positions);

// Every way to make the listed positions non-Blank while staying valid.
std::vector<Pca> enumerate_blank_extensions(const NeighborhoodLists& nl,
                                            const Pca& chi,
                                            const std::vector<int>& blank_positions,
                                            long long budget);

// Non-Blank domain colors of member i not worn by any chi-neighbor (via
// member_edges); the choice count the extension argument counts down from.
int member_available_count(const NeighborhoodLists& nl, const Pca& chi, int i);

// ---------------------------------------------------------------------------
// The clique-variant repair call: same recursion skeleton as fix(), but a
// redraw replaces sigma on N_v by a uniform valid neighborhood coloring, and
// (with check_observations) every Z call asserts on entry that no neighbor
// of its vertex has a deficient list.  params.flaw.variant must be
// kCliqueFree.
// ---------------------------------------------------------------------------
void fix2(const Graph& g, const ListAssignment& lists, PartialColoring& sigma,
          Flaw f, const FixParams& params, Rng& rng, RunStats* stats = nullptr,
          Transcript* transcript = nullptr);

// Whole-run driver for the clique variant: repair all flaws, then finish
// greedily, falling back to the resampling finisher when greedy gets stuck.
PipelineResult run_pipeline_kr(const Graph& g, const ListAssignment& lists,
                               const FixParams& params);

}  // namespace colorfix
