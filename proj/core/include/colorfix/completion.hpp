#pragma once

#include <cstdint>
#include <vector>

#include "colorfix/coloring.hpp"
#include "colorfix/flaws.hpp"
#include "colorfix/graph.hpp"
#include "colorfix/rng.hpp"

namespace colorfix {

struct CompletionOutcome {
  long long blank_at_entry = 0;
  long long resample_rounds = 0;  // conflict-driven redraws (Moser-Tardos only)
};

// Finishes a flaw-free partial coloring by the resample-until-proper scheme:
// freeze each blank vertex's non-Blank available list, draw every blank
// vertex uniformly from its frozen list, then repeatedly pick the least
// conflicting blank-blank edge (ordered by min endpoint, then max endpoint)
// and redraw both endpoints.  Colored vertices never move, and frozen lists
// exclude their colors, so only blank-blank edges can ever conflict.
//
// Preconditions: sigma is proper and flaw-free under `params` (checked;
// violations throw CompletionError with kPreconditionViolated).  A blank
// vertex with an empty frozen list, or exceeding the redraw cap
// (iteration_cap, 0 means 100 * #blank), throws CompletionError with
// kIterationCapExceeded -- both mean the instance is outside the regime the
// scheme is designed for, not a bug.
CompletionOutcome moser_tardos_complete(const Graph& g, const ListAssignment& lists,
                                        PartialColoring& sigma,
                                        const FlawParams& params, Rng& rng,
                                        long long iteration_cap = 0);

// Deterministic finisher: visit blank vertices in ascending label order and
// give each the least color available under the evolving coloring.  Throws
// CompletionError with kGreedyStuck (vertex attached) when some vertex has
// nothing left but Blank.  Same flaw-free precondition as above.
CompletionOutcome greedy_complete(const Graph& g, const ListAssignment& lists,
                                  PartialColoring& sigma,
                                  const FlawParams& params);

// Diagnostic for the resampling finisher: enumerate the conflict events
// A_{uv,c} (u,v adjacent blanks, c in both frozen lists; Pr = 1/(|F_u||F_v|))
// and report the worst dependency-neighborhood probability mass, where two
// events depend on each other iff they share an endpoint.  The scheme's
// guarantee wants that mass below 1/4; `formula_bound` is the closed-form
// cap (L/10)(|L_u|+|L_v|) / ((|L_u|-1)(|L_v|-1)) evaluated per event.
struct LocalLemmaReport {
  long long event_count = 0;
  double max_dependency_mass = 0.0;  // max over events of sum of Pr over its dependency set (self included)
  double max_formula_bound = 0.0;
  bool condition_holds = false;  // max_dependency_mass < 1/4
};

LocalLemmaReport local_lemma_diagnostic(const Graph& g, const ListAssignment& lists,
                                        const PartialColoring& sigma,
                                        const FlawParams& params);

}  // namespace colorfix
