#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "colorfix/coloring.hpp"
#include "colorfix/flaws.hpp"
#include "colorfix/graph.hpp"
#include "colorfix/rng.hpp"
#include "colorfix/transcript.hpp"

namespace colorfix {

// Knobs for a repair run.  `flaw` carries the variant and the threshold L;
// everything else controls budgets, logging, and self-checking.
struct FixParams {
  FlawParams flaw;

  std::uint64_t seed = 0;

  // Redraw cap per top-level call; 0 means 2 * vertex_count.
  long long max_executions = 0;

  // How many fresh-seed retries the pipeline grants a top-level call that
  // hits the redraw cap before giving up.
  int retry_budget = 3;

  TranscriptMode transcript_mode = TranscriptMode::kRaw;

  // Enumeration ceiling for compressed transcripts and for exhaustive
  // neighborhood enumeration fallbacks (product-space size).
  long long enumeration_budget = 1ll << 22;

  // Verify the call-tree postconditions at runtime: a call erases its own
  // flaw and introduces no flaw that was absent at its entry.  Also enables
  // the clique-variant entry assertions on Z calls.
  bool check_observations = true;

  // Cross-check every cursor-resumed flaw scan against a from-scratch scan
  // and every incremental availability mask against a fresh computation.
  // Slow; meant for tests.
  bool paranoid = false;

  // Optional hook for tests: every redraw appends (flaw, pre-redraw coloring).
  struct TraceEntry {
    Flaw flaw{FlawKind::kB, 0};
    std::vector<Color> before;
  };
  std::vector<TraceEntry>* debug_trace = nullptr;
};

// Counters reported by fix()/run_pipeline().
struct RunStats {
  long long top_level_calls = 0;
  long long total_calls = 0;  // frames entered, including recursion
  long long b_calls = 0;
  long long z_calls = 0;
  long long executions = 0;            // redraws across all calls
  long long max_call_executions = 0;   // redraws of the heaviest top-level call
  long long retries = 0;               // cap-triggered top-level restarts
  long long initial_flaws = 0;
  double lambda_log2 = 0.0;            // sum over redraws of log2(product list size)
  long long transcript_bits = 0;       // filled when a transcript is kept
  long long postcondition_checks = 0;  // calls whose exit checks ran
  long long completion_resamples = 0;  // conflict redraw rounds in completion
  bool used_greedy = false;
  bool used_moser_tardos = false;
  bool greedy_fell_back = false;
};

// Redraws the neighborhood of v: every u in N_v gets an independent uniform
// color from its current available list (computed before any of the redraws;
// with an independent N_v the sequential draws match the simultaneous ones,
// and the guard rejects dependent neighborhoods).  Equivalent to one uniform
// draw over {1..Lambda}, Lambda = product of the list sizes, via mixed-radix
// decomposition.  Returns log2(Lambda).
double recolor_neighborhood(const Graph& g, const ListAssignment& lists,
                            PartialColoring& sigma, Vertex v, Rng& rng);

// Repairs flaw f by recursive neighborhood resampling.  Throws
// ExecutionCapExceeded when the per-call redraw budget runs out (sigma is
// left in its partially repaired state).  Throws InvalidArgument when f does
// not hold under sigma.  Appends one CallSegment when transcript != nullptr
// and the mode is not kOff.
void fix(const Graph& g, const ListAssignment& lists, PartialColoring& sigma,
         Flaw f, const FixParams& params, Rng& rng, RunStats* stats = nullptr,
         Transcript* transcript = nullptr);

// Whole-run driver: start from the all-blank coloring, repair every flaw
// (retrying capped calls with derived seeds), then run the completion phase
// and verify the final coloring is proper and blank-free.
struct PipelineResult {
  PartialColoring flaw_free;  // state after the repair phase
  PartialColoring coloring;   // state after completion
  RunStats stats;
  Transcript transcript;  // empty when transcript_mode == kOff
};

enum class CompletionMethod : std::uint8_t {
  kNone,
  kMoserTardos,
  kGreedy,
  kGreedyThenMoserTardos,  // greedy, retried with the resampler if it jams
};

CompletionMethod completion_method_from_string(const std::string& s);
std::string to_string(CompletionMethod m);

PipelineResult run_pipeline(const Graph& g, const ListAssignment& lists,
                            const FixParams& params,
                            CompletionMethod completion = CompletionMethod::kMoserTardos);

// ---------------------------------------------------------------------------
// Canonical neighborhood enumeration (compressed transcripts + local stats).
//
// The local experiment at a vertex v is described by the sorted members of
// N_v, one color domain per member (available list for the triangle-free
// variant, outside-available list for the clique variant; each domain in
// canonical order: colors ascending, Blank last), the candidate colors C_v,
// and -- for the clique variant -- the edges inside N_v, since there a valid
// neighborhood coloring must keep every non-Blank color class independent.
// ---------------------------------------------------------------------------
struct NeighborhoodLists {
  Variant variant = Variant::kTriangleFree;
  std::vector<Vertex> members;               // N_v, ascending
  std::vector<std::vector<Color>> domains;   // per member, canonical order
  std::vector<Color> cv;                     // candidate colors, ascending
  std::vector<std::pair<int, int>> member_edges;  // indices into members
};

NeighborhoodLists gather_neighborhood_lists(const Graph& g,
                                            const ListAssignment& lists,
                                            const PartialColoring& sigma,
                                            Vertex v, Variant variant);

// Enumeration order over neighborhood colorings: members ascending form
// mixed-radix digits, most significant first, each digit running through its
// domain in canonical order.  "Flawed" members are those whose induced
// |L_v| < L or whose blank structure violates the Z threshold (variant
// rules); for the clique variant only valid (independent) colorings count.
// All three throw BudgetExceeded when the product domain size exceeds
// `budget`, and TranscriptError on rank/coloring lookups that miss.
long long count_flawed_colorings(const NeighborhoodLists& nl,
                                 const FlawParams& params, long long budget);
long long flawed_colouring_rank(const NeighborhoodLists& nl,
                                const std::vector<Color>& chi,
                                const FlawParams& params, long long budget);
std::vector<Color> flawed_colouring_unrank(const NeighborhoodLists& nl,
                                           long long index,
                                           const FlawParams& params,
                                           long long budget);

// ---------------------------------------------------------------------------
// Reconstruction: replay a transcript backwards.
// ---------------------------------------------------------------------------
struct CallReconstruction {
  Flaw root{FlawKind::kB, 0};
  std::vector<Flaw> flaw_sequence;                // redraw i repaired flaw_sequence[i]
  std::vector<std::vector<Color>> colorings;      // t+1 entries: before redraw 1 .. after redraw t
};

// Rebuilds every intermediate coloring of one call segment from the coloring
// at its end.  Validates structure (balanced frames, omega indices in range)
// and semantics (each recorded flaw held before its redraw); violations
// throw TranscriptError.
CallReconstruction reconstruct_call(const Graph& g, const ListAssignment& lists,
                                    const std::vector<Color>& sigma_end,
                                    const CallSegment& segment,
                                    const FixParams& params);

// Rebuilds a whole run from its final flaw-free coloring by chaining the
// segments backwards.  Checks that the earliest derived coloring matches
// sigma_initial.
struct RunReconstruction {
  std::vector<CallReconstruction> calls;  // in original call order
};

RunReconstruction reconstruct(const Graph& g, const ListAssignment& lists,
                              const PartialColoring& sigma_initial,
                              const Transcript& transcript,
                              const PartialColoring& sigma_final,
                              const FixParams& params);

// ---------------------------------------------------------------------------
// Entropy accounting: randomness consumed vs. log written.
// ---------------------------------------------------------------------------
struct EntropyReport {
  long long executions = 0;
  double lambda_log2 = 0.0;     // bits of randomness drawn by redraws
  long long transcript_bits = 0;
  double margin_bits = 0.0;     // lambda_log2 - transcript_bits
  double margin_per_execution = 0.0;
};

EntropyReport entropy_report(const RunStats& stats, const Transcript& transcript);

}  // namespace colorfix
