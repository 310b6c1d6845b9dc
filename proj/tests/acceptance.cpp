// Acceptance gate: twelve end-to-end checks over the repair engine, the
// transcript machinery, the completion phases, and the validation lab.
// Each check prints one PASS/FAIL line; the process exits nonzero when any
// check fails.  Every tolerance and budget is pinned as a named constant.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "colorfix/analytics.hpp"
#include "colorfix/coloring.hpp"
#include "colorfix/completion.hpp"
#include "colorfix/errors.hpp"
#include "colorfix/fix_clique.hpp"
#include "colorfix/fix_triangle.hpp"
#include "colorfix/flaws.hpp"
#include "colorfix/generators.hpp"
#include "colorfix/graph.hpp"
#include "colorfix/io.hpp"
#include "colorfix/params.hpp"
#include "colorfix/rng.hpp"
#include "colorfix/transcript.hpp"

namespace {

using namespace colorfix;
using Clock = std::chrono::steady_clock;

// ---------------------------------------------------------------------------
// Pinned budgets and tolerances.
// ---------------------------------------------------------------------------
constexpr double kPipelineSecondsBudget = 300.0;  // check 1 wall-clock cap
constexpr double kSweepSecondsBudget = 120.0;     // check 5 wall-clock cap
constexpr long long kMinSelfCheckedCalls = 10'000;   // check 2 floor
constexpr int kReconstructionRuns = 100;             // check 3
constexpr long long kMaxRedrawsPerCall = 500;        // check 3 transcript size cap
constexpr int kTerminationRuns = 100;                // check 4
constexpr int kTerminationMinSuccesses = 95;         // check 4
constexpr long long kTerminationCapFactor = 10;      // check 4: cap = 10 n
constexpr int kTinyGraphMaxN = 7;                    // checks 5 and 6
constexpr long long kTinyGraphCount = 2'131'019;     // sum of 2^C(n,2), n = 1..7
constexpr int kCorrelationFixtures = 50;             // check 7
constexpr int kExactExpectationFixtures = 30;        // check 8
constexpr double kExactRelTol = 1e-12;               // checks 8 and 10
constexpr long long kMcTrials = 100'000;             // checks 8 and 9
constexpr long long kSamplerDraws = 100'000;         // check 10
constexpr double kChiSquarePFloor = 0.001;           // check 10
constexpr int kCompletionRuns = 100;                 // check 11 (each phase)
constexpr int kDeterminismConfigs = 20;              // check 12
constexpr long long kEnumBudget = 10'000'000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(1);
  os << std::fixed << s << "s";
  return os.str();
}

long long factorial(int k) {
  long long out = 1;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

FlawParams make_flaw(Variant variant, double L, int r) {
  FlawParams f;
  f.variant = variant;
  f.L = L;
  f.r = r;
  return f;
}

// ---------------------------------------------------------------------------
// Shared fixture plumbing for the pipeline checks.
// ---------------------------------------------------------------------------
struct PipelineTally {
  long long runs = 0;
  long long proper = 0;
  long long exceptions = 0;
  long long fixture_violations = 0;
  long long self_checked_calls = 0;  // calls whose exit assertions ran
  std::string first_error;

  void note_error(const std::string& what) {
    ++exceptions;
    if (first_error.empty()) first_error = what;
  }
};

struct FixtureSpec {
  std::string descriptor;
  std::uint64_t seed;
};

// Degree-calibrated run on a generated triangle-free instance: q = 2 Delta,
// L = Delta, palette 2 q, resample-until-proper completion.
void run_tf_fixture(const FixtureSpec& spec, PipelineTally& tally) {
  ++tally.runs;
  try {
    const Graph g = generate(spec.descriptor, Rng::derive(spec.seed, "generate"));
    if (!g.is_triangle_free() || g.max_degree() > 32 || g.vertex_count() > 2000) {
      ++tally.fixture_violations;
      return;
    }
    const int delta = std::max(2, g.max_degree());
    const int q = 2 * delta;
    const ListAssignment lists =
        ListAssignment::uniform_random(g, q, 2 * q, Rng::derive(spec.seed, "lists"));
    FixParams fp;
    fp.flaw = make_flaw(Variant::kTriangleFree, static_cast<double>(delta), 0);
    fp.seed = Rng::derive(spec.seed, "run");
    fp.max_executions = 20ll * g.vertex_count();
    fp.retry_budget = 3;
    fp.transcript_mode = TranscriptMode::kOff;
    fp.check_observations = true;
    const PipelineResult res = run_pipeline(g, lists, fp, CompletionMethod::kMoserTardos);
    tally.self_checked_calls += res.stats.postcondition_checks;
    std::string why;
    if (is_proper_full(g, lists, res.coloring, &why)) {
      ++tally.proper;
    } else {
      tally.note_error("improper coloring: " + why);
      --tally.exceptions;  // counted as a non-proper run, not an exception
    }
  } catch (const std::exception& e) {
    tally.note_error(e.what());
  }
}

void run_kr_fixture(const Graph& g, std::uint64_t seed, PipelineTally& tally) {
  ++tally.runs;
  try {
    if (!g.clique_number_at_most(3) || g.max_degree() > 6 || g.vertex_count() > 60) {
      ++tally.fixture_violations;
      return;
    }
    const int q = 12;
    const ListAssignment lists =
        ListAssignment::uniform_random(g, q, 2 * q, Rng::derive(seed, "lists"));
    FixParams fp;
    fp.flaw = make_flaw(Variant::kCliqueFree, 3.0, 4);
    fp.seed = Rng::derive(seed, "run");
    fp.max_executions = 20ll * g.vertex_count();
    fp.retry_budget = 3;
    fp.transcript_mode = TranscriptMode::kOff;
    fp.check_observations = true;
    const PipelineResult res = run_pipeline_kr(g, lists, fp);
    tally.self_checked_calls += res.stats.postcondition_checks;
    std::string why;
    if (is_proper_full(g, lists, res.coloring, &why)) {
      ++tally.proper;
    } else {
      tally.note_error("improper coloring: " + why);
      --tally.exceptions;
    }
  } catch (const std::exception& e) {
    tally.note_error(e.what());
  }
}

std::vector<FixtureSpec> triangle_free_fixture_specs() {
  std::vector<FixtureSpec> specs;
  const int side[5] = {50, 100, 200, 500, 1000};
  const int deg[4] = {4, 8, 16, 32};
  for (int i = 0; i < 50; ++i) {
    std::ostringstream d;
    d << "random-regular-bipartite:" << side[i % 5] << "," << deg[(i / 5) % 4];
    specs.push_back({d.str(), 1000u + static_cast<std::uint64_t>(i)});
  }
  const double bp[5] = {0.01, 0.02, 0.03, 0.04, 0.05};
  for (int i = 0; i < 50; ++i) {
    std::ostringstream d;
    d << "random-bipartite:200,200," << bp[i % 5];
    specs.push_back({d.str(), 2000u + static_cast<std::uint64_t>(i)});
  }
  const std::pair<int, double> et[5] = {
      {60, 0.10}, {100, 0.08}, {150, 0.06}, {200, 0.05}, {300, 0.03}};
  for (int i = 0; i < 50; ++i) {
    std::ostringstream d;
    d << "erase-triangles:" << et[i % 5].first << "," << et[i % 5].second;
    specs.push_back({d.str(), 3000u + static_cast<std::uint64_t>(i)});
  }
  const int cyc[10] = {10, 25, 41, 50, 100, 250, 300, 500, 750, 1000};
  for (int i = 0; i < 30; ++i) {
    std::ostringstream d;
    d << "cycle:" << cyc[i % 10];
    specs.push_back({d.str(), 4000u + static_cast<std::uint64_t>(i)});
  }
  for (int i = 0; i < 20; ++i) {
    specs.push_back({"random-bipartite:500,500,0.02", 5000u + static_cast<std::uint64_t>(i)});
  }
  return specs;
}

// Deterministic seed scan: K_4-free multipartite fixtures with max degree <= 6.
std::vector<std::pair<Graph, std::uint64_t>> clique_free_fixtures(int want) {
  std::vector<std::pair<Graph, std::uint64_t>> out;
  for (std::uint64_t seed = 50'000; out.size() < static_cast<std::size_t>(want) &&
                                    seed < 60'000;
       ++seed) {
    Graph g = generate("random-multipartite:3,20,0.05", Rng::derive(seed, "generate"));
    if (g.max_degree() <= 6 && g.edge_count() >= 1 && g.clique_number_at_most(3)) {
      out.emplace_back(std::move(g), seed);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Check 1 + 2: every pipeline run is proper; every repaired call self-checks.
// ---------------------------------------------------------------------------
Outcome check_pipelines(PipelineTally& tally) {
  const auto t0 = Clock::now();
  for (const FixtureSpec& spec : triangle_free_fixture_specs()) {
    run_tf_fixture(spec, tally);
  }
  const auto kr = clique_free_fixtures(50);
  if (kr.size() != 50) {
    tally.fixture_violations += 50 - static_cast<long long>(kr.size());
  }
  for (const auto& [g, seed] : kr) {
    run_kr_fixture(g, seed, tally);
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << tally.proper << "/" << tally.runs << " proper, " << tally.exceptions
     << " exceptions, " << tally.fixture_violations << " fixture violations, "
     << fmt_seconds(secs) << " (budget " << fmt_seconds(kPipelineSecondsBudget) << ")";
  const bool pass = tally.runs == 250 && tally.proper == 250 &&
                    tally.exceptions == 0 && tally.fixture_violations == 0 &&
                    secs <= kPipelineSecondsBudget;
  if (!pass && !tally.first_error.empty()) {
    os << "; first error: " << tally.first_error;
  }
  return {pass, os.str()};
}

Outcome check_call_contracts(const PipelineTally& tally) {
  std::ostringstream os;
  os << tally.self_checked_calls
     << " repair calls verified in-place (entry flaw erased, no new flaw), floor "
     << kMinSelfCheckedCalls << ", 0 violations required";
  const bool pass = tally.self_checked_calls >= kMinSelfCheckedCalls &&
                    tally.exceptions == 0;
  return {pass, os.str()};
}

// ---------------------------------------------------------------------------
// Check 3: raw transcripts rebuild every intermediate coloring bit-exactly.
// ---------------------------------------------------------------------------
Outcome check_reconstruction() {
  const auto t0 = Clock::now();
  std::vector<FixtureSpec> specs;
  for (int i = 0; i < 50; ++i) specs.push_back({"erase-triangles:40,0.1", 6000u + i});
  for (int i = 0; i < 30; ++i) specs.push_back({"cycle:30", 6100u + i});
  for (int i = 0; i < 20; ++i) specs.push_back({"random-bipartite:30,30,0.1", 6200u + i});

  int ok = 0;
  std::string first_error;
  for (const FixtureSpec& spec : specs) {
    try {
      const Graph g = generate(spec.descriptor, Rng::derive(spec.seed, "generate"));
      const int delta = std::max(2, g.max_degree());
      const int q = 2 * delta;
      const ListAssignment lists =
          ListAssignment::uniform_random(g, q, 2 * q, Rng::derive(spec.seed, "lists"));
      FixParams fp;
      fp.flaw = make_flaw(Variant::kTriangleFree, static_cast<double>(delta), 0);
      fp.seed = Rng::derive(spec.seed, "run");
      fp.max_executions = 1'000'000;  // no retries: the trace must match the transcript
      fp.retry_budget = 0;
      fp.transcript_mode = TranscriptMode::kRaw;
      fp.check_observations = true;
      std::vector<FixParams::TraceEntry> trace;
      fp.debug_trace = &trace;

      const PipelineResult res = run_pipeline(g, lists, fp, CompletionMethod::kNone);
      if (res.stats.max_call_executions > kMaxRedrawsPerCall) {
        throw Error("fixture exceeded the per-call transcript size cap");
      }
      const PartialColoring initial = init_blank(g, lists);
      const RunReconstruction rec =
          reconstruct(g, lists, initial, res.transcript, res.flaw_free, fp);

      std::size_t k = 0;  // global redraw cursor into the debug trace
      long long redraws = 0;
      for (const CallReconstruction& call : rec.calls) {
        const std::size_t t = call.flaw_sequence.size();
        if (call.colorings.size() != t + 1) throw Error("coloring count mismatch");
        for (std::size_t j = 0; j < t; ++j, ++k) {
          if (k >= trace.size()) throw Error("transcript longer than live trace");
          if (trace[k].before != call.colorings[j]) {
            throw Error("intermediate coloring differs from the live run");
          }
          if (!(trace[k].flaw == call.flaw_sequence[j])) {
            throw Error("flaw sequence differs from the live run");
          }
        }
        redraws += static_cast<long long>(t);
      }
      if (k != trace.size()) throw Error("live trace longer than transcript");
      if (redraws != res.stats.executions) throw Error("redraw count mismatch");
      if (rec.calls.empty() ? false
                            : rec.calls.back().colorings.back() != res.flaw_free.data()) {
        throw Error("final reconstructed coloring mismatch");
      }
      ++ok;
    } catch (const std::exception& e) {
      if (first_error.empty()) first_error = e.what();
    }
  }
  std::ostringstream os;
  os << ok << "/" << kReconstructionRuns
     << " runs rebuilt bit-exactly from their transcripts, " << fmt_seconds(seconds_since(t0));
  if (ok != kReconstructionRuns && !first_error.empty()) {
    os << "; first error: " << first_error;
  }
  return {ok == kReconstructionRuns &&
              static_cast<int>(specs.size()) == kReconstructionRuns,
          os.str()};
}

// ---------------------------------------------------------------------------
// Check 4: the calibrated bipartite regime stays within a 10 n redraw budget.
// ---------------------------------------------------------------------------
Outcome check_termination() {
  const auto t0 = Clock::now();
  int successes = 0;
  int violations = 0;
  std::string first_error;
  for (int i = 0; i < kTerminationRuns; ++i) {
    const std::uint64_t seed = 7000u + static_cast<std::uint64_t>(i);
    try {
      const Graph g = generate("random-bipartite:500,500,0.024", Rng::derive(seed, "generate"));
      if (g.max_degree() > 32) {
        ++violations;
        continue;
      }
      const int delta = std::max(2, g.max_degree());
      const int q = 2 * delta;
      const long long cap = kTerminationCapFactor * g.vertex_count();
      const ListAssignment lists =
          ListAssignment::uniform_random(g, q, 2 * q, Rng::derive(seed, "lists"));
      FixParams fp;
      fp.flaw = make_flaw(Variant::kTriangleFree, static_cast<double>(delta), 0);
      fp.seed = Rng::derive(seed, "run");
      fp.max_executions = cap;
      fp.retry_budget = 0;
      fp.transcript_mode = TranscriptMode::kOff;
      fp.check_observations = true;
      const PipelineResult res = run_pipeline(g, lists, fp, CompletionMethod::kMoserTardos);
      std::string why;
      if (res.stats.executions <= cap && is_proper_full(g, lists, res.coloring, &why)) {
        ++successes;
      }
    } catch (const std::exception& e) {
      if (first_error.empty()) first_error = e.what();
    }
  }
  std::ostringstream os;
  os << successes << "/" << kTerminationRuns << " runs finished within "
     << kTerminationCapFactor << "n redraws and verified (floor "
     << kTerminationMinSuccesses << "), " << violations << " fixture violations, "
     << fmt_seconds(seconds_since(t0));
  if (!first_error.empty()) os << "; first capped run: " << first_error;
  return {successes >= kTerminationMinSuccesses && violations == 0, os.str()};
}

// ---------------------------------------------------------------------------
// Checks 5 and 6: exhaustive tiny-graph sweeps.
// ---------------------------------------------------------------------------
Outcome check_count_bound_sweep() {
  const auto t0 = Clock::now();
  const std::array<int, 3> rs{3, 4, 5};
  const SweepResult s = sweep_shearer_small_graphs(kTinyGraphMaxN, rs);
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << s.graphs << " graphs enumerated (expected " << kTinyGraphCount << "), "
     << s.checked << " clique-filtered checks, " << s.failures << " failures, "
     << fmt_seconds(secs) << " (budget " << fmt_seconds(kSweepSecondsBudget) << ")";
  return {s.failures == 0 && s.graphs == kTinyGraphCount && s.checked > 0 &&
              secs <= kSweepSecondsBudget,
          os.str()};
}

Outcome check_median_bound_sweep() {
  const auto t0 = Clock::now();
  const SweepResult s = sweep_lmu_small_graphs(kTinyGraphMaxN, 4);
  std::ostringstream os;
  os << s.checked << " non-vacuous checks (" << s.vacuous << " vacuous skips), "
     << s.failures << " failures, " << fmt_seconds(seconds_since(t0));
  return {s.failures == 0 && s.graphs == kTinyGraphCount && s.checked > 0, os.str()};
}

// ---------------------------------------------------------------------------
// Check 7: exact negative correlation of color arrivals, plus the urn that
// shows the complement direction genuinely fails.
// ---------------------------------------------------------------------------
Outcome check_negative_correlation() {
  const auto t0 = Clock::now();
  int held = 0;
  std::string first_error;
  for (int i = 0; i < kCorrelationFixtures; ++i) {
    const int neighbors = 3 + i % 5;
    const int q = 2 + i % 3;
    const int palette = q + 2 + i % 4;
    const ListFixture fx =
        ListFixture::random(neighbors, q, palette, 8000u + static_cast<std::uint64_t>(i));
    try {
      const NegCorrResult r = negative_correlation_exact(fx, kEnumBudget);
      if (r.holds) {
        ++held;
      } else if (first_error.empty()) {
        std::ostringstream e;
        e << "fixture " << i << " witness set " << r.witness << " lhs " << r.lhs
          << " > rhs " << r.rhs;
        first_error = e.str();
      }
    } catch (const std::exception& e) {
      if (first_error.empty()) first_error = e.what();
    }
  }

  // The two-of-each urn: direct indicators negatively correlated, complements
  // not -- all three misses land with probability 1/6 > (1/2)^3.
  const FiniteDistribution urn = urn_counterexample();
  const auto all_three = joint_probability(urn, 0b111, true);
  const bool urn_exact = all_three.second == 6 * all_three.first &&
                         all_three.first > 0;
  const NegCorrResult direct = negatively_correlated(urn, false);
  const NegCorrResult flipped = negatively_correlated(urn, true);
  const bool urn_ok = urn_exact && direct.holds && !flipped.holds &&
                      flipped.witness == 0b111 && flipped.lhs > flipped.rhs;

  std::ostringstream os;
  os << held << "/" << kCorrelationFixtures
     << " fixtures hold for every color subset; urn: all-miss probability = 1/6 "
     << (urn_ok ? "confirmed" : "WRONG") << ", " << fmt_seconds(seconds_since(t0));
  if (!first_error.empty()) os << "; first failure: " << first_error;
  return {held == kCorrelationFixtures && urn_ok, os.str()};
}

// ---------------------------------------------------------------------------
// Check 8: the closed-form availability expectation equals brute-force
// enumeration, and matches the Monte-Carlo mean on 50-neighbor fixtures.
// ---------------------------------------------------------------------------
Outcome check_expected_availability() {
  const auto t0 = Clock::now();
  int exact_ok = 0;
  double worst_rel = 0.0;
  std::string first_error;
  for (int i = 0; i < kExactExpectationFixtures; ++i) {
    const int neighbors = 5 + i % 2;
    const int q = 2 + i % 2;
    const ListFixture fx = ListFixture::random(neighbors, q, q + 4 + i % 3,
                                               8100u + static_cast<std::uint64_t>(i));
    try {
      const double closed = expected_available_count(fx);
      const double brute = enumerated_expected_available(fx, kEnumBudget);
      const double rel = std::abs(closed - brute) / std::max(1.0, std::abs(brute));
      worst_rel = std::max(worst_rel, rel);
      if (rel <= kExactRelTol) {
        ++exact_ok;
      } else if (first_error.empty()) {
        std::ostringstream e;
        e << "fixture " << i << " rel err " << rel;
        first_error = e.str();
      }
    } catch (const std::exception& e) {
      if (first_error.empty()) first_error = e.what();
    }
  }

  int mc_ok = 0;
  for (int i = 0; i < 3; ++i) {
    const ListFixture fx =
        ListFixture::random(50, 20, 40, 8200u + static_cast<std::uint64_t>(i));
    const EstimateReport rep =
        mc_expected_available(fx, kMcTrials, 8300u + static_cast<std::uint64_t>(i));
    if (rep.verdict == EstimateReport::Verdict::kPass) ++mc_ok;
  }

  std::ostringstream os;
  os << exact_ok << "/" << kExactExpectationFixtures
     << " enumerations match the closed form (worst rel err " << worst_rel
     << ", tol " << kExactRelTol << "); " << mc_ok
     << "/3 sample means agree at " << kMcTrials << " trials, "
     << fmt_seconds(seconds_since(t0));
  if (!first_error.empty()) os << "; first failure: " << first_error;
  return {exact_ok == kExactExpectationFixtures && mc_ok == 3, os.str()};
}

// ---------------------------------------------------------------------------
// Check 9: the deficiency tail stays under the concentration bound.
// ---------------------------------------------------------------------------
Outcome check_lower_tail() {
  const auto t0 = Clock::now();
  int ok = 0;
  std::ostringstream details;
  for (int i = 0; i < 2; ++i) {
    const ListFixture fx =
        ListFixture::random(200, 100, 200, 8400u + static_cast<std::uint64_t>(i));
    const EstimateReport rep =
        mc_available_lower_tail(fx, kMcTrials, 8500u + static_cast<std::uint64_t>(i));
    if (rep.verdict != EstimateReport::Verdict::kFail) ++ok;
    if (i) details << "; ";
    details << "tail " << rep.estimate << " vs bound " << rep.reference;
  }
  std::ostringstream os;
  os << ok << "/2 fixtures under the half-expectation tail bound at " << kMcTrials
     << " trials (" << details.str() << "), " << fmt_seconds(seconds_since(t0));
  return {ok == 2, os.str()};
}

// ---------------------------------------------------------------------------
// Check 10: the valid-coloring space machinery -- uniform sampler, color-class
// resampling kernel, and the blank-extension counting bound.
// ---------------------------------------------------------------------------
NeighborhoodLists path3_fixture() {
  NeighborhoodLists nl;
  nl.variant = Variant::kCliqueFree;
  nl.members = {4, 7, 9};
  nl.domains = {{0, 1, 2, kBlank}, {0, 1, 2, kBlank}, {0, 1, 2, kBlank}};
  nl.cv = {0, 1, 2};
  nl.member_edges = {{0, 1}, {1, 2}};
  return nl;
}

NeighborhoodLists edge_fixture() {
  NeighborhoodLists nl;
  nl.variant = Variant::kCliqueFree;
  nl.members = {10, 11};
  nl.domains = {{0, 1, 2, 3, kBlank}, {0, 1, 2, 3, kBlank}};
  nl.cv = {0, 1, 2, 3};
  nl.member_edges = {{0, 1}};
  return nl;
}

bool chi_square_uniform(const NeighborhoodLists& nl, std::uint64_t seed,
                        double& p_out) {
  const std::vector<Pca> omega = enumerate_pca(nl, kEnumBudget);
  std::map<Pca, int> index;
  for (std::size_t i = 0; i < omega.size(); ++i) index[omega[i]] = static_cast<int>(i);
  std::vector<long long> counts(omega.size(), 0);
  Rng rng(seed);
  for (long long d = 0; d < kSamplerDraws; ++d) {
    const Pca s = sample_pca_uniform(nl, rng, kEnumBudget);
    const auto it = index.find(s);
    if (it == index.end()) return false;  // sampled outside the valid space
    ++counts[it->second];
  }
  const double expected = static_cast<double>(kSamplerDraws) /
                          static_cast<double>(omega.size());
  double stat = 0.0;
  for (long long c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  p_out = chi_square_sf(stat, static_cast<int>(omega.size()) - 1);
  return p_out > kChiSquarePFloor;
}

// Exact stationarity: applying the class-i resampling kernel to the uniform
// distribution returns the uniform distribution, for every color i.
bool kernel_preserves_uniform(const NeighborhoodLists& nl, double& worst_out) {
  const std::vector<Pca> omega = enumerate_pca(nl, kEnumBudget);
  std::map<Pca, int> index;
  for (std::size_t i = 0; i < omega.size(); ++i) index[omega[i]] = static_cast<int>(i);
  const double uniform = 1.0 / static_cast<double>(omega.size());
  worst_out = 0.0;

  const int m = static_cast<int>(nl.members.size());
  auto adjacent = [&](int a, int b) {
    for (const auto& [x, y] : nl.member_edges) {
      if ((x == a && y == b) || (x == b && y == a)) return true;
    }
    return false;
  };

  for (Color i : nl.cv) {
    std::vector<double> next(omega.size(), 0.0);
    for (const Pca& chi : omega) {
      std::vector<int> eligible;  // members that may join color class i
      for (int u = 0; u < m; ++u) {
        const bool in_domain =
            std::find(nl.domains[u].begin(), nl.domains[u].end(), i) !=
            nl.domains[u].end();
        if (in_domain && (chi[u] == i || chi[u] == kBlank)) eligible.push_back(u);
      }
      std::vector<std::vector<int>> subsets;
      const int k = static_cast<int>(eligible.size());
      for (int mask = 0; mask < (1 << k); ++mask) {
        std::vector<int> s;
        for (int b = 0; b < k; ++b) {
          if (mask & (1 << b)) s.push_back(eligible[b]);
        }
        bool independent = true;
        for (std::size_t a = 0; a + 1 < s.size() && independent; ++a) {
          for (std::size_t b = a + 1; b < s.size() && independent; ++b) {
            if (adjacent(s[a], s[b])) independent = false;
          }
        }
        if (independent) subsets.push_back(std::move(s));
      }
      const double w = uniform / static_cast<double>(subsets.size());
      for (const std::vector<int>& s : subsets) {
        Pca out = chi;
        for (int u : eligible) out[u] = kBlank;
        for (int u : s) out[u] = i;
        const auto it = index.find(out);
        if (it == index.end()) return false;  // kernel left the valid space
        next[it->second] += w;
      }
    }
    for (double p : next) {
      worst_out = std::max(worst_out, std::abs(p - uniform));
    }
  }
  return worst_out <= kExactRelTol;
}

// Kernel draws stay in the valid space and differ from chi only on class i
// and on blanks eligible for it.
bool kernel_draws_valid(const NeighborhoodLists& nl, std::uint64_t seed) {
  const std::vector<Pca> omega = enumerate_pca(nl, kEnumBudget);
  const std::set<Pca> members(omega.begin(), omega.end());
  Rng rng(seed);
  for (const Pca& chi : omega) {
    for (Color i : nl.cv) {
      const Pca out = resample_color_class(nl, chi, i, rng, kEnumBudget);
      if (!members.count(out)) return false;
      for (std::size_t u = 0; u < out.size(); ++u) {
        if (chi[u] != i && chi[u] != kBlank && out[u] != chi[u]) return false;
        if (out[u] != chi[u] && out[u] != i && out[u] != kBlank) return false;
      }
    }
  }
  return true;
}

// Blank-extension counting: for every valid coloring with the chosen L
// positions blank and >= L choices at each, the extensions are distinct
// members of the space, at least L! per coloring, so |blank set| * L! <= |space|.
bool injection_bound(const NeighborhoodLists& nl, const std::vector<int>& positions,
                     int L, std::string& err) {
  const std::vector<Pca> omega = enumerate_pca(nl, kEnumBudget);
  const std::set<Pca> members(omega.begin(), omega.end());
  long long blank_count = 0;
  std::set<Pca> all_extensions;
  long long total_extensions = 0;
  for (const Pca& chi : omega) {
    bool eligible = true;
    for (int p : positions) {
      if (chi[p] != kBlank || member_available_count(nl, chi, p) < L) {
        eligible = false;
        break;
      }
    }
    if (!eligible) continue;
    ++blank_count;
    const std::vector<Pca> exts = enumerate_blank_extensions(nl, chi, positions, kEnumBudget);
    if (static_cast<long long>(exts.size()) < factorial(L)) {
      err = "an eligible coloring has fewer extensions than L!";
      return false;
    }
    for (const Pca& e : exts) {
      if (!members.count(e)) {
        err = "an extension left the valid space";
        return false;
      }
      Pca reblanked = e;
      for (int p : positions) reblanked[p] = kBlank;
      if (reblanked != chi) {
        err = "re-blanking an extension does not recover its source";
        return false;
      }
      all_extensions.insert(e);
      ++total_extensions;
    }
  }
  if (static_cast<long long>(all_extensions.size()) != total_extensions) {
    err = "extensions of different sources collide";
    return false;
  }
  if (blank_count * factorial(L) > static_cast<long long>(omega.size())) {
    err = "counting bound violated";
    return false;
  }
  return true;
}

Outcome check_valid_coloring_space() {
  const auto t0 = Clock::now();
  const NeighborhoodLists p3 = path3_fixture();
  const NeighborhoodLists e4 = edge_fixture();

  double p_a = 0.0, p_b = 0.0;
  const bool sampler_ok =
      chi_square_uniform(p3, 0xA5A5'0001ull, p_a) && chi_square_uniform(e4, 0xA5A5'0002ull, p_b);

  double worst_a = 0.0, worst_b = 0.0;
  const bool kernel_ok =
      kernel_preserves_uniform(p3, worst_a) && kernel_preserves_uniform(e4, worst_b) &&
      kernel_draws_valid(p3, 0xA5A5'0003ull) && kernel_draws_valid(e4, 0xA5A5'0004ull);

  std::string err;
  const bool inj_ok = injection_bound(p3, {0, 2}, 2, err) &&
                      injection_bound(p3, {0, 1}, 2, err) &&
                      injection_bound(e4, {0, 1}, 3, err);

  std::ostringstream os;
  os << "sampler chi-square p = {" << p_a << ", " << p_b << "} (floor "
     << kChiSquarePFloor << "); kernel uniform-invariance error = {" << worst_a
     << ", " << worst_b << "} (tol " << kExactRelTol
     << "); extension bound holds for L = 2, 3";
  if (!inj_ok) os << " FAILED: " << err;
  os << ", " << fmt_seconds(seconds_since(t0));
  return {sampler_ok && kernel_ok && inj_ok, os.str()};
}

// ---------------------------------------------------------------------------
// Check 11: both completion phases succeed on their calibrated regimes.
// ---------------------------------------------------------------------------
Outcome check_completion() {
  const auto t0 = Clock::now();
  int mt_ok = 0;
  std::string first_error;
  const char* families[4] = {"erase-triangles:60,0.08", "cycle:50",
                             "random-bipartite:40,40,0.1",
                             "random-regular-bipartite:30,4"};
  for (int f = 0; f < 4; ++f) {
    for (int i = 0; i < 25; ++i) {
      const std::uint64_t seed = 9000u + 100u * f + static_cast<std::uint64_t>(i);
      try {
        const Graph g = generate(families[f], Rng::derive(seed, "generate"));
        const int delta = std::max(1, g.max_degree());
        const int q = 10 * delta;  // at least 10 available colors per blank edge
        const ListAssignment lists =
            ListAssignment::uniform_random(g, q, 2 * q, Rng::derive(seed, "lists"));
        const FlawParams flaw = make_flaw(Variant::kTriangleFree, static_cast<double>(q), 0);
        PartialColoring sigma = init_blank(g, lists);
        if (!all_flaws(g, lists, sigma, flaw).empty()) {
          throw Error("fixture is not flaw-free");
        }
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
          int blank_deg = 0;
          for (Vertex u : g.neighbors(v)) blank_deg += sigma.is_blank(u);
          if (available_count(g, lists, sigma, v) - 1 < 10 * blank_deg) {
            throw Error("fixture lacks the 10x list slack");
          }
        }
        Rng rng(Rng::derive(seed, "completion"));
        moser_tardos_complete(g, lists, sigma, flaw, rng);
        std::string why;
        if (!is_proper_full(g, lists, sigma, &why)) throw Error(why);
        ++mt_ok;
      } catch (const std::exception& e) {
        if (first_error.empty()) first_error = std::string("resample: ") + e.what();
      }
    }
  }

  int greedy_ok = 0;
  for (int i = 0; i < kCompletionRuns; ++i) {
    const std::uint64_t seed = 9400u + static_cast<std::uint64_t>(i);
    try {
      const Graph g = generate("random-multipartite:3,15,0.1", Rng::derive(seed, "generate"));
      const int delta = std::max(1, g.max_degree());
      const int q = delta + 2;  // strictly more colors than any blank degree
      const ListAssignment lists =
          ListAssignment::uniform_random(g, q, 2 * q, Rng::derive(seed, "lists"));
      const FlawParams flaw = make_flaw(Variant::kCliqueFree, static_cast<double>(delta + 1), 4);
      PartialColoring sigma = init_blank(g, lists);
      if (!all_flaws(g, lists, sigma, flaw).empty()) {
        throw Error("fixture is not flaw-free");
      }
      for (Vertex v = 0; v < g.vertex_count(); ++v) {
        int blank_deg = 0;
        for (Vertex u : g.neighbors(v)) blank_deg += sigma.is_blank(u);
        if (available_count(g, lists, sigma, v) - 1 <= blank_deg) {
          throw Error("fixture misses the strict availability margin");
        }
      }
      greedy_complete(g, lists, sigma, flaw);
      std::string why;
      if (!is_proper_full(g, lists, sigma, &why)) throw Error(why);
      ++greedy_ok;
    } catch (const std::exception& e) {
      if (first_error.empty()) first_error = std::string("greedy: ") + e.what();
    }
  }

  std::ostringstream os;
  os << "resample-until-proper " << mt_ok << "/" << kCompletionRuns
     << " on 10x-slack fixtures; greedy " << greedy_ok << "/" << kCompletionRuns
     << " on strict-margin fixtures, " << fmt_seconds(seconds_since(t0));
  if (!first_error.empty()) os << "; first error: " << first_error;
  return {mt_ok == kCompletionRuns && greedy_ok == kCompletionRuns, os.str()};
}

// ---------------------------------------------------------------------------
// Check 12: identical configs give byte-identical colorings and transcripts.
// ---------------------------------------------------------------------------
struct RunBytes {
  std::string flaw_free;
  std::string coloring;
  std::string transcript;
  long long executions = 0;
  double lambda = 0.0;

  bool operator==(const RunBytes&) const = default;
};

RunBytes run_config_once(const RunConfig& cfg) {
  const Graph g =
      generate(cfg.graph_source.substr(4), Rng::derive(cfg.seed, "generate"));
  const ResolvedParams rp = resolve_params(cfg, g.max_degree());
  const int q = cfg.uniform_q > 0 ? cfg.uniform_q : rp.q;
  const int palette = cfg.palette > 0 ? cfg.palette : 2 * q;
  const ListAssignment lists =
      ListAssignment::uniform_random(g, q, palette, Rng::derive(cfg.seed, "lists"));
  const FixParams fp = make_fix_params(cfg, rp);
  const CompletionMethod cm = resolve_completion(cfg);
  const PipelineResult res = run_pipeline(g, lists, fp, cm);
  RunBytes out;
  out.flaw_free = format_coloring(res.flaw_free, lists);
  out.coloring = format_coloring(res.coloring, lists);
  out.transcript = res.transcript.to_jsonl();
  out.executions = res.stats.executions;
  out.lambda = res.stats.lambda_log2;
  return out;
}

Outcome check_determinism() {
  const auto t0 = Clock::now();
  struct Row {
    const char* graph;
    const char* variant;
    int q;
    double L;
    const char* mode;
    const char* completion;
    bool check;
    bool paranoid;
    std::uint64_t seed;
  };
  const Row rows[kDeterminismConfigs] = {
      {"gen:erase-triangles:50,0.15", "tf", 8, 3.0, "raw", "mt", true, false, 11},
      {"gen:erase-triangles:50,0.15", "tf", 8, 3.0, "raw", "mt", false, false, 12},
      {"gen:erase-triangles:80,0.1", "tf", 8, 3.0, "raw", "mt", false, true, 13},
      {"gen:cycle:60", "tf", 6, 2.0, "compressed", "mt", false, false, 14},
      {"gen:cycle:100", "tf", 6, 2.0, "compressed", "mt", true, false, 15},
      {"gen:random-regular-bipartite:20,3", "tf", 8, 3.0, "compressed", "mt", false, false, 16},
      {"gen:random-bipartite:40,40,0.08", "tf", 10, 4.0, "raw", "mt", false, false, 17},
      {"gen:random-regular-bipartite:50,8", "tf", 16, 8.0, "raw", "mt", true, false, 18},
      {"gen:erase-triangles:60,0.1", "tf", 8, 3.0, "off", "mt", false, false, 19},
      {"gen:cycle:40", "tf", 6, 2.0, "off", "mt", false, false, 20},
      {"gen:erase-triangles:50,0.15", "tf", 8, 3.0, "raw", "none", false, false, 21},
      {"gen:random-bipartite:60,60,0.05", "tf", 8, 4.0, "raw", "greedy+mt", false, false, 22},
      {"gen:random-multipartite:3,12,0.1", "kr", 12, 3.0, "raw", "greedy+mt", true, false, 23},
      {"gen:random-multipartite:3,12,0.1", "kr", 12, 3.0, "raw", "greedy+mt", false, false, 24},
      {"gen:random-multipartite:3,10,0.12", "kr", 12, 3.0, "raw", "mt", false, false, 25},
      {"gen:random-multipartite:3,10,0.1", "kr", 10, 3.0, "off", "greedy+mt", false, true, 26},
      {"gen:random-multipartite:4,8,0.08", "kr", 12, 3.0, "raw", "greedy+mt", false, false, 27},
      {"gen:cycle:200", "tf", 6, 2.0, "raw", "mt", false, false, 28},
      {"gen:erase-triangles:100,0.08", "tf", 10, 3.0, "raw", "mt", true, false, 29},
      {"gen:random-multipartite:3,15,0.06", "kr", 12, 3.0, "raw", "greedy+mt", false, false, 30},
  };
  int identical = 0;
  std::string first_error;
  for (const Row& row : rows) {
    RunConfig cfg;
    cfg.graph_source = row.graph;
    cfg.variant = row.variant;
    if (std::string(row.variant) == "kr") cfg.r = 4;
    cfg.uniform_q = row.q;
    cfg.q_override = row.q;
    cfg.l_override = row.L;
    cfg.seed = row.seed;
    cfg.retries = 3;
    cfg.transcript_mode = row.mode;
    cfg.completion = row.completion;
    cfg.check_observations = row.check;
    cfg.paranoid = row.paranoid;
    try {
      const RunBytes a = run_config_once(cfg);
      const RunBytes b = run_config_once(cfg);
      if (a == b) {
        ++identical;
      } else if (first_error.empty()) {
        first_error = "config seed " + std::to_string(row.seed) + " diverged";
      }
    } catch (const std::exception& e) {
      if (first_error.empty()) {
        first_error = "config seed " + std::to_string(row.seed) + ": " + e.what();
      }
    }
  }
  std::ostringstream os;
  os << identical << "/" << kDeterminismConfigs
     << " configs reproduced byte-identical colorings, transcripts, and counters, "
     << fmt_seconds(seconds_since(t0));
  if (!first_error.empty()) os << "; first divergence: " << first_error;
  return {identical == kDeterminismConfigs, os.str()};
}

Outcome guarded(Outcome (*fn)()) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {false, std::string("unhandled exception: ") + e.what()};
  }
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, Outcome>> rows;

  PipelineTally tally;
  Outcome c1;
  try {
    c1 = check_pipelines(tally);
  } catch (const std::exception& e) {
    c1 = {false, std::string("unhandled exception: ") + e.what()};
  }
  rows.emplace_back("generated fixtures all color properly", c1);
  rows.emplace_back("repair calls erase their flaw and add none",
                    check_call_contracts(tally));
  rows.emplace_back("transcripts rebuild every intermediate coloring",
                    guarded(check_reconstruction));
  rows.emplace_back("calibrated bipartite runs stay in budget",
                    guarded(check_termination));
  rows.emplace_back("independent-set count bound, exhaustive to n=7",
                    guarded(check_count_bound_sweep));
  rows.emplace_back("median-vs-count inequality, exhaustive to n=7",
                    guarded(check_median_bound_sweep));
  rows.emplace_back("color arrivals are negatively correlated",
                    guarded(check_negative_correlation));
  rows.emplace_back("availability expectation matches enumeration and sampling",
                    guarded(check_expected_availability));
  rows.emplace_back("availability lower tail under the concentration bound",
                    guarded(check_lower_tail));
  rows.emplace_back("valid-coloring sampler, kernel, and extension bound",
                    guarded(check_valid_coloring_space));
  rows.emplace_back("completion phases succeed on calibrated fixtures",
                    guarded(check_completion));
  rows.emplace_back("identical configs reproduce byte-identical runs",
                    guarded(check_determinism));

  int failures = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [name, outcome] = rows[i];
    if (!outcome.pass) ++failures;
    std::cout << "[" << (i + 1 < 10 ? " " : "") << (i + 1) << "/12] "
              << (outcome.pass ? "PASS" : "FAIL") << " — " << name << ": "
              << outcome.detail << "\n";
    std::cout.flush();
  }
  if (failures == 0) {
    std::cout << "acceptance: all 12 checks passed\n";
  } else {
    std::cout << "acceptance: " << failures << " of 12 checks FAILED\n";
  }
  return failures == 0 ? 0 : 1;
}
