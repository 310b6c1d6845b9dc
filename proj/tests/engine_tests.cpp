// The resampling engines: redraw primitives, repair calls and their
// postconditions, transcripts and reconstruction, the valid-neighborhood
// coloring machinery, completion, and whole-run determinism.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "colorfix/completion.hpp"
#include "colorfix/errors.hpp"
#include "colorfix/fix_clique.hpp"
#include "colorfix/fix_triangle.hpp"
#include "colorfix/flaws.hpp"
#include "colorfix/generators.hpp"
#include "colorfix/graph.hpp"
#include "colorfix/rng.hpp"
#include "doctest.h"

using namespace colorfix;

namespace {

Graph star(Vertex leaves) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex v = 1; v <= leaves; ++v) e.push_back({0, v});
  return Graph::build(leaves + 1, e);
}

Graph path(Vertex n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.push_back({v, v + 1});
  return Graph::build(n, e);
}

Graph single_edge() { return Graph::build(2, {{0, 1}}); }

ListAssignment same_list_everywhere(const Graph& g, std::vector<Color> list,
                                    int palette) {
  std::vector<std::vector<Color>> lists(g.vertex_count(), list);
  return ListAssignment::from_lists(std::move(lists), palette);
}

FixParams tf_params(double L, std::uint64_t seed) {
  FixParams p;
  p.flaw.variant = Variant::kTriangleFree;
  p.flaw.L = L;
  p.seed = seed;
  p.check_observations = true;
  return p;
}

FixParams kr_params(double L, std::uint64_t seed) {
  FixParams p;
  p.flaw.variant = Variant::kCliqueFree;
  p.flaw.L = L;
  p.flaw.r = 4;
  p.seed = seed;
  p.check_observations = true;
  return p;
}

// Members 0-1-2 in a path, each with real colors {0,1,2}: 43 valid colorings.
NeighborhoodLists path3_lists() {
  NeighborhoodLists nl;
  nl.variant = Variant::kCliqueFree;
  nl.members = {4, 7, 9};  // labels are arbitrary; indices are what matters
  nl.domains = {{0, 1, 2, kBlank}, {0, 1, 2, kBlank}, {0, 1, 2, kBlank}};
  nl.cv = {0, 1, 2};
  nl.member_edges = {{0, 1}, {1, 2}};
  return nl;
}

}  // namespace

TEST_CASE("neighborhood redraw draws from entry lists only") {
  Graph g = star(4);
  ListAssignment lists = same_list_everywhere(g, {0, 1, 2}, 3);
  PartialColoring sigma = init_blank(g, lists);
  sigma.set(0, 2);  // the center wears color 2: leaves may not redraw into it

  Rng rng(5);
  double bits = recolor_neighborhood(g, lists, sigma, 0, rng);
  // Each leaf had {0, 1, Blank} available: 3 options, 4 leaves.
  CHECK(bits == doctest::Approx(4.0 * std::log2(3.0)));
  CHECK(sigma.color(0) == 2);
  for (Vertex leaf = 1; leaf <= 4; ++leaf) {
    Color c = sigma.color(leaf);
    CHECK((c == kBlank || c == 0 || c == 1));
  }

  // Same seed, same draws.
  PartialColoring sigma2 = init_blank(g, lists);
  sigma2.set(0, 2);
  Rng rng2(5);
  recolor_neighborhood(g, lists, sigma2, 0, rng2);
  CHECK(sigma == sigma2);
}

TEST_CASE("neighborhood redraw rejects dependent neighborhoods") {
  Graph k3 = Graph::build(3, {{0, 1}, {0, 2}, {1, 2}});
  ListAssignment lists = same_list_everywhere(k3, {0, 1}, 2);
  PartialColoring sigma = init_blank(k3, lists);
  Rng rng(1);
  CHECK_THROWS_AS(recolor_neighborhood(k3, lists, sigma, 0, rng),
                  InvalidArgument);
}

TEST_CASE("repair call requires its flaw to hold") {
  Graph g = star(4);
  ListAssignment lists = same_list_everywhere(g, {0, 1, 2, 3}, 4);
  PartialColoring sigma = init_blank(g, lists);
  FixParams params = tf_params(2.0, 1);  // |L_v| = 5 everywhere: no flaw
  Rng rng(1);
  CHECK_THROWS_AS(fix(g, lists, sigma, {FlawKind::kB, 0}, params, rng),
                  InvalidArgument);
}

TEST_CASE("repair call erases its flaw and introduces none") {
  for (std::uint64_t seed : {3u, 8u, 21u}) {
    Graph g = generate("erase-triangles:25,0.2", seed);
    ListAssignment lists = ListAssignment::uniform_random(g, 4, 8, seed);
    PartialColoring sigma = init_blank(g, lists);
    FixParams params = tf_params(3.0, seed);
    params.paranoid = true;
    params.max_executions = 1'000'000;

    std::vector<Flaw> entry = all_flaws(g, lists, sigma, params.flaw);
    if (entry.empty()) continue;
    Flaw f = entry.front();

    Rng rng(Rng::derive(seed, "recolor"));
    RunStats stats;
    fix(g, lists, sigma, f, params, rng, &stats);

    CHECK_FALSE(flaw_holds(g, lists, sigma, f, params.flaw));
    std::vector<Flaw> exit = all_flaws(g, lists, sigma, params.flaw);
    CHECK(std::includes(entry.begin(), entry.end(), exit.begin(), exit.end()));
    CHECK(stats.executions >= 1);
    CHECK(stats.postcondition_checks >= 1);
  }
}

TEST_CASE("clique-variant repair call has the same exit guarantees") {
  for (std::uint64_t seed : {2u, 5u}) {
    Graph g = generate("random-multipartite:3,10,0.15", seed);
    ListAssignment lists = ListAssignment::uniform_random(g, 10, 20, seed);
    PartialColoring sigma = init_blank(g, lists);
    FixParams params = kr_params(3.0, seed);
    params.paranoid = true;
    params.max_executions = 1'000'000;

    std::vector<Flaw> entry = all_flaws(g, lists, sigma, params.flaw);
    if (entry.empty()) continue;
    Flaw f = entry.front();

    Rng rng(Rng::derive(seed, "recolor"));
    RunStats stats;
    fix2(g, lists, sigma, f, params, rng, &stats);

    CHECK_FALSE(flaw_holds(g, lists, sigma, f, params.flaw));
    std::vector<Flaw> exit = all_flaws(g, lists, sigma, params.flaw);
    CHECK(std::includes(entry.begin(), entry.end(), exit.begin(), exit.end()));
  }
}

TEST_CASE("execution cap aborts unfixable repairs") {
  // Single-color lists with L = 3: deficiency can never be repaired, so the
  // call must hit its cap.
  Graph g = star(6);
  ListAssignment lists = same_list_everywhere(g, {0}, 1);
  PartialColoring sigma = init_blank(g, lists);
  FixParams params = tf_params(3.0, 9);
  params.max_executions = 1;
  params.check_observations = false;  // exit checks cannot pass here

  Rng rng(3);
  try {
    fix(g, lists, sigma, {FlawKind::kB, 0}, params, rng);
    FAIL("expected ExecutionCapExceeded");
  } catch (const ExecutionCapExceeded& e) {
    CHECK(e.executions >= 1);
  }

  // The pipeline retries with derived seeds, then gives up the same way.
  params.max_executions = 5;
  params.retry_budget = 2;
  CHECK_THROWS_AS(run_pipeline(g, lists, params), ExecutionCapExceeded);
}

TEST_CASE("pipeline output is proper and blank-free") {
  for (std::uint64_t seed : {1u, 6u, 13u}) {
    Graph g = generate("erase-triangles:50,0.15", seed);
    ListAssignment lists = ListAssignment::uniform_random(g, 8, 16, seed);
    FixParams params = tf_params(3.0, seed);

    PipelineResult res = run_pipeline(g, lists, params);
    std::string why;
    CHECK(is_proper_full(g, lists, res.coloring, &why));
    CHECK(why.empty());
    CHECK(all_flaws(g, lists, res.flaw_free, params.flaw).empty());
    CHECK(is_proper_partial(g, lists, res.flaw_free));
    if (res.stats.initial_flaws > 0) CHECK(res.stats.top_level_calls >= 1);
    CHECK(res.stats.executions >= res.stats.top_level_calls);
    CHECK(res.transcript.total_executions() == res.stats.executions);
    CHECK(res.stats.used_moser_tardos);
  }
}

TEST_CASE("clique-variant pipeline colors multipartite graphs") {
  for (std::uint64_t seed : {4u, 11u}) {
    Graph g = generate("random-multipartite:3,12,0.12", seed);
    ListAssignment lists = ListAssignment::uniform_random(g, 12, 24, seed);
    FixParams params = kr_params(3.0, seed);

    PipelineResult res = run_pipeline_kr(g, lists, params);
    CHECK(is_proper_full(g, lists, res.coloring));
    CHECK(all_flaws(g, lists, res.flaw_free, params.flaw).empty());
  }

  Graph g = generate("random-multipartite:3,8,0.1", 1);
  ListAssignment lists = ListAssignment::uniform_random(g, 8, 16, 1);
  FixParams wrong = tf_params(3.0, 1);
  CHECK_THROWS_AS(run_pipeline_kr(g, lists, wrong), InvalidArgument);
}

TEST_CASE("identical parameters give byte-identical runs") {
  Graph g = generate("erase-triangles:40,0.2", 17);
  ListAssignment lists = ListAssignment::uniform_random(g, 8, 16, 17);
  FixParams params = tf_params(3.0, 90210);

  PipelineResult a = run_pipeline(g, lists, params);
  PipelineResult b = run_pipeline(g, lists, params);
  CHECK(a.coloring == b.coloring);
  CHECK(a.flaw_free == b.flaw_free);
  CHECK(a.transcript.to_jsonl() == b.transcript.to_jsonl());
  CHECK(a.stats.executions == b.stats.executions);
  CHECK(a.stats.lambda_log2 == b.stats.lambda_log2);

  FixParams other = params;
  other.seed = 90211;
  PipelineResult c = run_pipeline(g, lists, other);
  CHECK(a.coloring.data() != c.coloring.data());
}

TEST_CASE("transcript text round-trips") {
  Graph g = generate("erase-triangles:30,0.2", 23);
  ListAssignment lists = ListAssignment::uniform_random(g, 6, 12, 23);
  FixParams params = tf_params(3.0, 23);
  PipelineResult res = run_pipeline(g, lists, params);
  REQUIRE(res.transcript.segments.size() >= 1);

  std::string text = res.transcript.to_jsonl();
  Transcript back = Transcript::from_jsonl_string(text);
  CHECK(back.to_jsonl() == text);
  CHECK(back.mode == res.transcript.mode);
  CHECK(back.n == res.transcript.n);
  CHECK(back.total_executions() == res.transcript.total_executions());

  CHECK_THROWS_AS(Transcript::from_jsonl_string("{\"type\":\"colours\"}\n"),
                  TranscriptError);
}

TEST_CASE("reconstruction reproduces every intermediate coloring") {
  for (std::uint64_t seed : {7u, 19u, 31u}) {
    Graph g = generate("erase-triangles:30,0.2", seed);
    ListAssignment lists = ListAssignment::uniform_random(g, 6, 12, seed);

    FixParams params = tf_params(3.0, seed);
    params.max_executions = 1'000'000;  // no retries: the trace must be total
    std::vector<FixParams::TraceEntry> trace;
    params.debug_trace = &trace;

    PipelineResult res = run_pipeline(g, lists, params);
    PartialColoring blank = init_blank(g, lists);

    RunReconstruction rec =
        reconstruct(g, lists, blank, res.transcript, res.flaw_free, params);
    REQUIRE(rec.calls.size() == res.transcript.segments.size());

    std::size_t t = 0;
    for (std::size_t k = 0; k < rec.calls.size(); ++k) {
      const CallReconstruction& call = rec.calls[k];
      CHECK(call.root == res.transcript.segments[k].root);
      REQUIRE(call.colorings.size() == call.flaw_sequence.size() + 1);
      for (std::size_t i = 0; i + 1 < call.colorings.size(); ++i) {
        REQUIRE(t < trace.size());
        CHECK(call.flaw_sequence[i] == trace[t].flaw);
        CHECK(call.colorings[i] == trace[t].before);
        ++t;
      }
    }
    CHECK(t == trace.size());

    // Calls chain: nothing moves between top-level calls.
    CHECK(rec.calls.front().colorings.front() == blank.data());
    for (std::size_t k = 0; k + 1 < rec.calls.size(); ++k)
      CHECK(rec.calls[k].colorings.back() == rec.calls[k + 1].colorings.front());
    CHECK(rec.calls.back().colorings.back() == res.flaw_free.data());
  }
}

TEST_CASE("compressed transcripts replay to the same run") {
  Graph g = generate("erase-triangles:24,0.2", 3);
  ListAssignment lists = ListAssignment::uniform_random(g, 5, 10, 3);

  FixParams raw = tf_params(3.0, 77);
  raw.max_executions = 1'000'000;
  FixParams comp = raw;
  comp.transcript_mode = TranscriptMode::kCompressed;

  PipelineResult a = run_pipeline(g, lists, raw);
  PipelineResult b = run_pipeline(g, lists, comp);
  CHECK(a.coloring == b.coloring);  // same seed: same run, different log
  CHECK(a.flaw_free == b.flaw_free);

  PartialColoring blank = init_blank(g, lists);
  RunReconstruction ra = reconstruct(g, lists, blank, a.transcript, a.flaw_free, raw);
  RunReconstruction rb = reconstruct(g, lists, blank, b.transcript, b.flaw_free, comp);
  REQUIRE(ra.calls.size() == rb.calls.size());
  for (std::size_t k = 0; k < ra.calls.size(); ++k) {
    CHECK(ra.calls[k].colorings == rb.calls[k].colorings);
    CHECK(ra.calls[k].flaw_sequence == rb.calls[k].flaw_sequence);
  }
}

TEST_CASE("clique-variant transcripts replay too") {
  Graph g = generate("random-multipartite:3,10,0.12", 8);
  ListAssignment lists = ListAssignment::uniform_random(g, 10, 20, 8);
  FixParams params = kr_params(3.0, 8);
  params.max_executions = 1'000'000;

  PipelineResult res = run_pipeline_kr(g, lists, params);
  PartialColoring blank = init_blank(g, lists);
  RunReconstruction rec =
      reconstruct(g, lists, blank, res.transcript, res.flaw_free, params);
  CHECK(rec.calls.size() == res.transcript.segments.size());
  if (!rec.calls.empty())
    CHECK(rec.calls.back().colorings.back() == res.flaw_free.data());
}

TEST_CASE("tampered transcripts are rejected") {
  Graph g = generate("erase-triangles:30,0.2", 41);
  ListAssignment lists = ListAssignment::uniform_random(g, 6, 12, 41);
  FixParams params = tf_params(3.0, 41);
  params.max_executions = 1'000'000;

  PipelineResult res = run_pipeline(g, lists, params);
  REQUIRE_FALSE(res.transcript.segments.empty());
  PartialColoring blank = init_blank(g, lists);

  {  // truncated: drop the closing record of the last segment
    Transcript t = res.transcript;
    REQUIRE_FALSE(t.segments.back().records.empty());
    t.segments.back().records.pop_back();
    CHECK_THROWS_AS(reconstruct(g, lists, blank, t, res.flaw_free, params),
                    TranscriptError);
  }
  {  // recursion target outside the scan ball
    Transcript t = res.transcript;
    bool patched = false;
    for (auto& seg : t.segments) {
      for (auto& r : seg.records) {
        if (r.type == TranscriptRecord::Type::kFixCall) {
          r.ell = 1'000'000;
          patched = true;
          break;
        }
      }
      if (patched) break;
    }
    if (patched) {
      CHECK_THROWS_AS(reconstruct(g, lists, blank, t, res.flaw_free, params),
                      TranscriptError);
    }
  }
  {  // forged pre-redraw colors: the run's first redraw starts all-blank, so
     // a real color in its record can never chain back to the initial state
    Transcript t = res.transcript;
    TranscriptRecord* first_colours = nullptr;
    for (auto& r : t.segments.front().records) {
      if (r.type == TranscriptRecord::Type::kColours) {
        first_colours = &r;
        break;
      }
    }
    REQUIRE(first_colours != nullptr);
    REQUIRE_FALSE(first_colours->raw.empty());
    REQUIRE(first_colours->raw[0] == kBlank);
    first_colours->raw[0] = 0;
    CHECK_THROWS_AS(reconstruct(g, lists, blank, t, res.flaw_free, params),
                    TranscriptError);
  }
}

TEST_CASE("flawed-coloring enumeration: count, rank, unrank") {
  // Star center with three blank leaves, every list {0,1}.  Of the 27 leaf
  // colorings only (0,0,0) and (1,1,1) leave the center unflawed at L = 2,
  // so the enumeration has exactly 25 members.
  Graph g = star(3);
  ListAssignment lists = same_list_everywhere(g, {0, 1}, 2);
  PartialColoring sigma = init_blank(g, lists);
  NeighborhoodLists nl =
      gather_neighborhood_lists(g, lists, sigma, 0, Variant::kTriangleFree);
  CHECK(nl.members == std::vector<Vertex>{1, 2, 3});
  for (const auto& d : nl.domains)
    CHECK(d == std::vector<Color>{0, 1, kBlank});
  CHECK(nl.cv == std::vector<Color>{0, 1});

  FlawParams fp;
  fp.variant = Variant::kTriangleFree;
  fp.L = 2.0;

  const long long budget = 1000;
  CHECK(count_flawed_colorings(nl, fp, budget) == 25);

  for (long long idx = 1; idx <= 25; ++idx) {
    std::vector<Color> chi = flawed_colouring_unrank(nl, idx, fp, budget);
    CHECK(flawed_colouring_rank(nl, chi, fp, budget) == idx);
  }
  CHECK_THROWS_AS(flawed_colouring_unrank(nl, 26, fp, budget), TranscriptError);
  CHECK_THROWS_AS(flawed_colouring_unrank(nl, 0, fp, budget), TranscriptError);

  // The two unflawed colorings are not members.
  CHECK_THROWS_AS(flawed_colouring_rank(nl, {0, 0, 0}, fp, budget),
                  TranscriptError);
  CHECK_THROWS_AS(flawed_colouring_rank(nl, {1, 1, 1}, fp, budget),
                  TranscriptError);

  CHECK_THROWS_AS(count_flawed_colorings(nl, fp, 26), BudgetExceeded);
}

TEST_CASE("valid neighborhood colorings: enumeration and validity") {
  NeighborhoodLists nl;
  nl.variant = Variant::kCliqueFree;
  nl.members = {1, 2};
  nl.domains = {{1, kBlank}, {1, kBlank}};
  nl.cv = {1};
  nl.member_edges = {{0, 1}};

  CHECK(count_pca(nl, 100) == 3);
  std::vector<Pca> all = enumerate_pca(nl, 100);
  REQUIRE(all.size() == 3);
  std::set<Pca> seen(all.begin(), all.end());
  CHECK(seen.count({1, kBlank}) == 1);
  CHECK(seen.count({kBlank, 1}) == 1);
  CHECK(seen.count({kBlank, kBlank}) == 1);
  CHECK(seen.count({1, 1}) == 0);

  CHECK(pca_valid(nl, {1, kBlank}));
  CHECK_FALSE(pca_valid(nl, {1, 1}));
  CHECK_THROWS_AS(enumerate_pca(nl, 3), BudgetExceeded);

  // The path fixture: 16 colorings with a blank middle, 27 with a colored
  // middle, 43 in total.
  NeighborhoodLists p3 = path3_lists();
  CHECK(count_pca(p3, 1000) == 43);
  std::vector<Pca> all3 = enumerate_pca(p3, 1000);
  CHECK(all3.size() == 43);
  for (const Pca& chi : all3) CHECK(pca_valid(p3, chi));
}

TEST_CASE("uniform draws land in the valid set and cover it") {
  NeighborhoodLists nl = path3_lists();
  std::vector<Pca> all = enumerate_pca(nl, 1000);
  std::map<Pca, long long> freq;

  Rng rng(2024);
  const int kDraws = 43 * 400;
  for (int i = 0; i < kDraws; ++i) {
    Pca chi = sample_pca_uniform(nl, rng, 1000);
    CHECK(pca_valid(nl, chi));
    ++freq[chi];
  }
  CHECK(freq.size() == all.size());  // every member drawn at least once
  for (const auto& [chi, f] : freq) {
    CHECK(f > 400 / 4);  // crude sanity; the acceptance suite does chi-square
    CHECK(f < 400 * 4);
  }
}

TEST_CASE("color-class resampling only touches its own class") {
  NeighborhoodLists nl = path3_lists();
  std::vector<Pca> all = enumerate_pca(nl, 1000);
  Rng rng(7);

  for (const Pca& chi : all) {
    for (Color i : {0, 1, 2}) {
      Pca out = resample_color_class(nl, chi, i, rng, 1 << 20);
      REQUIRE(out.size() == chi.size());
      CHECK(pca_valid(nl, out));
      for (std::size_t u = 0; u < chi.size(); ++u) {
        const bool in_qi = (chi[u] == i || chi[u] == kBlank);
        if (!in_qi) {
          CHECK(out[u] == chi[u]);  // spectators keep their colors
        } else {
          CHECK((out[u] == i || out[u] == kBlank));  // class members move
        }
      }
    }
  }
}

TEST_CASE("blank extensions match brute force") {
  NeighborhoodLists nl = path3_lists();
  Pca chi = {kBlank, 2, kBlank};
  std::vector<int> positions = {0, 2};

  std::vector<Pca> ext = enumerate_blank_extensions(nl, chi, positions, 1000);
  // Brute force: valid colorings agreeing with chi off the positions and
  // non-Blank on them.
  std::vector<Pca> brute;
  for (const Pca& cand : enumerate_pca(nl, 1000)) {
    if (cand[1] != 2) continue;
    if (cand[0] == kBlank || cand[2] == kBlank) continue;
    brute.push_back(cand);
  }
  auto key = [](const Pca& p) { return p; };
  std::set<Pca> a, b;
  for (const Pca& p : ext) a.insert(key(p));
  for (const Pca& p : brute) b.insert(key(p));
  CHECK(a == b);
  CHECK(ext.size() == 4);  // {0,1} x {0,1}: color 2 is worn by the middle

  std::optional<Pca> least = extend_blank_assignment(nl, chi, positions);
  REQUIRE(least.has_value());
  CHECK(*least == Pca{0, 2, 0});

  // No admissible color left: single shared color on an edge.
  NeighborhoodLists tight;
  tight.variant = Variant::kCliqueFree;
  tight.members = {0, 1};
  tight.domains = {{2, kBlank}, {2, kBlank}};
  tight.cv = {2};
  tight.member_edges = {{0, 1}};
  CHECK_FALSE(
      extend_blank_assignment(tight, {kBlank, 2}, std::vector<int>{0}).has_value());
  CHECK(enumerate_blank_extensions(tight, {kBlank, 2}, {0}, 100).empty());
}

TEST_CASE("per-member choice counts") {
  NeighborhoodLists nl = path3_lists();
  CHECK(member_available_count(nl, {kBlank, kBlank, kBlank}, 0) == 3);
  CHECK(member_available_count(nl, {kBlank, 1, kBlank}, 0) == 2);
  CHECK(member_available_count(nl, {kBlank, 1, kBlank}, 2) == 2);
  CHECK(member_available_count(nl, {2, kBlank, 0}, 1) == 1);  // only 1 unworn
  CHECK(member_available_count(nl, {2, 1, kBlank}, 1) == 2);  // own color free
  CHECK(member_available_count(nl, {kBlank, 1, 0}, 1) == 2);
  CHECK_THROWS_AS(member_available_count(nl, {kBlank, 1, kBlank}, 5),
                  InvalidArgument);
}

TEST_CASE("resample-until-proper completion finishes slack instances") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    Graph g = generate("erase-triangles:40,0.15", seed);
    const int delta = g.max_degree();
    REQUIRE(delta >= 1);
    const int q = 10 * delta;
    ListAssignment lists = ListAssignment::uniform_random(g, q, 2 * q, seed);
    PartialColoring sigma = init_blank(g, lists);

    FlawParams fp;
    fp.variant = Variant::kTriangleFree;
    fp.L = q;
    REQUIRE(all_flaws(g, lists, sigma, fp).empty());

    Rng rng(Rng::derive(seed, "completion"));
    CompletionOutcome out = moser_tardos_complete(g, lists, sigma, fp, rng);
    CHECK(out.blank_at_entry == g.vertex_count());
    CHECK(is_proper_full(g, lists, sigma));
  }
}

TEST_CASE("completion rejects flawed inputs") {
  Graph g = single_edge();
  ListAssignment lists = same_list_everywhere(g, {5}, 6);
  PartialColoring sigma = init_blank(g, lists);

  FlawParams fp;
  fp.variant = Variant::kCliqueFree;
  fp.L = 5.0;  // |L_v| = 2 < 5: deficiency everywhere
  Rng rng(1);
  try {
    moser_tardos_complete(g, lists, sigma, fp, rng);
    FAIL("expected CompletionError");
  } catch (const CompletionError& e) {
    CHECK(e.kind == CompletionError::Kind::kPreconditionViolated);
  }
}

TEST_CASE("completion reports non-convergence on impossible instances") {
  // Both endpoints share the single frozen color: every round conflicts.
  Graph g = single_edge();
  ListAssignment lists = same_list_everywhere(g, {5}, 6);
  PartialColoring sigma = init_blank(g, lists);

  FlawParams fp;
  fp.variant = Variant::kCliqueFree;
  fp.L = 2.0;  // flaw-free: counts are 2, blank degrees 1
  REQUIRE(all_flaws(g, lists, sigma, fp).empty());

  Rng rng(1);
  try {
    moser_tardos_complete(g, lists, sigma, fp, rng, 50);
    FAIL("expected CompletionError");
  } catch (const CompletionError& e) {
    CHECK(e.kind == CompletionError::Kind::kIterationCapExceeded);
  }

  // Greedy jams on the same instance, naming the stuck vertex.
  PartialColoring sigma2 = init_blank(g, lists);
  try {
    greedy_complete(g, lists, sigma2, fp);
    FAIL("expected CompletionError");
  } catch (const CompletionError& e) {
    CHECK(e.kind == CompletionError::Kind::kGreedyStuck);
    CHECK(e.vertex == 1);
  }
}

TEST_CASE("greedy completion takes least colors in label order") {
  Graph g = path(6);
  ListAssignment lists = same_list_everywhere(g, {0, 1, 2}, 3);
  PartialColoring sigma = init_blank(g, lists);

  FlawParams fp;
  fp.variant = Variant::kCliqueFree;
  fp.L = 3.0;  // blank degrees <= 2 < 3, counts are 4: flaw-free
  REQUIRE(all_flaws(g, lists, sigma, fp).empty());

  CompletionOutcome out = greedy_complete(g, lists, sigma, fp);
  CHECK(out.blank_at_entry == 6);
  CHECK(sigma.data() == std::vector<Color>{0, 1, 0, 1, 0, 1});
  CHECK(is_proper_full(g, lists, sigma));
}

TEST_CASE("conflict-event diagnostic") {
  Graph g = single_edge();
  FlawParams fp;
  fp.variant = Variant::kTriangleFree;
  fp.L = 2.0;

  {  // five shared colors: mass 5 / 25 stays below a quarter
    ListAssignment lists = same_list_everywhere(g, {0, 1, 2, 3, 4}, 5);
    PartialColoring sigma = init_blank(g, lists);
    LocalLemmaReport rep = local_lemma_diagnostic(g, lists, sigma, fp);
    CHECK(rep.event_count == 5);
    CHECK(rep.max_dependency_mass == doctest::Approx(0.2));
    CHECK(rep.condition_holds);
  }
  {  // four shared colors: mass exactly a quarter, and the test is strict
    ListAssignment lists = same_list_everywhere(g, {0, 1, 2, 3}, 4);
    PartialColoring sigma = init_blank(g, lists);
    LocalLemmaReport rep = local_lemma_diagnostic(g, lists, sigma, fp);
    CHECK(rep.event_count == 4);
    CHECK(rep.max_dependency_mass == doctest::Approx(0.25));
    CHECK_FALSE(rep.condition_holds);
  }
  {  // colored vertices spawn no events
    ListAssignment lists = same_list_everywhere(g, {0, 1}, 2);
    PartialColoring sigma = init_blank(g, lists);
    sigma.set(0, 0);
    sigma.set(1, 1);
    LocalLemmaReport rep = local_lemma_diagnostic(g, lists, sigma, fp);
    CHECK(rep.event_count == 0);
  }
}

TEST_CASE("entropy ledger reconciles draws against log size") {
  Graph g = generate("erase-triangles:30,0.2", 2);
  ListAssignment lists = ListAssignment::uniform_random(g, 6, 12, 2);
  FixParams params = tf_params(3.0, 2);
  PipelineResult res = run_pipeline(g, lists, params);

  EntropyReport rep = entropy_report(res.stats, res.transcript);
  CHECK(rep.executions == res.stats.executions);
  CHECK(rep.lambda_log2 == doctest::Approx(res.stats.lambda_log2));
  CHECK(rep.transcript_bits == res.transcript.bit_size());
  CHECK(rep.margin_bits ==
        doctest::Approx(res.stats.lambda_log2 -
                        static_cast<double>(res.transcript.bit_size())));
}
