#include "colorfix/fix_triangle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "colorfix/completion.hpp"
#include "colorfix/errors.hpp"
#include "colorfix/fix_clique.hpp"
#include "enum_detail.hpp"

namespace colorfix {

CompletionMethod completion_method_from_string(const std::string& s) {
  if (s == "none") return CompletionMethod::kNone;
  if (s == "mt") return CompletionMethod::kMoserTardos;
  if (s == "greedy") return CompletionMethod::kGreedy;
  if (s == "greedy+mt") return CompletionMethod::kGreedyThenMoserTardos;
  throw InvalidArgument("unknown completion method: " + s);
}

std::string to_string(CompletionMethod m) {
  switch (m) {
    case CompletionMethod::kNone: return "none";
    case CompletionMethod::kMoserTardos: return "mt";
    case CompletionMethod::kGreedy: return "greedy";
    case CompletionMethod::kGreedyThenMoserTardos: return "greedy+mt";
  }
  return "?";
}

double recolor_neighborhood(const Graph& g, const ListAssignment& lists,
                            PartialColoring& sigma, Vertex v, Rng& rng) {
  const auto members = g.neighbors(v);
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (g.has_edge(members[i], members[j])) {
        throw InvalidArgument("recolor_neighborhood: neighborhood of vertex " +
                              std::to_string(v) + " is not independent");
      }
    }
  }
  // All lists before any redraw: the draws must see the entry state.
  std::vector<std::vector<Color>> domains;
  domains.reserve(members.size());
  for (Vertex u : members) domains.push_back(available_list(g, lists, sigma, u));
  double bits = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::vector<Color>& d = domains[i];
    sigma.set(members[i], d[rng.below(d.size())]);
    bits += std::log2(static_cast<double>(d.size()));
  }
  return bits;
}

NeighborhoodLists gather_neighborhood_lists(const Graph& g,
                                            const ListAssignment& lists,
                                            const PartialColoring& sigma,
                                            Vertex v, Variant variant) {
  NeighborhoodLists nl;
  nl.variant = variant;
  const auto members = g.neighbors(v);
  nl.members.assign(members.begin(), members.end());
  nl.domains.reserve(members.size());
  for (Vertex u : members) {
    nl.domains.push_back(variant == Variant::kTriangleFree
                             ? available_list(g, lists, sigma, u)
                             : external_list(g, lists, sigma, v, u));
  }
  const auto cv = lists.list(v);
  nl.cv.assign(cv.begin(), cv.end());
  for (std::size_t i = 0; i < nl.members.size(); ++i) {
    for (std::size_t j = i + 1; j < nl.members.size(); ++j) {
      if (g.has_edge(nl.members[i], nl.members[j])) {
        nl.member_edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return nl;
}

long long count_flawed_colorings(const NeighborhoodLists& nl,
                                 const FlawParams& params, long long budget) {
  long long count = 0;
  detail::for_each_candidate(nl, budget,
                             [&](const std::vector<Color>& chi, const std::vector<int>&) {
                               if (detail::chi_in_universe(nl, chi) &&
                                   detail::chi_flawed(nl, params, chi)) {
                                 ++count;
                               }
                               return true;
                             });
  return count;
}

long long flawed_colouring_rank(const NeighborhoodLists& nl,
                                const std::vector<Color>& chi,
                                const FlawParams& params, long long budget) {
  const std::vector<int> target = detail::digits_of(nl, chi);
  long long count = 0;
  std::optional<long long> found;
  detail::for_each_candidate(
      nl, budget, [&](const std::vector<Color>& cand, const std::vector<int>& digit) {
        const bool flawed =
            detail::chi_in_universe(nl, cand) && detail::chi_flawed(nl, params, cand);
        if (flawed) ++count;
        if (digit == target) {
          if (!flawed) return false;  // leaves found empty
          found = count;
          return false;
        }
        return true;
      });
  if (!found) throw TranscriptError("coloring is not a flawed member of its neighborhood enumeration");
  return *found;
}

std::vector<Color> flawed_colouring_unrank(const NeighborhoodLists& nl,
                                           long long index,
                                           const FlawParams& params,
                                           long long budget) {
  if (index < 1) throw TranscriptError("flawed coloring index must be >= 1");
  long long count = 0;
  std::optional<std::vector<Color>> found;
  detail::for_each_candidate(
      nl, budget, [&](const std::vector<Color>& cand, const std::vector<int>&) {
        if (detail::chi_in_universe(nl, cand) && detail::chi_flawed(nl, params, cand)) {
          if (++count == index) {
            found = cand;
            return false;
          }
        }
        return true;
      });
  if (!found) throw TranscriptError("flawed coloring index out of range");
  return *found;
}

namespace {

struct EngineFrame {
  Flaw flaw{FlawKind::kB, 0};
  ScanBall ball;
  std::optional<Flaw> cursor;
  std::vector<Color> entry_sigma;  // full snapshot, kept when checking
  std::vector<Vertex> touched;     // vertices this frame's subtree recolored
};

// The recursive repair loop, shared by both variants.  One engine serves a
// whole run: it owns the scan workspace and the per-call budgets.
class FixEngine {
 public:
  FixEngine(const Graph& g, const ListAssignment& lists, PartialColoring& sigma,
            const FixParams& params, RunStats& stats, Transcript* transcript)
      : g_(g),
        lists_(lists),
        sigma_(sigma),
        params_(params),
        stats_(stats),
        transcript_(transcript),
        scanner_(g, lists, sigma) {
    cap_ = params.max_executions > 0 ? params.max_executions
                                     : 2ll * g.vertex_count();
    if (params_.flaw.variant == Variant::kCliqueFree && params_.flaw.r < 3) {
      throw InvalidArgument("clique variant needs r >= 3");
    }
  }

  FlawScanner& scanner() { return scanner_; }

  void run_call(Flaw root, Rng& rng) {
    if (!scanner_.holds(root, params_.flaw)) {
      throw InvalidArgument("fix called on a flaw that does not hold");
    }
    ++stats_.top_level_calls;
    call_execs_ = 0;
    CallSegment segment;
    segment.root = root;
    const bool logging =
        transcript_ != nullptr && params_.transcript_mode != TranscriptMode::kOff;
    seg_ = logging ? &segment : nullptr;

    std::vector<EngineFrame> stack;
    push_frame(stack, root, rng);
    while (!stack.empty()) {
      EngineFrame& top = stack.back();
      std::optional<Flaw> child =
          scanner_.least_in_ball(top.ball, params_.flaw, top.cursor);
      if (params_.paranoid) cross_check_scan(top.ball, child);
      if (child) {
        top.cursor = child;
        if (seg_) {
          seg_->records.push_back(
              TranscriptRecord::fix_call(child->kind, omega_index(top.ball, child->vertex)));
        }
        push_frame(stack, *child, rng);
      } else {
        if (seg_) seg_->records.push_back(TranscriptRecord::ret());
        pop_frame(stack);
      }
    }
    if (scanner_.holds(root, params_.flaw)) {
      throw Error("postcondition violated: repaired flaw still holds");
    }
    stats_.max_call_executions = std::max(stats_.max_call_executions, call_execs_);
    if (seg_) {
      segment.executions = call_execs_;
      transcript_->segments.push_back(std::move(segment));
      seg_ = nullptr;
    }
  }

 private:
  static long long omega_index(const ScanBall& ball, Vertex v) {
    auto it = std::lower_bound(ball.verts.begin(), ball.verts.end(), v);
    if (it == ball.verts.end() || *it != v) {
      throw Error("internal: child vertex missing from its parent's ball");
    }
    return (it - ball.verts.begin()) + 1;
  }

  void push_frame(std::vector<EngineFrame>& stack, Flaw f, Rng& rng) {
    ++stats_.total_calls;
    ++(f.kind == FlawKind::kB ? stats_.b_calls : stats_.z_calls);
    EngineFrame frame;
    frame.flaw = f;
    frame.ball = make_scan_ball(g_, f.vertex, 3);
    if (params_.check_observations) {
      if (params_.flaw.variant == Variant::kCliqueFree && f.kind == FlawKind::kZ) {
        check_z_entry(f.vertex);
      }
      frame.entry_sigma = sigma_.data();
    }
    stack.push_back(std::move(frame));
    execute(stack.back(), rng);
  }

  // One redraw of N_v -- the only randomness in a call.
  void execute(EngineFrame& frame, Rng& rng) {
    if (call_execs_ >= cap_) throw ExecutionCapExceeded(call_execs_);
    const Vertex v = frame.flaw.vertex;
    const auto members = g_.neighbors(v);
    if (params_.debug_trace) {
      params_.debug_trace->push_back({frame.flaw, sigma_.data()});
    }
    if (seg_) record_colours(v, members);
    if (params_.flaw.variant == Variant::kTriangleFree) {
      execute_tf(members, rng);
    } else {
      execute_kr(v, members, rng);
    }
    frame.touched.insert(frame.touched.end(), members.begin(), members.end());
    scanner_.invalidate();
    ++call_execs_;
    ++stats_.executions;
  }

  void record_colours(Vertex v, std::span<const Vertex> members) {
    std::vector<Color> pre;
    pre.reserve(members.size());
    for (Vertex u : members) pre.push_back(sigma_.color(u));
    if (params_.transcript_mode == TranscriptMode::kRaw) {
      seg_->records.push_back(TranscriptRecord::colours_raw(std::move(pre)));
    } else {
      NeighborhoodLists nl =
          gather_neighborhood_lists(g_, lists_, sigma_, v, params_.flaw.variant);
      const long long idx =
          flawed_colouring_rank(nl, pre, params_.flaw, params_.enumeration_budget);
      seg_->records.push_back(TranscriptRecord::colours_compressed(idx));
    }
  }

  void execute_tf(std::span<const Vertex> members, Rng& rng) {
    // Touch every mask first: later sigma writes must not leak into the
    // domains, and the scanner caches per epoch, so these stay the entry
    // lists until invalidate().
    std::vector<int> counts(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      counts[i] = scanner_.avail_count(members[i]);
    }
    double bits = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const Vertex u = members[i];
      const int cnt = counts[i];
      const auto idx = static_cast<int>(rng.below(static_cast<std::uint64_t>(cnt)));
      sigma_.set(u, idx + 1 == cnt ? kBlank : scanner_.avail_mask(u).nth(idx));
      bits += std::log2(static_cast<double>(cnt));
    }
    stats_.lambda_log2 += bits;
    if (params_.paranoid) {
      // The redraw touches N_v only, and in a triangle-free graph members of
      // N_v have no neighbors inside N_v, so each member's list must be
      // unchanged.
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (available_count(g_, lists_, sigma_, members[i]) != counts[i]) {
          throw Error("paranoid: a redraw changed a list inside its own neighborhood");
        }
      }
    }
  }

  void execute_kr(Vertex v, std::span<const Vertex> members, Rng& rng) {
    NeighborhoodLists nl =
        gather_neighborhood_lists(g_, lists_, sigma_, v, Variant::kCliqueFree);
    const Pca chi = sample_pca_uniform(nl, rng, params_.enumeration_budget);
    double bits = 0.0;
    for (const std::vector<Color>& d : nl.domains) {
      bits += std::log2(static_cast<double>(d.size()));
    }
    stats_.lambda_log2 += bits;
    for (std::size_t i = 0; i < members.size(); ++i) sigma_.set(members[i], chi[i]);
  }

  // Entry invariant of clique-variant Z calls: the scan order guarantees no
  // neighbor has a deficient list, which in turn keeps every outside list at
  // least as large (it drops fewer colors).
  void check_z_entry(Vertex v) {
    for (Vertex w : g_.neighbors(v)) {
      const int avail = scanner_.avail_count(w);
      if (static_cast<double>(avail) < params_.flaw.L) {
        throw Error("entry invariant violated: deficient neighbor list at a Z call");
      }
      const int outside = external_mask(g_, lists_, sigma_, v, w).count() + 1;
      if (outside < avail) {
        throw Error("entry invariant violated: outside list smaller than available list");
      }
    }
  }

  void pop_frame(std::vector<EngineFrame>& stack) {
    EngineFrame frame = std::move(stack.back());
    stack.pop_back();
    if (params_.check_observations) exit_checks(frame);
    if (!stack.empty()) {
      std::vector<Vertex>& parent = stack.back().touched;
      parent.insert(parent.end(), frame.touched.begin(), frame.touched.end());
      std::sort(parent.begin(), parent.end());
      parent.erase(std::unique(parent.begin(), parent.end()), parent.end());
    }
  }

  // Post-return contract: the call repaired its own flaw and every flaw
  // holding now already held at entry.  Only flaws whose inputs a redraw
  // touched can have changed, and inputs reach distance 2 from a recolored
  // vertex (triangle-free Z reads neighbors' lists) or 1 (everything else),
  // so scanning a small ball around the touched set is exhaustive.
  void exit_checks(const EngineFrame& frame) {
    ++stats_.postcondition_checks;
    if (scanner_.holds(frame.flaw, params_.flaw)) {
      throw Error("postcondition violated: flaw survived its repair call");
    }
    const int depth = params_.flaw.variant == Variant::kTriangleFree ? 2 : 1;
    std::vector<Vertex> frontier(frame.touched);
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
    std::vector<Vertex> candidates = frontier;
    for (int d = 0; d < depth; ++d) {
      std::vector<Vertex> next;
      for (Vertex w : frontier) {
        const auto nb = g_.neighbors(w);
        next.insert(next.end(), nb.begin(), nb.end());
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      candidates.insert(candidates.end(), next.begin(), next.end());
      frontier = std::move(next);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::optional<PartialColoring> entry;
    for (Vertex w : candidates) {
      for (FlawKind kind : {FlawKind::kB, FlawKind::kZ}) {
        const Flaw cand{kind, w};
        if (cand == frame.flaw) continue;  // repaired above
        if (!scanner_.holds(cand, params_.flaw)) continue;
        if (!entry) {
          entry.emplace(g_.vertex_count());
          entry->restore(frame.entry_sigma);
        }
        if (!flaw_holds(g_, lists_, *entry, cand, params_.flaw)) {
          throw Error("postcondition violated: a repair call introduced a new flaw");
        }
      }
    }
  }

  void cross_check_scan(const ScanBall& ball, const std::optional<Flaw>& got) {
    FlawScanner fresh(g_, lists_, sigma_);
    const std::optional<Flaw> scratch = fresh.least_in_ball(ball, params_.flaw);
    if (scratch != got) {
      throw Error("paranoid: cursor-resumed scan diverged from a from-scratch scan");
    }
  }

  const Graph& g_;
  const ListAssignment& lists_;
  PartialColoring& sigma_;
  const FixParams& params_;
  RunStats& stats_;
  Transcript* transcript_;
  FlawScanner scanner_;
  CallSegment* seg_ = nullptr;
  long long cap_ = 0;
  long long call_execs_ = 0;
};

void stamp_transcript_meta(Transcript& t, const FixParams& params, Vertex n) {
  t.mode = params.transcript_mode;
  t.variant = params.flaw.variant;
  t.n = n;
}

void validate_instance(const Graph& g, const ListAssignment& lists,
                       const FixParams& params) {
  if (lists.vertex_count() != g.vertex_count()) {
    throw InvalidArgument("list assignment size does not match the graph");
  }
  if (params.retry_budget < 0 || params.retry_budget >= 64) {
    throw InvalidArgument("retry budget must be in [0, 63]");
  }
  if (params.flaw.variant == Variant::kTriangleFree) {
    if (!g.is_triangle_free()) {
      throw InvalidArgument("triangle-free variant run on a graph with a triangle");
    }
  } else {
    if (params.flaw.r < 3) throw InvalidArgument("clique variant needs r >= 3");
    if (!g.clique_number_at_most(params.flaw.r - 1)) {
      throw InvalidArgument("clique variant: graph contains a clique of forbidden size");
    }
  }
}

}  // namespace

void fix(const Graph& g, const ListAssignment& lists, PartialColoring& sigma,
         Flaw f, const FixParams& params, Rng& rng, RunStats* stats,
         Transcript* transcript) {
  RunStats local;
  RunStats& s = stats ? *stats : local;
  if (transcript) stamp_transcript_meta(*transcript, params, g.vertex_count());
  FixEngine engine(g, lists, sigma, params, s, transcript);
  engine.run_call(f, rng);
  if (transcript && params.transcript_mode != TranscriptMode::kOff) {
    s.transcript_bits = transcript->bit_size();
  }
}

PipelineResult run_pipeline(const Graph& g, const ListAssignment& lists,
                            const FixParams& params, CompletionMethod completion) {
  validate_instance(g, lists, params);
  PipelineResult result;
  RunStats& stats = result.stats;
  PartialColoring sigma = init_blank(g, lists);
  Transcript* tr = nullptr;
  if (params.transcript_mode != TranscriptMode::kOff) {
    stamp_transcript_meta(result.transcript, params, g.vertex_count());
    tr = &result.transcript;
  }
  FixEngine engine(g, lists, sigma, params, stats, tr);

  // Every flaw of the all-blank coloring, in repair order.  Calls never
  // introduce flaws, so this initial list stays a superset of the live flaw
  // set; entries are recheck-ed when their turn comes.
  const std::vector<Flaw> candidates = engine.scanner().all(params.flaw);
  stats.initial_flaws = static_cast<long long>(candidates.size());
  const std::uint64_t call_base = Rng::derive(params.seed, "recolor");
  std::uint64_t call_index = 0;
  for (const Flaw f : candidates) {
    if (!engine.scanner().holds(f, params.flaw)) {
      ++call_index;
      continue;
    }
    const std::vector<Color> snapshot = sigma.data();
    for (int attempt = 0;; ++attempt) {
      Rng rng(Rng::derive(call_base, "call", call_index * 64 + attempt));
      try {
        engine.run_call(f, rng);
        break;
      } catch (const ExecutionCapExceeded&) {
        ++stats.retries;
        if (attempt >= params.retry_budget) throw;
        sigma.restore(snapshot);
        engine.scanner().invalidate();
      }
    }
    ++call_index;
  }
  if (!engine.scanner().all(params.flaw).empty()) {
    throw Error("internal: flaws remain after the repair phase");
  }
  result.flaw_free = sigma;

  CompletionOutcome comp{};
  switch (completion) {
    case CompletionMethod::kNone:
      break;
    case CompletionMethod::kMoserTardos: {
      Rng crng(Rng::derive(params.seed, "completion"));
      comp = moser_tardos_complete(g, lists, sigma, params.flaw, crng);
      stats.used_moser_tardos = true;
      break;
    }
    case CompletionMethod::kGreedy:
      comp = greedy_complete(g, lists, sigma, params.flaw);
      stats.used_greedy = true;
      break;
    case CompletionMethod::kGreedyThenMoserTardos:
      try {
        comp = greedy_complete(g, lists, sigma, params.flaw);
        stats.used_greedy = true;
      } catch (const CompletionError& e) {
        if (e.kind != CompletionError::Kind::kGreedyStuck) throw;
        stats.used_greedy = true;
        stats.greedy_fell_back = true;
        sigma.restore(result.flaw_free.data());
        Rng crng(Rng::derive(params.seed, "completion"));
        comp = moser_tardos_complete(g, lists, sigma, params.flaw, crng);
        stats.used_moser_tardos = true;
      }
      break;
  }
  stats.completion_resamples = comp.resample_rounds;
  if (completion != CompletionMethod::kNone) {
    std::string why;
    if (!is_proper_full(g, lists, sigma, &why)) {
      throw Error("completion produced an invalid coloring: " + why);
    }
  }
  if (tr) stats.transcript_bits = tr->bit_size();
  result.coloring = std::move(sigma);
  return result;
}

CallReconstruction reconstruct_call(const Graph& g, const ListAssignment& lists,
                                    const std::vector<Color>& sigma_end,
                                    const CallSegment& segment,
                                    const FixParams& params) {
  if (static_cast<Vertex>(sigma_end.size()) != g.vertex_count()) {
    throw TranscriptError("final coloring size does not match the graph");
  }
  // Forward structural pass: rebuild the call tree and attach each colours
  // record to the flaw whose redraw it logged.
  struct ParseFrame {
    Flaw flaw{FlawKind::kB, 0};
    std::vector<Vertex> ball;
  };
  std::vector<ParseFrame> stack;
  std::vector<Flaw> flaw_seq;
  std::vector<const TranscriptRecord*> colour_recs;
  const auto& recs = segment.records;
  std::size_t i = 0;
  auto open_call = [&](Flaw f) {
    if (i >= recs.size() || recs[i].type != TranscriptRecord::Type::kColours) {
      throw TranscriptError("every call must open with its colours record");
    }
    flaw_seq.push_back(f);
    colour_recs.push_back(&recs[i]);
    ++i;
    stack.push_back({f, g.within_distance(f.vertex, 3)});
  };
  open_call(segment.root);
  while (!stack.empty()) {
    if (i >= recs.size()) throw TranscriptError("unterminated call in transcript segment");
    const TranscriptRecord& r = recs[i];
    if (r.type == TranscriptRecord::Type::kFixCall) {
      ++i;
      const std::vector<Vertex>& ball = stack.back().ball;
      if (r.ell < 1 || r.ell > static_cast<long long>(ball.size())) {
        throw TranscriptError("call record address outside the caller's ball");
      }
      open_call(Flaw{r.kind, ball[static_cast<std::size_t>(r.ell) - 1]});
    } else if (r.type == TranscriptRecord::Type::kReturn) {
      ++i;
      stack.pop_back();
    } else {
      throw TranscriptError("unexpected colours record inside a call body");
    }
  }
  if (i != recs.size()) throw TranscriptError("records remain after the call tree closed");
  const long long t = static_cast<long long>(flaw_seq.size());
  if (segment.executions != t) {
    throw TranscriptError("segment header redraw count does not match its records");
  }

  CallReconstruction out;
  out.root = segment.root;
  out.flaw_sequence = flaw_seq;
  out.colorings.assign(static_cast<std::size_t>(t) + 1, {});
  out.colorings[static_cast<std::size_t>(t)] = sigma_end;

  // Backward pass.  A redraw of N_v cannot change the lists of members of
  // N_v (triangle-free: their neighborhoods avoid N_v; clique variant:
  // outside lists ignore N_v by construction), so domains computed from the
  // post-redraw state equal the domains the redraw actually used.
  std::vector<Color> work = sigma_end;
  PartialColoring probe(g.vertex_count());
  for (long long step = t - 1; step >= 0; --step) {
    const Vertex v = flaw_seq[static_cast<std::size_t>(step)].vertex;
    const auto members = g.neighbors(v);
    const TranscriptRecord& rec = *colour_recs[static_cast<std::size_t>(step)];
    if (rec.index >= 0) {
      probe.restore(work);
      NeighborhoodLists nl =
          gather_neighborhood_lists(g, lists, probe, v, params.flaw.variant);
      const std::vector<Color> chi =
          flawed_colouring_unrank(nl, rec.index, params.flaw, params.enumeration_budget);
      for (std::size_t k = 0; k < members.size(); ++k) work[members[k]] = chi[k];
    } else {
      if (rec.raw.size() != members.size()) {
        throw TranscriptError("colours record length does not match the neighborhood");
      }
      for (std::size_t k = 0; k < members.size(); ++k) {
        const Color c = rec.raw[k];
        if (c != kBlank && !lists.vertex_has_color(members[k], c)) {
          throw TranscriptError("recorded color is not on its vertex's list");
        }
        work[members[k]] = c;
      }
    }
    probe.restore(work);
    if (!flaw_holds(g, lists, probe, flaw_seq[static_cast<std::size_t>(step)], params.flaw)) {
      throw TranscriptError("reconstructed state does not exhibit the recorded flaw");
    }
    out.colorings[static_cast<std::size_t>(step)] = work;
  }
  return out;
}

RunReconstruction reconstruct(const Graph& g, const ListAssignment& lists,
                              const PartialColoring& sigma_initial,
                              const Transcript& transcript,
                              const PartialColoring& sigma_final,
                              const FixParams& params) {
  RunReconstruction out;
  out.calls.resize(transcript.segments.size());
  std::vector<Color> cursor = sigma_final.data();
  for (std::size_t s = transcript.segments.size(); s-- > 0;) {
    out.calls[s] = reconstruct_call(g, lists, cursor, transcript.segments[s], params);
    cursor = out.calls[s].colorings.front();
  }
  if (cursor != sigma_initial.data()) {
    throw TranscriptError("reconstructed run does not reach the given initial coloring");
  }
  return out;
}

EntropyReport entropy_report(const RunStats& stats, const Transcript& transcript) {
  EntropyReport rep;
  rep.executions = stats.executions;
  rep.lambda_log2 = stats.lambda_log2;
  rep.transcript_bits = transcript.bit_size();
  rep.margin_bits = rep.lambda_log2 - static_cast<double>(rep.transcript_bits);
  rep.margin_per_execution =
      rep.executions > 0 ? rep.margin_bits / static_cast<double>(rep.executions) : 0.0;
  return rep;
}

}  // namespace colorfix
