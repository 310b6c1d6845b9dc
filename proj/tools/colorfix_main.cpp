// colorfix: list-coloring by recursive neighborhood resampling.
//
// Subcommands:
//   color        run the full pipeline (repair every flaw, then complete)
//   verify       check a coloring file (proper / partial / flaw-free)
//   flaws        enumerate holding flaws with their margins
//   complete     finish a flaw-free partial coloring
//   reconstruct  replay a transcript backwards and recover every state
//   gen          emit a generated graph as a file
//   bench        quick wall-clock pipeline scaling table
//   lab          exact/Monte-Carlo validation experiments (see lab --help)
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget hit.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "colorfix/completion.hpp"
#include "colorfix/errors.hpp"
#include "colorfix/generators.hpp"
#include "colorfix/io.hpp"
#include "colorfix/rng.hpp"
#include "tool_common.hpp"

namespace colorfix::tool {
namespace {

// ---------------------------------------------------------------- color ----
struct ColorOpts {
  RunConfig cfg;
  std::string out;
  std::string transcript_out;
  bool quiet = false;
};

int cmd_color(const ColorOpts& opt) {
  LoadedInstance inst = load_instance(opt.cfg);
  const FixParams params = make_fix_params(opt.cfg, inst.resolved);
  PipelineResult result =
      run_pipeline(inst.graph, inst.lists, params, resolve_completion(opt.cfg));

  ordered_json doc = document_header("color", opt.cfg, inst.resolved);
  doc["stats"] = stats_to_json(result.stats);
  if (params.transcript_mode != TranscriptMode::kOff) {
    const EntropyReport er = entropy_report(result.stats, result.transcript);
    ordered_json ej;
    ej["executions"] = er.executions;
    ej["lambda_log2"] = er.lambda_log2;
    ej["transcript_bits"] = er.transcript_bits;
    ej["margin_bits"] = er.margin_bits;
    ej["margin_per_execution"] = er.margin_per_execution;
    doc["entropy"] = ej;
  }
  doc["flaw_free"] = coloring_to_json(result.flaw_free, inst.lists);
  doc["coloring"] = coloring_to_json(result.coloring, inst.lists);
  emit_document(doc, opt.out);

  if (!opt.transcript_out.empty())
    save_transcript(result.transcript, opt.transcript_out);
  if (!opt.quiet && !opt.out.empty())
    std::cerr << "colorfix color: ok, " << result.stats.top_level_calls
              << " repair calls, " << result.stats.executions
              << " redraws, wrote " << opt.out << '\n';
  return kExitOk;
}

// --------------------------------------------------------------- verify ----
struct VerifyOpts {
  RunConfig cfg;
  std::string coloring_path;
  std::string select = "coloring";
  bool allow_partial = false;
  bool flaw_free = false;
  std::string out;
};

int cmd_verify(const VerifyOpts& opt) {
  LoadedInstance inst = load_instance(opt.cfg);
  const PartialColoring sigma =
      read_coloring_file(opt.coloring_path, inst.lists, opt.select);

  std::string why;
  const bool proper =
      opt.allow_partial
          ? is_proper_partial(inst.graph, inst.lists, sigma, &why)
          : is_proper_full(inst.graph, inst.lists, sigma, &why);

  ordered_json doc = document_header("verify", opt.cfg, inst.resolved);
  doc["coloring_file"] = opt.coloring_path;
  doc["proper"] = proper;
  if (!proper) doc["why"] = why;

  bool ok = proper;
  if (opt.flaw_free) {
    const FlawParams fp = make_flaw_params(opt.cfg, inst.resolved);
    const auto flaws = all_flaws(inst.graph, inst.lists, sigma, fp);
    doc["flaw_count"] = flaws.size();
    ok = ok && flaws.empty();
  }
  doc["ok"] = ok;
  emit_document(doc, opt.out);
  return ok ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------- flaws ----
struct FlawsOpts {
  RunConfig cfg;
  std::string coloring_path;  // empty = all-blank start state
  std::string select = "coloring";
  std::string out;
};

int cmd_flaws(const FlawsOpts& opt) {
  LoadedInstance inst = load_instance(opt.cfg);
  PartialColoring sigma(inst.graph.vertex_count());
  if (!opt.coloring_path.empty())
    sigma = read_coloring_file(opt.coloring_path, inst.lists, opt.select);

  const FlawParams fp = make_flaw_params(opt.cfg, inst.resolved);
  FlawScanner scanner(inst.graph, inst.lists, sigma);
  const auto flaws = scanner.all(fp);

  ordered_json doc = document_header("flaws", opt.cfg, inst.resolved);
  ordered_json arr = ordered_json::array();
  for (const Flaw& f : flaws) {
    ordered_json fj;
    fj["kind"] = f.kind == FlawKind::kB ? "B" : "Z";
    fj["vertex"] = f.vertex;
    const int avail = scanner.avail_count(f.vertex);
    if (f.kind == FlawKind::kB) {
      fj["available"] = avail;
      fj["threshold"] = fp.L;
    } else if (fp.variant == Variant::kTriangleFree) {
      fj["blank_pressure"] = scanner.blank_pressure(f.vertex);
      fj["threshold"] = fp.L * avail / 10.0;
    } else {
      fj["blank_neighbors"] = scanner.blank_neighbor_count(f.vertex);
      fj["threshold"] = fp.L;
    }
    arr.push_back(std::move(fj));
  }
  doc["flaw_count"] = flaws.size();
  doc["flaws"] = std::move(arr);
  emit_document(doc, opt.out);
  return kExitOk;
}

// ------------------------------------------------------------- complete ----
struct CompleteOpts {
  RunConfig cfg;
  std::string coloring_path;
  std::string select = "flaw_free";
  std::string method = "mt";
  long long iteration_cap = 0;
  bool diagnose = false;
  std::string out;
};

int cmd_complete(const CompleteOpts& opt) {
  LoadedInstance inst = load_instance(opt.cfg);
  PartialColoring sigma =
      read_coloring_file(opt.coloring_path, inst.lists, opt.select);
  const FlawParams fp = make_flaw_params(opt.cfg, inst.resolved);

  ordered_json doc = document_header("complete", opt.cfg, inst.resolved);
  doc["method"] = opt.method;

  if (opt.diagnose) {
    const LocalLemmaReport rep =
        local_lemma_diagnostic(inst.graph, inst.lists, sigma, fp);
    ordered_json dj;
    dj["event_count"] = rep.event_count;
    dj["max_dependency_mass"] = rep.max_dependency_mass;
    dj["max_formula_bound"] = rep.max_formula_bound;
    dj["condition_holds"] = rep.condition_holds;
    doc["diagnostic"] = dj;
  }

  CompletionOutcome outcome;
  const CompletionMethod method = completion_method_from_string(opt.method);
  Rng rng(Rng::derive(opt.cfg.seed, "completion"));
  switch (method) {
    case CompletionMethod::kMoserTardos:
      outcome = moser_tardos_complete(inst.graph, inst.lists, sigma, fp, rng,
                                      opt.iteration_cap);
      break;
    case CompletionMethod::kGreedy:
      outcome = greedy_complete(inst.graph, inst.lists, sigma, fp);
      break;
    case CompletionMethod::kGreedyThenMoserTardos: {
      const PartialColoring entry = sigma;
      try {
        outcome = greedy_complete(inst.graph, inst.lists, sigma, fp);
      } catch (const CompletionError& e) {
        if (e.kind != CompletionError::Kind::kGreedyStuck) throw;
        sigma = entry;
        outcome = moser_tardos_complete(inst.graph, inst.lists, sigma, fp, rng,
                                        opt.iteration_cap);
      }
      break;
    }
    case CompletionMethod::kNone:
      throw InvalidArgument("complete: method \"none\" does nothing");
  }

  std::string why;
  if (!is_proper_full(inst.graph, inst.lists, sigma, &why))
    throw Error("completion produced an improper coloring: " + why);

  doc["blank_at_entry"] = outcome.blank_at_entry;
  doc["resample_rounds"] = outcome.resample_rounds;
  doc["coloring"] = coloring_to_json(sigma, inst.lists);
  emit_document(doc, opt.out);
  return kExitOk;
}

// ---------------------------------------------------------- reconstruct ----
struct ReconstructOpts {
  RunConfig cfg;
  std::string transcript_path;
  std::string final_path;
  std::string select = "flaw_free";
  std::string initial_path;  // empty = all-blank
  std::string dump_path;     // optional full state dump
  std::string out;
};

int cmd_reconstruct(const ReconstructOpts& opt) {
  LoadedInstance inst = load_instance(opt.cfg);
  const Transcript transcript = load_transcript(opt.transcript_path);
  const PartialColoring sigma_final =
      read_coloring_file(opt.final_path, inst.lists, opt.select);
  PartialColoring sigma_initial(inst.graph.vertex_count());
  if (!opt.initial_path.empty())
    sigma_initial = read_coloring_file(opt.initial_path, inst.lists, "coloring");

  const FixParams params = make_fix_params(opt.cfg, inst.resolved);
  const RunReconstruction rec = reconstruct(inst.graph, inst.lists,
                                            sigma_initial, transcript,
                                            sigma_final, params);

  ordered_json doc = document_header("reconstruct", opt.cfg, inst.resolved);
  doc["transcript_file"] = opt.transcript_path;
  doc["segments"] = transcript.segments.size();
  doc["total_executions"] = transcript.total_executions();
  doc["transcript_bits"] = transcript.bit_size();
  ordered_json calls = ordered_json::array();
  for (const CallReconstruction& c : rec.calls) {
    ordered_json cj;
    cj["root_kind"] = c.root.kind == FlawKind::kB ? "B" : "Z";
    cj["root_vertex"] = c.root.vertex;
    cj["executions"] = c.flaw_sequence.size();
    calls.push_back(std::move(cj));
  }
  doc["calls"] = std::move(calls);
  doc["ok"] = true;
  emit_document(doc, opt.out);

  if (!opt.dump_path.empty()) {
    ordered_json dump = ordered_json::array();
    for (const CallReconstruction& c : rec.calls) {
      ordered_json states = ordered_json::array();
      for (const auto& chi : c.colorings) {
        ordered_json row = ordered_json::array();
        for (Color col : chi)
          row.push_back(col == kBlank ? ordered_json(nullptr)
                                      : ordered_json(col));
        states.push_back(std::move(row));
      }
      dump.push_back(std::move(states));
    }
    write_text_file(opt.dump_path, dump.dump() + "\n");
  }
  return kExitOk;
}

// ------------------------------------------------------------------ gen ----
struct GenOpts {
  std::string descriptor;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "dimacs";
};

int cmd_gen(const GenOpts& opt) {
  const Graph g = generate(opt.descriptor, Rng::derive(opt.seed, "generate"));
  const GraphFormat fmt = graph_format_from_string(opt.format);
  if (!opt.out.empty())
    write_graph(g, opt.out, fmt);
  else
    std::cout << format_graph(g, fmt);
  std::cerr << "colorfix gen: " << opt.descriptor << " seed " << opt.seed
            << ": n=" << g.vertex_count() << " m=" << g.edge_count()
            << " max_degree=" << g.max_degree()
            << (g.is_triangle_free() ? " triangle-free" : "") << '\n';
  return kExitOk;
}

// ----------------------------------------------------------------- bench ----
struct BenchOpts {
  RunConfig cfg;
  int repeats = 3;
  std::string out;
};

int cmd_bench(const BenchOpts& opt) {
  using clock = std::chrono::steady_clock;
  LoadedInstance inst = load_instance(opt.cfg);
  ordered_json doc = document_header("bench", opt.cfg, inst.resolved);
  ordered_json rows = ordered_json::array();
  for (int rep = 0; rep < opt.repeats; ++rep) {
    RunConfig cfg = opt.cfg;
    cfg.seed = opt.cfg.seed + static_cast<std::uint64_t>(rep);
    LoadedInstance run_inst = rep == 0 ? std::move(inst) : load_instance(cfg);
    const FixParams params = make_fix_params(cfg, run_inst.resolved);
    const auto t0 = clock::now();
    PipelineResult result = run_pipeline(run_inst.graph, run_inst.lists,
                                         params, resolve_completion(cfg));
    const auto t1 = clock::now();
    ordered_json row;
    row["seed"] = cfg.seed;
    row["n"] = run_inst.graph.vertex_count();
    row["max_degree"] = run_inst.graph.max_degree();
    row["initial_flaws"] = result.stats.initial_flaws;
    row["executions"] = result.stats.executions;
    row["retries"] = result.stats.retries;
    row["ms"] =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    rows.push_back(std::move(row));
  }
  doc["runs"] = std::move(rows);
  emit_document(doc, opt.out);
  return kExitOk;
}

}  // namespace
}  // namespace colorfix::tool

int main(int argc, char** argv) {
  using namespace colorfix::tool;

  CLI::App app{"list coloring by recursive neighborhood resampling"};
  app.require_subcommand(1);
  int rc = kExitOk;

  auto color_opts = std::make_shared<ColorOpts>();
  {
    CLI::App* c = app.add_subcommand("color", "run the full coloring pipeline");
    add_instance_flags(*c, color_opts->cfg);
    c->add_option("--cap", color_opts->cfg.cap,
                  "per-call redraw cap (0 = twice the vertex count)");
    c->add_option("--retries", color_opts->cfg.retries,
                  "fresh-seed retries per capped call");
    c->add_option("--transcript", color_opts->cfg.transcript_mode,
                  "off | raw | compressed");
    c->add_option("--transcript-out", color_opts->transcript_out,
                  "write the run transcript (jsonl) here");
    c->add_option("--completion", color_opts->cfg.completion,
                  "default | none | mt | greedy | greedy+mt");
    c->add_flag("--check", color_opts->cfg.check_observations,
                "verify call postconditions during the run");
    c->add_flag("--paranoid", color_opts->cfg.paranoid,
                "cross-check every incremental scan (slow)");
    c->add_option("-o,--out", color_opts->out,
                  "run document path (default: stdout)");
    c->add_flag("--quiet", color_opts->quiet, "suppress the status line");
    c->callback([&rc, color_opts] {
      rc = run_guarded("colorfix color", [&] { return cmd_color(*color_opts); });
    });
  }

  auto verify_opts = std::make_shared<VerifyOpts>();
  {
    CLI::App* c = app.add_subcommand("verify", "check a coloring file");
    add_instance_flags(*c, verify_opts->cfg);
    c->add_option("--coloring", verify_opts->coloring_path,
                  "coloring file (bare mapping or run document)")
        ->required();
    c->add_option("--select", verify_opts->select,
                  "key to pick from a run document (default: coloring)");
    c->add_flag("--allow-partial", verify_opts->allow_partial,
                "accept Blank vertices (checks properness only)");
    c->add_flag("--flaw-free", verify_opts->flaw_free,
                "additionally require that no flaw holds");
    c->add_option("-o,--out", verify_opts->out, "verdict document path");
    c->callback([&rc, verify_opts] {
      rc = run_guarded("colorfix verify",
                       [&] { return cmd_verify(*verify_opts); });
    });
  }

  auto flaws_opts = std::make_shared<FlawsOpts>();
  {
    CLI::App* c = app.add_subcommand("flaws", "enumerate holding flaws");
    add_instance_flags(*c, flaws_opts->cfg);
    c->add_option("--coloring", flaws_opts->coloring_path,
                  "coloring file (default: the all-blank start state)");
    c->add_option("--select", flaws_opts->select,
                  "key to pick from a run document");
    c->add_option("-o,--out", flaws_opts->out, "report path");
    c->callback([&rc, flaws_opts] {
      rc = run_guarded("colorfix flaws", [&] { return cmd_flaws(*flaws_opts); });
    });
  }

  auto complete_opts = std::make_shared<CompleteOpts>();
  {
    CLI::App* c =
        app.add_subcommand("complete", "finish a flaw-free partial coloring");
    add_instance_flags(*c, complete_opts->cfg);
    c->add_option("--coloring", complete_opts->coloring_path,
                  "flaw-free partial coloring (bare mapping or run document)")
        ->required();
    c->add_option("--select", complete_opts->select,
                  "key to pick from a run document (default: flaw_free)");
    c->add_option("--method", complete_opts->method,
                  "mt | greedy | greedy+mt");
    c->add_option("--iteration-cap", complete_opts->iteration_cap,
                  "resample cap (0 = 100 x blank count)");
    c->add_flag("--diagnose", complete_opts->diagnose,
                "report the conflict-event dependency mass first");
    c->add_option("-o,--out", complete_opts->out, "result document path");
    c->callback([&rc, complete_opts] {
      rc = run_guarded("colorfix complete",
                       [&] { return cmd_complete(*complete_opts); });
    });
  }

  auto rec_opts = std::make_shared<ReconstructOpts>();
  {
    CLI::App* c = app.add_subcommand(
        "reconstruct", "replay a transcript backwards from its final state");
    add_instance_flags(*c, rec_opts->cfg);
    c->add_option("--transcript", rec_opts->transcript_path, "transcript jsonl")
        ->required();
    c->add_option("--final", rec_opts->final_path,
                  "coloring the run ended with (run document or mapping)")
        ->required();
    c->add_option("--select", rec_opts->select,
                  "key to pick from the final document (default: flaw_free)");
    c->add_option("--initial", rec_opts->initial_path,
                  "expected initial coloring (default: all blank)");
    c->add_option("--dump-states", rec_opts->dump_path,
                  "write every reconstructed intermediate coloring here");
    c->add_option("-o,--out", rec_opts->out, "summary document path");
    c->callback([&rc, rec_opts] {
      rc = run_guarded("colorfix reconstruct",
                       [&] { return cmd_reconstruct(*rec_opts); });
    });
  }

  auto gen_opts = std::make_shared<GenOpts>();
  {
    CLI::App* c = app.add_subcommand("gen", "generate a graph file");
    c->add_option("descriptor", gen_opts->descriptor,
                  "cycle:N | random-bipartite:N1,N2,P | "
                  "random-regular-bipartite:N,D | erase-triangles:N,P | "
                  "complete-multipartite:S1,S2,... | random-multipartite:K,S,P")
        ->required();
    c->add_option("--seed", gen_opts->seed, "generator seed");
    c->add_option("-o,--out", gen_opts->out, "output path (default: stdout)");
    c->add_option("--format", gen_opts->format, "dimacs | edgelist");
    c->callback([&rc, gen_opts] {
      rc = run_guarded("colorfix gen", [&] { return cmd_gen(*gen_opts); });
    });
  }

  auto bench_opts = std::make_shared<BenchOpts>();
  {
    CLI::App* c = app.add_subcommand(
        "bench", "time the pipeline end to end over repeated seeds");
    add_instance_flags(*c, bench_opts->cfg);
    c->add_option("--repeats", bench_opts->repeats, "seeds to run");
    c->add_option("-o,--out", bench_opts->out, "report path");
    c->callback([&rc, bench_opts] {
      rc = run_guarded("colorfix bench", [&] { return cmd_bench(*bench_opts); });
    });
  }

  {
    CLI::App* lab = app.add_subcommand(
        "lab", "exact and Monte-Carlo validation experiments");
    lab->require_subcommand(1);
    register_lab(*lab, rc);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  return rc;
}
