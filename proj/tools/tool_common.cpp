#include "tool_common.hpp"

#include <cstdio>
#include <iostream>

#include "colorfix/errors.hpp"
#include "colorfix/generators.hpp"
#include "colorfix/rng.hpp"
#include "colorfix/version.hpp"

namespace colorfix::tool {

void add_instance_flags(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--graph", cfg.graph_source,
                 "graph source: a path, file:<path>, or gen:<descriptor> "
                 "(cycle:N, random-bipartite:N1,N2,P, "
                 "random-regular-bipartite:N,D, erase-triangles:N,P, "
                 "complete-multipartite:S1,..., random-multipartite:K,S,P)")
      ->required();
  cmd.add_option("--graph-format", cfg.graph_format,
                 "auto | dimacs | edgelist");
  cmd.add_option("--lists", cfg.lists_source,
                 "color lists: \"uniform\" (random q-subsets) or file:<path>");
  cmd.add_option("--list-size", cfg.uniform_q,
                 "uniform lists: per-vertex list size (0 = resolved q)");
  cmd.add_option("--palette", cfg.palette,
                 "uniform lists: palette size (0 = twice the list size)");
  cmd.add_option("--variant", cfg.variant,
                 "tf (triangle-free) | kr (clique-free)");
  cmd.add_option("--r", cfg.r, "forbidden clique size (kr)");
  cmd.add_option("--epsilon", cfg.epsilon, "tf parameterization knob");
  cmd.add_option("--q", cfg.q_override, "color count override (0 = formula)");
  cmd.add_option("--L", cfg.l_override,
                 "flaw threshold override (0 = formula)");
  cmd.add_option("--seed", cfg.seed, "master seed");
}

LoadedInstance load_instance(const RunConfig& cfg) {
  LoadedInstance inst;
  inst.cfg = cfg;

  std::string src = cfg.graph_source;
  if (src.rfind("gen:", 0) == 0) {
    inst.graph = generate(src.substr(4), Rng::derive(cfg.seed, "generate"));
  } else {
    if (src.rfind("file:", 0) == 0) src = src.substr(5);
    inst.graph = load_graph(src, graph_format_from_string(cfg.graph_format));
  }

  inst.resolved = resolve_params(cfg, inst.graph.max_degree());

  if (cfg.lists_source == "uniform") {
    const int q = cfg.uniform_q > 0 ? cfg.uniform_q : inst.resolved.q;
    const int palette = cfg.palette > 0 ? cfg.palette : 2 * q;
    if (palette < q)
      throw InvalidArgument("config: palette smaller than the list size");
    inst.lists = ListAssignment::uniform_random(inst.graph, q, palette,
                                                Rng::derive(cfg.seed, "lists"));
  } else {
    std::string lpath = cfg.lists_source;
    if (lpath.rfind("file:", 0) == 0) lpath = lpath.substr(5);
    inst.lists = load_lists(lpath, inst.resolved.q);
    if (inst.lists.vertex_count() != inst.graph.vertex_count())
      throw InvalidArgument(
          "lists cover " + std::to_string(inst.lists.vertex_count()) +
          " vertices but the graph has " +
          std::to_string(inst.graph.vertex_count()));
  }
  return inst;
}

ordered_json resolved_to_json(const ResolvedParams& rp) {
  ordered_json j;
  j["q"] = rp.q;
  j["L"] = rp.L;
  j["delta"] = rp.delta;
  j["warnings"] = rp.warnings;
  return j;
}

ordered_json stats_to_json(const RunStats& s) {
  ordered_json j;
  j["top_level_calls"] = s.top_level_calls;
  j["total_calls"] = s.total_calls;
  j["b_calls"] = s.b_calls;
  j["z_calls"] = s.z_calls;
  j["executions"] = s.executions;
  j["max_call_executions"] = s.max_call_executions;
  j["retries"] = s.retries;
  j["initial_flaws"] = s.initial_flaws;
  j["lambda_log2"] = s.lambda_log2;
  j["transcript_bits"] = s.transcript_bits;
  j["postcondition_checks"] = s.postcondition_checks;
  j["completion_resamples"] = s.completion_resamples;
  j["used_greedy"] = s.used_greedy;
  j["used_moser_tardos"] = s.used_moser_tardos;
  j["greedy_fell_back"] = s.greedy_fell_back;
  return j;
}

ordered_json coloring_to_json(const PartialColoring& sigma,
                              const ListAssignment& lists) {
  return ordered_json::parse(format_coloring(sigma, lists));
}

ordered_json document_header(const char* tool, const RunConfig& cfg,
                             const ResolvedParams& rp) {
  ordered_json doc;
  doc["tool"] = tool;
  doc["version"] = kVersionString;
  doc["config"] = ordered_json::parse(cfg.to_json());
  doc["config_hash"] = config_hash(cfg);
  doc["resolved"] = resolved_to_json(rp);
  return doc;
}

PartialColoring read_coloring_file(const std::string& path,
                                   const ListAssignment& lists,
                                   const std::string& select) {
  ordered_json j;
  try {
    j = ordered_json::parse(read_text_file(path));
  } catch (const ordered_json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (j.is_object() && j.contains(select)) j = j[select];
  return parse_coloring(j.dump(), lists);
}

void emit_document(const ordered_json& doc, const std::string& path) {
  if (path.empty())
    std::cout << doc.dump(2) << '\n';
  else
    write_text_file(path, doc.dump() + "\n");
}

int guarded(const char* tool, int (*body)(void*), void* ctx) {
  try {
    return body(ctx);
  } catch (const ExecutionCapExceeded& e) {
    std::cerr << tool << ": " << e.what() << '\n';
    return kExitBudget;
  } catch (const BudgetExceeded& e) {
    std::cerr << tool << ": " << e.what() << '\n';
    return kExitBudget;
  } catch (const CompletionError& e) {
    std::cerr << tool << ": " << e.what() << '\n';
    return e.kind == CompletionError::Kind::kPreconditionViolated
               ? kExitVerifyFailed
               : kExitBudget;
  } catch (const TranscriptError& e) {
    std::cerr << tool << ": " << e.what() << '\n';
    return kExitVerifyFailed;
  } catch (const ParseError& e) {
    std::cerr << tool << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << tool << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << tool << ": " << e.what() << '\n';
    return kExitVerifyFailed;
  }
}

}  // namespace colorfix::tool
