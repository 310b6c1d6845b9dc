#pragma once

// Shared plumbing for the colorfix command-line tool: exit-code policy,
// instance loading from a RunConfig, and JSON assembly for run documents.

#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "colorfix/coloring.hpp"
#include "colorfix/fix_triangle.hpp"
#include "colorfix/graph.hpp"
#include "colorfix/io.hpp"
#include "colorfix/params.hpp"

namespace colorfix::tool {

using ordered_json = nlohmann::ordered_json;

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;  // input fails a correctness check
inline constexpr int kExitUsage = 2;         // bad flags or malformed input
inline constexpr int kExitBudget = 3;        // a cap or enumeration budget hit

struct LoadedInstance {
  RunConfig cfg;
  Graph graph;
  ListAssignment lists;
  ResolvedParams resolved;
};

// Registers the instance/algorithm flags common to the run-style subcommands
// on `cmd`, all of them writing into `cfg`.
void add_instance_flags(CLI::App& cmd, RunConfig& cfg);

// Loads/generates the graph, resolves parameters, builds the lists.
LoadedInstance load_instance(const RunConfig& cfg);

// JSON assembly helpers.
ordered_json resolved_to_json(const ResolvedParams& rp);
ordered_json stats_to_json(const RunStats& s);
ordered_json coloring_to_json(const PartialColoring& sigma,
                              const ListAssignment& lists);
ordered_json document_header(const char* tool, const RunConfig& cfg,
                             const ResolvedParams& rp);

// Reads a coloring file that is either a bare vertex->color mapping or a run
// document; `select` picks the embedded key ("coloring", "flaw_free", ...).
PartialColoring read_coloring_file(const std::string& path,
                                   const ListAssignment& lists,
                                   const std::string& select);

// Writes `doc` to `path`, or pretty-prints it to stdout when path is empty.
void emit_document(const ordered_json& doc, const std::string& path);

// Runs `body` and maps library exceptions onto the exit-code policy.
int guarded(const char* tool, int (*body)(void*), void* ctx);

template <typename Fn>
int run_guarded(const char* tool, Fn&& body) {
  struct Ctx {
    Fn* fn;
  } ctx{&body};
  return guarded(tool, [](void* p) -> int { return (*static_cast<Ctx*>(p)->fn)(); },
                 &ctx);
}

// Lab subcommands live in lab.cpp; this wires them onto the parent app.
void register_lab(CLI::App& lab, int& exit_code);

}  // namespace colorfix::tool
