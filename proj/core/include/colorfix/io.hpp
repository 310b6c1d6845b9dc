#pragma once

#include <string>

#include "colorfix/coloring.hpp"
#include "colorfix/graph.hpp"
#include "colorfix/transcript.hpp"

namespace colorfix {

// Graph text formats.
//
//   dimacs    "c <comment>" / "p edge <n> <m>" / "e <u> <v>", vertices
//             1-indexed.  Repeated edges (either orientation) collapse to
//             one; self-loops are rejected.
//   edgelist  '#' comments; first significant line "<n>" or "<n> <m>"; then
//             one "<u> <v>" per line, 0-indexed.  A declared <m> must match.
//   auto      (load only) ".col" picks dimacs, otherwise the first
//             significant line decides: "p"/"c"/"e" markers mean dimacs.
enum class GraphFormat : std::uint8_t { kAuto, kDimacs, kEdgeList };

GraphFormat graph_format_from_string(const std::string& s);
std::string to_string(GraphFormat f);

Graph parse_graph(const std::string& text, GraphFormat format);
Graph load_graph(const std::string& path, GraphFormat format = GraphFormat::kAuto);
std::string format_graph(const Graph& g, GraphFormat format);
void write_graph(const Graph& g, const std::string& path,
                 GraphFormat format = GraphFormat::kAuto);

// Color lists are a JSON object: vertex index (as a string key) -> array of
// colors.  Colors are either all integers (used as dense ids directly;
// palette = 1 + max id) or all strings (collected, sorted, densely numbered).
// Mixing the two is an error.  Vertices run 0..max-key; absent keys get an
// empty list.
ListAssignment parse_lists(const std::string& text, int declared_q = 0);
ListAssignment load_lists(const std::string& path, int declared_q = 0);
std::string format_lists(const ListAssignment& lists);
void write_lists(const ListAssignment& lists, const std::string& path);

// A (partial) coloring is a JSON object vertex -> color, with null meaning
// Blank; absent vertices are Blank too.  Color values follow the list file's
// naming (integers, or strings when the lists used names).  A document that
// wraps the mapping under a "coloring" key (as the tools' run summaries do)
// is accepted as-is.
PartialColoring parse_coloring(const std::string& text,
                               const ListAssignment& lists);
PartialColoring load_coloring(const std::string& path,
                              const ListAssignment& lists);
std::string format_coloring(const PartialColoring& sigma,
                            const ListAssignment& lists);
void write_coloring(const PartialColoring& sigma, const ListAssignment& lists,
                    const std::string& path);

Transcript load_transcript(const std::string& path);
void save_transcript(const Transcript& transcript, const std::string& path);

// Whole-file helpers (throw ParseError on IO failure).
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace colorfix
