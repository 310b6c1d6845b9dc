#include "colorfix/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "colorfix/errors.hpp"

namespace colorfix {
namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail_line(std::size_t lineno, const std::string& what) {
  throw ParseError("line " + std::to_string(lineno) + ": " + what);
}

bool significant(const std::string& line) {
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c))) return true;
  return false;
}

// Integer vertex key of a JSON object entry ("7" -> 7, strictly).
Vertex parse_vertex_key(const std::string& key) {
  if (key.empty()) throw ParseError("empty vertex key");
  std::size_t pos = 0;
  long value = 0;
  try {
    value = std::stol(key, &pos);
  } catch (const std::exception&) {
    throw ParseError("vertex key \"" + key + "\" is not an integer");
  }
  if (pos != key.size() || value < 0)
    throw ParseError("vertex key \"" + key + "\" is not a non-negative integer");
  return static_cast<Vertex>(value);
}

Graph parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  Vertex n = -1;
  long long declared_m = -1;
  std::set<std::pair<Vertex, Vertex>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (!significant(line)) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "c") continue;
    if (tag == "p") {
      if (n >= 0) fail_line(lineno, "duplicate problem line");
      std::string kind;
      long long nn = 0, mm = 0;
      if (!(ls >> kind >> nn >> mm))
        fail_line(lineno, "malformed problem line (want \"p edge n m\")");
      if (kind != "edge" && kind != "edges" && kind != "col")
        fail_line(lineno, "unknown problem kind \"" + kind + "\"");
      if (nn < 0 || nn > (1ll << 30)) fail_line(lineno, "vertex count out of range");
      n = static_cast<Vertex>(nn);
      declared_m = mm;
      continue;
    }
    if (tag == "e") {
      if (n < 0) fail_line(lineno, "edge before problem line");
      long long u = 0, v = 0;
      if (!(ls >> u >> v)) fail_line(lineno, "malformed edge line");
      if (u < 1 || u > n || v < 1 || v > n)
        fail_line(lineno, "edge endpoint outside 1.." + std::to_string(n));
      if (u == v) fail_line(lineno, "self-loop");
      Vertex a = static_cast<Vertex>(u - 1), b = static_cast<Vertex>(v - 1);
      edges.insert({std::min(a, b), std::max(a, b)});
      continue;
    }
    fail_line(lineno, "unknown record \"" + tag + "\"");
  }
  if (n < 0) throw ParseError("dimacs: missing problem line");
  if (declared_m >= 0 && static_cast<long long>(edges.size()) > declared_m)
    throw ParseError("dimacs: more distinct edges than declared");
  std::vector<std::pair<Vertex, Vertex>> flat(edges.begin(), edges.end());
  return Graph::build(n, flat);
}

Graph parse_edgelist(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  Vertex n = 0;
  long long declared_m = -1;
  std::vector<std::pair<Vertex, Vertex>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (!significant(line)) continue;
    std::istringstream ls(line);
    if (!have_header) {
      long long nn = 0, mm = -1;
      if (!(ls >> nn)) fail_line(lineno, "malformed header (want \"n\" or \"n m\")");
      ls >> mm;
      if (nn < 0 || nn > (1ll << 30)) fail_line(lineno, "vertex count out of range");
      n = static_cast<Vertex>(nn);
      declared_m = mm;
      have_header = true;
      continue;
    }
    long long u = 0, v = 0;
    if (!(ls >> u >> v)) fail_line(lineno, "malformed edge line");
    if (u < 0 || u >= n || v < 0 || v >= n)
      fail_line(lineno, "edge endpoint outside 0.." + std::to_string(n - 1));
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (!have_header) throw ParseError("edgelist: empty input");
  if (declared_m >= 0 && static_cast<long long>(edges.size()) != declared_m)
    throw ParseError("edgelist: header declares " + std::to_string(declared_m) +
                     " edges, found " + std::to_string(edges.size()));
  try {
    return Graph::build(n, edges);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("edgelist: ") + e.what());
  }
}

GraphFormat sniff_format(const std::string& path, const std::string& text) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".col")
    return GraphFormat::kDimacs;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!significant(line)) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "p" || tag == "c" || tag == "e") return GraphFormat::kDimacs;
    return GraphFormat::kEdgeList;
  }
  return GraphFormat::kEdgeList;
}

}  // namespace

GraphFormat graph_format_from_string(const std::string& s) {
  if (s == "auto") return GraphFormat::kAuto;
  if (s == "dimacs") return GraphFormat::kDimacs;
  if (s == "edgelist") return GraphFormat::kEdgeList;
  throw InvalidArgument("unknown graph format \"" + s + "\"");
}

std::string to_string(GraphFormat f) {
  switch (f) {
    case GraphFormat::kAuto: return "auto";
    case GraphFormat::kDimacs: return "dimacs";
    case GraphFormat::kEdgeList: return "edgelist";
  }
  throw InvalidArgument("bad graph format value");
}

Graph parse_graph(const std::string& text, GraphFormat format) {
  switch (format) {
    case GraphFormat::kDimacs: return parse_dimacs(text);
    case GraphFormat::kEdgeList: return parse_edgelist(text);
    case GraphFormat::kAuto:
      return parse_graph(text, sniff_format("", text));
  }
  throw InvalidArgument("bad graph format value");
}

Graph load_graph(const std::string& path, GraphFormat format) {
  const std::string text = read_text_file(path);
  if (format == GraphFormat::kAuto) format = sniff_format(path, text);
  try {
    return parse_graph(text, format);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_graph(const Graph& g, GraphFormat format) {
  if (format == GraphFormat::kAuto) format = GraphFormat::kDimacs;
  std::ostringstream out;
  const auto edges = g.edges();
  if (format == GraphFormat::kDimacs) {
    out << "p edge " << g.vertex_count() << ' ' << edges.size() << '\n';
    for (const auto& [u, v] : edges)
      out << "e " << (u + 1) << ' ' << (v + 1) << '\n';
  } else {
    out << g.vertex_count() << ' ' << edges.size() << '\n';
    for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
  }
  return out.str();
}

void write_graph(const Graph& g, const std::string& path, GraphFormat format) {
  write_text_file(path, format_graph(g, format));  // kAuto writes dimacs
}

ListAssignment parse_lists(const std::string& text, int declared_q) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("lists: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("lists: top level must be an object");

  // First pass: decide naming mode and collect string names.
  int mode = 0;  // 0 unknown, 1 integers, 2 strings
  std::set<std::string> name_set;
  Vertex max_key = -1;
  for (const auto& [key, value] : j.items()) {
    const Vertex v = parse_vertex_key(key);
    max_key = std::max(max_key, v);
    if (!value.is_array())
      throw ParseError("lists: vertex " + key + ": value must be an array");
    for (const auto& item : value) {
      if (item.is_number_integer()) {
        if (mode == 2) throw ParseError("lists: mixed integer and string colors");
        mode = 1;
        if (item.get<long long>() < 0)
          throw ParseError("lists: negative color id");
      } else if (item.is_string()) {
        if (mode == 1) throw ParseError("lists: mixed integer and string colors");
        mode = 2;
        name_set.insert(item.get<std::string>());
      } else {
        throw ParseError("lists: colors must be integers or strings");
      }
    }
  }

  std::vector<std::string> names(name_set.begin(), name_set.end());
  std::map<std::string, Color> name_id;
  for (std::size_t i = 0; i < names.size(); ++i)
    name_id[names[i]] = static_cast<Color>(i);

  const Vertex n = max_key + 1;
  std::vector<std::vector<Color>> lists(static_cast<std::size_t>(n));
  Color max_id = -1;
  for (const auto& [key, value] : j.items()) {
    const Vertex v = parse_vertex_key(key);
    auto& lv = lists[static_cast<std::size_t>(v)];
    for (const auto& item : value) {
      const Color c = item.is_string()
                          ? name_id.at(item.get<std::string>())
                          : static_cast<Color>(item.get<long long>());
      lv.push_back(c);
      max_id = std::max(max_id, c);
    }
    std::sort(lv.begin(), lv.end());
    if (std::adjacent_find(lv.begin(), lv.end()) != lv.end())
      throw ParseError("lists: vertex " + key + ": duplicate color");
  }
  const int palette = mode == 2 ? static_cast<int>(names.size()) : max_id + 1;
  return ListAssignment::from_lists(std::move(lists), palette,
                                    std::move(names), declared_q);
}

ListAssignment load_lists(const std::string& path, int declared_q) {
  try {
    return parse_lists(read_text_file(path), declared_q);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_lists(const ListAssignment& lists) {
  ordered_json j = ordered_json::object();
  const bool named = !lists.color_names().empty();
  for (Vertex v = 0; v < lists.vertex_count(); ++v) {
    ordered_json arr = ordered_json::array();
    for (Color c : lists.list(v)) {
      if (named)
        arr.push_back(lists.color_name(c));
      else
        arr.push_back(c);
    }
    j[std::to_string(v)] = std::move(arr);
  }
  return j.dump();
}

void write_lists(const ListAssignment& lists, const std::string& path) {
  write_text_file(path, format_lists(lists));
}

PartialColoring parse_coloring(const std::string& text,
                               const ListAssignment& lists) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("coloring: ") + e.what());
  }
  if (j.is_object() && j.contains("coloring")) j = j["coloring"];
  if (!j.is_object())
    throw ParseError("coloring: top level must be an object");

  std::map<std::string, Color> name_id;
  for (std::size_t i = 0; i < lists.color_names().size(); ++i)
    name_id[lists.color_names()[i]] = static_cast<Color>(i);

  PartialColoring sigma(lists.vertex_count());
  for (const auto& [key, value] : j.items()) {
    const Vertex v = parse_vertex_key(key);
    if (v >= lists.vertex_count())
      throw ParseError("coloring: vertex " + key + " out of range");
    if (value.is_null()) continue;  // Blank is the default
    Color c = kBlank;
    if (value.is_number_integer()) {
      const long long id = value.get<long long>();
      if (id < 0 || id >= lists.palette_size())
        throw ParseError("coloring: vertex " + key + ": color id out of range");
      c = static_cast<Color>(id);
    } else if (value.is_string()) {
      const auto it = name_id.find(value.get<std::string>());
      if (it == name_id.end())
        throw ParseError("coloring: vertex " + key + ": unknown color name \"" +
                         value.get<std::string>() + "\"");
      c = it->second;
    } else {
      throw ParseError("coloring: vertex " + key +
                       ": color must be an integer, string, or null");
    }
    sigma.set(v, c);
  }
  return sigma;
}

PartialColoring load_coloring(const std::string& path,
                              const ListAssignment& lists) {
  try {
    return parse_coloring(read_text_file(path), lists);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_coloring(const PartialColoring& sigma,
                            const ListAssignment& lists) {
  ordered_json j = ordered_json::object();
  const bool named = !lists.color_names().empty();
  for (Vertex v = 0; v < sigma.vertex_count(); ++v) {
    const Color c = sigma.color(v);
    if (c == kBlank)
      j[std::to_string(v)] = nullptr;
    else if (named)
      j[std::to_string(v)] = lists.color_name(c);
    else
      j[std::to_string(v)] = c;
  }
  return j.dump();
}

void write_coloring(const PartialColoring& sigma, const ListAssignment& lists,
                    const std::string& path) {
  write_text_file(path, format_coloring(sigma, lists));
}

Transcript load_transcript(const std::string& path) {
  try {
    return Transcript::from_jsonl_string(read_text_file(path));
  } catch (const TranscriptError& e) {
    throw TranscriptError(path + ": " + e.what());
  }
}

void save_transcript(const Transcript& transcript, const std::string& path) {
  write_text_file(path, transcript.to_jsonl());
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path + " for reading");
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) throw ParseError("error while reading " + path);
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw ParseError("error while writing " + path);
}

}  // namespace colorfix
