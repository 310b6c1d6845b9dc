#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "colorfix/fix_triangle.hpp"
#include "colorfix/flaws.hpp"

namespace colorfix {

// Everything a reproducible run depends on, in one flat record.  The record
// serializes to canonical JSON (fixed key order, so byte-stable) and its
// 64-bit FNV-1a hash tags every output the tools write.
struct RunConfig {
  // Instance.
  std::string graph_source;           // "file:<path>" or "gen:<descriptor>"
  std::string graph_format = "auto";  // "auto" | "dimacs" | "edgelist"
  std::string lists_source = "uniform";  // "file:<path>" or "uniform"
  int uniform_q = 0;   // uniform lists: explicit size, 0 = resolved default
  int palette = 0;     // uniform lists: palette size, 0 = 2q

  // Algorithm.
  std::string variant = "tf";  // "tf" | "kr"
  int r = 4;                   // forbidden clique size (kr only)
  double epsilon = 0.5;        // tf parameterization knob
  int q_override = 0;          // 0 = formula default
  double l_override = 0.0;     // 0 = formula default
  std::uint64_t seed = 0;
  long long cap = 0;  // per-call redraw cap, 0 = 2n
  int retries = 3;
  std::string transcript_mode = "raw";
  std::string completion = "default";  // default = mt (tf) / greedy+mt (kr)
  bool check_observations = false;
  bool paranoid = false;

  std::string to_json() const;  // canonical, single line
  static RunConfig from_json(const std::string& text);
};

// 16 hex digits of FNV-1a over the canonical serialization.
std::string config_hash(const RunConfig& cfg);

// Parameters derived from the graph's maximum degree.  Formula defaults:
//   tf:  q = ceil((1+eps) * Delta / ln Delta),    L = Delta^(eps/2)
//   kr:  q = ceil(200 r Delta lnln Delta / ln Delta),  L = Delta^0.9
// The defaults need Delta >= 2 (tf) / Delta >= 3 (kr); smaller graphs must
// override q and L explicitly or resolution throws InvalidArgument.
struct ResolvedParams {
  int q = 0;
  double L = 0.0;
  int delta = 0;
  std::vector<std::string> warnings;
};

ResolvedParams resolve_params(const RunConfig& cfg, int max_degree);

// Assembled engine knob structs, for consistency across tools and tests.
FlawParams make_flaw_params(const RunConfig& cfg, const ResolvedParams& rp);
FixParams make_fix_params(const RunConfig& cfg, const ResolvedParams& rp);
CompletionMethod resolve_completion(const RunConfig& cfg);

}  // namespace colorfix
