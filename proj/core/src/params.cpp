#include "colorfix/params.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "colorfix/errors.hpp"

namespace colorfix {
namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument("config: " + what);
}

void validate(const RunConfig& cfg) {
  require(cfg.variant == "tf" || cfg.variant == "kr",
          "variant must be \"tf\" or \"kr\", got \"" + cfg.variant + "\"");
  require(cfg.graph_format == "auto" || cfg.graph_format == "dimacs" ||
              cfg.graph_format == "edgelist",
          "unknown graph_format \"" + cfg.graph_format + "\"");
  if (cfg.variant == "kr") require(cfg.r >= 3, "kr needs r >= 3");
  if (cfg.variant == "tf")
    require(cfg.epsilon > 0.0 && cfg.epsilon <= 1.0,
            "tf needs epsilon in (0, 1]");
  require(cfg.uniform_q >= 0, "uniform_q must be >= 0");
  require(cfg.palette >= 0, "palette must be >= 0");
  require(cfg.q_override >= 0, "q_override must be >= 0");
  require(cfg.l_override >= 0.0, "l_override must be >= 0");
  require(cfg.cap >= 0, "cap must be >= 0");
  require(cfg.retries >= 0 && cfg.retries <= 63,
          "retries must be in [0, 63]");
  transcript_mode_from_string(cfg.transcript_mode);  // throws if unknown
  if (cfg.completion != "default")
    completion_method_from_string(cfg.completion);  // throws if unknown
}

}  // namespace

std::string RunConfig::to_json() const {
  validate(*this);
  ordered_json j;
  j["graph_source"] = graph_source;
  j["graph_format"] = graph_format;
  j["lists_source"] = lists_source;
  j["uniform_q"] = uniform_q;
  j["palette"] = palette;
  j["variant"] = variant;
  j["r"] = r;
  j["epsilon"] = epsilon;
  j["q_override"] = q_override;
  j["l_override"] = l_override;
  j["seed"] = seed;
  j["cap"] = cap;
  j["retries"] = retries;
  j["transcript_mode"] = transcript_mode;
  j["completion"] = completion;
  j["check_observations"] = check_observations;
  j["paranoid"] = paranoid;
  return j.dump();
}

RunConfig RunConfig::from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config: top level must be an object");
  RunConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "graph_source") cfg.graph_source = value.get<std::string>();
      else if (key == "graph_format") cfg.graph_format = value.get<std::string>();
      else if (key == "lists_source") cfg.lists_source = value.get<std::string>();
      else if (key == "uniform_q") cfg.uniform_q = value.get<int>();
      else if (key == "palette") cfg.palette = value.get<int>();
      else if (key == "variant") cfg.variant = value.get<std::string>();
      else if (key == "r") cfg.r = value.get<int>();
      else if (key == "epsilon") cfg.epsilon = value.get<double>();
      else if (key == "q_override") cfg.q_override = value.get<int>();
      else if (key == "l_override") cfg.l_override = value.get<double>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "cap") cfg.cap = value.get<long long>();
      else if (key == "retries") cfg.retries = value.get<int>();
      else if (key == "transcript_mode") cfg.transcript_mode = value.get<std::string>();
      else if (key == "completion") cfg.completion = value.get<std::string>();
      else if (key == "check_observations") cfg.check_observations = value.get<bool>();
      else if (key == "paranoid") cfg.paranoid = value.get<bool>();
      else throw ParseError("config: unknown key \"" + key + "\"");
    }
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

std::string config_hash(const RunConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(cfg.to_json())));
  return std::string(buf);
}

ResolvedParams resolve_params(const RunConfig& cfg, int max_degree) {
  validate(cfg);
  require(max_degree >= 0, "max degree must be >= 0");
  ResolvedParams rp;
  rp.delta = max_degree;
  const bool need_q = cfg.q_override == 0;
  const bool need_l = cfg.l_override == 0.0;
  const double d = static_cast<double>(max_degree);

  if (cfg.variant == "tf") {
    if ((need_q || need_l) && max_degree < 2)
      throw InvalidArgument(
          "config: tf formula defaults need max degree >= 2; "
          "set q_override and l_override for smaller graphs");
    rp.q = need_q ? static_cast<int>(
                        std::ceil((1.0 + cfg.epsilon) * d / std::log(d)))
                  : cfg.q_override;
    rp.L = need_l ? std::pow(d, cfg.epsilon / 2.0) : cfg.l_override;
  } else {
    if ((need_q || need_l) && max_degree < 3)
      throw InvalidArgument(
          "config: kr formula defaults need max degree >= 3; "
          "set q_override and l_override for smaller graphs");
    rp.q = need_q
               ? static_cast<int>(std::ceil(
                     200.0 * cfg.r * d * std::log(std::log(d)) / std::log(d)))
               : cfg.q_override;
    rp.L = need_l ? std::pow(d, 0.9) : cfg.l_override;
    // The analysis wants r small relative to the degree; warn when the run
    // is outside that regime (the algorithm still executes).
    if (max_degree >= 3) {
      const double lnd = std::log(d);
      const double lnlnd = std::log(lnd);
      if (lnlnd > 0.0 && static_cast<double>(cfg.r) >= lnd / (200.0 * lnlnd))
        rp.warnings.push_back(
            "r is large for this max degree; guarantees degrade");
    }
  }
  require(rp.q >= 1, "resolved q must be >= 1");
  require(rp.L > 0.0, "resolved L must be > 0");
  if (rp.q > 4096)
    rp.warnings.push_back("resolved q exceeds 4096 and will be slow");
  return rp;
}

FlawParams make_flaw_params(const RunConfig& cfg, const ResolvedParams& rp) {
  FlawParams fp;
  fp.variant = cfg.variant == "kr" ? Variant::kCliqueFree
                                   : Variant::kTriangleFree;
  fp.L = rp.L;
  fp.epsilon = cfg.epsilon;
  fp.r = cfg.variant == "kr" ? cfg.r : 0;
  return fp;
}

FixParams make_fix_params(const RunConfig& cfg, const ResolvedParams& rp) {
  FixParams p;
  p.flaw = make_flaw_params(cfg, rp);
  p.seed = cfg.seed;
  p.max_executions = cfg.cap;
  p.retry_budget = cfg.retries;
  p.transcript_mode = transcript_mode_from_string(cfg.transcript_mode);
  p.check_observations = cfg.check_observations;
  p.paranoid = cfg.paranoid;
  return p;
}

CompletionMethod resolve_completion(const RunConfig& cfg) {
  if (cfg.completion == "default")
    return cfg.variant == "kr" ? CompletionMethod::kGreedyThenMoserTardos
                               : CompletionMethod::kMoserTardos;
  return completion_method_from_string(cfg.completion);
}

}  // namespace colorfix
