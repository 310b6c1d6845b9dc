// colorfix lab: exact and Monte-Carlo validation experiments.
//
// Each experiment prints a JSON summary (stdout or --out) and optionally a
// CSV of the per-case rows (--csv); the exit code is 1 when any checked
// inequality failed, so the lab doubles as a regression gate.

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "colorfix/analytics.hpp"
#include "colorfix/errors.hpp"
#include "colorfix/io.hpp"
#include "tool_common.hpp"

namespace colorfix::tool {
namespace {

const char* verdict_name(EstimateReport::Verdict v) {
  switch (v) {
    case EstimateReport::Verdict::kPass: return "pass";
    case EstimateReport::Verdict::kFail: return "fail";
    case EstimateReport::Verdict::kVacuous: return "vacuous";
  }
  return "?";
}

void emit_csv(const std::string& path, const std::string& text) {
  if (!path.empty()) write_text_file(path, text);
}

// -------------------------------------------------------------- shearer ----
struct ShearerOpts {
  int max_n = 6;
  std::vector<int> rs{3, 4, 5};
  int lmu_r = 3;
  bool skip_lmu = false;
  std::string out;
};

int lab_shearer(const ShearerOpts& opt) {
  ordered_json doc;
  doc["experiment"] = "shearer";
  long long failures = 0;

  const SweepResult sr = sweep_shearer_small_graphs(opt.max_n, opt.rs);
  ordered_json sj;
  sj["max_n"] = opt.max_n;
  sj["rs"] = opt.rs;
  sj["graphs"] = sr.graphs;
  sj["checked"] = sr.checked;
  sj["failures"] = sr.failures;
  doc["count_lower_bound"] = sj;
  failures += sr.failures;

  if (!opt.skip_lmu) {
    const SweepResult mr = sweep_lmu_small_graphs(opt.max_n, opt.lmu_r);
    ordered_json mj;
    mj["max_n"] = opt.max_n;
    mj["r"] = opt.lmu_r;
    mj["graphs"] = mr.graphs;
    mj["checked"] = mr.checked;
    mj["vacuous"] = mr.vacuous;
    mj["failures"] = mr.failures;
    doc["median_lower_bound"] = mj;
    failures += mr.failures;
  }

  doc["failures"] = failures;
  doc["ok"] = failures == 0;
  emit_document(doc, opt.out);
  return failures == 0 ? kExitOk : kExitVerifyFailed;
}

// ----------------------------------------------------------------- lncv ----
struct LncvOpts {
  int neighbors = 16;
  int list_size = 8;
  int palette = 16;
  int seeds = 20;
  std::uint64_t seed = 1;
  std::string csv;
  std::string out;
};

int lab_lncv(const LncvOpts& opt) {
  std::ostringstream csv;
  csv << "seed,exact,exp_bound,crude_bound,ok\n";
  long long failures = 0;
  double worst_margin = 1e300;
  for (int i = 0; i < opt.seeds; ++i) {
    const std::uint64_t s = opt.seed + static_cast<std::uint64_t>(i);
    const ListFixture fx =
        ListFixture::random(opt.neighbors, opt.list_size, opt.palette, s);
    const double exact = expected_available_count(fx);
    const double expb = expected_available_exp_bound(fx);
    const double crude = expected_available_crude_bound(fx);
    // The chain is exact > exp_bound >= crude_bound (convexity on the last
    // step needs |cv| = list size, which random fixtures guarantee).
    const bool ok = exact > expb && expb >= crude - 1e-12;
    failures += ok ? 0 : 1;
    worst_margin = std::min(worst_margin, exact - expb);
    csv << s << ',' << exact << ',' << expb << ',' << crude << ','
        << (ok ? 1 : 0) << '\n';
  }
  emit_csv(opt.csv, csv.str());

  ordered_json doc;
  doc["experiment"] = "lncv";
  doc["neighbors"] = opt.neighbors;
  doc["list_size"] = opt.list_size;
  doc["palette"] = opt.palette;
  doc["seeds"] = opt.seeds;
  doc["worst_margin"] = worst_margin;
  doc["failures"] = failures;
  doc["ok"] = failures == 0;
  emit_document(doc, opt.out);
  return failures == 0 ? kExitOk : kExitVerifyFailed;
}

// ------------------------------------------------------------- flawprob ----
struct FlawProbOpts {
  int neighbors = 16;
  int list_size = 8;
  int palette = 16;
  double L = 4.0;
  std::string variant = "tf";
  double edge_prob = 0.0;
  std::string model = "ind";
  long long trials = 20000;
  int seeds = 10;
  std::uint64_t seed = 1;
  std::string csv;
  std::string out;
};

int lab_flawprob(const FlawProbOpts& opt) {
  FlawParams fp;
  fp.variant =
      opt.variant == "kr" ? Variant::kCliqueFree : Variant::kTriangleFree;
  fp.L = opt.L;
  const FlawModel model = opt.model == "valid" ? FlawModel::kUniformValid
                                               : FlawModel::kIndependentDraws;

  std::ostringstream csv;
  csv << "seed,deficient,deficient_se,deficient_exact,blank,blank_se,"
         "blank_exact,delta_ref,deficient_verdict,blank_verdict\n";
  long long failures = 0;
  double max_est = 0.0;
  for (int i = 0; i < opt.seeds; ++i) {
    const std::uint64_t s = opt.seed + static_cast<std::uint64_t>(i);
    const ListFixture fx = ListFixture::random(
        opt.neighbors, opt.list_size, opt.palette, s, opt.edge_prob);
    const FlawProbReport rep =
        mc_flaw_probability(fx, fp, opt.trials, s, model);
    failures +=
        (rep.deficient.verdict == EstimateReport::Verdict::kFail ? 1 : 0) +
        (rep.blank_pressure.verdict == EstimateReport::Verdict::kFail ? 1 : 0);
    max_est = std::max(
        {max_est, rep.deficient.estimate, rep.blank_pressure.estimate});
    csv << s << ',' << rep.deficient.estimate << ','
        << rep.deficient.std_error << ','
        << (rep.exact_deficient ? std::to_string(*rep.exact_deficient) : "")
        << ',' << rep.blank_pressure.estimate << ','
        << rep.blank_pressure.std_error << ','
        << (rep.exact_blank_pressure
                ? std::to_string(*rep.exact_blank_pressure)
                : "")
        << ',' << rep.delta_ref << ','
        << verdict_name(rep.deficient.verdict) << ','
        << verdict_name(rep.blank_pressure.verdict) << '\n';
  }
  emit_csv(opt.csv, csv.str());

  ordered_json doc;
  doc["experiment"] = "flawprob";
  doc["variant"] = opt.variant;
  doc["model"] = opt.model;
  doc["neighbors"] = opt.neighbors;
  doc["list_size"] = opt.list_size;
  doc["palette"] = opt.palette;
  doc["L"] = opt.L;
  doc["trials"] = opt.trials;
  doc["seeds"] = opt.seeds;
  doc["max_estimate"] = max_est;
  doc["failures"] = failures;
  doc["ok"] = failures == 0;
  emit_document(doc, opt.out);
  return failures == 0 ? kExitOk : kExitVerifyFailed;
}

// -------------------------------------------------------------- negcorr ----
struct NegCorrOpts {
  int neighbors = 6;
  int list_size = 4;
  int palette = 8;
  int seeds = 20;
  std::uint64_t seed = 1;
  std::string csv;
  std::string out;
};

int lab_negcorr(const NegCorrOpts& opt) {
  std::ostringstream csv;
  csv << "seed,holds,witness,lhs,rhs\n";
  long long violations = 0;
  for (int i = 0; i < opt.seeds; ++i) {
    const std::uint64_t s = opt.seed + static_cast<std::uint64_t>(i);
    const ListFixture fx =
        ListFixture::random(opt.neighbors, opt.list_size, opt.palette, s);
    const NegCorrResult res = negative_correlation_exact(fx);
    if (!res.holds) ++violations;
    csv << s << ',' << (res.holds ? 1 : 0) << ',' << res.witness << ','
        << res.lhs << ',' << res.rhs << '\n';
  }
  emit_csv(opt.csv, csv.str());

  // The urn distribution shows the property is one-sided: the indicators obey
  // it, their complements do not.
  const FiniteDistribution urn = urn_counterexample();
  const NegCorrResult plain = negatively_correlated(urn, false);
  const NegCorrResult comp = negatively_correlated(urn, true);

  ordered_json doc;
  doc["experiment"] = "negcorr";
  doc["neighbors"] = opt.neighbors;
  doc["list_size"] = opt.list_size;
  doc["palette"] = opt.palette;
  doc["seeds"] = opt.seeds;
  doc["violations"] = violations;
  doc["urn_indicators_hold"] = plain.holds;
  doc["urn_complements_hold"] = comp.holds;
  const bool urn_ok = plain.holds && !comp.holds;
  doc["ok"] = violations == 0 && urn_ok;
  emit_document(doc, opt.out);
  return (violations == 0 && urn_ok) ? kExitOk : kExitVerifyFailed;
}

// ------------------------------------------------------------- chernoff ----
struct ChernoffOpts {
  std::string family = "coin";
  int m = 64;
  double p = 0.25;
  int neighbors = 16;
  int list_size = 8;
  int palette = 16;
  int urn_size = 100;
  int urn_ones = 40;
  int draws = 30;
  long long trials = 40000;
  std::uint64_t seed = 1;
  std::vector<double> t_fractions{0.25, 0.5, 0.75, 1.0};
  std::string csv;
  std::string out;
};

int lab_chernoff(const ChernoffOpts& opt) {
  ChernoffSpec spec;
  if (opt.family == "coin") {
    spec.family = ChernoffSpec::Family::kBernoulliSum;
    spec.m = opt.m;
    spec.p = opt.p;
  } else if (opt.family == "avail") {
    spec.family = ChernoffSpec::Family::kAvailableColors;
    spec.fixture = ListFixture::random(opt.neighbors, opt.list_size,
                                       opt.palette, opt.seed);
  } else if (opt.family == "urn") {
    spec.family = ChernoffSpec::Family::kWithoutReplacement;
    spec.urn_size = opt.urn_size;
    spec.urn_ones = opt.urn_ones;
    spec.draws = opt.draws;
  } else {
    throw InvalidArgument("chernoff: unknown family \"" + opt.family +
                          "\" (want coin | avail | urn)");
  }

  const std::vector<TailCheck> checks =
      chernoff_validator(spec, opt.t_fractions, opt.trials, opt.seed);

  std::ostringstream csv;
  csv << "t,expectation,upper_est,upper_bound,upper_verdict,"
         "lower_est,lower_bound,lower_verdict\n";
  long long failures = 0;
  for (const TailCheck& c : checks) {
    failures += (c.upper.verdict == EstimateReport::Verdict::kFail ? 1 : 0) +
                (c.lower.verdict == EstimateReport::Verdict::kFail ? 1 : 0);
    csv << c.t << ',' << c.expectation << ',' << c.upper.estimate << ','
        << c.upper.reference << ',' << verdict_name(c.upper.verdict) << ','
        << c.lower.estimate << ',' << c.lower.reference << ','
        << verdict_name(c.lower.verdict) << '\n';
  }
  emit_csv(opt.csv, csv.str());

  ordered_json doc;
  doc["experiment"] = "chernoff";
  doc["family"] = opt.family;
  doc["trials"] = opt.trials;
  doc["checks"] = checks.size();
  doc["failures"] = failures;
  doc["ok"] = failures == 0;
  emit_document(doc, opt.out);
  return failures == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

void register_lab(CLI::App& lab, int& rc) {
  auto sh = std::make_shared<ShearerOpts>();
  {
    CLI::App* c = lab.add_subcommand(
        "shearer",
        "exhaustive small-graph sweep of the independent-set count and "
        "median lower bounds");
    c->add_option("--max-n", sh->max_n, "largest vertex count to enumerate");
    c->add_option("--r", sh->rs, "clique bounds to check (repeatable)");
    c->add_option("--lmu-r", sh->lmu_r, "clique bound for the median sweep");
    c->add_flag("--skip-median", sh->skip_lmu, "count bound only");
    c->add_option("-o,--out", sh->out, "summary path");
    c->callback([&rc, sh] {
      rc = run_guarded("colorfix lab shearer", [&] { return lab_shearer(*sh); });
    });
  }

  auto ln = std::make_shared<LncvOpts>();
  {
    CLI::App* c = lab.add_subcommand(
        "lncv", "expected available-colors count versus its closed-form "
                "lower bounds on random list fixtures");
    c->add_option("--neighbors", ln->neighbors, "fixture neighbor count");
    c->add_option("--list-size", ln->list_size, "colors per list");
    c->add_option("--palette", ln->palette, "palette size");
    c->add_option("--seeds", ln->seeds, "fixtures to test");
    c->add_option("--seed", ln->seed, "first seed");
    c->add_option("--csv", ln->csv, "per-fixture rows");
    c->add_option("-o,--out", ln->out, "summary path");
    c->callback([&rc, ln] {
      rc = run_guarded("colorfix lab lncv", [&] { return lab_lncv(*ln); });
    });
  }

  auto fpo = std::make_shared<FlawProbOpts>();
  {
    CLI::App* c = lab.add_subcommand(
        "flawprob",
        "Monte-Carlo flaw probabilities at a fixture center, exact values "
        "alongside when the product space is enumerable");
    c->add_option("--neighbors", fpo->neighbors, "fixture neighbor count");
    c->add_option("--list-size", fpo->list_size, "colors per list");
    c->add_option("--palette", fpo->palette, "palette size");
    c->add_option("--L", fpo->L, "flaw threshold");
    c->add_option("--variant", fpo->variant, "tf | kr");
    c->add_option("--edge-prob", fpo->edge_prob,
                  "edge probability between neighbors (kr fixtures)");
    c->add_option("--model", fpo->model,
                  "ind (independent draws) | valid (uniform valid coloring)");
    c->add_option("--trials", fpo->trials, "samples per fixture");
    c->add_option("--seeds", fpo->seeds, "fixtures to test");
    c->add_option("--seed", fpo->seed, "first seed");
    c->add_option("--csv", fpo->csv, "per-fixture rows");
    c->add_option("-o,--out", fpo->out, "summary path");
    c->callback([&rc, fpo] {
      rc = run_guarded("colorfix lab flawprob",
                       [&] { return lab_flawprob(*fpo); });
    });
  }

  auto nc = std::make_shared<NegCorrOpts>();
  {
    CLI::App* c = lab.add_subcommand(
        "negcorr",
        "exact negative-correlation check for color-survival indicators, "
        "plus the urn distribution showing the complements fail");
    c->add_option("--neighbors", nc->neighbors, "fixture neighbor count");
    c->add_option("--list-size", nc->list_size, "colors per list");
    c->add_option("--palette", nc->palette, "palette size");
    c->add_option("--seeds", nc->seeds, "fixtures to test");
    c->add_option("--seed", nc->seed, "first seed");
    c->add_option("--csv", nc->csv, "per-fixture rows");
    c->add_option("-o,--out", nc->out, "summary path");
    c->callback([&rc, nc] {
      rc = run_guarded("colorfix lab negcorr", [&] { return lab_negcorr(*nc); });
    });
  }

  auto ch = std::make_shared<ChernoffOpts>();
  {
    CLI::App* c = lab.add_subcommand(
        "chernoff", "empirical tails versus the concentration bounds the "
                    "analysis leans on");
    c->add_option("--family", ch->family, "coin | avail | urn");
    c->add_option("--m", ch->m, "coin count");
    c->add_option("--p", ch->p, "coin success probability");
    c->add_option("--neighbors", ch->neighbors, "avail: neighbor count");
    c->add_option("--list-size", ch->list_size, "avail: colors per list");
    c->add_option("--palette", ch->palette, "avail: palette size");
    c->add_option("--urn-size", ch->urn_size, "urn: total balls");
    c->add_option("--urn-ones", ch->urn_ones, "urn: marked balls");
    c->add_option("--draws", ch->draws, "urn: draws without replacement");
    c->add_option("--trials", ch->trials, "samples per check");
    c->add_option("--seed", ch->seed, "seed");
    c->add_option("--t", ch->t_fractions,
                  "deviations to test, as fractions of sqrt(E) (repeatable)");
    c->add_option("--csv", ch->csv, "per-deviation rows");
    c->add_option("-o,--out", ch->out, "summary path");
    c->callback([&rc, ch] {
      rc = run_guarded("colorfix lab chernoff",
                       [&] { return lab_chernoff(*ch); });
    });
  }
}

}  // namespace colorfix::tool
