#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "colorfix/coloring.hpp"
#include "colorfix/flaws.hpp"
#include "colorfix/graph.hpp"
#include "colorfix/rng.hpp"

namespace colorfix {

// ---------------------------------------------------------------------------
// Independent-set counting.
// ---------------------------------------------------------------------------

// Exact number of independent vertex sets (the empty set counts).
// Meet-in-the-middle; n <= 40 (the count then fits in a uint64).
std::uint64_t count_independent_sets(const Graph& h);

// coeff[k] = number of independent sets of size k.  Branch-and-reduce with
// component splitting; practical for sparse graphs up to the mid-30s,
// guarded by a recursion budget (throws BudgetExceeded).
std::vector<std::uint64_t> independence_polynomial(const Graph& h);

// Largest s such that at least half of all independent sets have size >= s.
int median_independent_set_size(const Graph& h);

// For a graph with no clique on r vertices: the count I(H) must sit between
// 2^(n^(1/(r-1)) - 1) and 2^n.  The lower comparison goes through exact
// integer arithmetic whenever n^(1/(r-1)) is integral.
bool check_shearer_count(const Graph& h, int r);

// Median-versus-count inequality: median >= (1/(2r)) * log2 I / log2 log2 I.
// Vacuous (applicable == false) when log2 I <= 1, i.e. the right side is
// undefined or nonpositive.
struct LmuResult {
  bool applicable = false;
  bool holds = false;
  int median = 0;
  double rhs = 0.0;
  double log2_count = 0.0;
};
LmuResult check_lmu(const Graph& h, int r);

// Exhaustive small-graph sweeps (shared by the validation lab and the
// acceptance suite).  Graphs are enumerated by edge subsets of K_n for every
// n in [1, max_n]; only graphs without a clique on r vertices are checked.
struct SweepResult {
  long long graphs = 0;    // graphs enumerated
  long long checked = 0;   // graphs that passed the clique filter
  long long vacuous = 0;   // skipped as inapplicable (median sweep only)
  long long failures = 0;
};
SweepResult sweep_shearer_small_graphs(int max_n, std::span<const int> rs);
SweepResult sweep_lmu_small_graphs(int max_n, int r);

// ---------------------------------------------------------------------------
// One-vertex list experiments: a center with |lists| neighbors, each with its
// own color list; optional edges between the neighbors for the clique-variant
// model.  cv is the center's own list.
// ---------------------------------------------------------------------------
struct ListFixture {
  std::vector<std::vector<Color>> lists;  // per neighbor, non-Blank, sorted
  std::vector<Color> cv;                  // center's candidate colors, sorted
  std::vector<std::pair<int, int>> edges;  // between neighbors
  int palette = 0;

  // Random fixture: every list an independent uniform q-subset of the
  // palette, cv likewise, optional G(n,p) edges between the neighbors.
  static ListFixture random(int neighbors, int q, int palette,
                            std::uint64_t seed, double edge_prob = 0.0);
};

// rho(c): sum over neighbors whose list holds c of 1/|list|; the total over
// all colors equals the neighbor count when no list is empty.
double rho(const ListFixture& fx, Color c);
double sum_rho(const ListFixture& fx);

// E|L_v| = 1 + sum_c prod_{u: c in list_u} (1 - 1/(|list_u|+1)) under
// independent draws (each neighbor uniform over its list plus Blank).
double expected_available_count(const ListFixture& fx);
// Closed-form lower bounds on the expectation; both strict for cv nonempty.
double expected_available_exp_bound(const ListFixture& fx);   // sum_c e^{-rho(c)}
double expected_available_crude_bound(const ListFixture& fx);  // q e^{-Delta/q}

// The same expectation by brute force over every joint draw (throws
// BudgetExceeded when the product space exceeds `budget`); agrees with the
// closed form to floating-point accuracy.
double enumerated_expected_available(const ListFixture& fx,
                                     long long budget = 2'000'000);

// ---------------------------------------------------------------------------
// Exact negative-correlation checks.
// ---------------------------------------------------------------------------

// A finite distribution over bit vectors: outcome i has mask outcomes[i]
// (bit j = variable j fired) and multiplicity weights[i].
struct FiniteDistribution {
  int bits = 0;
  std::vector<std::uint32_t> outcomes;
  std::vector<std::uint64_t> weights;
};

// Exact joint probability that all variables of `ones` are 1 -- of their
// complements when `complement` -- returned as (numerator, denominator),
// unreduced.
std::pair<std::uint64_t, std::uint64_t> joint_probability(
    const FiniteDistribution& dist, std::uint32_t ones, bool complement = false);

struct NegCorrResult {
  bool holds = true;
  std::uint32_t witness = 0;   // offending variable set when holds == false
  double lhs = 0.0, rhs = 0.0;  // probabilities at the witness (or worst set)
};

// Checks Pr(AND_{i in I} V_i) <= prod_{i in I} Pr(V_i) for every variable
// set I, with V = the variables (complement=false) or their negations.
// Exact big-integer comparisons; bits <= 20.
NegCorrResult negatively_correlated(const FiniteDistribution& dist,
                                    bool complement = false);

// The events "color c landed on some neighbor" under independent neighbor
// draws from a fixture: enumerates the product space (budget-guarded) and
// runs the exact subset check over the colors of cv.
NegCorrResult negative_correlation_exact(const ListFixture& fx,
                                         long long max_outcomes = 10'000'000);

// The classic two-of-each-doubled urn: three indicator bits whose negations
// are NOT negatively correlated even though the indicators themselves are.
FiniteDistribution urn_counterexample();

// ---------------------------------------------------------------------------
// Monte-Carlo estimates with standard-error verdicts.
// ---------------------------------------------------------------------------
struct EstimateReport {
  double estimate = 0.0;
  double std_error = 0.0;
  double reference = 0.0;  // bound or exact value being tested against
  long long trials = 0;
  enum class Verdict { kPass, kFail, kVacuous } verdict = Verdict::kVacuous;
};

EstimateReport upper_bound_report(double estimate, double std_error,
                                  long long trials, double bound);
EstimateReport two_sided_report(double estimate, double std_error,
                                long long trials, double exact);

// Monte-Carlo fixture checks under independent draws: the sample mean of
// |L_v| against the closed form (two-sided), and the deficiency tail
// Pr(|L_v| < E/2) against the e^{-E/8} concentration bound (upper).
EstimateReport mc_expected_available(const ListFixture& fx, long long trials,
                                     std::uint64_t seed);
EstimateReport mc_available_lower_tail(const ListFixture& fx, long long trials,
                                       std::uint64_t seed);

enum class FlawModel {
  kIndependentDraws,  // every neighbor independently uniform on list + Blank
  kUniformValid,      // uniform over valid neighborhood colorings (needs edges)
};

// Estimated probabilities of the two flaws at the fixture's center, with the
// exact values alongside when the product space fits the budget, and the
// reference scale Delta^-4 that the regime is calibrated against.
struct FlawProbReport {
  EstimateReport deficient;  // |L_v| < L
  EstimateReport blank_pressure;  // variant-specific Z condition
  std::optional<double> exact_deficient;
  std::optional<double> exact_blank_pressure;
  double delta_ref = 0.0;  // (neighbor count)^-4
};

FlawProbReport mc_flaw_probability(const ListFixture& fx, const FlawParams& params,
                                   long long trials, std::uint64_t seed,
                                   FlawModel model,
                                   long long exact_budget = 2'000'000);

// ---------------------------------------------------------------------------
// Concentration-bound spot checks: families with computable expectations,
// tails compared against exp(-t^2/(3E)) above and exp(-t^2/(2E)) below.
// ---------------------------------------------------------------------------
struct ChernoffSpec {
  enum class Family {
    kBernoulliSum,       // m independent coins with success probability p
    kAvailableColors,    // |L_v| - 1 at a fixture center under kIndependentDraws
    kWithoutReplacement, // hypergeometric: draws from an urn of ones/zeros
  };
  Family family = Family::kBernoulliSum;
  int m = 0;
  double p = 0.5;
  ListFixture fixture;
  int urn_size = 0, urn_ones = 0, draws = 0;
};

struct TailCheck {
  double t = 0.0;        // deviation tested
  double expectation = 0.0;
  EstimateReport upper;  // Pr(X >= E + t) vs exp(-t^2/(3E))
  EstimateReport lower;  // Pr(X <= E - t) vs exp(-t^2/(2E))
};

std::vector<TailCheck> chernoff_validator(const ChernoffSpec& spec,
                                          std::span<const double> t_fractions,
                                          long long trials, std::uint64_t seed);

// Upper tail probability of the chi-square distribution (regularized
// incomplete gamma Q(dof/2, x/2)); used for uniformity tests.
double chi_square_sf(double stat, int dof);

}  // namespace colorfix
