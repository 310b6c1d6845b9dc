#include "colorfix/analytics.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <functional>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "colorfix/errors.hpp"

namespace colorfix {

using boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Independent-set counting.
// ---------------------------------------------------------------------------

std::uint64_t count_independent_sets(const Graph& h) {
  const int n = h.vertex_count();
  if (n > 40) throw BudgetExceeded("count_independent_sets: n > 40");
  if (n == 0) return 1;
  const int a = (n + 1) / 2;
  const int b = n - a;
  std::vector<std::uint32_t> adj_a(a, 0), cross(a, 0), adj_b(std::max(b, 1), 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : h.neighbors(v)) {
      if (v < a && w < a) adj_a[v] |= 1u << w;
      if (v < a && w >= a) cross[v] |= 1u << (w - a);
      if (v >= a && w >= a) adj_b[v - a] |= 1u << (w - a);
    }
  }
  // cnt[M] = independent subsets of the B side contained in M.
  const std::uint32_t full_b = b == 0 ? 0 : (~0u >> (32 - b));
  std::vector<std::uint64_t> cnt(static_cast<std::size_t>(1) << b, 1);
  for (std::uint32_t mask = 1; b > 0 && mask <= full_b; ++mask) {
    const int low = std::countr_zero(mask);
    const std::uint32_t low_bit = 1u << low;
    cnt[mask] = cnt[mask & ~low_bit] + cnt[mask & ~(adj_b[low] | low_bit)];
  }
  // Walk the A side: independence flag and B-neighborhood per subset.
  const std::uint32_t full_a = ~0u >> (32 - a);
  std::vector<char> indep(static_cast<std::size_t>(1) << a, 1);
  std::vector<std::uint32_t> nb(static_cast<std::size_t>(1) << a, 0);
  std::uint64_t total = 0;
  for (std::uint32_t s = 0; s <= full_a; ++s) {
    if (s != 0) {
      const int low = std::countr_zero(s);
      const std::uint32_t rest = s & (s - 1);
      indep[s] = indep[rest] && (adj_a[low] & rest) == 0;
      nb[s] = nb[rest] | cross[low];
    }
    if (indep[s]) total += cnt[full_b & ~nb[s]];
    if (s == full_a) break;
  }
  return total;
}

namespace {

using Poly = std::vector<std::uint64_t>;

Poly poly_mul(const Poly& p, const Poly& q) {
  Poly out(p.size() + q.size() - 1, 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  }
  return out;
}

struct PolyCounter {
  const std::vector<std::uint64_t>& adj;
  long long budget;

  Poly run(std::uint64_t mask) {
    if (--budget < 0) {
      throw BudgetExceeded("independence_polynomial: recursion budget exceeded");
    }
    if (mask == 0) return {1};
    // Split off the component of the lowest vertex.
    std::uint64_t comp = 1ull << std::countr_zero(mask);
    for (;;) {
      std::uint64_t grown = comp;
      std::uint64_t scan = comp;
      while (scan) {
        const int v = std::countr_zero(scan);
        scan &= scan - 1;
        grown |= adj[v] & mask;
      }
      if (grown == comp) break;
      comp = grown;
    }
    if (comp != mask) return poly_mul(run(comp), run(mask & ~comp));
    // Connected: branch on a maximum-degree vertex.
    int best = -1, best_deg = -1;
    std::uint64_t scan = mask;
    while (scan) {
      const int v = std::countr_zero(scan);
      scan &= scan - 1;
      const int deg = std::popcount(adj[v] & mask);
      if (deg > best_deg) {
        best_deg = deg;
        best = v;
      }
    }
    if (best_deg == 0) return {1, 1};  // connected => a single vertex
    const std::uint64_t vbit = 1ull << best;
    Poly without = run(mask & ~vbit);
    Poly with = run(mask & ~(adj[best] | vbit));
    if (without.size() < with.size() + 1) without.resize(with.size() + 1, 0);
    for (std::size_t k = 0; k < with.size(); ++k) without[k + 1] += with[k];
    return without;
  }
};

}  // namespace

std::vector<std::uint64_t> independence_polynomial(const Graph& h) {
  const int n = h.vertex_count();
  if (n > 40) throw BudgetExceeded("independence_polynomial: n > 40");
  std::vector<std::uint64_t> adj(std::max(n, 1), 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : h.neighbors(v)) adj[v] |= 1ull << w;
  }
  PolyCounter counter{adj, 1ll << 22};
  const std::uint64_t full = n == 0 ? 0 : (~0ull >> (64 - n));
  Poly p = counter.run(full);
  p.resize(static_cast<std::size_t>(n) + 1, 0);
  return p;
}

int median_independent_set_size(const Graph& h) {
  const std::vector<std::uint64_t> hist = independence_polynomial(h);
  std::uint64_t total = 0;
  for (std::uint64_t c : hist) total += c;
  std::uint64_t above = 0;
  for (int s = static_cast<int>(hist.size()) - 1; s >= 0; --s) {
    above += hist[s];
    if (2 * above >= total) return s;
  }
  return 0;
}

namespace {

// Integer m with m^(r-1) == n, if one exists.
std::optional<int> integral_root(int n, int power) {
  for (int m = 1; m <= n; ++m) {
    long long acc = 1;
    for (int i = 0; i < power; ++i) {
      acc *= m;
      if (acc > n) break;
    }
    if (acc == n) return m;
    if (acc > n) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

bool check_shearer_count(const Graph& h, int r) {
  if (r < 2) throw InvalidArgument("check_shearer_count: r must be >= 2");
  const int n = h.vertex_count();
  const std::uint64_t count = count_independent_sets(h);
  if (n <= 63 && count > (1ull << n)) return false;  // upper: I <= 2^n
  if (n == 0) return true;
  if (const std::optional<int> m = integral_root(n, r - 1)) {
    return count >= (1ull << (*m - 1));  // exact when the exponent is integral
  }
  const long double log2_count = std::log2(static_cast<long double>(count));
  const long double needed = std::pow(static_cast<long double>(n), 1.0L / (r - 1)) - 1.0L;
  return log2_count >= needed;
}

LmuResult check_lmu(const Graph& h, int r) {
  if (r < 1) throw InvalidArgument("check_lmu: r must be >= 1");
  LmuResult res;
  const std::uint64_t count = count_independent_sets(h);
  res.log2_count = std::log2(static_cast<double>(count));
  if (res.log2_count <= 1.0) {
    res.applicable = false;  // log2 log2 I would be nonpositive
    return res;
  }
  res.applicable = true;
  res.median = median_independent_set_size(h);
  res.rhs = res.log2_count / std::log2(res.log2_count) / (2.0 * r);
  res.holds = static_cast<double>(res.median) >= res.rhs;
  return res;
}

// ---------------------------------------------------------------------------
// Exhaustive sweeps over tiny graphs, using flat bitmask adjacency.
// ---------------------------------------------------------------------------
namespace {

struct TinyGraph {
  int n = 0;
  std::array<std::uint8_t, 8> adj{};
};

std::uint64_t tiny_count_independent_sets(const TinyGraph& t) {
  std::array<std::uint64_t, 256> cnt;
  cnt[0] = 1;
  const std::uint32_t full = (1u << t.n) - 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int low = std::countr_zero(mask);
    const std::uint32_t low_bit = 1u << low;
    cnt[mask] = cnt[mask & ~low_bit] + cnt[mask & ~(t.adj[low] | low_bit)];
  }
  return cnt[full];
}

bool tiny_has_clique(const TinyGraph& t, int r) {
  if (r <= 1) return t.n >= r;
  const std::uint32_t full = (1u << t.n) - 1;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    if (std::popcount(mask) != r) continue;
    bool ok = true;
    std::uint32_t scan = mask;
    while (scan && ok) {
      const int v = std::countr_zero(scan);
      scan &= scan - 1;
      if ((t.adj[v] & mask) != (mask & ~(1u << v))) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

std::array<std::uint64_t, 9> tiny_histogram(const TinyGraph& t) {
  std::array<std::uint64_t, 9> hist{};
  const std::uint32_t full = (1u << t.n) - 1;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    bool indep = true;
    std::uint32_t scan = mask;
    while (scan && indep) {
      const int v = std::countr_zero(scan);
      scan &= scan - 1;
      if (t.adj[v] & mask) indep = false;
    }
    if (indep) ++hist[std::popcount(mask)];
    if (mask == full) break;
  }
  return hist;
}

template <typename Fn>
void for_each_tiny_graph(int n, Fn&& fn) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  }
  const std::uint32_t edge_count = static_cast<std::uint32_t>(slots.size());
  const std::uint64_t limit = 1ull << edge_count;
  TinyGraph t;
  t.n = n;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    t.adj.fill(0);
    for (std::uint32_t e = 0; e < edge_count; ++e) {
      if ((mask >> e) & 1) {
        t.adj[slots[e].first] |= static_cast<std::uint8_t>(1u << slots[e].second);
        t.adj[slots[e].second] |= static_cast<std::uint8_t>(1u << slots[e].first);
      }
    }
    fn(t);
  }
}

// Shearer thresholds, cached per (n, r): exact power-of-two when the
// exponent is integral, else the real value.
struct ShearerThreshold {
  std::optional<std::uint64_t> exact;
  long double log2_needed = 0.0L;
};

ShearerThreshold shearer_threshold(int n, int r) {
  ShearerThreshold th;
  if (const std::optional<int> m = integral_root(n, r - 1)) {
    th.exact = 1ull << (*m - 1);
  } else {
    th.log2_needed = std::pow(static_cast<long double>(n), 1.0L / (r - 1)) - 1.0L;
  }
  return th;
}

}  // namespace

SweepResult sweep_shearer_small_graphs(int max_n, std::span<const int> rs) {
  if (max_n > 8) throw InvalidArgument("sweep_shearer_small_graphs: max_n <= 8");
  for (int r : rs) {
    if (r < 2) throw InvalidArgument("sweep_shearer_small_graphs: r must be >= 2");
  }
  SweepResult res;
  for (int n = 1; n <= max_n; ++n) {
    std::vector<ShearerThreshold> ths;
    ths.reserve(rs.size());
    for (int r : rs) ths.push_back(shearer_threshold(n, r));
    for_each_tiny_graph(n, [&](const TinyGraph& t) {
      ++res.graphs;
      std::optional<std::uint64_t> count;
      for (std::size_t k = 0; k < rs.size(); ++k) {
        if (tiny_has_clique(t, rs[k])) continue;
        ++res.checked;
        if (!count) count = tiny_count_independent_sets(t);
        bool ok = *count <= (1ull << n);
        if (ok) {
          ok = ths[k].exact
                   ? *count >= *ths[k].exact
                   : std::log2(static_cast<long double>(*count)) >= ths[k].log2_needed;
        }
        if (!ok) ++res.failures;
      }
    });
  }
  return res;
}

SweepResult sweep_lmu_small_graphs(int max_n, int r) {
  if (max_n > 8) throw InvalidArgument("sweep_lmu_small_graphs: max_n <= 8");
  if (r < 1) throw InvalidArgument("sweep_lmu_small_graphs: r must be >= 1");
  SweepResult res;
  for (int n = 1; n <= max_n; ++n) {
    for_each_tiny_graph(n, [&](const TinyGraph& t) {
      ++res.graphs;
      if (r >= 2 && tiny_has_clique(t, r)) return;
      const std::array<std::uint64_t, 9> hist = tiny_histogram(t);
      std::uint64_t total = 0;
      for (std::uint64_t c : hist) total += c;
      const double log2_count = std::log2(static_cast<double>(total));
      if (log2_count <= 1.0) {
        ++res.vacuous;
        return;
      }
      ++res.checked;
      std::uint64_t above = 0;
      int median = 0;
      for (int s = 8; s >= 0; --s) {
        above += hist[s];
        if (2 * above >= total) {
          median = s;
          break;
        }
      }
      const double rhs = log2_count / std::log2(log2_count) / (2.0 * r);
      if (static_cast<double>(median) < rhs) ++res.failures;
    });
  }
  return res;
}

// ---------------------------------------------------------------------------
// List fixtures.
// ---------------------------------------------------------------------------

ListFixture ListFixture::random(int neighbors, int q, int palette,
                                std::uint64_t seed, double edge_prob) {
  if (q > palette) throw InvalidArgument("ListFixture::random: q exceeds the palette");
  Rng rng(Rng::derive(seed, "fixture"));
  ListFixture fx;
  fx.palette = palette;
  auto subset = [&]() {
    std::vector<Color> pool(palette);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < q; ++i) {
      const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(palette - i)));
      std::swap(pool[i], pool[j]);
    }
    std::vector<Color> out(pool.begin(), pool.begin() + q);
    std::sort(out.begin(), out.end());
    return out;
  };
  fx.lists.reserve(neighbors);
  for (int u = 0; u < neighbors; ++u) fx.lists.push_back(subset());
  fx.cv = subset();
  if (edge_prob > 0.0) {
    for (int i = 0; i < neighbors; ++i) {
      for (int j = i + 1; j < neighbors; ++j) {
        if (rng.unit() < edge_prob) fx.edges.emplace_back(i, j);
      }
    }
  }
  return fx;
}

double rho(const ListFixture& fx, Color c) {
  double total = 0.0;
  for (const std::vector<Color>& l : fx.lists) {
    if (!l.empty() && std::binary_search(l.begin(), l.end(), c)) {
      total += 1.0 / static_cast<double>(l.size());
    }
  }
  return total;
}

double sum_rho(const ListFixture& fx) {
  double total = 0.0;
  for (Color c = 0; c < fx.palette; ++c) total += rho(fx, c);
  return total;
}

double expected_available_count(const ListFixture& fx) {
  double total = 1.0;  // Blank is always available
  for (Color c : fx.cv) {
    double prod = 1.0;
    for (const std::vector<Color>& l : fx.lists) {
      if (std::binary_search(l.begin(), l.end(), c)) {
        prod *= 1.0 - 1.0 / static_cast<double>(l.size() + 1);
      }
    }
    total += prod;
  }
  return total;
}

double expected_available_exp_bound(const ListFixture& fx) {
  double total = 0.0;
  for (Color c : fx.cv) total += std::exp(-rho(fx, c));
  return total;
}

double expected_available_crude_bound(const ListFixture& fx) {
  const double q = static_cast<double>(fx.cv.size());
  if (q == 0.0) return 0.0;
  const double delta = static_cast<double>(fx.lists.size());
  return q * std::exp(-delta / q);
}

namespace {

double freq_std_error(double p, long long trials);

// |L_v| for one joint draw: digit[u] indexes lists[u], with digit[u] ==
// |lists[u]| meaning Blank.  `worn` is caller-provided zeroed scratch of
// palette size, restored to zeros before returning.
int available_of_digits(const ListFixture& fx, const std::vector<int>& digit,
                        std::vector<char>& worn) {
  const int k = static_cast<int>(fx.lists.size());
  for (int u = 0; u < k; ++u) {
    const int d = digit[u];
    if (d < static_cast<int>(fx.lists[u].size()))
      worn[static_cast<std::size_t>(fx.lists[u][d])] = 1;
  }
  int lv = 1;
  for (Color c : fx.cv)
    if (!worn[static_cast<std::size_t>(c)]) ++lv;
  for (int u = 0; u < k; ++u) {
    const int d = digit[u];
    if (d < static_cast<int>(fx.lists[u].size()))
      worn[static_cast<std::size_t>(fx.lists[u][d])] = 0;
  }
  return lv;
}

}  // namespace

double enumerated_expected_available(const ListFixture& fx, long long budget) {
  const int k = static_cast<int>(fx.lists.size());
  long long outcomes = 1;
  for (const auto& l : fx.lists) {
    const long long radix = static_cast<long long>(l.size()) + 1;
    if (outcomes > budget / radix)
      throw BudgetExceeded("enumerated_expected_available: product space over budget");
    outcomes *= radix;
  }
  std::vector<int> digit(k, 0);
  std::vector<char> worn(static_cast<std::size_t>(fx.palette), 0);
  double total = 0.0;
  for (long long i = 0; i < outcomes; ++i) {
    total += available_of_digits(fx, digit, worn);
    for (int u = k - 1; u >= 0; --u) {
      if (++digit[u] <= static_cast<int>(fx.lists[u].size())) break;
      digit[u] = 0;
    }
  }
  return total / static_cast<double>(outcomes);
}

EstimateReport mc_expected_available(const ListFixture& fx, long long trials,
                                     std::uint64_t seed) {
  Rng rng(Rng::derive(seed, "chernoff"));
  const int k = static_cast<int>(fx.lists.size());
  std::vector<int> digit(k);
  std::vector<char> worn(static_cast<std::size_t>(fx.palette), 0);
  double sum = 0.0, sumsq = 0.0;
  for (long long t = 0; t < trials; ++t) {
    for (int u = 0; u < k; ++u)
      digit[u] = static_cast<int>(rng.below(fx.lists[u].size() + 1));
    const double x = available_of_digits(fx, digit, worn);
    sum += x;
    sumsq += x * x;
  }
  const double n = static_cast<double>(trials);
  const double mean = trials > 0 ? sum / n : 0.0;
  const double var = trials > 1 ? std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0)) : 0.0;
  const double se = trials > 0 ? std::sqrt(var / n) : 0.0;
  return two_sided_report(mean, se, trials, expected_available_count(fx));
}

EstimateReport mc_available_lower_tail(const ListFixture& fx, long long trials,
                                       std::uint64_t seed) {
  Rng rng(Rng::derive(seed, "chernoff"));
  const int k = static_cast<int>(fx.lists.size());
  const double expectation = expected_available_count(fx);
  std::vector<int> digit(k);
  std::vector<char> worn(static_cast<std::size_t>(fx.palette), 0);
  long long hits = 0;
  for (long long t = 0; t < trials; ++t) {
    for (int u = 0; u < k; ++u)
      digit[u] = static_cast<int>(rng.below(fx.lists[u].size() + 1));
    if (available_of_digits(fx, digit, worn) < expectation / 2.0) ++hits;
  }
  const double p = trials > 0 ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
  return upper_bound_report(p, freq_std_error(p, trials), trials,
                            std::exp(-expectation / 8.0));
}

// ---------------------------------------------------------------------------
// Exact negative correlation.
// ---------------------------------------------------------------------------

std::pair<std::uint64_t, std::uint64_t> joint_probability(
    const FiniteDistribution& dist, std::uint32_t ones, bool complement) {
  const std::uint32_t var_mask =
      dist.bits >= 32 ? ~0u : ((1u << dist.bits) - 1);
  std::uint64_t num = 0, den = 0;
  for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
    const std::uint32_t o =
        complement ? (~dist.outcomes[i] & var_mask) : dist.outcomes[i];
    den += dist.weights[i];
    if ((o & ones) == ones) num += dist.weights[i];
  }
  return {num, den};
}

NegCorrResult negatively_correlated(const FiniteDistribution& dist, bool complement) {
  if (dist.bits < 1 || dist.bits > 20) {
    throw InvalidArgument("negatively_correlated: bits must be in [1, 20]");
  }
  if (dist.outcomes.size() != dist.weights.size()) {
    throw InvalidArgument("negatively_correlated: outcome/weight size mismatch");
  }
  const std::uint32_t full = (1u << dist.bits) - 1;
  std::vector<std::uint64_t> cnt(static_cast<std::size_t>(full) + 1, 0);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
    if (dist.outcomes[i] > full) {
      throw InvalidArgument("negatively_correlated: outcome uses unknown bits");
    }
    const std::uint32_t o =
        complement ? (~dist.outcomes[i] & full) : dist.outcomes[i];
    cnt[o] += dist.weights[i];
    total += dist.weights[i];
  }
  if (total == 0) throw InvalidArgument("negatively_correlated: empty distribution");
  // Superset sums: cnt[I] becomes the weight of outcomes where all of I fired.
  for (int j = 0; j < dist.bits; ++j) {
    for (std::uint32_t m = 0; m <= full; ++m) {
      if (!((m >> j) & 1)) cnt[m] += cnt[m | (1u << j)];
    }
  }
  NegCorrResult res;
  const cpp_int big_total = total;
  for (std::uint32_t set = 1; set <= full; ++set) {
    const int k = std::popcount(set);
    if (k < 2) continue;  // singletons hold trivially
    // Pr(AND) <= prod Pr  <=>  cnt[set] * total^(k-1) <= prod cnt[singleton]
    cpp_int lhs = cnt[set];
    for (int i = 1; i < k; ++i) lhs *= big_total;
    cpp_int rhs = 1;
    std::uint32_t scan = set;
    while (scan) {
      rhs *= cnt[1u << std::countr_zero(scan)];
      scan &= scan - 1;
    }
    if (lhs > rhs) {
      res.holds = false;
      res.witness = set;
      res.lhs = static_cast<double>(cnt[set]) / static_cast<double>(total);
      double p = 1.0;
      scan = set;
      while (scan) {
        p *= static_cast<double>(cnt[1u << std::countr_zero(scan)]) /
             static_cast<double>(total);
        scan &= scan - 1;
      }
      res.rhs = p;
      return res;
    }
  }
  return res;
}

NegCorrResult negative_correlation_exact(const ListFixture& fx, long long max_outcomes) {
  const int bits = static_cast<int>(fx.cv.size());
  if (bits < 1 || bits > 20) {
    throw InvalidArgument("negative_correlation_exact: |cv| must be in [1, 20]");
  }
  long long prod = 1;
  for (const std::vector<Color>& l : fx.lists) {
    prod *= static_cast<long long>(l.size()) + 1;
    if (prod > max_outcomes) {
      throw BudgetExceeded("negative_correlation_exact: product space exceeds the budget");
    }
  }
  const std::uint32_t full = (1u << bits) - 1;
  std::vector<std::uint64_t> weight(static_cast<std::size_t>(full) + 1, 0);
  const int k = static_cast<int>(fx.lists.size());
  std::vector<int> digit(k, 0);
  std::vector<std::uint32_t> contrib(k, 0);  // bit set per neighbor's current color
  auto bit_of = [&](Color c) -> std::uint32_t {
    const auto it = std::lower_bound(fx.cv.begin(), fx.cv.end(), c);
    if (it != fx.cv.end() && *it == c) {
      return 1u << (it - fx.cv.begin());
    }
    return 0;
  };
  for (int u = 0; u < k; ++u) {
    contrib[u] = fx.lists[u].empty() ? 0 : bit_of(fx.lists[u][0]);
  }
  for (;;) {
    std::uint32_t worn = 0;
    for (int u = 0; u < k; ++u) worn |= contrib[u];
    ++weight[worn];
    int pos = k - 1;
    while (pos >= 0) {
      const int domain = static_cast<int>(fx.lists[pos].size()) + 1;  // + Blank
      if (++digit[pos] < domain) {
        contrib[pos] = digit[pos] == domain - 1 ? 0 : bit_of(fx.lists[pos][digit[pos]]);
        break;
      }
      digit[pos] = 0;
      contrib[pos] = fx.lists[pos].empty() ? 0 : bit_of(fx.lists[pos][0]);
      --pos;
    }
    if (pos < 0) break;
  }
  FiniteDistribution dist;
  dist.bits = bits;
  for (std::uint32_t m = 0; m <= full; ++m) {
    if (weight[m] > 0) {
      dist.outcomes.push_back(m);
      dist.weights.push_back(weight[m]);
    }
  }
  return negatively_correlated(dist, false);
}

FiniteDistribution urn_counterexample() {
  FiniteDistribution dist;
  dist.bits = 3;
  dist.outcomes = {0b000, 0b011, 0b101, 0b110, 0b001, 0b010, 0b100, 0b111};
  dist.weights = {2, 2, 2, 2, 1, 1, 1, 1};
  return dist;
}

// ---------------------------------------------------------------------------
// Monte-Carlo estimates.
// ---------------------------------------------------------------------------

namespace {

double freq_std_error(double p, long long trials) {
  if (trials <= 0) return 0.0;
  return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(trials));
}

}  // namespace

EstimateReport upper_bound_report(double estimate, double std_error,
                                  long long trials, double bound) {
  EstimateReport rep;
  rep.estimate = estimate;
  rep.std_error = std_error;
  rep.trials = trials;
  rep.reference = bound;
  if (trials <= 0) {
    rep.verdict = EstimateReport::Verdict::kVacuous;
  } else {
    rep.verdict = estimate <= bound + 4.0 * std_error
                      ? EstimateReport::Verdict::kPass
                      : EstimateReport::Verdict::kFail;
  }
  return rep;
}

EstimateReport two_sided_report(double estimate, double std_error,
                                long long trials, double exact) {
  EstimateReport rep;
  rep.estimate = estimate;
  rep.std_error = std_error;
  rep.trials = trials;
  rep.reference = exact;
  if (trials <= 0) {
    rep.verdict = EstimateReport::Verdict::kVacuous;
  } else {
    rep.verdict = std::abs(estimate - exact) <= 4.0 * std_error + 1e-12
                      ? EstimateReport::Verdict::kPass
                      : EstimateReport::Verdict::kFail;
  }
  return rep;
}

namespace {

// Shared flaw predicates on a fixture outcome.  `chi` holds one digit per
// neighbor: 0..|list|-1 a color index, |list| means Blank.
struct FixtureOutcome {
  int deficient = 0;
  int pressure = 0;
};

FixtureOutcome classify_outcome(const ListFixture& fx, const FlawParams& params,
                                const std::vector<int>& digit) {
  FixtureOutcome out;
  const int k = static_cast<int>(fx.lists.size());
  int lv = 1;
  long long pressure = 0;
  for (Color c : fx.cv) {
    bool worn = false;
    for (int u = 0; u < k && !worn; ++u) {
      const int d = digit[u];
      if (d < static_cast<int>(fx.lists[u].size()) && fx.lists[u][d] == c) worn = true;
    }
    if (worn) continue;
    ++lv;
    if (params.variant == Variant::kTriangleFree) {
      for (int u = 0; u < k; ++u) {
        if (digit[u] == static_cast<int>(fx.lists[u].size()) &&
            std::binary_search(fx.lists[u].begin(), fx.lists[u].end(), c)) {
          ++pressure;
        }
      }
    }
  }
  out.deficient = static_cast<double>(lv) < params.L ? 1 : 0;
  if (params.variant == Variant::kTriangleFree) {
    out.pressure =
        static_cast<double>(pressure) > params.L * static_cast<double>(lv) / 10.0 ? 1 : 0;
  } else {
    long long blanks = 0;
    for (int u = 0; u < k; ++u) {
      if (digit[u] == static_cast<int>(fx.lists[u].size())) ++blanks;
    }
    out.pressure = static_cast<double>(blanks) >= params.L ? 1 : 0;
  }
  return out;
}

bool outcome_valid(const ListFixture& fx, const std::vector<int>& digit) {
  for (const auto& [i, j] : fx.edges) {
    const int di = digit[i], dj = digit[j];
    if (di < static_cast<int>(fx.lists[i].size()) &&
        dj < static_cast<int>(fx.lists[j].size()) &&
        fx.lists[i][di] == fx.lists[j][dj]) {
      return false;
    }
  }
  return true;
}

}  // namespace

FlawProbReport mc_flaw_probability(const ListFixture& fx, const FlawParams& params,
                                   long long trials, std::uint64_t seed,
                                   FlawModel model, long long exact_budget) {
  const int k = static_cast<int>(fx.lists.size());
  Rng rng(Rng::derive(seed, "flawprob"));
  long long hit_deficient = 0, hit_pressure = 0;
  std::vector<int> digit(k);
  for (long long t = 0; t < trials; ++t) {
    for (long long guard = 0;; ++guard) {
      for (int u = 0; u < k; ++u) {
        digit[u] = static_cast<int>(rng.below(fx.lists[u].size() + 1));
      }
      if (model == FlawModel::kIndependentDraws || outcome_valid(fx, digit)) break;
      if (guard > 1'000'000) {
        throw Error("mc_flaw_probability: rejection sampling made no progress");
      }
    }
    const FixtureOutcome out = classify_outcome(fx, params, digit);
    hit_deficient += out.deficient;
    hit_pressure += out.pressure;
  }
  FlawProbReport rep;
  rep.delta_ref = std::pow(static_cast<double>(std::max(k, 1)), -4.0);
  const double p_def =
      trials > 0 ? static_cast<double>(hit_deficient) / static_cast<double>(trials) : 0.0;
  const double p_z =
      trials > 0 ? static_cast<double>(hit_pressure) / static_cast<double>(trials) : 0.0;

  // Exact values when the product space is small enough.
  long long prod = 1;
  bool enumerable = true;
  for (const std::vector<Color>& l : fx.lists) {
    prod *= static_cast<long long>(l.size()) + 1;
    if (prod > exact_budget) {
      enumerable = false;
      break;
    }
  }
  if (enumerable) {
    long long total = 0, def = 0, z = 0;
    std::vector<int> d(k, 0);
    for (;;) {
      if (model == FlawModel::kIndependentDraws || outcome_valid(fx, d)) {
        ++total;
        const FixtureOutcome out = classify_outcome(fx, params, d);
        def += out.deficient;
        z += out.pressure;
      }
      int pos = k - 1;
      while (pos >= 0) {
        if (++d[pos] <= static_cast<int>(fx.lists[pos].size())) break;
        d[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
    if (total > 0) {
      rep.exact_deficient = static_cast<double>(def) / static_cast<double>(total);
      rep.exact_blank_pressure = static_cast<double>(z) / static_cast<double>(total);
    }
  }

  if (rep.exact_deficient) {
    rep.deficient = two_sided_report(p_def, freq_std_error(p_def, trials), trials,
                                     *rep.exact_deficient);
    rep.blank_pressure = two_sided_report(p_z, freq_std_error(p_z, trials), trials,
                                          *rep.exact_blank_pressure);
  } else {
    rep.deficient =
        upper_bound_report(p_def, freq_std_error(p_def, trials), trials, rep.delta_ref);
    rep.blank_pressure =
        upper_bound_report(p_z, freq_std_error(p_z, trials), trials, rep.delta_ref);
  }
  return rep;
}

std::vector<TailCheck> chernoff_validator(const ChernoffSpec& spec,
                                          std::span<const double> t_fractions,
                                          long long trials, std::uint64_t seed) {
  Rng rng(Rng::derive(seed, "chernoff"));
  double expectation = 0.0;
  std::function<double()> sample;
  switch (spec.family) {
    case ChernoffSpec::Family::kBernoulliSum: {
      expectation = static_cast<double>(spec.m) * spec.p;
      sample = [&]() {
        int x = 0;
        for (int i = 0; i < spec.m; ++i) x += rng.unit() < spec.p ? 1 : 0;
        return static_cast<double>(x);
      };
      break;
    }
    case ChernoffSpec::Family::kAvailableColors: {
      expectation = expected_available_count(spec.fixture) - 1.0;
      sample = [&]() {
        const int k = static_cast<int>(spec.fixture.lists.size());
        std::vector<int> digit(k);
        for (int u = 0; u < k; ++u) {
          digit[u] = static_cast<int>(rng.below(spec.fixture.lists[u].size() + 1));
        }
        int x = 0;
        for (Color c : spec.fixture.cv) {
          bool worn = false;
          for (int u = 0; u < k && !worn; ++u) {
            if (digit[u] < static_cast<int>(spec.fixture.lists[u].size()) &&
                spec.fixture.lists[u][digit[u]] == c) {
              worn = true;
            }
          }
          if (!worn) ++x;
        }
        return static_cast<double>(x);
      };
      break;
    }
    case ChernoffSpec::Family::kWithoutReplacement: {
      if (spec.draws > spec.urn_size || spec.urn_ones > spec.urn_size) {
        throw InvalidArgument("chernoff_validator: inconsistent urn");
      }
      expectation = static_cast<double>(spec.draws) *
                    static_cast<double>(spec.urn_ones) /
                    static_cast<double>(spec.urn_size);
      sample = [&]() {
        // Partial Fisher-Yates over the urn indices; index < urn_ones is a 1.
        std::vector<int> pool(spec.urn_size);
        std::iota(pool.begin(), pool.end(), 0);
        int x = 0;
        for (int i = 0; i < spec.draws; ++i) {
          const auto j =
              i + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.urn_size - i)));
          std::swap(pool[i], pool[j]);
          if (pool[i] < spec.urn_ones) ++x;
        }
        return static_cast<double>(x);
      };
      break;
    }
  }

  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(trials));
  for (long long t = 0; t < trials; ++t) xs.push_back(sample());

  std::vector<TailCheck> out;
  for (double frac : t_fractions) {
    TailCheck tc;
    tc.expectation = expectation;
    tc.t = frac * expectation;
    if (expectation <= 0.0) {
      tc.upper = upper_bound_report(0.0, 0.0, 0, 1.0);
      tc.lower = upper_bound_report(0.0, 0.0, 0, 1.0);
      out.push_back(tc);
      continue;
    }
    long long hi = 0, lo = 0;
    for (double x : xs) {
      if (x >= expectation + tc.t) ++hi;
      if (x <= expectation - tc.t) ++lo;
    }
    const double p_hi = static_cast<double>(hi) / static_cast<double>(trials);
    const double p_lo = static_cast<double>(lo) / static_cast<double>(trials);
    tc.upper = upper_bound_report(p_hi, freq_std_error(p_hi, trials), trials,
                                  std::exp(-tc.t * tc.t / (3.0 * expectation)));
    tc.lower = upper_bound_report(p_lo, freq_std_error(p_lo, trials), trials,
                                  std::exp(-tc.t * tc.t / (2.0 * expectation)));
    out.push_back(tc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chi-square survival function via the regularized incomplete gamma.
// ---------------------------------------------------------------------------
namespace {

// P(a, x) by series; converges fast for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by continued fraction (modified Lentz); for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double chi_square_sf(double stat, int dof) {
  if (dof <= 0) throw InvalidArgument("chi_square_sf: dof must be positive");
  if (stat <= 0.0) return 1.0;
  const double a = static_cast<double>(dof) / 2.0;
  const double x = stat / 2.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

}  // namespace colorfix
