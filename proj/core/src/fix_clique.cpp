#include "colorfix/fix_clique.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>

#include "colorfix/errors.hpp"
#include "enum_detail.hpp"

namespace colorfix {

bool pca_valid(const NeighborhoodLists& nl, const Pca& chi) {
  if (chi.size() != nl.domains.size()) return false;
  for (std::size_t i = 0; i < chi.size(); ++i) {
    const std::vector<Color>& d = nl.domains[i];
    if (std::find(d.begin(), d.end(), chi[i]) == d.end()) return false;
  }
  return detail::classes_independent(nl, chi);
}

std::vector<Pca> enumerate_pca(const NeighborhoodLists& nl, long long budget) {
  std::vector<Pca> out;
  detail::for_each_candidate(nl, budget,
                             [&](const std::vector<Color>& chi, const std::vector<int>&) {
                               if (detail::classes_independent(nl, chi)) out.push_back(chi);
                               return true;
                             });
  return out;
}

long long count_pca(const NeighborhoodLists& nl, long long budget) {
  long long count = 0;
  detail::for_each_candidate(nl, budget,
                             [&](const std::vector<Color>& chi, const std::vector<int>&) {
                               if (detail::classes_independent(nl, chi)) ++count;
                               return true;
                             });
  return count;
}

Pca sample_pca_uniform(const NeighborhoodLists& nl, Rng& rng, long long budget,
                       int rejection_attempts) {
  const std::size_t k = nl.domains.size();
  for (const std::vector<Color>& d : nl.domains) {
    if (d.empty()) throw InvalidArgument("sample_pca_uniform: empty domain");
  }
  // A draw from the product measure conditioned on validity is uniform over
  // the valid colorings, so any number of rejection attempts followed by the
  // exact fallback below samples the same distribution.
  Pca chi(k);
  for (int attempt = 0; attempt < rejection_attempts; ++attempt) {
    for (std::size_t i = 0; i < k; ++i) {
      const std::vector<Color>& d = nl.domains[i];
      chi[i] = d[rng.below(d.size())];
    }
    if (detail::classes_independent(nl, chi)) return chi;
  }
  // Count-then-unrank; the all-Blank coloring is always valid, so total >= 1.
  const long long total = count_pca(nl, budget);
  const long long pick =
      static_cast<long long>(rng.below(static_cast<std::uint64_t>(total))) + 1;
  long long seen = 0;
  Pca out;
  detail::for_each_candidate(nl, budget,
                             [&](const std::vector<Color>& cand, const std::vector<int>&) {
                               if (!detail::classes_independent(nl, cand)) return true;
                               if (++seen == pick) {
                                 out = cand;
                                 return false;
                               }
                               return true;
                             });
  return out;
}

Pca resample_color_class(const NeighborhoodLists& nl, const Pca& chi, Color i,
                         Rng& rng, long long budget) {
  if (i == kBlank) throw InvalidArgument("resample_color_class: class must be non-Blank");
  if (!pca_valid(nl, chi)) throw InvalidArgument("resample_color_class: invalid coloring");
  // Q_i: members that may wear color i and are currently up for grabs.
  std::vector<int> q;
  for (std::size_t u = 0; u < chi.size(); ++u) {
    if (chi[u] != i && chi[u] != kBlank) continue;
    const std::vector<Color>& d = nl.domains[u];
    if (std::find(d.begin(), d.end(), i) != d.end()) q.push_back(static_cast<int>(u));
  }
  const int m = static_cast<int>(q.size());
  if (m > 62 || (1ll << m) > budget) {
    throw BudgetExceeded("resample_color_class: 2^" + std::to_string(m) +
                         " subsets exceed the budget");
  }
  // Adjacency restricted to Q, then count independent subsets of every
  // submask: I(M) = I(M \ low) + I(M \ N[low]).
  std::vector<std::uint64_t> adj(m, 0);
  for (const auto& [a, b] : nl.member_edges) {
    const auto ia = std::find(q.begin(), q.end(), a);
    const auto ib = std::find(q.begin(), q.end(), b);
    if (ia == q.end() || ib == q.end()) continue;
    adj[ia - q.begin()] |= 1ull << (ib - q.begin());
    adj[ib - q.begin()] |= 1ull << (ia - q.begin());
  }
  const std::uint64_t full = m == 0 ? 0 : (~0ull >> (64 - m));
  std::vector<std::uint64_t> cnt(static_cast<std::size_t>(1) << m, 1);
  for (std::uint64_t mask = 1; mask <= full && m > 0; ++mask) {
    const int low = std::countr_zero(mask);
    const std::uint64_t low_bit = 1ull << low;
    cnt[mask] = cnt[mask & ~low_bit] + cnt[mask & ~(adj[low] | low_bit)];
  }
  // Draw a uniform independent subset by walking the recursion.
  std::uint64_t r = rng.below(cnt[full]);
  std::uint64_t mask = full;
  std::uint64_t chosen = 0;
  while (mask != 0) {
    const int low = std::countr_zero(mask);
    const std::uint64_t low_bit = 1ull << low;
    const std::uint64_t without = cnt[mask & ~low_bit];
    if (r < without) {
      mask &= ~low_bit;
    } else {
      r -= without;
      chosen |= low_bit;
      mask &= ~(adj[low] | low_bit);
    }
  }
  Pca out = chi;
  for (int idx = 0; idx < m; ++idx) {
    out[q[idx]] = (chosen >> idx) & 1 ? i : kBlank;
  }
  return out;
}

int member_available_count(const NeighborhoodLists& nl, const Pca& chi, int i) {
  if (i < 0 || i >= static_cast<int>(nl.members.size()))
    throw InvalidArgument("member_available_count: member index out of range");
  int count = 0;
  for (Color c : nl.domains[i]) {
    if (c == kBlank) continue;
    bool worn = false;
    for (const auto& [a, b] : nl.member_edges) {
      const int other = a == i ? b : (b == i ? a : -1);
      if (other >= 0 && chi[other] == c) {
        worn = true;
        break;
      }
    }
    if (!worn) ++count;
  }
  return count;
}

std::optional<Pca> extend_blank_assignment(const NeighborhoodLists& nl, Pca chi,
                                           const std::vector<int>& blank_positions) {
  std::vector<int> order = blank_positions;
  std::sort(order.begin(), order.end());
  for (int pos : order) {
    if (pos < 0 || pos >= static_cast<int>(chi.size()) || chi[pos] != kBlank) {
      throw InvalidArgument("extend_blank_assignment: position is not blank");
    }
    bool placed = false;
    for (Color c : nl.domains[pos]) {
      if (c == kBlank) continue;
      bool clashes = false;
      for (const auto& [a, b] : nl.member_edges) {
        const int other = a == pos ? b : (b == pos ? a : -1);
        if (other >= 0 && chi[other] == c) {
          clashes = true;
          break;
        }
      }
      if (!clashes) {
        chi[pos] = c;
        placed = true;
        break;
      }
    }
    if (!placed) return std::nullopt;
  }
  return chi;
}

std::vector<Pca> enumerate_blank_extensions(const NeighborhoodLists& nl,
                                            const Pca& chi,
                                            const std::vector<int>& blank_positions,
                                            long long budget) {
  long long prod = 1;
  for (int pos : blank_positions) {
    if (pos < 0 || pos >= static_cast<int>(chi.size()) || chi[pos] != kBlank) {
      throw InvalidArgument("enumerate_blank_extensions: position is not blank");
    }
    prod *= static_cast<long long>(nl.domains[pos].size());
    if (prod > budget) throw BudgetExceeded("enumerate_blank_extensions: budget exceeded");
  }
  std::vector<Pca> out;
  Pca work = chi;
  const int k = static_cast<int>(blank_positions.size());
  std::vector<std::size_t> digit(k, 0);
  auto non_blank_size = [&](int pos) {
    return nl.domains[pos].size() - 1;  // canonical order keeps Blank last
  };
  for (int pos : blank_positions) {
    if (non_blank_size(pos) == 0) return out;  // nothing to extend with
  }
  for (;;) {
    for (int j = 0; j < k; ++j) {
      work[blank_positions[j]] = nl.domains[blank_positions[j]][digit[j]];
    }
    if (detail::classes_independent(nl, work)) out.push_back(work);
    int pos = k - 1;
    while (pos >= 0) {
      if (++digit[pos] < non_blank_size(blank_positions[pos])) break;
      digit[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

void fix2(const Graph& g, const ListAssignment& lists, PartialColoring& sigma,
          Flaw f, const FixParams& params, Rng& rng, RunStats* stats,
          Transcript* transcript) {
  if (params.flaw.variant != Variant::kCliqueFree) {
    throw InvalidArgument("fix2 requires the clique variant");
  }
  fix(g, lists, sigma, f, params, rng, stats, transcript);
}

PipelineResult run_pipeline_kr(const Graph& g, const ListAssignment& lists,
                               const FixParams& params) {
  if (params.flaw.variant != Variant::kCliqueFree) {
    throw InvalidArgument("run_pipeline_kr requires the clique variant");
  }
  return run_pipeline(g, lists, params, CompletionMethod::kGreedyThenMoserTardos);
}

}  // namespace colorfix
