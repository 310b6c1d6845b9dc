#pragma once

// Internal helpers for walking the canonical enumeration of neighborhood
// colorings: members ascending act as mixed-radix digits (most significant
// first), each digit running through its domain in canonical order.

#include <algorithm>
#include <vector>

#include "colorfix/coloring.hpp"
#include "colorfix/errors.hpp"
#include "colorfix/fix_triangle.hpp"

namespace colorfix::detail {

inline long long product_size_checked(const NeighborhoodLists& nl, long long budget) {
  long long prod = 1;
  for (const std::vector<Color>& d : nl.domains) {
    prod *= static_cast<long long>(d.size());
    if (prod > budget) {
      throw BudgetExceeded("neighborhood enumeration needs " + std::to_string(prod) +
                           "+ candidates, budget is " + std::to_string(budget));
    }
  }
  return prod;
}

// Calls fn(chi, digits) for every candidate in enumeration order until fn
// returns false.  Checks the budget up front.
template <typename Fn>
void for_each_candidate(const NeighborhoodLists& nl, long long budget, Fn&& fn) {
  product_size_checked(nl, budget);
  const int k = static_cast<int>(nl.domains.size());
  std::vector<int> digit(k, 0);
  std::vector<Color> chi(k);
  for (int i = 0; i < k; ++i) chi[i] = nl.domains[i][0];
  for (;;) {
    if (!fn(static_cast<const std::vector<Color>&>(chi),
            static_cast<const std::vector<int>&>(digit))) {
      return;
    }
    int pos = k - 1;
    while (pos >= 0) {
      if (++digit[pos] < static_cast<int>(nl.domains[pos].size())) {
        chi[pos] = nl.domains[pos][digit[pos]];
        break;
      }
      digit[pos] = 0;
      chi[pos] = nl.domains[pos][0];
      --pos;
    }
    if (pos < 0) return;
  }
}

// Digit vector of a concrete coloring; throws TranscriptError when an entry
// is outside its domain.
inline std::vector<int> digits_of(const NeighborhoodLists& nl, const std::vector<Color>& chi) {
  if (chi.size() != nl.domains.size()) {
    throw TranscriptError("neighborhood coloring has wrong length");
  }
  std::vector<int> digit(chi.size());
  for (std::size_t i = 0; i < chi.size(); ++i) {
    const std::vector<Color>& d = nl.domains[i];
    if (chi[i] == kBlank) {
      digit[i] = static_cast<int>(d.size()) - 1;  // Blank is always slotted last
      continue;
    }
    auto it = std::lower_bound(d.begin(), d.end() - 1, chi[i]);
    if (it == d.end() - 1 || *it != chi[i]) {
      throw TranscriptError("neighborhood coloring entry outside its domain");
    }
    digit[i] = static_cast<int>(it - d.begin());
  }
  return digit;
}

// Clique-variant validity: non-Blank classes independent inside N_v.
inline bool classes_independent(const NeighborhoodLists& nl, const std::vector<Color>& chi) {
  for (const auto& [i, j] : nl.member_edges) {
    if (chi[i] != kBlank && chi[i] == chi[j]) return false;
  }
  return true;
}

// Center's available-list size under chi: colors of cv worn by no member,
// plus Blank.
inline int center_available_count(const NeighborhoodLists& nl, const std::vector<Color>& chi) {
  int lv = 1;
  for (Color c : nl.cv) {
    bool worn = false;
    for (Color x : chi) {
      if (x == c) {
        worn = true;
        break;
      }
    }
    if (!worn) ++lv;
  }
  return lv;
}

// Whether chi realizes one of the two flaws of the enumeration universe.
// Clique-variant callers must filter by classes_independent first.
inline bool chi_flawed(const NeighborhoodLists& nl, const FlawParams& params,
                       const std::vector<Color>& chi) {
  const int lv = center_available_count(nl, chi);
  if (static_cast<double>(lv) < params.L) return true;  // deficient list
  if (nl.variant == Variant::kTriangleFree) {
    // blank pressure: sum over unworn candidate colors of how many blank
    // members could still take them
    long long sum = 0;
    for (Color c : nl.cv) {
      bool worn = false;
      for (Color x : chi) {
        if (x == c) {
          worn = true;
          break;
        }
      }
      if (worn) continue;
      for (std::size_t i = 0; i < chi.size(); ++i) {
        if (chi[i] != kBlank) continue;
        const std::vector<Color>& d = nl.domains[i];
        auto it = std::lower_bound(d.begin(), d.end() - 1, c);
        if (it != d.end() - 1 && *it == c) ++sum;
      }
    }
    return static_cast<double>(sum) > params.L * static_cast<double>(lv) / 10.0;
  }
  long long blanks = 0;
  for (Color x : chi) {
    if (x == kBlank) ++blanks;
  }
  return static_cast<double>(blanks) >= params.L;
}

// Candidate universe for the flawed-coloring enumeration: everything for
// the triangle-free variant, valid colorings for the clique variant.
inline bool chi_in_universe(const NeighborhoodLists& nl, const std::vector<Color>& chi) {
  return nl.variant == Variant::kTriangleFree || classes_independent(nl, chi);
}

}  // namespace colorfix::detail
