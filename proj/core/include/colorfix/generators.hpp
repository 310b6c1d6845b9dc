#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "colorfix/graph.hpp"

namespace colorfix {

// Seeded fixture generators.  Each family is addressable by a descriptor
// string (used verbatim on the CLI and in config files):
//
//   cycle:N
//   random-bipartite:N1,N2,P            each cross pair kept with prob P
//   random-regular-bipartite:N,D        D-regular on N+N vertices
//   erase-triangles:N,P                 G(N,P), then delete edges until
//                                       triangle-free
//   complete-multipartite:S1,S2,...,SK
//   random-multipartite:K,S,P           K parts of size S, cross pairs with
//                                       prob P (K_{K+1}-free by construction)
//
// Identical (descriptor, seed) pairs produce identical graphs.
struct GeneratorSpec {
  enum class Family {
    kCycle,
    kRandomBipartite,
    kRandomRegularBipartite,
    kEraseTriangles,
    kCompleteMultipartite,
    kRandomMultipartite,
  };
  Family family;
  std::vector<long long> int_args;
  double prob = 0.0;

  static GeneratorSpec parse(std::string_view descriptor);
  std::string to_string() const;
};

Graph generate(const GeneratorSpec& spec, std::uint64_t seed);
Graph generate(std::string_view descriptor, std::uint64_t seed);

}  // namespace colorfix
