#include "colorfix/generators.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "colorfix/errors.hpp"
#include "colorfix/rng.hpp"

namespace colorfix {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      break;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

long long parse_ll(const std::string& tok, std::string_view what) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError("bad " + std::string(what) + " '" + tok +
                     "' in generator descriptor");
  return value;
}

double parse_prob(const std::string& tok) {
  try {
    std::size_t used = 0;
    double p = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    if (p < 0.0 || p > 1.0) throw ParseError("probability '" + tok + "' outside [0,1]");
    return p;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad probability '" + tok + "' in generator descriptor");
  }
}

Graph gen_cycle(long long n) {
  if (n < 3) throw InvalidArgument("cycle needs n >= 3");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < n; ++v)
    edges.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return Graph::build(static_cast<Vertex>(n), edges);
}

Graph gen_random_bipartite(long long n1, long long n2, double p, Rng& rng) {
  if (n1 < 0 || n2 < 0) throw InvalidArgument("negative side size");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex a = 0; a < n1; ++a)
    for (Vertex b = 0; b < n2; ++b)
      if (rng.unit() < p) edges.emplace_back(a, static_cast<Vertex>(n1 + b));
  return Graph::build(static_cast<Vertex>(n1 + n2), edges);
}

Graph gen_random_regular_bipartite(long long n, long long d, Rng& rng) {
  if (n <= 0 || d < 0 || d > n)
    throw InvalidArgument("regular bipartite needs 0 <= d <= n, n > 0");
  // Union of d random permutations.  A fresh permutation typically repeats
  // O(d) of the earlier edges, so instead of resampling the whole round we
  // repair it: swap each clashing position with a random one until the round
  // is disjoint from everything before (each pass fixes the expected clash
  // count geometrically).
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::vector<Vertex>> taken(static_cast<std::size_t>(n));
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  const auto clashes = [&](Vertex a, Vertex b) {
    const auto& row = taken[static_cast<std::size_t>(a)];
    return std::find(row.begin(), row.end(), b) != row.end();
  };
  for (long long round = 0; round < d; ++round) {
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size(); i > 1; --i)  // Fisher-Yates
      std::swap(perm[i - 1], perm[rng.below(i)]);
    for (int pass = 0;; ++pass) {
      if (pass > 10000)
        throw Error("random-regular-bipartite: repair did not converge "
                    "(d too close to n?)");
      bool clean = true;
      for (Vertex a = 0; a < n; ++a) {
        if (!clashes(a, perm[a])) continue;
        clean = false;
        const auto j = static_cast<std::size_t>(rng.below(perm.size()));
        std::swap(perm[static_cast<std::size_t>(a)], perm[j]);
      }
      if (clean) break;
    }
    for (Vertex a = 0; a < n; ++a) {
      taken[static_cast<std::size_t>(a)].push_back(perm[a]);
      edges.emplace_back(a, static_cast<Vertex>(n + perm[a]));
    }
  }
  return Graph::build(static_cast<Vertex>(2 * n), edges);
}

Graph gen_erase_triangles(long long n, double p, Rng& rng) {
  if (n < 0) throw InvalidArgument("negative vertex count");
  // Start from G(n, p); repeatedly find a triangle and drop one of its edges
  // (chosen by the seeded stream) until none remain.
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(n),
                                     std::vector<char>(static_cast<std::size_t>(n), 0));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.unit() < p) adj[u][v] = adj[v][u] = 1;

  bool dirty = true;
  while (dirty) {
    dirty = false;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) {
        if (!adj[u][v]) continue;
        for (Vertex w = v + 1; w < n; ++w) {
          if (adj[u][w] && adj[v][w]) {
            const std::pair<Vertex, Vertex> sides[3] = {{u, v}, {u, w}, {v, w}};
            auto [a, b] = sides[rng.below(3)];
            adj[a][b] = adj[b][a] = 0;
            dirty = true;
            if (!adj[u][v]) break;  // current edge gone; move to the next pair
          }
        }
      }
  }

  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (adj[u][v]) edges.emplace_back(u, v);
  return Graph::build(static_cast<Vertex>(n), edges);
}

Graph gen_complete_multipartite(const std::vector<long long>& sizes) {
  long long n = 0;
  for (long long s : sizes) {
    if (s < 0) throw InvalidArgument("negative part size");
    n += s;
  }
  std::vector<int> part;
  for (std::size_t i = 0; i < sizes.size(); ++i)
    part.insert(part.end(), static_cast<std::size_t>(sizes[i]), static_cast<int>(i));
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (part[u] != part[v]) edges.emplace_back(u, v);
  return Graph::build(static_cast<Vertex>(n), edges);
}

Graph gen_random_multipartite(long long k, long long s, double p, Rng& rng) {
  if (k < 1 || s < 0) throw InvalidArgument("random-multipartite needs k >= 1, s >= 0");
  const long long n = k * s;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (u / s != v / s && rng.unit() < p) edges.emplace_back(u, v);
  return Graph::build(static_cast<Vertex>(n), edges);
}

}  // namespace

GeneratorSpec GeneratorSpec::parse(std::string_view descriptor) {
  auto colon = descriptor.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("generator descriptor '" + std::string(descriptor) +
                     "' missing ':' (expected name:args)");
  std::string name(descriptor.substr(0, colon));
  auto args = split(descriptor.substr(colon + 1), ',');
  if (args.size() == 1 && args[0].empty())
    throw ParseError("generator descriptor '" + std::string(descriptor) + "' has no arguments");

  GeneratorSpec spec;
  auto want = [&](std::size_t n_args) {
    if (args.size() != n_args)
      throw ParseError("generator '" + name + "' expects " + std::to_string(n_args) +
                       " argument(s), got " + std::to_string(args.size()));
  };
  if (name == "cycle") {
    spec.family = Family::kCycle;
    want(1);
    spec.int_args = {parse_ll(args[0], "n")};
  } else if (name == "random-bipartite") {
    spec.family = Family::kRandomBipartite;
    want(3);
    spec.int_args = {parse_ll(args[0], "n1"), parse_ll(args[1], "n2")};
    spec.prob = parse_prob(args[2]);
  } else if (name == "random-regular-bipartite") {
    spec.family = Family::kRandomRegularBipartite;
    want(2);
    spec.int_args = {parse_ll(args[0], "n"), parse_ll(args[1], "d")};
  } else if (name == "erase-triangles") {
    spec.family = Family::kEraseTriangles;
    want(2);
    spec.int_args = {parse_ll(args[0], "n")};
    spec.prob = parse_prob(args[1]);
  } else if (name == "complete-multipartite") {
    spec.family = Family::kCompleteMultipartite;
    if (args.empty()) throw ParseError("complete-multipartite needs part sizes");
    for (const auto& a : args) spec.int_args.push_back(parse_ll(a, "part size"));
  } else if (name == "random-multipartite") {
    spec.family = Family::kRandomMultipartite;
    want(3);
    spec.int_args = {parse_ll(args[0], "k"), parse_ll(args[1], "s")};
    spec.prob = parse_prob(args[2]);
  } else {
    throw ParseError("unknown generator family '" + name + "'");
  }
  return spec;
}

std::string GeneratorSpec::to_string() const {
  std::ostringstream os;
  auto ints = [&](std::size_t from = 0) {
    for (std::size_t i = from; i < int_args.size(); ++i)
      os << (i > from ? "," : "") << int_args[i];
  };
  switch (family) {
    case Family::kCycle:
      os << "cycle:";
      ints();
      break;
    case Family::kRandomBipartite:
      os << "random-bipartite:";
      ints();
      os << "," << prob;
      break;
    case Family::kRandomRegularBipartite:
      os << "random-regular-bipartite:";
      ints();
      break;
    case Family::kEraseTriangles:
      os << "erase-triangles:";
      ints();
      os << "," << prob;
      break;
    case Family::kCompleteMultipartite:
      os << "complete-multipartite:";
      ints();
      break;
    case Family::kRandomMultipartite:
      os << "random-multipartite:";
      ints();
      os << "," << prob;
      break;
  }
  return os.str();
}

Graph generate(const GeneratorSpec& spec, std::uint64_t seed) {
  Rng rng(Rng::derive(seed, "generate"));
  using F = GeneratorSpec::Family;
  switch (spec.family) {
    case F::kCycle:
      return gen_cycle(spec.int_args.at(0));
    case F::kRandomBipartite:
      return gen_random_bipartite(spec.int_args.at(0), spec.int_args.at(1), spec.prob, rng);
    case F::kRandomRegularBipartite:
      return gen_random_regular_bipartite(spec.int_args.at(0), spec.int_args.at(1), rng);
    case F::kEraseTriangles:
      return gen_erase_triangles(spec.int_args.at(0), spec.prob, rng);
    case F::kCompleteMultipartite:
      return gen_complete_multipartite(spec.int_args);
    case F::kRandomMultipartite:
      return gen_random_multipartite(spec.int_args.at(0), spec.int_args.at(1), spec.prob, rng);
  }
  throw InvalidArgument("unknown generator family");
}

Graph generate(std::string_view descriptor, std::uint64_t seed) {
  return generate(GeneratorSpec::parse(descriptor), seed);
}

}  // namespace colorfix
