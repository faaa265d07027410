#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "isoperim/graph.hpp"

namespace randomg {

/// Sum of d uniformly random permutation matrices (entry 1 at (p(v), v)).
inline std::vector<std::uint32_t> doubly_regular(std::size_t n, std::uint32_t d, std::mt19937_64& rng) {
  std::vector<std::uint32_t> m(n * n, 0);
  std::vector<std::uint32_t> p(n);
  for (std::uint32_t i = 0; i < d; ++i) {
    std::iota(p.begin(), p.end(), 0u);
    std::shuffle(p.begin(), p.end(), rng);
    for (std::size_t v = 0; v < n; ++v) ++m[p[v] * n + v];
  }
  return m;
}

/// Symmetric 2k-regular multigraph: sum of P + P^T over k random permutations.
inline isoperim::RegularMultigraph symmetric_regular(std::size_t n, std::uint32_t k, std::mt19937_64& rng) {
  auto m = doubly_regular(n, k, rng);
  std::vector<std::uint32_t> sym(n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) sym[u * n + v] = m[u * n + v] + m[v * n + u];
  return isoperim::RegularMultigraph(n, std::move(sym));
}

}  // namespace randomg
