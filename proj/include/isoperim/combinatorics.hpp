#pragma once

// Exact isoperimetric constants of regular multigraphs, with witnesses.
//
// All counts are ordered operator counts: E(A, B) = <T 1_A, 1_B>. Constants
// are computed over machine integers and returned as reduced rationals.
//
// Tie-breaks (reproducible witnesses):
//   * subset constants: smallest bitmask among minimizers;
//   * pair constants: smallest ternary code sum_v s_v 3^v with outside = 0,
//     R = 1, L = 2, i.e. the state word read from the highest vertex down,
//     preferring outside, then R, then L.

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "isoperim/error.hpp"
#include "isoperim/graph.hpp"
#include "isoperim/rational.hpp"

namespace isoperim {

using VertexMask = std::uint64_t;
using VertexSet = boost::dynamic_bitset<>;
__extension__ using Wide = __int128;  // cross-multiplied ratio comparisons

inline VertexMask mask_of(const std::vector<Vertex>& vs) {
  VertexMask m = 0;
  for (auto v : vs) m |= VertexMask{1} << v;
  return m;
}

inline std::vector<Vertex> vertices_of(VertexMask m) {
  std::vector<Vertex> out;
  for (; m; m &= m - 1) out.push_back(static_cast<Vertex>(std::countr_zero(m)));
  return out;
}

inline VertexSet set_of(std::size_t n, const std::vector<Vertex>& vs) {
  VertexSet s(n);
  for (auto v : vs) s.set(v);
  return s;
}

struct EnumerationCaps {
  std::size_t subset = 24;
  std::size_t ternary = 16;
  unsigned jobs = 1;
};

struct CutWitness {
  enum class Kind { subset, pair };
  Kind kind = Kind::subset;
  VertexMask subset = 0;
  VertexMask left = 0;
  VertexMask right = 0;
  ExactRatio value;
};

struct Optimum {
  ExactRatio value;
  CutWitness witness;
};

/// <T 1_A, 1_B> = sum over u in B, v in A of adj[u][v].
inline std::uint64_t edge_count(const RegularMultigraph& gr, const VertexSet& a, const VertexSet& b) {
  std::uint64_t total = 0;
  for (auto v = a.find_first(); v != VertexSet::npos; v = a.find_next(v))
    for (const auto& arc : gr.neighbors(static_cast<Vertex>(v)))
      if (b.test(arc.to)) total += arc.multiplicity;
  return total;
}

inline std::uint64_t edge_count(const RegularMultigraph& gr, VertexMask a, VertexMask b) {
  std::uint64_t total = 0;
  for (auto v : vertices_of(a))
    for (const auto& arc : gr.neighbors(v))
      if ((b >> arc.to) & 1) total += arc.multiplicity;
  return total;
}

/// vol_{T^power}(S) = <T^power 1_V, 1_S>; equals d^power |S| on regular input.
inline std::uint64_t vol(const RegularMultigraph& gr, const VertexSet& s, int power) {
  if (power != 1 && power != 2) fail(Errc::invalid_descriptor, "power must be 1 or 2");
  std::uint64_t total = 0;
  for (auto u = s.find_first(); u != VertexSet::npos; u = s.find_next(u))
    for (const auto& arc : gr.neighbors(static_cast<Vertex>(u)))
      total += power == 1 ? arc.multiplicity : std::uint64_t{arc.multiplicity} * gr.d();
  std::uint64_t expected = s.count() * (power == 1 ? gr.d() : std::uint64_t{gr.d()} * gr.d());
  if (total != expected) fail(Errc::internal_error, "volume differs from d^power |S|");
  return total;
}

namespace detail {

inline void require_cap(const RegularMultigraph& gr, std::size_t cap, const char* what) {
  if (gr.n() > cap || gr.n() > 63)
    fail(Errc::too_large, std::string(what) + " enumeration: n = " + std::to_string(gr.n()) +
                              " exceeds the cap of " + std::to_string(std::min<std::size_t>(cap, 63)));
}

/// Running best of num/den with mask tie-break; denominators are positive.
struct SubsetBest {
  std::int64_t num = 1;
  std::int64_t den = 0;  // den == 0 means unset
  VertexMask mask = 0;

  void offer(std::int64_t n, std::int64_t d, VertexMask m) {
    if (den == 0) {
      *this = {n, d, m};
      return;
    }
    Wide lhs = static_cast<Wide>(n) * den, rhs = static_cast<Wide>(num) * d;
    if (lhs < rhs || (lhs == rhs && m < mask)) *this = {n, d, m};
  }
};

struct SubsetScan {
  SubsetBest edge;
  SubsetBest vertex;
};

/// Gray-code scan over all subsets whose high bits equal `prefix`; only
/// the low `low_bits` vertices vary. Maintains w[v] = sum_{u in S} adj[v][u].
inline SubsetScan scan_subsets(const RegularMultigraph& gr, unsigned low_bits, VertexMask prefix) {
  const std::size_t n = gr.n();
  const std::int64_t d = gr.d();
  std::vector<std::int64_t> w(n, 0);
  VertexMask s = 0;
  std::int64_t cut = 0;
  std::int64_t boundary = 0;  // |N(S) \ S|
  int size = 0;

  auto toggle = [&](Vertex u) {
    const bool entering = !((s >> u) & 1);
    const std::int64_t loop = gr.adj(u, u);
    if (entering) {
      // before: w[u] counts edges from S to u
      cut += (d - loop - w[u]) - w[u];
      if (w[u] > 0) --boundary;
      s |= VertexMask{1} << u;
      ++size;
      for (const auto& arc : gr.neighbors(u)) {
        const Vertex v = arc.to;
        if (w[v] == 0 && !((s >> v) & 1)) ++boundary;
        w[v] += arc.multiplicity;
      }
    } else {
      s &= ~(VertexMask{1} << u);
      --size;
      for (const auto& arc : gr.neighbors(u)) {
        const Vertex v = arc.to;
        w[v] -= arc.multiplicity;
        if (w[v] == 0 && !((s >> v) & 1) && v != u) --boundary;
      }
      // after: w[u] counts edges from S \ {u} to u
      cut -= (d - loop - w[u]) - w[u];
      if (w[u] > 0) ++boundary;
    }
  };

  for (auto v : vertices_of(prefix)) toggle(v);
  SubsetScan out;
  const std::int64_t half = static_cast<std::int64_t>(n / 2);
  auto visit = [&] {
    if (size >= 1 && size <= half) {
      out.edge.offer(cut, d * size, s);
      out.vertex.offer(boundary, size, s);
    }
  };
  visit();
  const std::uint64_t steps = std::uint64_t{1} << low_bits;
  for (std::uint64_t i = 1; i < steps; ++i) {
    toggle(static_cast<Vertex>(std::countr_zero(i)));
    visit();
  }
  return out;
}

inline SubsetScan scan_all_subsets(const RegularMultigraph& gr, unsigned jobs) {
  const unsigned n = static_cast<unsigned>(gr.n());
  unsigned split = 0;
  while ((1u << split) < jobs && split + 8 < n) ++split;
  if (split == 0) return scan_subsets(gr, n, 0);
  const unsigned low = n - split;
  std::vector<SubsetScan> parts(std::size_t{1} << split);
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < jobs; ++t)
    workers.emplace_back([&, t] {
      for (std::size_t p = t; p < parts.size(); p += jobs)
        parts[p] = scan_subsets(gr, low, static_cast<VertexMask>(p) << low);
    });
  for (auto& w : workers) w.join();
  SubsetScan merged;
  for (const auto& part : parts) {
    if (part.edge.den) merged.edge.offer(part.edge.num, part.edge.den, part.edge.mask);
    if (part.vertex.den) merged.vertex.offer(part.vertex.num, part.vertex.den, part.vertex.mask);
  }
  return merged;
}

inline Optimum subset_optimum(const SubsetBest& b) {
  Optimum o{Rational(b.num, b.den), {}};
  o.witness.kind = CutWitness::Kind::subset;
  o.witness.subset = b.mask;
  o.witness.value = o.value;
  return o;
}

}  // namespace detail

/// min over 0 < |S| <= n/2 of |E(S, V\S)| / (d|S|).
inline Optimum edge_cheeger(const RegularMultigraph& gr, const EnumerationCaps& caps = {}) {
  detail::require_cap(gr, caps.subset, "subset");
  return detail::subset_optimum(detail::scan_all_subsets(gr, caps.jobs).edge);
}

/// min over 0 < |S| <= n/2 of |N(S) \ S| / |S|.
inline Optimum vertex_cheeger(const RegularMultigraph& gr, const EnumerationCaps& caps = {}) {
  detail::require_cap(gr, caps.subset, "subset");
  return detail::subset_optimum(detail::scan_all_subsets(gr, caps.jobs).vertex);
}

/// Both Cheeger constants from a single subset scan.
inline std::pair<Optimum, Optimum> cheeger_constants(const RegularMultigraph& gr, const EnumerationCaps& caps = {}) {
  detail::require_cap(gr, caps.subset, "subset");
  auto scan = detail::scan_all_subsets(gr, caps.jobs);
  return {detail::subset_optimum(scan.edge), detail::subset_optimum(scan.vertex)};
}

namespace detail {

enum State : std::int8_t { kOut = 0, kRight = 1, kLeft = 2, kFree = -1 };

/// Numerator and denominator of beta_edge(L, R) for fixed masks.
inline std::pair<std::int64_t, std::int64_t> beta_edge_terms(const RegularMultigraph& gr, VertexMask l, VertexMask r) {
  const VertexMask u = l | r;
  const VertexMask all = gr.n() == 64 ? ~VertexMask{0} : (VertexMask{1} << gr.n()) - 1;
  std::int64_t num = static_cast<std::int64_t>(edge_count(gr, l, all & ~r) + edge_count(gr, r, all & ~l));
  return {num, static_cast<std::int64_t>(gr.d()) * std::popcount(u)};
}

inline std::pair<std::int64_t, std::int64_t> beta_vert_terms(const RegularMultigraph& gr, VertexMask l, VertexMask r) {
  auto nbhd = [&](VertexMask s) {
    VertexMask out = 0;
    for (auto v : vertices_of(s))
      for (const auto& arc : gr.neighbors(v)) out |= VertexMask{1} << arc.to;
    return out;
  };
  const VertexMask u = l | r;
  std::int64_t num = std::popcount(l & nbhd(l)) + std::popcount(r & nbhd(r)) + std::popcount(nbhd(u) & ~u);
  return {num, std::popcount(u)};
}

/// Depth-first search over ternary assignments, highest vertex first, states
/// tried in the order outside, R, L. The policy supplies an admissible lower
/// bound on q*num - p*den for the completions of a partial assignment.
/// Leaves are visited in increasing ternary code, so with non-strict pruning
/// once an incumbent exists the first minimizer found is the tie-break one.
template <class Policy>
class PairSearch {
 public:
  PairSearch(const RegularMultigraph& gr, Policy policy) : gr_(gr), policy_(std::move(policy)) {}

  Optimum run(std::int64_t seed_num, std::int64_t seed_den) {
    best_num_ = seed_num;
    best_den_ = seed_den;
    have_witness_ = false;
    states_.assign(gr_.n(), kFree);
    policy_.reset(gr_);
    descend(static_cast<int>(gr_.n()) - 1);
    if (!have_witness_) fail(Errc::internal_error, "pair search found no witness");
    Optimum o{Rational(best_num_, best_den_), {}};
    o.witness.kind = CutWitness::Kind::pair;
    o.witness.left = best_l_;
    o.witness.right = best_r_;
    o.witness.value = o.value;
    return o;
  }

 private:
  void descend(int v) {
    if (v < 0) {
      auto [num, den] = policy_.leaf();
      if (den == 0) return;
      Wide lhs = static_cast<Wide>(num) * best_den_, rhs = static_cast<Wide>(best_num_) * den;
      if (lhs < rhs || (lhs == rhs && !have_witness_)) {
        best_num_ = num;
        best_den_ = den;
        have_witness_ = true;
        best_l_ = best_r_ = 0;
        for (Vertex u = 0; u < gr_.n(); ++u) {
          if (states_[u] == kLeft) best_l_ |= VertexMask{1} << u;
          if (states_[u] == kRight) best_r_ |= VertexMask{1} << u;
        }
      }
      return;
    }
    for (State s : {kOut, kRight, kLeft}) {
      states_[v] = s;
      policy_.fix(gr_, static_cast<Vertex>(v), s);
      const Wide lb = policy_.lower_bound(best_num_, best_den_);
      if (lb < 0 || (lb == 0 && !have_witness_)) descend(v - 1);
      policy_.unfix(gr_, static_cast<Vertex>(v), s);
      states_[v] = kFree;
    }
  }

  const RegularMultigraph& gr_;
  Policy policy_;
  std::vector<State> states_;
  std::int64_t best_num_ = 1, best_den_ = 1;
  bool have_witness_ = false;
  VertexMask best_l_ = 0, best_r_ = 0;
};

/// beta_edge numerator = sum_{u,v} adj[u][v] c(s_u, s_v) with
/// c(L,L) = c(R,R) = c(L,out) = c(R,out) = 1 and all other c = 0.
class EdgeBetaPolicy {
 public:
  void reset(const RegularMultigraph& gr) {
    n_ = gr.n();
    d_ = gr.d();
    acc_.assign(n_ * 3, 0);
    free_.assign(n_, true);
    loops_.resize(n_);
    for (Vertex v = 0; v < n_; ++v) loops_[v] = gr.adj(v, v);
    fixed_sum_ = 0;
    fixed_u_ = 0;
  }

  void fix(const RegularMultigraph& gr, Vertex u, State t) {
    fixed_sum_ += acc_[u * 3 + t] + (t != kOut ? loops_[u] : 0);
    if (t != kOut) ++fixed_u_;
    free_[u] = false;
    for (const auto& arc : gr.neighbors(u)) {
      if (arc.to == u) continue;
      for (int s = 0; s < 3; ++s) acc_[arc.to * 3 + s] += arc.multiplicity * pair_cost(static_cast<State>(s), t);
    }
  }

  void unfix(const RegularMultigraph& gr, Vertex u, State t) {
    for (const auto& arc : gr.neighbors(u)) {
      if (arc.to == u) continue;
      for (int s = 0; s < 3; ++s) acc_[arc.to * 3 + s] -= arc.multiplicity * pair_cost(static_cast<State>(s), t);
    }
    free_[u] = true;
    if (t != kOut) --fixed_u_;
    fixed_sum_ -= acc_[u * 3 + t] + (t != kOut ? loops_[u] : 0);
  }

  Wide lower_bound(std::int64_t p, std::int64_t q) const {
    // target ratio p/q: bound on q*num - p*d*|U|
    Wide lb = static_cast<Wide>(q) * fixed_sum_ - static_cast<Wide>(p) * d_ * fixed_u_;
    for (Vertex v = 0; v < n_; ++v) {
      if (!free_[v]) continue;
      Wide best = static_cast<Wide>(q) * acc_[v * 3 + kOut];
      for (State s : {kRight, kLeft}) {
        Wide c = static_cast<Wide>(q) * (acc_[v * 3 + s] + loops_[v]) - static_cast<Wide>(p) * d_;
        best = std::min(best, c);
      }
      lb += best;
    }
    return lb;
  }

  std::pair<std::int64_t, std::int64_t> leaf() const { return {fixed_sum_, static_cast<std::int64_t>(d_) * fixed_u_}; }

 private:
  /// c(a,b) + c(b,a) for distinct vertices.
  static std::int64_t pair_cost(State a, State b) {
    static constexpr std::int64_t table[3][3] = {{0, 1, 1}, {1, 2, 0}, {1, 0, 2}};
    return table[a][b];
  }

  std::size_t n_ = 0;
  std::int64_t d_ = 0;
  std::vector<std::int64_t> acc_;
  std::vector<bool> free_;
  std::vector<std::int64_t> loops_;
  std::int64_t fixed_sum_ = 0;
  std::int64_t fixed_u_ = 0;
};

/// beta_vert numerator = number of vertices v with: v in L and a neighbour
/// in L, or v in R and a neighbour in R, or v outside with a neighbour in
/// L u R. Loops make v its own neighbour.
class VertBetaPolicy {
 public:
  void reset(const RegularMultigraph& gr) {
    n_ = gr.n();
    cnt_.assign(n_ * 3, 0);
    state_.assign(n_, kFree);
    loop_.resize(n_);
    for (Vertex v = 0; v < n_; ++v) loop_[v] = gr.adj(v, v) > 0;
    fixed_u_ = 0;
  }

  void fix(const RegularMultigraph& gr, Vertex u, State t) {
    state_[u] = t;
    if (t != kOut) ++fixed_u_;
    for (const auto& arc : gr.neighbors(u))
      if (arc.to != u) ++cnt_[arc.to * 3 + t];
  }

  void unfix(const RegularMultigraph& gr, Vertex u, State t) {
    for (const auto& arc : gr.neighbors(u))
      if (arc.to != u) --cnt_[arc.to * 3 + t];
    if (t != kOut) --fixed_u_;
    state_[u] = kFree;
  }

  Wide lower_bound(std::int64_t p, std::int64_t q) const {
    Wide lb = -static_cast<Wide>(p) * fixed_u_;
    for (Vertex v = 0; v < n_; ++v) {
      if (state_[v] != kFree) {
        lb += static_cast<Wide>(q) * forced(v, state_[v]);
        continue;
      }
      Wide best = static_cast<Wide>(q) * forced(v, kOut);
      for (State s : {kRight, kLeft}) best = std::min(best, static_cast<Wide>(q) * forced(v, s) - p);
      lb += best;
    }
    return lb;
  }

  std::pair<std::int64_t, std::int64_t> leaf() const {
    std::int64_t num = 0;
    for (Vertex v = 0; v < n_; ++v) num += forced(v, state_[v]);
    return {num, fixed_u_};
  }

 private:
  /// Indicator already implied by the fixed neighbours.
  std::int64_t forced(Vertex v, State s) const {
    switch (s) {
      case kOut: return (cnt_[v * 3 + kLeft] + cnt_[v * 3 + kRight]) > 0;
      case kLeft: return loop_[v] || cnt_[v * 3 + kLeft] > 0;
      case kRight: return loop_[v] || cnt_[v * 3 + kRight] > 0;
      default: return 0;
    }
  }

  std::size_t n_ = 0;
  std::vector<std::int32_t> cnt_;
  std::vector<State> state_;
  std::vector<bool> loop_;
  std::int64_t fixed_u_ = 0;
};

/// Cheap upper bounds used to seed the searches: BFS parity colourings of
/// growing balls, then single-vertex improvement moves.
template <class Terms>
std::pair<std::int64_t, std::int64_t> heuristic_pair_value(const RegularMultigraph& gr, Terms terms) {
  const std::size_t n = gr.n();
  std::int64_t bn = 1, bd = 0;
  VertexMask bl = 0, br = 0;
  auto offer = [&](VertexMask l, VertexMask r) {
    if ((l | r) == 0) return false;
    auto [num, den] = terms(gr, l, r);
    if (bd == 0 || static_cast<Wide>(num) * bd < static_cast<Wide>(bn) * den) {
      bn = num;
      bd = den;
      bl = l;
      br = r;
      return true;
    }
    return false;
  };
  for (Vertex s = 0; s < n; ++s) {
    std::vector<int> layer(n, -1);
    std::vector<Vertex> order{s};
    layer[s] = 0;
    for (std::size_t h = 0; h < order.size(); ++h)
      for (const auto& arc : gr.neighbors(order[h]))
        if (layer[arc.to] < 0) {
          layer[arc.to] = layer[order[h]] + 1;
          order.push_back(arc.to);
        }
    VertexMask l = 0, r = 0;
    for (auto v : order) {
      (layer[v] % 2 == 0 ? l : r) |= VertexMask{1} << v;
      offer(l, r);
    }
  }
  for (bool improved = true; improved;) {
    improved = false;
    for (Vertex v = 0; v < n; ++v) {
      const VertexMask bit = VertexMask{1} << v;
      const VertexMask l0 = bl & ~bit, r0 = br & ~bit;
      improved |= offer(l0, r0) || offer(l0 | bit, r0) || offer(l0, r0 | bit);
    }
  }
  return {bn, bd};
}

}  // namespace detail

/// min over disjoint (L, R), L u R nonempty, of
/// (E(L, R^c) + E(R, L^c)) / (d |L u R|).
inline Optimum edge_bipartiteness(const RegularMultigraph& gr, const EnumerationCaps& caps = {}) {
  detail::require_cap(gr, caps.ternary, "ternary");
  auto [num, den] = detail::heuristic_pair_value(gr, detail::beta_edge_terms);
  return detail::PairSearch<detail::EdgeBetaPolicy>(gr, {}).run(num, den);
}

/// min over disjoint (L, R), L u R nonempty, of
/// (|L n N(L)| + |R n N(R)| + |N(L u R) \ (L u R)|) / |L u R|.
inline Optimum vertex_bipartiteness(const RegularMultigraph& gr, const EnumerationCaps& caps = {}) {
  detail::require_cap(gr, caps.ternary, "ternary");
  auto [num, den] = detail::heuristic_pair_value(gr, detail::beta_vert_terms);
  return detail::PairSearch<detail::VertBetaPolicy>(gr, {}).run(num, den);
}

// ---------------------------------------------------------------------------
// Birkhoff-von Neumann decomposition

struct MatchingResult {
  std::optional<Permutation> permutation;  // pi with bip[pi(v)][v] for all v
  std::vector<Vertex> hall_violator;       // rows X with |N(X)| < |X| when none exists
};

/// Row-by-row augmenting paths (Kuhn), rows ascending, columns ascending.
inline MatchingResult perfect_matching(const std::vector<std::vector<bool>>& bip) {
  const std::size_t n = bip.size();
  std::vector<int> row_of_col(n, -1);
  std::vector<bool> visited_col(n);
  std::vector<bool> visited_row(n);
  auto augment = [&](auto&& self, std::size_t row) -> bool {
    visited_row[row] = true;
    for (std::size_t col = 0; col < n; ++col) {
      if (!bip[row][col] || visited_col[col]) continue;
      visited_col[col] = true;
      if (row_of_col[col] < 0 || self(self, static_cast<std::size_t>(row_of_col[col]))) {
        row_of_col[col] = static_cast<int>(row);
        return true;
      }
    }
    return false;
  };
  for (std::size_t row = 0; row < n; ++row) {
    if (bip[row].size() != n) fail(Errc::invalid_descriptor, "matching input is not square");
    std::fill(visited_col.begin(), visited_col.end(), false);
    std::fill(visited_row.begin(), visited_row.end(), false);
    if (!augment(augment, row)) {
      // Rows reached by the failed alternating search see only the visited
      // columns, all matched to other reached rows.
      MatchingResult out;
      for (std::size_t r = 0; r < n; ++r)
        if (visited_row[r]) out.hall_violator.push_back(static_cast<Vertex>(r));
      return out;
    }
  }
  Permutation pi(n);
  for (std::size_t col = 0; col < n; ++col) pi[col] = static_cast<std::uint32_t>(row_of_col[col]);
  return {std::move(pi), {}};
}

struct PermutationList {
  std::vector<Permutation> perms;
};

inline std::vector<std::uint32_t> permutation_sum(std::size_t n, const PermutationList& list) {
  std::vector<std::uint32_t> sum(n * n, 0);
  for (const auto& p : list.perms)
    for (std::size_t v = 0; v < n; ++v) ++sum[p[v] * n + v];
  return sum;
}

/// Exactly d permutations rho_i with sum_i P_{rho_i} = adj, where
/// P_rho has entry 1 at (rho(v), v).
inline PermutationList birkhoff_decompose(const std::vector<std::uint32_t>& matrix, std::size_t n, std::uint32_t d) {
  std::vector<std::uint32_t> rest = matrix;
  PermutationList out;
  std::vector<std::vector<bool>> bip(n, std::vector<bool>(n));
  for (std::uint32_t round = 0; round < d; ++round) {
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) bip[u][v] = rest[u * n + v] > 0;
    auto m = perfect_matching(bip);
    if (!m.permutation) fail(Errc::internal_error, "no perfect matching in a doubly regular support");
    for (std::size_t v = 0; v < n; ++v) --rest[(*m.permutation)[v] * n + v];
    out.perms.push_back(std::move(*m.permutation));
  }
  if (permutation_sum(n, out) != matrix) fail(Errc::internal_error, "decomposition does not reproduce the matrix");
  return out;
}

inline PermutationList birkhoff_decompose(const RegularMultigraph& gr) {
  return birkhoff_decompose(gr.matrix(), gr.n(), gr.d());
}

}  // namespace isoperim
