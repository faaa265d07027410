#pragma once

// Regular multigraphs given by their integer adjacency operator, and the
// Cayley-type constructions that produce them.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "isoperim/error.hpp"
#include "isoperim/group.hpp"

namespace isoperim {

enum class GraphClass {
  cayley,
  cayley_sum,
  twisted_cayley,
  twisted_cayley_sum,
  vertex_transitive,
  square,
  explicit_matrix,
};

constexpr std::string_view to_string(GraphClass c) {
  switch (c) {
    case GraphClass::cayley: return "cayley";
    case GraphClass::cayley_sum: return "cayley_sum";
    case GraphClass::twisted_cayley: return "twisted_cayley";
    case GraphClass::twisted_cayley_sum: return "twisted_cayley_sum";
    case GraphClass::vertex_transitive: return "vertex_transitive";
    case GraphClass::square: return "square";
    case GraphClass::explicit_matrix: return "explicit";
  }
  return "unknown";
}

/// The five classes covered by the bipartiteness and square-graph bounds.
constexpr bool is_algebraic_class(GraphClass c) {
  return c != GraphClass::square && c != GraphClass::explicit_matrix;
}

struct Provenance {
  GraphClass graph_class = GraphClass::explicit_matrix;
  std::string description;
  std::vector<std::string> vertex_labels;
};

/// adj(u, v) = <T 1_v, 1_u>: the number of generator occurrences taking v to
/// u. A diagonal entry k is k loops, contributing k to the degree.
class RegularMultigraph {
 public:
  RegularMultigraph(std::size_t n, std::vector<std::uint32_t> adj, Provenance provenance = {})
      : n_(n), adj_(std::move(adj)), provenance_(std::move(provenance)) {
    if (n_ < 2) fail(Errc::invalid_descriptor, "a graph needs at least two vertices");
    if (adj_.size() != n_ * n_) fail(Errc::invalid_descriptor, "adjacency has the wrong size");
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v)
        if (adj_[u * n_ + v] != adj_[v * n_ + u])
          fail(Errc::directed_result, "adjacency is not symmetric at (" + std::to_string(u) + "," +
                                          std::to_string(v) + ")");
    std::uint64_t d = 0;
    for (std::size_t u = 0; u < n_; ++u) {
      std::uint64_t row = 0;
      for (std::size_t v = 0; v < n_; ++v) row += adj_[u * n_ + v];
      if (u == 0) d = row;
      if (row != d) fail(Errc::not_regular, "row " + std::to_string(u) + " has sum " + std::to_string(row) +
                                                ", expected " + std::to_string(d));
    }
    if (d == 0) fail(Errc::not_regular, "degree must be positive");
    d_ = static_cast<std::uint32_t>(d);
    neighbors_.resize(n_);
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = 0; v < n_; ++v)
        if (adj_[u * n_ + v] != 0) neighbors_[u].push_back({static_cast<Vertex>(v), adj_[u * n_ + v]});
    if (provenance_.vertex_labels.empty())
      for (std::size_t v = 0; v < n_; ++v) provenance_.vertex_labels.push_back(std::to_string(v));
  }

  struct Arc {
    Vertex to;
    std::uint32_t multiplicity;
  };

  std::size_t n() const { return n_; }
  std::uint32_t d() const { return d_; }
  std::uint32_t adj(std::size_t u, std::size_t v) const { return adj_[u * n_ + v]; }
  const std::vector<std::uint32_t>& matrix() const { return adj_; }
  const std::vector<Arc>& neighbors(Vertex u) const { return neighbors_[u]; }
  const Provenance& provenance() const { return provenance_; }
  GraphClass graph_class() const { return provenance_.graph_class; }

  friend bool operator==(const RegularMultigraph& a, const RegularMultigraph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  std::size_t n_;
  std::uint32_t d_ = 0;
  std::vector<std::uint32_t> adj_;
  std::vector<std::vector<Arc>> neighbors_;
  Provenance provenance_;
};

class ConnectionSet {
 public:
  ConnectionSet(const GroupTable& g, std::vector<Element> elements) : elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    if (elements_.empty()) fail(Errc::invalid_descriptor, "connection set is empty");
    if (elements_.back() >= g.order()) fail(Errc::invalid_descriptor, "connection set element outside the group");
  }
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

 private:
  std::vector<Element> elements_;
};

/// A group automorphism stored as its full permutation of element indices.
class AutomorphismMap {
 public:
  AutomorphismMap(const GroupTable& g, std::vector<Element> perm) : perm_(std::move(perm)) {
    if (perm_.size() != g.order() || !is_permutation_of_range(perm_))
      fail(Errc::invalid_descriptor, "automorphism is not a bijection of the group");
    for (Element a = 0; a < g.order(); ++a)
      for (Element b = 0; b < g.order(); ++b)
        if (perm_[g.mul(a, b)] != g.mul(perm_[a], perm_[b]))
          fail(Errc::invalid_descriptor, "map is not a homomorphism");
  }

  static AutomorphismMap identity(const GroupTable& g) {
    std::vector<Element> p(g.order());
    std::iota(p.begin(), p.end(), 0u);
    return AutomorphismMap(g, std::move(p));
  }

  /// Extends generator images multiplicatively; the generators must generate
  /// the group and the images must define a homomorphism.
  static AutomorphismMap from_generator_images(const GroupTable& g,
                                               const std::vector<std::pair<Element, Element>>& images) {
    constexpr Element unset = ~0u;
    std::vector<Element> perm(g.order(), unset);
    perm[g.identity()] = g.identity();
    std::deque<Element> queue{g.identity()};
    while (!queue.empty()) {
      Element x = queue.front();
      queue.pop_front();
      for (auto [s, img] : images) {
        if (s >= g.order() || img >= g.order()) fail(Errc::invalid_descriptor, "automorphism image out of range");
        Element y = g.mul(x, s);
        Element fy = g.mul(perm[x], img);
        if (perm[y] == unset) {
          perm[y] = fy;
          queue.push_back(y);
        } else if (perm[y] != fy) {
          fail(Errc::invalid_descriptor, "generator images do not extend to a homomorphism");
        }
      }
    }
    if (std::find(perm.begin(), perm.end(), unset) != perm.end())
      fail(Errc::invalid_descriptor, "automorphism generators do not generate the group");
    return AutomorphismMap(g, std::move(perm));
  }

  Element operator()(Element x) const { return perm_[x]; }
  const std::vector<Element>& perm() const { return perm_; }
  bool is_identity() const {
    for (Element i = 0; i < perm_.size(); ++i)
      if (perm_[i] != i) return false;
    return true;
  }

 private:
  std::vector<Element> perm_;
};

namespace detail {

template <class Rule>
RegularMultigraph build_from_rule(const GroupTable& g, const ConnectionSet& s, Rule rule, GraphClass cls,
                                  std::string description) {
  const std::size_t n = g.order();
  if (n < 2) fail(Errc::invalid_descriptor, "the group must have at least two elements");
  std::vector<std::uint32_t> adj(n * n, 0);
  for (Element x = 0; x < n; ++x)
    for (auto e : s.elements()) adj[rule(x, e) * n + x] += 1;
  return RegularMultigraph(n, std::move(adj), Provenance{cls, std::move(description), g.labels()});
}

}  // namespace detail

/// y ~ x when y = xs.
inline RegularMultigraph cayley(const GroupTable& g, const ConnectionSet& s) {
  return detail::build_from_rule(
      g, s, [&](Element x, Element e) { return g.mul(x, e); }, GraphClass::cayley, "cayley");
}

/// y ~ x when y = x^{-1}s.
inline RegularMultigraph cayley_sum(const GroupTable& g, const ConnectionSet& s) {
  return detail::build_from_rule(
      g, s, [&](Element x, Element e) { return g.mul(g.inv(x), e); }, GraphClass::cayley_sum, "cayley_sum");
}

/// y ~ x when y = sigma(xs).
inline RegularMultigraph twisted_cayley(const GroupTable& g, const ConnectionSet& s, const AutomorphismMap& sigma) {
  return detail::build_from_rule(
      g, s, [&](Element x, Element e) { return sigma(g.mul(x, e)); }, GraphClass::twisted_cayley,
      "twisted_cayley");
}

/// y ~ x when y = sigma(x^{-1}s). Undirectedness forces sigma(S) = S.
inline RegularMultigraph twisted_cayley_sum(const GroupTable& g, const ConnectionSet& s,
                                            const AutomorphismMap& sigma) {
  auto gr = detail::build_from_rule(
      g, s, [&](Element x, Element e) { return sigma(g.mul(g.inv(x), e)); }, GraphClass::twisted_cayley_sum,
      "twisted_cayley_sum");
  std::vector<Element> image;
  for (auto e : s.elements()) image.push_back(sigma(e));
  std::sort(image.begin(), image.end());
  if (image != s.elements())
    fail(Errc::internal_error, "symmetric twisted Cayley sum graph with sigma(S) != S");
  return gr;
}

struct BaseEdge {
  Vertex u;
  Vertex v;
  std::uint32_t multiplicity = 1;
};

/// Orbit closure of `base_edges` under a transitive action. Each base edge
/// contributes its multiplicity once to every unordered pair in its orbit.
inline RegularMultigraph from_action_graph(const GroupAction& a, const std::vector<BaseEdge>& base_edges,
                                           std::vector<std::string> vertex_labels = {}) {
  if (!is_transitive(a)) fail(Errc::invalid_descriptor, "action is not transitive");
  const std::size_t n = a.degree();
  std::vector<std::uint32_t> adj(n * n, 0);
  for (const auto& e : base_edges) {
    if (e.u >= n || e.v >= n) fail(Errc::invalid_descriptor, "base edge endpoint out of range");
    std::set<std::pair<Vertex, Vertex>> orbit;
    for (Element g = 0; g < a.group().order(); ++g) {
      Vertex x = a.apply(g, e.u), y = a.apply(g, e.v);
      orbit.insert({std::min(x, y), std::max(x, y)});
    }
    for (auto [x, y] : orbit) {
      adj[x * n + y] += e.multiplicity;
      if (x != y) adj[y * n + x] += e.multiplicity;
    }
  }
  RegularMultigraph gr(n, std::move(adj),
                       Provenance{GraphClass::vertex_transitive, "action_graph", std::move(vertex_labels)});
  for (Element g = 0; g < a.group().order(); ++g)
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v)
        if (gr.adj(a.apply(g, u), a.apply(g, v)) != gr.adj(u, v))
          fail(Errc::not_invariant, "orbit closure is not invariant under the action");
  return gr;
}

/// Adjacency matrix squared; the degree becomes d^2.
inline RegularMultigraph square_graph(const RegularMultigraph& gr) {
  const std::size_t n = gr.n();
  std::vector<std::uint32_t> sq(n * n, 0);
  for (Vertex u = 0; u < n; ++u)
    for (const auto& [w, m1] : gr.neighbors(u))
      for (const auto& [v, m2] : gr.neighbors(w)) sq[u * n + v] += m1 * m2;
  Provenance p = gr.provenance();
  p.description = "square(" + p.description + ")";
  p.graph_class = GraphClass::square;
  return RegularMultigraph(n, std::move(sq), std::move(p));
}

struct BipartiteVerdict {
  bool bipartite = false;
  std::vector<std::uint8_t> coloring;  // set only when bipartite
};

/// Two-colouring of the support graph; any loop makes the graph non-bipartite.
inline BipartiteVerdict is_bipartite(const RegularMultigraph& gr) {
  const std::size_t n = gr.n();
  for (Vertex v = 0; v < n; ++v)
    if (gr.adj(v, v) > 0) return {};
  std::vector<std::int8_t> color(n, -1);
  for (Vertex s = 0; s < n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::deque<Vertex> queue{s};
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      for (const auto& arc : gr.neighbors(u)) {
        if (color[arc.to] < 0) {
          color[arc.to] = static_cast<std::int8_t>(1 - color[u]);
          queue.push_back(arc.to);
        } else if (color[arc.to] == color[u]) {
          return {};
        }
      }
    }
  }
  return {true, std::vector<std::uint8_t>(color.begin(), color.end())};
}

inline bool is_connected(const RegularMultigraph& gr) {
  std::vector<bool> seen(gr.n(), false);
  std::deque<Vertex> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (const auto& arc : gr.neighbors(u))
      if (!seen[arc.to]) {
        seen[arc.to] = true;
        ++count;
        queue.push_back(arc.to);
      }
  }
  return count == gr.n();
}

/// True iff adj^power is invariant under conjugation by every action
/// permutation, i.e. M[gu][gv] = M[u][v].
inline bool commutes_with_action(const RegularMultigraph& gr, const GroupAction& a, int power) {
  if (a.degree() != gr.n()) fail(Errc::invalid_descriptor, "action degree differs from the vertex count");
  if (power != 1 && power != 2) fail(Errc::invalid_descriptor, "power must be 1 or 2");
  const RegularMultigraph m = power == 1 ? gr : square_graph(gr);
  const std::size_t n = gr.n();
  for (Element g = 0; g < a.group().order(); ++g)
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v)
        if (m.adj(a.apply(g, u), a.apply(g, v)) != m.adj(u, v)) return false;
  return true;
}

}  // namespace isoperim
