#pragma once

// Finite groups as explicit multiplication tables, their index-two subgroups,
// and left actions on finite sets.

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "isoperim/error.hpp"

namespace isoperim {

using Element = std::uint32_t;
using Vertex = std::uint32_t;
using Permutation = std::vector<std::uint32_t>;

/// Cycle notation with fixed points omitted; the identity renders as "()".
inline std::string cycle_notation(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start] || p[start] == start) continue;
    out += "(";
    std::size_t x = start;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) out += " ";
      out += std::to_string(x);
      first = false;
      x = p[x];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

inline bool is_permutation_of_range(const Permutation& p) {
  std::vector<bool> hit(p.size(), false);
  for (auto x : p) {
    if (x >= p.size() || hit[x]) return false;
    hit[x] = true;
  }
  return true;
}

/// (a * b)(x) = a(b(x)): b acts first, matching left actions.
inline Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) out[x] = a[b[x]];
  return out;
}

class GroupTable {
 public:
  /// Validates every table invariant; element 0 must be the identity.
  /// `permutations`, when non-empty, is a faithful permutation representation
  /// consistent with `mul` and is kept for building natural actions.
  GroupTable(std::size_t order, std::vector<Element> mul, std::vector<std::string> labels,
             std::vector<Permutation> permutations = {})
      : order_(order),
        mul_(std::move(mul)),
        labels_(std::move(labels)),
        permutations_(std::move(permutations)) {
    validate();
  }

  std::size_t order() const { return order_; }
  Element identity() const { return 0; }
  Element mul(Element a, Element b) const { return mul_[a * order_ + b]; }
  Element inv(Element a) const { return inv_[a]; }
  const std::string& label(Element a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Permutation>& permutations() const { return permutations_; }
  bool has_permutation_rep() const { return !permutations_.empty(); }

  std::optional<Element> find_label(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<Element>(it - labels_.begin());
  }

  bool is_abelian() const {
    for (Element a = 0; a < order_; ++a)
      for (Element b = a + 1; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

 private:
  void validate() {
    if (order_ == 0) fail(Errc::invalid_descriptor, "group of order 0");
    if (mul_.size() != order_ * order_ || labels_.size() != order_)
      fail(Errc::invalid_descriptor, "table dimensions do not match the order");
    std::vector<bool> seen(order_);
    for (std::size_t a = 0; a < order_; ++a) {
      std::fill(seen.begin(), seen.end(), false);
      for (std::size_t b = 0; b < order_; ++b) {
        auto x = mul_[a * order_ + b];
        if (x >= order_ || seen[x]) fail(Errc::invalid_descriptor, "row is not a permutation");
        seen[x] = true;
      }
      std::fill(seen.begin(), seen.end(), false);
      for (std::size_t b = 0; b < order_; ++b) {
        auto x = mul_[b * order_ + a];
        if (seen[x]) fail(Errc::invalid_descriptor, "column is not a permutation");
        seen[x] = true;
      }
    }
    for (Element a = 0; a < order_; ++a)
      if (mul(0, a) != a || mul(a, 0) != a)
        fail(Errc::invalid_descriptor, "element 0 is not a two-sided identity");
    inv_.assign(order_, 0);
    for (Element a = 0; a < order_; ++a)
      for (Element b = 0; b < order_; ++b)
        if (mul(a, b) == 0) inv_[a] = b;
    for (Element a = 0; a < order_; ++a)
      if (mul(inv_[a], a) != 0) fail(Errc::invalid_descriptor, "inverse is not two-sided");
    if (order_ <= 64) {
      for (Element a = 0; a < order_; ++a)
        for (Element b = 0; b < order_; ++b)
          for (Element c = 0; c < order_; ++c)
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
              fail(Errc::invalid_descriptor, "multiplication is not associative");
    } else {
      std::mt19937_64 rng(0x5eed);
      std::uniform_int_distribution<Element> pick(0, static_cast<Element>(order_ - 1));
      for (int i = 0; i < 20000; ++i) {
        Element a = pick(rng), b = pick(rng), c = pick(rng);
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          fail(Errc::invalid_descriptor, "multiplication is not associative");
      }
    }
    if (!permutations_.empty()) {
      if (permutations_.size() != order_)
        fail(Errc::invalid_descriptor, "permutation representation has the wrong size");
      const std::size_t pairs = order_ <= 720 ? order_ * order_ : 50000;
      std::mt19937_64 rng(0x9e3);
      std::uniform_int_distribution<Element> pick(0, static_cast<Element>(order_ - 1));
      for (std::size_t i = 0; i < pairs; ++i) {
        Element a = order_ <= 720 ? static_cast<Element>(i / order_) : pick(rng);
        Element b = order_ <= 720 ? static_cast<Element>(i % order_) : pick(rng);
        if (compose(permutations_[a], permutations_[b]) != permutations_[mul(a, b)])
          fail(Errc::invalid_descriptor, "permutation representation is not a homomorphism");
      }
    }
  }

  std::size_t order_;
  std::vector<Element> mul_;
  std::vector<Element> inv_;
  std::vector<std::string> labels_;
  std::vector<Permutation> permutations_;
};

using GroupPtr = std::shared_ptr<const GroupTable>;

struct GroupDescriptor {
  enum class Kind { cyclic, dihedral, symmetric, direct_product, from_permutations };

  Kind kind = Kind::cyclic;
  std::size_t n = 1;
  std::vector<GroupDescriptor> factors;
  std::size_t points = 0;
  std::vector<Permutation> generators;
  std::size_t element_cap = 5040;

  static GroupDescriptor cyclic(std::size_t n) { return of(Kind::cyclic, n); }
  static GroupDescriptor dihedral(std::size_t n) { return of(Kind::dihedral, n); }
  static GroupDescriptor symmetric(std::size_t n) { return of(Kind::symmetric, n); }
  static GroupDescriptor direct_product(GroupDescriptor a, GroupDescriptor b) {
    GroupDescriptor d = of(Kind::direct_product, 1);
    d.factors = {std::move(a), std::move(b)};
    return d;
  }
  static GroupDescriptor from_permutations(std::size_t points, std::vector<Permutation> gens,
                                           std::size_t cap = 5040) {
    GroupDescriptor d = of(Kind::from_permutations, 1);
    d.points = points;
    d.generators = std::move(gens);
    d.element_cap = cap;
    return d;
  }

 private:
  static GroupDescriptor of(Kind k, std::size_t n) {
    GroupDescriptor d;
    d.kind = k;
    d.n = n;
    return d;
  }
};

namespace detail {

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

/// Table of a permutation group given by its elements, identity first.
inline GroupTable table_from_permutations(std::vector<Permutation> elems) {
  const std::size_t order = elems.size();
  std::unordered_map<Permutation, Element, PermutationHash> index;
  for (Element i = 0; i < order; ++i) index.emplace(elems[i], i);
  std::vector<Element> mul(order * order);
  for (Element a = 0; a < order; ++a)
    for (Element b = 0; b < order; ++b) {
      auto it = index.find(compose(elems[a], elems[b]));
      if (it == index.end()) fail(Errc::invalid_descriptor, "permutation set is not closed");
      mul[a * order + b] = it->second;
    }
  std::vector<std::string> labels;
  labels.reserve(order);
  for (const auto& p : elems) labels.push_back(cycle_notation(p));
  return GroupTable(order, std::move(mul), std::move(labels), std::move(elems));
}

inline GroupTable closure(std::size_t points, const std::vector<Permutation>& gens,
                          std::size_t cap) {
  for (const auto& g : gens)
    if (g.size() != points || !is_permutation_of_range(g))
      fail(Errc::invalid_descriptor, "generator is not a permutation of the declared points");
  Permutation id(points);
  std::iota(id.begin(), id.end(), 0u);
  std::vector<Permutation> elems{id};
  std::unordered_map<Permutation, Element, PermutationHash> seen{{id, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : gens) {
      Permutation next = compose(g, elems[head]);
      if (seen.contains(next)) continue;
      if (elems.size() >= cap)
        fail(Errc::closure_too_large,
             "generated group exceeds the element cap of " + std::to_string(cap));
      seen.emplace(next, static_cast<Element>(elems.size()));
      elems.push_back(std::move(next));
    }
  }
  return table_from_permutations(std::move(elems));
}

}  // namespace detail

inline GroupTable build_group(const GroupDescriptor& desc) {
  using Kind = GroupDescriptor::Kind;
  switch (desc.kind) {
    case Kind::cyclic: {
      const std::size_t n = desc.n;
      if (n == 0 || n > desc.element_cap) fail(Errc::invalid_descriptor, "cyclic order out of range");
      std::vector<Element> mul(n * n);
      std::vector<std::string> labels;
      for (Element i = 0; i < n; ++i) {
        labels.push_back(std::to_string(i));
        for (Element j = 0; j < n; ++j) mul[i * n + j] = static_cast<Element>((i + j) % n);
      }
      return GroupTable(n, std::move(mul), std::move(labels));
    }
    case Kind::dihedral: {
      // s^a r^i with index a*n + i; r^i s = s r^{-i}.
      const std::size_t n = desc.n;
      if (n == 0 || 2 * n > desc.element_cap)
        fail(Errc::invalid_descriptor, "dihedral parameter out of range");
      const std::size_t order = 2 * n;
      std::vector<Element> mul(order * order);
      for (std::size_t x = 0; x < order; ++x)
        for (std::size_t y = 0; y < order; ++y) {
          std::size_t a = x / n, i = x % n, b = y / n, j = y % n;
          std::size_t rot = (b ? (n - i) % n : i) + j;
          mul[x * order + y] = static_cast<Element>(((a + b) % 2) * n + rot % n);
        }
      std::vector<std::string> labels;
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t i = 0; i < n; ++i) {
          std::string l = a ? "s" : "";
          if (i == 1) l += "r";
          if (i > 1) l += "r^" + std::to_string(i);
          labels.push_back(l.empty() ? "e" : l);
        }
      return GroupTable(order, std::move(mul), std::move(labels));
    }
    case Kind::symmetric: {
      if (desc.n == 0 || desc.n > 6) fail(Errc::invalid_descriptor, "symmetric(n) requires 1 <= n <= 6");
      Permutation p(desc.n);
      std::iota(p.begin(), p.end(), 0u);
      std::vector<Permutation> elems;
      do elems.push_back(p);
      while (std::next_permutation(p.begin(), p.end()));
      return detail::table_from_permutations(std::move(elems));
    }
    case Kind::direct_product: {
      if (desc.factors.size() != 2) fail(Errc::invalid_descriptor, "direct_product needs two factors");
      GroupTable a = build_group(desc.factors[0]);
      GroupTable b = build_group(desc.factors[1]);
      const std::size_t na = a.order(), nb = b.order(), order = na * nb;
      if (order > desc.element_cap) fail(Errc::invalid_descriptor, "direct product too large");
      std::vector<Element> mul(order * order);
      std::vector<std::string> labels;
      for (std::size_t x = 0; x < order; ++x) {
        labels.push_back("(" + a.label(static_cast<Element>(x / nb)) + "," +
                         b.label(static_cast<Element>(x % nb)) + ")");
        for (std::size_t y = 0; y < order; ++y) {
          auto p = a.mul(static_cast<Element>(x / nb), static_cast<Element>(y / nb));
          auto q = b.mul(static_cast<Element>(x % nb), static_cast<Element>(y % nb));
          mul[x * order + y] = static_cast<Element>(p * nb + q);
        }
      }
      return GroupTable(order, std::move(mul), std::move(labels));
    }
    case Kind::from_permutations:
      return detail::closure(desc.points, desc.generators, desc.element_cap);
  }
  fail(Errc::invalid_descriptor, "unknown group kind");
}

class Subgroup {
 public:
  Subgroup() = default;
  explicit Subgroup(boost::dynamic_bitset<> members) : members_(std::move(members)) {}

  static Subgroup whole(const GroupTable& g) {
    boost::dynamic_bitset<> m(g.order());
    m.set();
    return Subgroup(std::move(m));
  }

  bool contains(Element e) const { return members_.test(e); }
  std::size_t size() const { return members_.count(); }
  const boost::dynamic_bitset<>& mask() const { return members_; }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    for (auto i = members_.find_first(); i != boost::dynamic_bitset<>::npos; i = members_.find_next(i))
      out.push_back(static_cast<Element>(i));
    return out;
  }

  /// Identity, closure under products and inverses.
  bool is_valid_in(const GroupTable& g) const {
    if (members_.size() != g.order() || !contains(g.identity())) return false;
    auto elems = elements();
    for (auto a : elems) {
      if (!contains(g.inv(a))) return false;
      for (auto b : elems)
        if (!contains(g.mul(a, b))) return false;
    }
    return true;
  }

  friend bool operator==(const Subgroup&, const Subgroup&) = default;

 private:
  boost::dynamic_bitset<> members_;
};

/// Smallest subgroup containing `gens`.
inline Subgroup generate_subgroup(const GroupTable& g, const std::vector<Element>& gens) {
  boost::dynamic_bitset<> m(g.order());
  std::vector<Element> queue{g.identity()};
  m.set(g.identity());
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (auto s : gens) {
      Element next = g.mul(queue[head], s);
      if (!m.test(next)) {
        m.set(next);
        queue.push_back(next);
      }
    }
  return Subgroup(std::move(m));
}

/// All subgroups of index two, as kernels of the nontrivial characters
/// G -> {+1,-1}. These factor through G/N, N generated by squares and
/// commutators, which is an elementary abelian 2-group.
inline std::vector<Subgroup> index_two_subgroups(const GroupTable& g) {
  const std::size_t order = g.order();
  if (order % 2 != 0) return {};
  std::vector<Element> gens;
  for (Element a = 0; a < order; ++a) gens.push_back(g.mul(a, a));
  for (Element a = 0; a < order; ++a)
    for (Element b = 0; b < order; ++b)
      gens.push_back(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  const Subgroup normal = generate_subgroup(g, gens);
  if (normal.size() == order) return {};

  // coords[x] is the F2 coordinate vector of xN with respect to a greedily
  // chosen basis b_0..b_{k-1} of G/N.
  constexpr std::uint32_t unset = ~0u;
  std::vector<std::uint32_t> coords(order, unset);
  for (auto e : normal.elements()) coords[e] = 0;
  std::vector<Element> reached = normal.elements();
  std::size_t k = 0;
  for (Element cand = 0; cand < order; ++cand) {
    if (coords[cand] != unset) continue;
    const std::uint32_t bit = 1u << k++;
    std::vector<Element> fresh;
    for (auto x : reached) {
      Element y = g.mul(x, cand);
      if (coords[y] == unset) {
        coords[y] = coords[x] ^ bit;
        fresh.push_back(y);
      }
    }
    // Cosets of the enlarged span: fill the rest of each new coset.
    for (auto y : std::vector<Element>(fresh))
      for (auto nelem : normal.elements()) {
        Element z = g.mul(y, nelem);
        if (coords[z] == unset) {
          coords[z] = coords[y];
          fresh.push_back(z);
        }
      }
    reached.insert(reached.end(), fresh.begin(), fresh.end());
  }

  std::vector<Subgroup> out;
  for (std::uint32_t c = 1; c < (1u << k); ++c) {
    boost::dynamic_bitset<> m(order);
    for (Element x = 0; x < order; ++x)
      if (__builtin_popcount(coords[x] & c) % 2 == 0) m.set(x);
    Subgroup h(std::move(m));
    if (h.size() * 2 != order || !h.is_valid_in(g))
      fail(Errc::internal_error, "character kernel is not an index-two subgroup");
    out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(),
            [](const Subgroup& a, const Subgroup& b) { return a.elements() < b.elements(); });
  return out;
}

/// Left action of a group on {0..degree-1}.
class GroupAction {
 public:
  GroupAction(GroupPtr group, std::size_t degree, std::vector<Vertex> act)
      : group_(std::move(group)), degree_(degree), act_(std::move(act)) {
    if (!group_ || degree_ == 0 || act_.size() != group_->order() * degree_)
      fail(Errc::invalid_descriptor, "action table has the wrong size");
    for (Element g = 0; g < group_->order(); ++g) {
      std::vector<bool> hit(degree_, false);
      for (Vertex v = 0; v < degree_; ++v) {
        Vertex w = apply(g, v);
        if (w >= degree_ || hit[w]) fail(Errc::invalid_descriptor, "group element does not act as a permutation");
        hit[w] = true;
      }
    }
    for (Vertex v = 0; v < degree_; ++v)
      if (apply(group_->identity(), v) != v) fail(Errc::invalid_descriptor, "identity does not act trivially");
    const std::size_t order = group_->order();
    if (order * order * degree_ <= 20'000'000) {
      for (Element g = 0; g < order; ++g)
        for (Element h = 0; h < order; ++h)
          for (Vertex v = 0; v < degree_; ++v)
            if (apply(group_->mul(g, h), v) != apply(g, apply(h, v)))
              fail(Errc::invalid_descriptor, "table is not a left action");
    } else {
      std::mt19937_64 rng(0xac7);
      std::uniform_int_distribution<Element> pick(0, static_cast<Element>(order - 1));
      std::uniform_int_distribution<Vertex> point(0, static_cast<Vertex>(degree_ - 1));
      for (int i = 0; i < 200000; ++i) {
        Element g = pick(rng), h = pick(rng);
        Vertex v = point(rng);
        if (apply(group_->mul(g, h), v) != apply(g, apply(h, v)))
          fail(Errc::invalid_descriptor, "table is not a left action");
      }
    }
  }

  const GroupTable& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  std::size_t degree() const { return degree_; }
  Vertex apply(Element g, Vertex v) const { return act_[g * degree_ + v]; }

  Permutation permutation(Element g) const {
    return Permutation(act_.begin() + g * degree_, act_.begin() + (g + 1) * degree_);
  }

 private:
  GroupPtr group_;
  std::size_t degree_;
  std::vector<Vertex> act_;
};

/// g . x = gx on the group's own elements.
inline GroupAction left_regular_action(GroupPtr g) {
  const std::size_t n = g->order();
  std::vector<Vertex> act(n * n);
  for (Element a = 0; a < n; ++a)
    for (Element x = 0; x < n; ++x) act[a * n + x] = g->mul(a, x);
  return GroupAction(std::move(g), n, std::move(act));
}

/// Action through the stored permutation representation.
inline GroupAction natural_action(GroupPtr g) {
  if (!g->has_permutation_rep()) fail(Errc::invalid_descriptor, "group has no permutation representation");
  const std::size_t m = g->permutations().front().size();
  std::vector<Vertex> act;
  for (const auto& p : g->permutations()) act.insert(act.end(), p.begin(), p.end());
  return GroupAction(std::move(g), m, std::move(act));
}

/// k-element subsets of the permutation domain, in lexicographic order of
/// their sorted element lists.
inline std::vector<std::vector<std::uint32_t>> k_subsets(std::size_t points, std::size_t k) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  auto rec = [&](auto&& self, std::uint32_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t x = start; x < points; ++x) {
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline GroupAction action_on_k_subsets(GroupPtr g, std::size_t k) {
  if (!g->has_permutation_rep()) fail(Errc::invalid_descriptor, "group has no permutation representation");
  const std::size_t m = g->permutations().front().size();
  auto subsets = k_subsets(m, k);
  std::map<std::vector<std::uint32_t>, Vertex> index;
  for (Vertex i = 0; i < subsets.size(); ++i) index.emplace(subsets[i], i);
  std::vector<Vertex> act;
  act.reserve(g->order() * subsets.size());
  for (const auto& p : g->permutations())
    for (const auto& s : subsets) {
      std::vector<std::uint32_t> image;
      for (auto x : s) image.push_back(p[x]);
      std::sort(image.begin(), image.end());
      act.push_back(index.at(image));
    }
  const std::size_t degree = subsets.size();
  return GroupAction(std::move(g), degree, std::move(act));
}

/// Orbits of `restrict_to` (the whole group when null); the orbit of the
/// smallest unvisited point comes first and each orbit is sorted.
inline std::vector<std::vector<Vertex>> orbits(const GroupAction& a, const Subgroup* restrict_to = nullptr) {
  std::vector<Element> elems;
  for (Element g = 0; g < a.group().order(); ++g)
    if (!restrict_to || restrict_to->contains(g)) elems.push_back(g);
  std::vector<bool> visited(a.degree(), false);
  std::vector<std::vector<Vertex>> out;
  for (Vertex v = 0; v < a.degree(); ++v) {
    if (visited[v]) continue;
    std::vector<Vertex> orbit;
    for (auto g : elems) {
      Vertex w = a.apply(g, v);
      if (!visited[w]) {
        visited[w] = true;
        orbit.push_back(w);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

inline bool is_transitive(const GroupAction& a) { return orbits(a).size() == 1; }

inline bool no_index_two_transitive(const GroupAction& a) {
  for (const auto& h : index_two_subgroups(a.group()))
    if (orbits(a, &h).size() < 2) return false;
  return true;
}

inline std::size_t stabilizer_size(const GroupAction& a, Vertex v) {
  std::size_t count = 0;
  for (Element g = 0; g < a.group().order(); ++g)
    if (a.apply(g, v) == v) ++count;
  return count;
}

/// The subgroup as a standalone table (identity first, ascending element
/// order) together with the restricted action.
inline GroupAction restrict_action(const GroupAction& a, const Subgroup& h) {
  const auto& g = a.group();
  auto elems = h.elements();
  std::vector<Element> local(g.order(), 0);
  for (Element i = 0; i < elems.size(); ++i) local[elems[i]] = i;
  const std::size_t k = elems.size();
  std::vector<Element> mul(k * k);
  std::vector<std::string> labels;
  for (Element i = 0; i < k; ++i) {
    labels.push_back(g.label(elems[i]));
    for (Element j = 0; j < k; ++j) mul[i * k + j] = local[g.mul(elems[i], elems[j])];
  }
  std::vector<Permutation> perms;
  if (g.has_permutation_rep())
    for (auto e : elems) perms.push_back(g.permutations()[e]);
  auto sub = std::make_shared<const GroupTable>(k, std::move(mul), std::move(labels), std::move(perms));
  std::vector<Vertex> act;
  for (auto e : elems)
    for (Vertex v = 0; v < a.degree(); ++v) act.push_back(a.apply(e, v));
  return GroupAction(std::move(sub), a.degree(), std::move(act));
}

/// Replace the acting group by transitive index-two subgroups until none of
/// its index-two subgroups is transitive. The result still acts transitively.
inline GroupAction reduce_to_minimal_transitive(GroupAction a) {
  for (;;) {
    bool descended = false;
    for (const auto& h : index_two_subgroups(a.group())) {
      if (orbits(a, &h).size() == 1) {
        a = restrict_action(a, h);
        descended = true;
        break;
      }
    }
    if (!descended) return a;
  }
}

}  // namespace isoperim
