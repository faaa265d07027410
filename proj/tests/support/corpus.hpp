#pragma once

// Non-bipartite test corpus covering all five graph classes.

#include <memory>
#include <string>
#include <vector>

#include "isoperim/families.hpp"
#include "isoperim/graph.hpp"
#include "isoperim/group.hpp"
#include "isoperim/harness.hpp"

namespace corpus {

using namespace isoperim;

struct Entry {
  Instance instance;
  EnumerationCaps caps;
};

inline GroupPtr make(GroupDescriptor d) { return std::make_shared<const GroupTable>(build_group(d)); }

inline std::vector<Element> by_label(const GroupTable& g, std::initializer_list<const char*> labels) {
  std::vector<Element> out;
  for (const char* l : labels) out.push_back(*g.find_label(l));
  return out;
}

inline AutomorphismMap multiply_by(const GroupTable& g, std::uint32_t a) {
  std::vector<Element> perm(g.order());
  for (Element x = 0; x < g.order(); ++x) perm[x] = static_cast<Element>((a * x) % g.order());
  return AutomorphismMap(g, perm);
}

inline std::vector<Entry> build() {
  std::vector<Entry> out;
  auto add = [&](Instance inst, EnumerationCaps caps = {}) { out.push_back({std::move(inst), caps}); };

  for (std::size_t n = 3; n <= 13; n += 2) add(cycle_instance(n));

  for (std::size_t n = 3; n <= 6; ++n) {
    auto g = make(GroupDescriptor::dihedral(n));
    // two rotations and two reflections
    std::vector<Element> s{1, static_cast<Element>(n - 1), static_cast<Element>(n), static_cast<Element>(n + 1)};
    add({"cay(D" + std::to_string(n) + ",{r,r^-1,s,sr})", cayley(*g, ConnectionSet(*g, s)), left_regular_action(g)});
  }
  {
    auto g = make(GroupDescriptor::symmetric(3));
    add({"cay(S3,{(0 1),(0 1 2),(0 2 1)})", cayley(*g, ConnectionSet(*g, by_label(*g, {"(0 1)", "(0 1 2)", "(0 2 1)"}))),
         left_regular_action(g)});
  }
  {
    auto g = make(GroupDescriptor::symmetric(4));
    auto s = by_label(*g, {"(0 1)", "(1 2)", "(2 3)", "(0 1 2)", "(0 2 1)"});
    EnumerationCaps caps;
    caps.ternary = 24;
    add({"cay(S4,{(0 1),(1 2),(2 3),(0 1 2),(0 2 1)})", cayley(*g, ConnectionSet(*g, s)), left_regular_action(g)}, caps);
  }

  for (std::size_t n = 3; n <= 13; ++n) add(cayley_sum_cyclic_instance(n));

  struct Twisted {
    bool sum;
    std::size_t n;
    std::uint32_t a;
    std::vector<Element> s;
  };
  for (const auto& t : std::vector<Twisted>{{false, 5, 4, {0, 1, 2}},
                                            {false, 8, 3, {0, 1, 5}},
                                            {false, 8, 3, {1, 2, 5}},
                                            {true, 7, 6, {0, 1, 6}},
                                            {true, 8, 3, {0, 1, 3}},
                                            {true, 8, 5, {0, 1, 5}}}) {
    auto g = make(GroupDescriptor::cyclic(t.n));
    const ConnectionSet s(*g, t.s);
    const AutomorphismMap sigma = multiply_by(*g, t.a);
    std::string name = std::string(t.sum ? "tsum" : "tcay") + "(Z" + std::to_string(t.n) + ",x->" +
                       std::to_string(t.a) + "x,{";
    for (std::size_t i = 0; i < t.s.size(); ++i) name += (i ? "," : "") + std::to_string(t.s[i]);
    name += "})";
    add({name, t.sum ? twisted_cayley_sum(*g, s, sigma) : twisted_cayley(*g, s, sigma), left_regular_action(g)});
  }

  {
    auto s5 = make(GroupDescriptor::symmetric(5));
    auto act = action_on_k_subsets(s5, 2);
    add({"petersen", from_action_graph(act, {{0, 7}}), act});
  }
  {
    auto s4 = make(GroupDescriptor::symmetric(4));
    auto act = action_on_k_subsets(s4, 2);
    add({"octahedron", from_action_graph(act, {{0, 1}}), act});
  }
  {
    auto d5 = make(GroupDescriptor::from_permutations(5, {{1, 2, 3, 4, 0}, {0, 4, 3, 2, 1}}));
    auto act = natural_action(d5);
    add({"orbit-C5", from_action_graph(act, {{0, 1}}), act});
  }
  {
    auto s3 = make(GroupDescriptor::symmetric(3));
    auto act = natural_action(s3);
    add({"orbit-K3", from_action_graph(act, {{0, 1}}), act});
  }
  return out;
}

}  // namespace corpus
