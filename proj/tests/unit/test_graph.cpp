#include <gtest/gtest.h>

#include "isoperim/graph.hpp"
#include "support/corpus.hpp"

using namespace isoperim;

namespace {

GroupPtr make(GroupDescriptor d) { return std::make_shared<const GroupTable>(build_group(d)); }

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::internal_error;
}

}  // namespace

TEST(Cayley, CycleIsTwoRegular) {
  auto g = make(GroupDescriptor::cyclic(5));
  auto gr = cayley(*g, ConnectionSet(*g, {1, 4}));
  EXPECT_EQ(gr.n(), 5u);
  EXPECT_EQ(gr.d(), 2u);
  EXPECT_EQ(gr.adj(0, 1), 1u);
  EXPECT_EQ(gr.adj(0, 2), 0u);
  EXPECT_EQ(gr.graph_class(), GraphClass::cayley);
  EXPECT_TRUE(is_connected(gr));
  EXPECT_FALSE(is_bipartite(gr).bipartite);
}

TEST(Cayley, NonSymmetricSetIsDirected) {
  auto g = make(GroupDescriptor::cyclic(5));
  EXPECT_EQ(code_of([&] { cayley(*g, ConnectionSet(*g, {1})); }), Errc::directed_result);
}

TEST(Cayley, EvenCycleIsBipartite) {
  auto g = make(GroupDescriptor::cyclic(4));
  auto v = is_bipartite(cayley(*g, ConnectionSet(*g, {1, 3})));
  ASSERT_TRUE(v.bipartite);
  EXPECT_EQ(v.coloring, (std::vector<std::uint8_t>{0, 1, 0, 1}));
}

TEST(CayleySum, LoopsCountTowardDegree) {
  auto g = make(GroupDescriptor::cyclic(4));
  auto gr = cayley_sum(*g, ConnectionSet(*g, {0, 1}));
  EXPECT_EQ(gr.d(), 2u);
  // x ~ -x: 0 and 2 carry loops
  EXPECT_EQ(gr.adj(0, 0), 1u);
  EXPECT_EQ(gr.adj(2, 2), 1u);
  EXPECT_FALSE(is_bipartite(gr).bipartite);
  EXPECT_EQ(gr.graph_class(), GraphClass::cayley_sum);
}

TEST(CayleySum, AlwaysUndirectedOnAbelianGroups) {
  for (std::size_t n = 3; n <= 9; ++n) {
    auto g = make(GroupDescriptor::cyclic(n));
    EXPECT_NO_THROW(cayley_sum(*g, ConnectionSet(*g, {1})));
  }
}

TEST(TwistedCayley, IdentityTwistMatchesCayley) {
  auto g = make(GroupDescriptor::dihedral(4));
  ConnectionSet s(*g, {1, 3, 4});
  EXPECT_EQ(twisted_cayley(*g, s, AutomorphismMap::identity(*g)), cayley(*g, s));
  auto z6 = make(GroupDescriptor::cyclic(6));
  ConnectionSet t(*z6, {0, 1});
  EXPECT_EQ(twisted_cayley_sum(*z6, t, AutomorphismMap::identity(*z6)), cayley_sum(*z6, t));
}

TEST(TwistedCayley, RejectsAsymmetricTwist) {
  auto g = make(GroupDescriptor::cyclic(5));
  std::vector<Element> times2{0, 2, 4, 1, 3};
  AutomorphismMap sigma(*g, times2);
  EXPECT_EQ(code_of([&] { twisted_cayley(*g, ConnectionSet(*g, {1, 4}), sigma); }), Errc::directed_result);
  EXPECT_EQ(code_of([&] { twisted_cayley_sum(*g, ConnectionSet(*g, {0}), sigma); }), Errc::directed_result);
}

TEST(TwistedCayley, InvolutiveTwistAccepted) {
  auto g = make(GroupDescriptor::cyclic(8));
  AutomorphismMap sigma = corpus::multiply_by(*g, 3);
  auto gr = twisted_cayley(*g, ConnectionSet(*g, {0, 1, 5}), sigma);
  EXPECT_EQ(gr.d(), 3u);
  EXPECT_EQ(gr.graph_class(), GraphClass::twisted_cayley);
  // y = 3(x + s) for x = 0
  EXPECT_EQ(gr.adj(0, 0), 1u);
  EXPECT_EQ(gr.adj(3, 0), 1u);
  EXPECT_EQ(gr.adj(7, 0), 1u);
}

TEST(Automorphism, GeneratorImagesExtend) {
  auto g = make(GroupDescriptor::dihedral(4));
  const Element r = *g->find_label("r"), s = *g->find_label("s"), r3 = *g->find_label("r^3");
  auto sigma = AutomorphismMap::from_generator_images(*g, {{r, r3}, {s, s}});
  EXPECT_FALSE(sigma.is_identity());
  EXPECT_EQ(sigma(*g->find_label("sr")), *g->find_label("sr^3"));
  EXPECT_EQ(code_of([&] { AutomorphismMap::from_generator_images(*g, {{r, s}, {s, s}}); }),
            Errc::invalid_descriptor);
}

TEST(ActionGraph, PetersenFromPairs) {
  auto s5 = make(GroupDescriptor::symmetric(5));
  auto a = action_on_k_subsets(s5, 2);
  auto gr = from_action_graph(a, {{0, 7}});
  EXPECT_EQ(gr.n(), 10u);
  EXPECT_EQ(gr.d(), 3u);
  EXPECT_EQ(gr.graph_class(), GraphClass::vertex_transitive);
  EXPECT_FALSE(is_bipartite(gr).bipartite);
  EXPECT_TRUE(commutes_with_action(gr, a, 1));
  for (Vertex u = 0; u < 10; ++u) EXPECT_EQ(gr.adj(u, u), 0u);
}

TEST(ActionGraph, RejectsIntransitiveAction) {
  auto g = make(GroupDescriptor::from_permutations(4, {{1, 0, 2, 3}}));
  auto a = natural_action(g);
  EXPECT_EQ(code_of([&] { from_action_graph(a, {{0, 1}}); }), Errc::invalid_descriptor);
}

TEST(Multigraph, RejectsIrregularAndAsymmetric) {
  EXPECT_EQ(code_of([] { RegularMultigraph(3, {0, 1, 1, 1, 0, 0, 1, 0, 0}); }), Errc::not_regular);
  EXPECT_EQ(code_of([] { RegularMultigraph(2, {0, 1, 0, 1}); }), Errc::directed_result);
}

TEST(Square, DegreeSquares) {
  auto g = make(GroupDescriptor::cyclic(5));
  auto gr = cayley(*g, ConnectionSet(*g, {1, 4}));
  auto sq = square_graph(gr);
  EXPECT_EQ(sq.d(), 4u);
  EXPECT_EQ(sq.adj(0, 0), 2u);
  EXPECT_EQ(sq.adj(0, 2), 1u);
}

TEST(Commutation, LeftMultiplicationAndSquares) {
  // Cayley graphs: left multiplication is an automorphism.
  auto d4 = make(GroupDescriptor::dihedral(4));
  auto cay = cayley(*d4, ConnectionSet(*d4, {1, 3, 4}));
  EXPECT_TRUE(commutes_with_action(cay, left_regular_action(d4), 1));
  // Cayley sum graphs of Z_n: left multiplication commutes with T^2 but not T.
  auto z7 = make(GroupDescriptor::cyclic(7));
  auto sum = cayley_sum(*z7, ConnectionSet(*z7, {0, 1}));
  EXPECT_FALSE(commutes_with_action(sum, left_regular_action(z7), 1));
  EXPECT_TRUE(commutes_with_action(sum, left_regular_action(z7), 2));
}

TEST(Commutation, TwistedSumsCommuteWithSquareOnCorpus) {
  for (const auto& e : corpus::build()) {
    const auto cls = e.instance.graph.graph_class();
    if (cls != GraphClass::twisted_cayley_sum && cls != GraphClass::cayley_sum) continue;
    EXPECT_TRUE(commutes_with_action(e.instance.graph, *e.instance.action, 2)) << e.instance.name;
  }
}
