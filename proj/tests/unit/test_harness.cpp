#include <gtest/gtest.h>

#include <random>

#include "isoperim/harness.hpp"
#include "support/corpus.hpp"

using namespace isoperim;

namespace {

GroupPtr make(GroupDescriptor d) { return std::make_shared<const GroupTable>(build_group(d)); }

Instance cycle(std::size_t n) { return cycle_instance(n); }

const CheckReport& find(const InstanceReport& r, const std::string& id) {
  for (const auto& c : r.checks)
    if (c.check_id == id) return c;
  throw std::runtime_error("missing check " + id);
}

TrappingInstance z6_evens(Rational delta) {
  auto g = make(GroupDescriptor::cyclic(6));
  VertexSet v(6);
  v.set(0);
  v.set(2);
  v.set(4);
  return {left_regular_action(g), v, delta, Rational(0), Rational(0)};
}

}  // namespace

TEST(Verify, FiveCycleSevenPasses) {
  auto r = verify_instance(cycle(5));
  ASSERT_EQ(r.status, InstanceStatus::ok) << r.error;
  int passes = 0;
  for (const auto& c : r.checks) {
    EXPECT_NE(c.verdict, Verdict::fail) << c.check_id;
    passes += c.verdict == Verdict::pass;
  }
  EXPECT_EQ(passes, 7);
  EXPECT_EQ(find(r, "dichotomy").verdict, Verdict::inapplicable);
  EXPECT_FALSE(r.any_failure());
}

TEST(Verify, FourCycleOnlySpectralSandwiches) {
  auto r = verify_instance(cycle(4));
  ASSERT_EQ(r.status, InstanceStatus::ok);
  for (const auto& c : r.checks) {
    const bool spectral = c.check_id == "cheeger_buser" || c.check_id == "trevisan";
    EXPECT_EQ(c.verdict, spectral ? Verdict::pass : Verdict::inapplicable) << c.check_id;
  }
  EXPECT_EQ(find(r, "bipartiteness_edge").note, "InapplicableBipartite");
}

TEST(Verify, SharpenedFormsUsedForAutomorphismActions) {
  auto r = verify_instance(cycle(7));
  EXPECT_NE(find(r, "bipartiteness_edge").note.find("automorphism case"), std::string::npos);
  EXPECT_NE(find(r, "square_cheeger").note.find("20d"), std::string::npos);
  // Cayley sum graphs: left multiplication is not an automorphism
  auto s = verify_instance(cayley_sum_cyclic_instance(7));
  EXPECT_EQ(find(s, "bipartiteness_edge").note.find("automorphism case"), std::string::npos);
  EXPECT_NE(find(s, "square_cheeger").note.find("48d"), std::string::npos);
  EXPECT_FALSE(s.any_failure());
}

TEST(Verify, MainBoundsOnFiveCycle) {
  auto r = verify_instance(cycle(5));
  const auto& e = find(r, "bipartiteness_edge");
  EXPECT_EQ(*e.lhs.exact, Rational(1, 5));
  EXPECT_EQ(*e.rhs.exact, Rational(1, 360));
  const auto& v = find(r, "bipartiteness_vert");
  EXPECT_EQ(*v.lhs.exact, Rational(1, 4));
  EXPECT_EQ(*v.rhs.exact, Rational(1, 135));
  // d beta = 2/5 >= 1/40, so the sharper form is beta >= h/(40d) = 1/160
  EXPECT_EQ(*e.exact_margin, Rational(1, 5) - Rational(1, 160));
}

TEST(Verify, CorruptedAdjacencyBreaksActionHypothesis) {
  Instance inst = cycle(7);
  // swap {0,1},{2,3} for {0,2},{1,3}
  auto m = inst.graph.matrix();
  auto bump = [&](int x, int y, int delta) {
    m[x * 7 + y] += delta;
    m[y * 7 + x] += delta;
  };
  bump(0, 1, -1);
  bump(2, 3, -1);
  bump(0, 2, 1);
  bump(1, 3, 1);
  inst.graph = RegularMultigraph(7, m, inst.graph.provenance());
  auto r = verify_instance(inst);
  EXPECT_TRUE(r.any_failure());
  bool named = false;
  for (const auto& h : r.hypotheses) named = named || (h.id == "action_commutes_with_T" && !h.holds);
  EXPECT_TRUE(named);
}

TEST(Verify, CapExceededIsSkipped) {
  auto r = verify_instance(cycle(30));
  EXPECT_EQ(r.status, InstanceStatus::skipped);
  ASSERT_TRUE(r.error_code);
  EXPECT_EQ(*r.error_code, Errc::too_large);
}

TEST(Verify, DisconnectedGraphIsNotAFailure) {
  auto g = make(GroupDescriptor::cyclic(8));
  auto gr = cayley(*g, ConnectionSet(*g, {2, 4, 6}));
  auto r = verify_instance({"Z8{2,4}", gr, left_regular_action(g)});
  EXPECT_FALSE(r.any_failure());
  EXPECT_EQ(find(r, "cheeger_buser").verdict, Verdict::inapplicable);
  EXPECT_EQ(find(r, "square_cheeger").verdict, Verdict::inapplicable);
}

TEST(Lemma43, TriangleSingleton) {
  auto gr = cycle(3).graph;
  auto [lhs, rhs] = lemma_4_3_sides(gr, square_graph(gr), set_of(3, {0}));
  EXPECT_EQ(lhs, 0u);
  EXPECT_EQ(rhs, 2u);
  auto [l0, r0] = lemma_4_3_sides(gr, square_graph(gr), VertexSet(3));
  EXPECT_EQ(l0 + r0, 0u);
}

TEST(Lemma43, SampledOnLargerGraph) {
  auto r = check_lemma_4_3(cycle(13).graph, {}, 5, 200);
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_EQ(r.note, "200 subsets tested");
}

TEST(Dichotomy, TriangleInapplicable) {
  auto inst = cycle(3);
  auto c = compute_constants(inst.graph);
  EXPECT_EQ(c.square_cheeger.value, Rational(1, 2));
  auto r = check_dichotomy(inst.graph, *inst.action, c, class_context(inst));
  EXPECT_EQ(r.verdict, Verdict::inapplicable);
}

TEST(Dichotomy, NineCycleHypothesisEvaluatedExactly) {
  auto inst = cycle(9);
  auto c = compute_constants(inst.graph);
  // psi = 1/8 = h/d: the strict hypothesis fails
  EXPECT_EQ(c.square_cheeger.value, Rational(1, 8));
  EXPECT_EQ(c.edge_cheeger.value / Rational(2), Rational(1, 8));
  EXPECT_EQ(check_dichotomy(inst.graph, *inst.action, c, class_context(inst)).verdict, Verdict::inapplicable);
}

TEST(Dichotomy, BranchArithmetic) {
  const Rational coef(1, 10);
  // identity: vol(A n A) = vol(A) is always in the large branch
  EXPECT_EQ(detail::dichotomy_margin(Rational(20), Rational(20), coef), Rational(2));
  EXPECT_GE(detail::dichotomy_margin(Rational(1), Rational(20), coef).sign(), 0);
  EXPECT_LT(detail::dichotomy_margin(Rational(10), Rational(20), coef).sign(), 0);
}

TEST(Trapping, EvenTranslatesOfZ6) {
  auto rep = trapping_H_delta(z6_evens(Rational(1, 10)));
  EXPECT_TRUE(rep.gap_hypothesis_ok);
  EXPECT_EQ(rep.h_delta, (std::vector<Element>{0, 2, 4}));
  EXPECT_TRUE(rep.is_subgroup);
  EXPECT_TRUE(rep.index_two);
  EXPECT_EQ(rep.defect, 0u);
  EXPECT_TRUE(rep.defect_bound_ok);
  EXPECT_TRUE(rep.conclusion_holds);
  EXPECT_EQ(rep.intersections, (std::vector<std::size_t>{3, 0, 3, 0, 3, 0}));
}

TEST(Trapping, GapHypothesisCanFail) {
  auto inst = z6_evens(Rational(1, 10));
  inst.script_v.reset();
  for (int v : {0, 1, 2}) inst.script_v.set(v);
  auto rep = trapping_H_delta(inst);
  EXPECT_FALSE(rep.gap_hypothesis_ok);
  EXPECT_FALSE(rep.conclusion_holds);
}

TEST(Trapping, ConstraintViolationsAreHypothesisErrors) {
  try {
    trapping_H_delta(z6_evens(Rational(1, 2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::hypothesis_violated);
  }
  auto inst = z6_evens(Rational(1, 10));
  EXPECT_TRUE(trapping_constraint_violations(inst).empty());
  inst.xi = Rational(1, 3);
  EXPECT_FALSE(trapping_constraint_violations(inst).empty());
}

TEST(Trapping, TransitiveIndexTwoSubgroupRejected) {
  // S5 on pairs: A5 is transitive
  auto s5 = make(GroupDescriptor::symmetric(5));
  VertexSet v(10);
  for (int i = 0; i < 5; ++i) v.set(i);
  TrappingInstance inst{action_on_k_subsets(s5, 2), v, Rational(1, 10), Rational(0), Rational(0)};
  EXPECT_THROW(trapping_H_delta(inst), Error);
}

TEST(Trapping, PartitionConstraints) {
  auto inst = z6_evens(Rational(1, 10));
  inst.mu = Rational(1);
  inst.kappa = Rational(0);
  EXPECT_TRUE(partition_constraint_violations(inst).empty());
  inst.mu = Rational(2);  // 1/(2mu) = 1/4, bound 2 (1/4)^2 = 1/8 > 1/10
  EXPECT_TRUE(partition_constraint_violations(inst).empty());
  inst.mu = Rational(3);  // bound 2 (1/6)^2 = 1/18 < 1/10
  EXPECT_FALSE(partition_constraint_violations(inst).empty());
}

TEST(Partition, AgreesWithBipartiteness) {
  for (std::size_t n : {4, 5, 6, 7, 8}) {
    auto inst = cycle(n);
    auto r = check_partition_conclusion(inst.graph, *inst.action);
    EXPECT_EQ(r.verdict, Verdict::pass) << n << " " << r.note;
    EXPECT_EQ(r.witness.has_value(), n % 2 == 0);
  }
  for (const auto& e : corpus::build()) {
    if (e.instance.graph.n() > 16) continue;
    EXPECT_EQ(check_partition_conclusion(e.instance.graph, *e.instance.action).verdict, Verdict::pass)
        << e.instance.name;
  }
}

TEST(Sweep, ParallelMatchesSerial) {
  auto family = family_instances("odd-cycles", 3, 13);
  ASSERT_EQ(family.size(), 6u);
  auto serial = sweep(family);
  auto parallel = sweep(family, {}, 3);
  ASSERT_EQ(serial.instances.size(), parallel.instances.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    EXPECT_EQ(serial.instances[i].name, parallel.instances[i].name);
    EXPECT_EQ(serial.instances[i].constants->beta_edge.value, parallel.instances[i].constants->beta_edge.value);
  }
  EXPECT_EQ(serial.summary.failures, 0u);
  ASSERT_TRUE(serial.summary.min_ratios.edge);
  EXPECT_GE(*serial.summary.min_ratios.edge, Rational(1));
  EXPECT_EQ(*serial.summary.min_ratios.edge, Rational(60));  // the triangle
}

TEST(Sweep, EmptyFamily) {
  auto rep = sweep(family_instances("cycles", 9, 3));
  EXPECT_TRUE(rep.instances.empty());
  EXPECT_FALSE(rep.summary.min_ratios.edge);
  EXPECT_THROW(family_instances("nope", 3, 5), Error);
}
