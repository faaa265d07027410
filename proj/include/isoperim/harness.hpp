#pragma once

// Mechanical checks of the explicit-constant inequalities on concrete graphs.
//
// Combinatorial comparisons are exact. Comparisons that involve eigenvalues
// use a fixed slack of 1e-9.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "isoperim/combinatorics.hpp"
#include "isoperim/error.hpp"
#include "isoperim/graph.hpp"
#include "isoperim/group.hpp"
#include "isoperim/rational.hpp"
#include "isoperim/spectral.hpp"

namespace isoperim {

inline constexpr double kSpectralSlack = 1e-9;

enum class Verdict { pass, fail, inapplicable };

constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inapplicable: return "inapplicable";
  }
  return "unknown";
}

/// A side of an inequality: exact when purely combinatorial.
struct Quantity {
  std::optional<Rational> exact;
  double approx = 0;

  static Quantity of(const Rational& r) { return {r, r.to_double()}; }
  static Quantity of(double x) { return {std::nullopt, x}; }
  std::string str() const { return exact ? exact->str() : std::to_string(approx); }
};

struct CheckReport {
  std::string check_id;
  bool hypothesis_ok = true;
  Quantity lhs;
  Quantity rhs;
  double margin = 0;                   // positive means the asserted direction holds
  std::optional<Rational> exact_margin;
  Verdict verdict = Verdict::inapplicable;
  std::optional<CutWitness> witness;
  std::vector<Element> subgroup_witness;
  std::string note;
};

inline CheckReport inapplicable(std::string id, std::string why) {
  CheckReport r;
  r.check_id = std::move(id);
  r.hypothesis_ok = false;
  r.verdict = Verdict::inapplicable;
  r.note = std::move(why);
  return r;
}

/// Exact constants of one graph, computed once and shared by the checks.
struct Constants {
  Optimum edge_cheeger;
  Optimum vertex_cheeger;
  Optimum beta_edge;
  Optimum beta_vert;
  Optimum square_cheeger;  // edge Cheeger constant of T^2
};

inline Constants compute_constants(const RegularMultigraph& gr, const EnumerationCaps& caps = {}) {
  detail::require_cap(gr, caps.subset, "subset");
  detail::require_cap(gr, caps.ternary, "pair");
  auto [edge, vertex] = cheeger_constants(gr, caps);
  auto be = edge_bipartiteness(gr, caps);
  auto bv = vertex_bipartiteness(gr, caps);
  auto sq = edge_cheeger(square_graph(gr), caps);
  return {std::move(edge), std::move(vertex), std::move(be), std::move(bv), std::move(sq)};
}

// ---------------------------------------------------------------------------
// Spectral sandwiches

/// h^2/2 <= 1 - mu2 <= 2h.
inline CheckReport check_cheeger_buser(const RegularMultigraph& gr, const Rational& h, const SpectrumReport& spec) {
  if (!is_connected(gr)) return inapplicable("cheeger_buser", "disconnected graph (mu2 = 1)");
  CheckReport r;
  r.check_id = "cheeger_buser";
  const double hv = h.to_double();
  r.lhs = Quantity::of(h * h / Rational(2));
  r.rhs = Quantity::of(h * Rational(2));
  const double gap = spec.upper_gap;
  r.margin = std::min(gap - r.lhs.approx, r.rhs.approx - gap);
  r.verdict = r.margin >= -kSpectralSlack ? Verdict::pass : Verdict::fail;
  r.note = "h^2/2 = " + std::to_string(hv * hv / 2) + " <= 1-mu2 = " + std::to_string(gap) +
           " <= 2h = " + std::to_string(2 * hv);
  return r;
}

/// beta_edge^2/2 <= 1 + mu_n <= 2 beta_edge.
inline CheckReport check_trevisan(const Rational& beta_edge, const SpectrumReport& spec) {
  CheckReport r;
  r.check_id = "trevisan";
  r.lhs = Quantity::of(beta_edge * beta_edge / Rational(2));
  r.rhs = Quantity::of(beta_edge * Rational(2));
  const double gap = spec.lower_gap;
  r.margin = std::min(gap - r.lhs.approx, r.rhs.approx - gap);
  r.verdict = r.margin >= -kSpectralSlack ? Verdict::pass : Verdict::fail;
  r.note = "beta^2/2 = " + std::to_string(r.lhs.approx) + " <= 1+mu_n = " + std::to_string(gap) +
           " <= 2beta = " + std::to_string(r.rhs.approx);
  return r;
}

// ---------------------------------------------------------------------------
// Bipartiteness bounds

/// Which form of the bipartiteness and square-graph bounds applies.
struct ClassContext {
  GraphClass graph_class = GraphClass::explicit_matrix;
  bool bipartite = false;
  /// A transitive action by graph automorphisms, none of whose index-two
  /// subgroups is transitive, is available: the sharpened constants apply.
  bool acts_by_automorphisms = false;
};

/// beta_edge >= h/(90d) and beta_vert >= h_vert/135; for inputs with an
/// automorphism action additionally h <= 40 beta_edge (d beta_edge < 1/40)
/// or h <= 40 d beta_edge (otherwise), and h_vert <= 60 beta_vert.
inline std::pair<CheckReport, CheckReport> check_main_bipartiteness(const RegularMultigraph& gr, const Constants& c,
                                                                    const ClassContext& ctx) {
  if (ctx.bipartite)
    return {inapplicable("bipartiteness_edge", "InapplicableBipartite"),
            inapplicable("bipartiteness_vert", "InapplicableBipartite")};
  if (!is_algebraic_class(ctx.graph_class))
    return {inapplicable("bipartiteness_edge", "graph is not in a covered class"),
            inapplicable("bipartiteness_vert", "graph is not in a covered class")};
  const Rational d(static_cast<std::int64_t>(gr.d()));
  const Rational& be = c.beta_edge.value;
  const Rational& bv = c.beta_vert.value;
  const Rational& h = c.edge_cheeger.value;
  const Rational& hv = c.vertex_cheeger.value;

  CheckReport edge;
  edge.check_id = "bipartiteness_edge";
  edge.lhs = Quantity::of(be);
  edge.rhs = Quantity::of(h / (Rational(90) * d));
  Rational em = be - *edge.rhs.exact;
  edge.note = "beta_edge >= h/(90d)";
  if (ctx.acts_by_automorphisms) {
    const bool small = d * be < Rational(1, 40);
    Rational sharp = small ? h / Rational(40) : h / (Rational(40) * d);
    em = std::min(em, be - sharp);
    edge.note += small ? "; automorphism case: h <= 40 beta_edge" : "; automorphism case: h <= 40 d beta_edge";
  }
  edge.exact_margin = em;
  edge.margin = em.to_double();
  edge.verdict = em.sign() >= 0 ? Verdict::pass : Verdict::fail;
  edge.witness = c.beta_edge.witness;

  CheckReport vert;
  vert.check_id = "bipartiteness_vert";
  vert.lhs = Quantity::of(bv);
  vert.rhs = Quantity::of(hv / Rational(135));
  Rational vm = bv - *vert.rhs.exact;
  vert.note = "beta_vert >= h_vert/135";
  if (ctx.acts_by_automorphisms) {
    vm = std::min(vm, bv - hv / Rational(60));
    vert.note += "; automorphism case: h_vert <= 60 beta_vert";
  }
  vert.exact_margin = vm;
  vert.margin = vm.to_double();
  vert.verdict = vm.sign() >= 0 ? Verdict::pass : Verdict::fail;
  vert.witness = c.beta_vert.witness;
  return {edge, vert};
}

/// 1 + mu_n >= h_vert^2 / (2 * 135^2 * d^2), through
/// 1 + mu_n >= beta_edge^2/2, beta_edge >= beta_vert/d, beta_vert >= h_vert/135.
inline CheckReport check_lower_gap_corollary(const RegularMultigraph& gr, const Constants& c,
                                             const SpectrumReport& spec, const ClassContext& ctx) {
  if (ctx.bipartite) return inapplicable("lower_gap_corollary", "InapplicableBipartite");
  if (!is_algebraic_class(ctx.graph_class))
    return inapplicable("lower_gap_corollary", "graph is not in a covered class");
  const Rational d(static_cast<std::int64_t>(gr.d()));
  const Rational& hv = c.vertex_cheeger.value;
  CheckReport r;
  r.check_id = "lower_gap_corollary";
  r.lhs = Quantity::of(spec.lower_gap);
  r.rhs = Quantity::of(hv * hv / (Rational(2 * 135 * 135) * d * d));
  r.margin = spec.lower_gap - r.rhs.approx;
  const bool chain = c.beta_edge.value * d >= c.beta_vert.value &&
                     c.beta_vert.value * Rational(135) >= hv &&
                     spec.lower_gap + kSpectralSlack >= (c.beta_edge.value * c.beta_edge.value / Rational(2)).to_double();
  r.verdict = (r.margin >= -kSpectralSlack && chain) ? Verdict::pass : Verdict::fail;
  r.note = chain ? "chain links hold" : "a link of the chain fails";
  return r;
}

// ---------------------------------------------------------------------------
// Square graph

/// Strict h_{T^2} > h^2/(K d), K = 20 when the action commutes with T and
/// 48 otherwise. Equality is a failure.
inline CheckReport check_square_cheeger(const RegularMultigraph& gr, const Constants& c, const ClassContext& ctx) {
  if (ctx.bipartite) return inapplicable("square_cheeger", "InapplicableBipartite");
  if (!is_algebraic_class(ctx.graph_class)) return inapplicable("square_cheeger", "graph is not in a covered class");
  if (c.edge_cheeger.value.is_zero()) return inapplicable("square_cheeger", "disconnected graph (h = 0)");
  const bool commuting = ctx.acts_by_automorphisms;
  const Rational k(commuting ? 20 : 48);
  const Rational d(static_cast<std::int64_t>(gr.d()));
  const Rational& h = c.edge_cheeger.value;
  CheckReport r;
  r.check_id = "square_cheeger";
  r.lhs = Quantity::of(c.square_cheeger.value);
  Rational rhs48 = h * h / (Rational(48) * d);
  Rational rhs = h * h / (k * d);
  r.rhs = Quantity::of(rhs);
  Rational m = std::min(c.square_cheeger.value - rhs, c.square_cheeger.value - rhs48);
  r.exact_margin = m;
  r.margin = m.to_double();
  r.verdict = m.sign() > 0 ? Verdict::pass : Verdict::fail;
  r.witness = c.square_cheeger.witness;
  r.note = commuting ? "h_{T^2} > h^2/(20d) (action commutes with T)" : "h_{T^2} > h^2/(48d)";
  return r;
}

/// Neighbourhood N(X) = {v : <T 1_v, 1_X> != 0}.
inline VertexSet neighbourhood(const RegularMultigraph& gr, const VertexSet& x) {
  VertexSet out(gr.n());
  for (auto u = x.find_first(); u != VertexSet::npos; u = x.find_next(u))
    for (const auto& arc : gr.neighbors(static_cast<Vertex>(u))) out.set(arc.to);
  return out;
}

/// Both sides of <T 1_{X u N(X)}, 1_{complement}> <= <T^2 1_X, 1_{X^c}>.
inline std::pair<std::uint64_t, std::uint64_t> lemma_4_3_sides(const RegularMultigraph& gr,
                                                               const RegularMultigraph& square, const VertexSet& x) {
  VertexSet y = x | neighbourhood(gr, x);
  return {edge_count(gr, y, ~y), edge_count(square, x, ~x)};
}

/// Every subset when n <= 10, otherwise `samples` seeded random subsets.
inline CheckReport check_lemma_4_3(const RegularMultigraph& gr, const ClassContext& ctx, std::uint64_t seed = 1,
                                   std::size_t samples = 1000) {
  const RegularMultigraph square = square_graph(gr);
  const std::size_t n = gr.n();
  std::vector<VertexSet> subsets;
  if (n <= 10) {
    for (VertexMask m = 0; m < (VertexMask{1} << n); ++m) {
      VertexSet s(n);
      for (auto v : vertices_of(m)) s.set(v);
      subsets.push_back(std::move(s));
    }
  } else {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < samples; ++i) {
      VertexSet s(n);
      for (std::size_t v = 0; v < n; ++v)
        if (coin(rng)) s.set(v);
      subsets.push_back(std::move(s));
    }
  }
  CheckReport r;
  r.check_id = "lemma_4_3";
  std::int64_t worst = std::numeric_limits<std::int64_t>::max();
  for (const auto& x : subsets) {
    auto [lhs, rhs] = lemma_4_3_sides(gr, square, x);
    const std::int64_t m = static_cast<std::int64_t>(rhs) - static_cast<std::int64_t>(lhs);
    if (m < worst) {
      worst = m;
      r.lhs = Quantity::of(Rational(static_cast<std::int64_t>(lhs)));
      r.rhs = Quantity::of(Rational(static_cast<std::int64_t>(rhs)));
    }
  }
  r.exact_margin = Rational(worst);
  r.margin = static_cast<double>(worst);
  r.note = std::to_string(subsets.size()) + " subsets tested";
  r.hypothesis_ok = !ctx.bipartite;
  if (ctx.bipartite) {
    r.verdict = Verdict::inapplicable;
    r.note += "; standing hypotheses need a non-bipartite graph";
  } else {
    r.verdict = worst >= 0 ? Verdict::pass : Verdict::fail;
  }
  return r;
}

namespace detail {

/// Distance into the nearer branch: >= 0 iff vol_int >= vol_a (1 - coef) or
/// vol_int <= vol_a coef.
inline Rational dichotomy_margin(const Rational& vol_int, const Rational& vol_a, const Rational& coef) {
  const Rational large = vol_int - vol_a * (Rational(1) - coef);
  const Rational small = vol_a * coef - vol_int;
  return std::max(large, small);
}

}  // namespace detail

/// For the stored minimizer A of h_{T^2} and every g: with
/// c = 2 d psi (1 + h) / h^2, vol_T(A n gA) >= vol_T(A)(1 - c) or
/// vol_T(A n gA) <= vol_T(A) c. Needs psi < h/d and an action commuting
/// with T^2.
inline CheckReport check_dichotomy(const RegularMultigraph& gr, const GroupAction& a, const Constants& c,
                                   const ClassContext& ctx) {
  if (ctx.bipartite) return inapplicable("dichotomy", "InapplicableBipartite");
  if (!commutes_with_action(gr, a, 2)) return inapplicable("dichotomy", "action does not commute with T^2");
  const Rational d(static_cast<std::int64_t>(gr.d()));
  const Rational& h = c.edge_cheeger.value;
  const Rational& psi = c.square_cheeger.value;
  if (h.is_zero() || !(psi < h / d))
    return inapplicable("dichotomy", "psi = " + psi.str() + " is not below h/d = " + (h.is_zero() ? "0" : (h / d).str()));
  const Rational coef = Rational(2) * d * psi * (Rational(1) + h) / (h * h);
  const VertexMask amask = c.square_cheeger.witness.subset;
  const std::int64_t vol_a = static_cast<std::int64_t>(gr.d()) * std::popcount(amask);
  CheckReport r;
  r.check_id = "dichotomy";
  r.witness = c.square_cheeger.witness;
  Rational worst;
  bool first = true;
  for (Element g = 0; g < a.group().order(); ++g) {
    VertexMask ga = 0;
    for (auto v : vertices_of(amask)) ga |= VertexMask{1} << a.apply(g, v);
    const Rational vol_int(static_cast<std::int64_t>(gr.d()) * std::popcount(amask & ga));
    const Rational m = detail::dichotomy_margin(vol_int, Rational(vol_a), coef);
    if (first || m < worst) {
      worst = m;
      r.lhs = Quantity::of(vol_int);
      first = false;
    }
  }
  r.rhs = Quantity::of(Rational(vol_a) * coef);
  r.exact_margin = worst;
  r.margin = worst.to_double();
  r.verdict = worst.sign() >= 0 ? Verdict::pass : Verdict::fail;
  r.note = "coefficient 2d psi (1+h)/h^2 = " + coef.str() + " over " + std::to_string(a.group().order()) + " elements";
  return r;
}

// ---------------------------------------------------------------------------
// Trapping lemma and the partition conclusion

struct TrappingInstance {
  GroupAction action;
  VertexSet script_v;
  Rational delta;
  Rational xi;
  Rational zeta;
  Rational kappa{0};
  Rational mu{1};
};

/// Names of the violated constraints among
/// (1-xi)/2 <= |V'|/|V| <= (1+zeta)/2, delta > 0, delta < (1-zeta)/2, delta < (1-3xi)/4.
inline std::vector<std::string> trapping_constraint_violations(const TrappingInstance& inst) {
  std::vector<std::string> out;
  const Rational frac(static_cast<std::int64_t>(inst.script_v.count()), static_cast<std::int64_t>(inst.action.degree()));
  if (inst.xi.sign() < 0 || inst.zeta.sign() < 0 || inst.delta.sign() < 0) out.push_back("xi, zeta, delta >= 0");
  if (frac < (Rational(1) - inst.xi) / Rational(2)) out.push_back("(1-xi)/2 <= |V'|/|V|");
  if (frac > (Rational(1) + inst.zeta) / Rational(2)) out.push_back("|V'|/|V| <= (1+zeta)/2");
  if (inst.delta.sign() <= 0) out.push_back("delta > 0");
  if (!(inst.delta < (Rational(1) - inst.zeta) / Rational(2))) out.push_back("delta < (1-zeta)/2");
  if (!(inst.delta < (Rational(1) - Rational(3) * inst.xi) / Rational(4))) out.push_back("delta < (1-3xi)/4");
  return out;
}

/// Violations of mu > 0, kappa >= 0, 1/(2mu) - xi - kappa > 0,
/// delta < 2/(1+zeta) (1/(2mu) - xi - kappa)^2.
inline std::vector<std::string> partition_constraint_violations(const TrappingInstance& inst) {
  std::vector<std::string> out;
  if (inst.mu.sign() <= 0) {
    out.push_back("mu > 0");
    return out;
  }
  if (inst.kappa.sign() < 0) out.push_back("kappa >= 0");
  const Rational slack = Rational(1) / (Rational(2) * inst.mu) - inst.xi - inst.kappa;
  if (slack.sign() <= 0) out.push_back("1/(2mu) - xi - kappa > 0");
  if (!(inst.delta < Rational(2) / (Rational(1) + inst.zeta) * slack * slack))
    out.push_back("delta < 2/(1+zeta) (1/(2mu) - xi - kappa)^2");
  return out;
}

struct TrappingReport {
  std::vector<std::size_t> intersections;  // |V' n tau V'| per group element
  std::vector<Element> h_delta;
  bool gap_hypothesis_ok = false;
  bool is_subgroup = false;
  bool index_two = false;
  std::vector<std::vector<Vertex>> orbits;  // of H_delta, when a subgroup
  std::size_t best_orbit = 0;
  std::size_t defect = 0;                   // |V' n O^c| for the best orbit
  bool defect_bound_ok = false;
  bool conclusion_holds = false;
};

/// H_delta = {tau : |V' n tau V'| >= (1-delta)|V'|}. When no intersection
/// lies strictly inside (delta|V'|, (1-delta)|V'|), checks that H_delta is an
/// index-two subgroup with an orbit O satisfying
/// |V' n O^c| <= sqrt(delta(1+zeta)/2) |V|/2 (compared squared).
inline TrappingReport trapping_H_delta(const TrappingInstance& inst) {
  const GroupAction& a = inst.action;
  const std::size_t n = a.degree();
  if (inst.script_v.size() != n) fail(Errc::invalid_descriptor, "vertex set size differs from the action degree");
  if (inst.script_v.none()) fail(Errc::hypothesis_violated, "the distinguished set is empty");
  if (!is_transitive(a)) fail(Errc::hypothesis_violated, "action is not transitive");
  if (!no_index_two_transitive(a)) fail(Errc::hypothesis_violated, "an index-two subgroup acts transitively");
  if (auto bad = trapping_constraint_violations(inst); !bad.empty()) {
    std::string msg;
    for (const auto& b : bad) msg += (msg.empty() ? "" : "; ") + b;
    fail(Errc::hypothesis_violated, msg);
  }
  const auto& g = a.group();
  const std::int64_t size_v = static_cast<std::int64_t>(inst.script_v.count());
  const Rational lo = inst.delta * Rational(size_v);
  const Rational hi = (Rational(1) - inst.delta) * Rational(size_v);
  TrappingReport rep;
  rep.gap_hypothesis_ok = true;
  boost::dynamic_bitset<> members(g.order());
  for (Element tau = 0; tau < g.order(); ++tau) {
    std::size_t meet = 0;
    for (auto v = inst.script_v.find_first(); v != VertexSet::npos; v = inst.script_v.find_next(v))
      if (inst.script_v.test(a.apply(tau, static_cast<Vertex>(v)))) ++meet;
    rep.intersections.push_back(meet);
    const Rational x(static_cast<std::int64_t>(meet));
    if (x >= hi) {
      rep.h_delta.push_back(tau);
      members.set(tau);
    }
    if (lo < x && x < hi) rep.gap_hypothesis_ok = false;
  }
  if (!rep.gap_hypothesis_ok) return rep;
  Subgroup h(members);
  rep.is_subgroup = h.is_valid_in(g);
  rep.index_two = rep.is_subgroup && h.size() * 2 == g.order();
  if (!rep.is_subgroup) return rep;
  rep.orbits = orbits(a, &h);
  rep.defect = inst.script_v.count();
  for (std::size_t i = 0; i < rep.orbits.size(); ++i) {
    std::size_t outside = 0;
    VertexSet orbit = set_of(n, rep.orbits[i]);
    for (auto v = inst.script_v.find_first(); v != VertexSet::npos; v = inst.script_v.find_next(v))
      if (!orbit.test(v)) ++outside;
    if (outside < rep.defect) {
      rep.defect = outside;
      rep.best_orbit = i;
    }
  }
  const Rational half_v(static_cast<std::int64_t>(n), 2);
  const Rational bound_sq = inst.delta * (Rational(1) + inst.zeta) / Rational(2) * half_v * half_v;
  const Rational defect(static_cast<std::int64_t>(rep.defect));
  rep.defect_bound_ok = defect * defect <= bound_sq;
  rep.conclusion_holds = rep.is_subgroup && rep.index_two && rep.defect_bound_ok;
  return rep;
}

/// Searches index-two-subgroup orbit pairs, and the 2-colouring when one
/// exists, for equal halves V_1, V_2 with V_j n rho_i(V_j) empty for all i.
/// Such a partition exists exactly for bipartite graphs, so the verdict is
/// pass when "found" agrees with bipartiteness.
inline CheckReport check_partition_conclusion(const RegularMultigraph& gr, const GroupAction& a) {
  if (a.degree() != gr.n()) fail(Errc::invalid_descriptor, "action degree differs from the vertex count");
  const auto rho = birkhoff_decompose(gr);
  const std::size_t n = gr.n();
  auto independent = [&](const VertexSet& part) {
    for (const auto& p : rho.perms)
      for (auto v = part.find_first(); v != VertexSet::npos; v = part.find_next(v))
        if (part.test(p[v])) return false;
    return true;
  };
  std::vector<VertexSet> candidates;
  for (const auto& h : index_two_subgroups(a.group())) {
    auto orb = orbits(a, &h);
    if (orb.size() == 2 && orb[0].size() == orb[1].size()) candidates.push_back(set_of(n, orb[0]));
  }
  const auto bip = is_bipartite(gr);
  if (bip.bipartite) {
    VertexSet zero(n);
    for (std::size_t v = 0; v < n; ++v)
      if (bip.coloring[v] == 0) zero.set(v);
    if (zero.count() * 2 == n) candidates.push_back(zero);
  }
  CheckReport r;
  r.check_id = "partition_conclusion";
  bool found = false;
  for (const auto& part : candidates) {
    if (independent(part) && independent(~part)) {
      found = true;
      if (n <= 63) {
        CutWitness w;
        w.kind = CutWitness::Kind::pair;
        for (auto v = part.find_first(); v != VertexSet::npos; v = part.find_next(v)) w.left |= VertexMask{1} << v;
        w.right = ((n == 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1)) & ~w.left;
        r.witness = w;
      }
      break;
    }
  }
  r.lhs = Quantity::of(Rational(found ? 1 : 0));
  r.rhs = Quantity::of(Rational(bip.bipartite ? 1 : 0));
  r.verdict = found == bip.bipartite ? Verdict::pass : Verdict::fail;
  r.note = std::string(found ? "partition found" : "no partition found") + " among " +
           std::to_string(candidates.size()) + " candidates; graph is " + (bip.bipartite ? "bipartite" : "non-bipartite");
  return r;
}

// ---------------------------------------------------------------------------
// Instances and sweeps

struct Instance {
  std::string name;
  RegularMultigraph graph;
  std::optional<GroupAction> action;  // the class action: left multiplication, or the given action
};

struct HypothesisCheck {
  std::string id;
  bool expected = true;
  bool holds = true;
};

struct TightnessRatios {
  std::optional<Rational> edge;    // beta_edge * 90 d / h
  std::optional<Rational> vert;    // beta_vert * 135 / h_vert
  std::optional<Rational> square;  // h_{T^2} * 48 d / h^2
};

enum class InstanceStatus { ok, skipped, error };

struct InstanceReport {
  std::string name;
  InstanceStatus status = InstanceStatus::ok;
  std::string error;
  std::optional<Errc> error_code;
  std::size_t n = 0;
  std::uint32_t d = 0;
  GraphClass graph_class = GraphClass::explicit_matrix;
  bool bipartite = false;
  std::optional<Constants> constants;
  std::optional<SpectrumReport> spectrum;
  std::vector<HypothesisCheck> hypotheses;
  std::vector<CheckReport> checks;
  TightnessRatios ratios;
  std::vector<std::pair<std::string, double>> timings;

  bool any_failure() const {
    for (const auto& c : checks)
      if (c.verdict == Verdict::fail) return true;
    for (const auto& h : hypotheses)
      if (h.expected && !h.holds) return true;
    return false;
  }
};

struct VerifyOptions {
  EnumerationCaps caps;
  std::uint64_t seed = 1;
};

inline ClassContext class_context(const Instance& inst, std::vector<HypothesisCheck>* hyps = nullptr) {
  ClassContext ctx;
  ctx.graph_class = inst.graph.graph_class();
  ctx.bipartite = is_bipartite(inst.graph).bipartite;
  if (!inst.action) return ctx;
  const bool transitive = is_transitive(*inst.action);
  const GroupAction minimal = transitive ? reduce_to_minimal_transitive(*inst.action) : *inst.action;
  const bool commutes_t = commutes_with_action(inst.graph, minimal, 1);
  const bool commutes_t2 = commutes_t || commutes_with_action(inst.graph, minimal, 2);
  ctx.acts_by_automorphisms = transitive && commutes_t;
  if (hyps) {
    const bool algebraic = is_algebraic_class(ctx.graph_class);
    const bool automorphic = ctx.graph_class == GraphClass::cayley || ctx.graph_class == GraphClass::vertex_transitive;
    hyps->push_back({"action_transitive", algebraic, transitive});
    hyps->push_back({"action_commutes_with_T", automorphic, commutes_t});
    hyps->push_back({"action_commutes_with_T2", algebraic, commutes_t2});
  }
  return ctx;
}

inline TightnessRatios tightness(const RegularMultigraph& gr, const Constants& c) {
  TightnessRatios t;
  const Rational d(static_cast<std::int64_t>(gr.d()));
  if (!c.edge_cheeger.value.is_zero()) {
    t.edge = c.beta_edge.value * Rational(90) * d / c.edge_cheeger.value;
    t.square = c.square_cheeger.value * Rational(48) * d / (c.edge_cheeger.value * c.edge_cheeger.value);
  }
  if (!c.vertex_cheeger.value.is_zero()) t.vert = c.beta_vert.value * Rational(135) / c.vertex_cheeger.value;
  return t;
}

/// Every applicable theorem check on one instance. Cap violations and other
/// errors are recorded in the report instead of thrown.
inline InstanceReport verify_instance(const Instance& inst, const VerifyOptions& opt = {}) {
  using clock = std::chrono::steady_clock;
  InstanceReport rep;
  rep.name = inst.name;
  rep.n = inst.graph.n();
  rep.d = inst.graph.d();
  rep.graph_class = inst.graph.graph_class();
  try {
    auto t0 = clock::now();
    auto lap = [&](const char* stage) {
      auto t1 = clock::now();
      rep.timings.emplace_back(stage, std::chrono::duration<double>(t1 - t0).count());
      t0 = t1;
    };
    const ClassContext ctx = class_context(inst, &rep.hypotheses);
    rep.bipartite = ctx.bipartite;
    lap("hypotheses");
    rep.constants = compute_constants(inst.graph, opt.caps);
    lap("constants");
    rep.spectrum = normalized_spectrum(inst.graph);
    lap("spectrum");
    const Constants& c = *rep.constants;
    rep.checks.push_back(check_cheeger_buser(inst.graph, c.edge_cheeger.value, *rep.spectrum));
    rep.checks.push_back(check_trevisan(c.beta_edge.value, *rep.spectrum));
    auto [edge, vert] = check_main_bipartiteness(inst.graph, c, ctx);
    rep.checks.push_back(std::move(edge));
    rep.checks.push_back(std::move(vert));
    rep.checks.push_back(check_lower_gap_corollary(inst.graph, c, *rep.spectrum, ctx));
    rep.checks.push_back(check_square_cheeger(inst.graph, c, ctx));
    rep.checks.push_back(check_lemma_4_3(inst.graph, ctx, opt.seed));
    if (inst.action)
      rep.checks.push_back(check_dichotomy(inst.graph, *inst.action, c, ctx));
    else
      rep.checks.push_back(inapplicable("dichotomy", "no group action available"));
    if (!ctx.bipartite && is_algebraic_class(ctx.graph_class)) rep.ratios = tightness(inst.graph, c);
    lap("checks");
  } catch (const Error& e) {
    rep.status = e.code() == Errc::too_large ? InstanceStatus::skipped : InstanceStatus::error;
    rep.error = e.what();
    rep.error_code = e.code();
  }
  return rep;
}

struct SweepSummary {
  std::size_t instances = 0;
  std::size_t skipped = 0;
  std::size_t failures = 0;
  TightnessRatios min_ratios;
};

struct SweepReport {
  std::vector<InstanceReport> instances;
  SweepSummary summary;
};

/// Runs verify_instance on every instance (optionally on several workers)
/// and merges in input order.
inline SweepReport sweep(const std::vector<Instance>& family, const VerifyOptions& opt = {}, unsigned jobs = 1) {
  SweepReport out;
  out.instances.resize(family.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < family.size(); ++i) out.instances[i] = verify_instance(family[i], opt);
  } else {
    std::vector<std::future<void>> workers;
    for (unsigned t = 0; t < jobs; ++t)
      workers.push_back(std::async(std::launch::async, [&, t] {
        for (std::size_t i = t; i < family.size(); i += jobs) out.instances[i] = verify_instance(family[i], opt);
      }));
    for (auto& w : workers) w.get();
  }
  auto take_min = [](std::optional<Rational>& acc, const std::optional<Rational>& x) {
    if (x && (!acc || *x < *acc)) acc = x;
  };
  for (const auto& r : out.instances) {
    ++out.summary.instances;
    if (r.status != InstanceStatus::ok) ++out.summary.skipped;
    if (r.any_failure()) ++out.summary.failures;
    take_min(out.summary.min_ratios.edge, r.ratios.edge);
    take_min(out.summary.min_ratios.vert, r.ratios.vert);
    take_min(out.summary.min_ratios.square, r.ratios.square);
  }
  return out;
}

}  // namespace isoperim
