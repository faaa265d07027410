#pragma once

// Graph-spec documents (JSON) and analysis reports (JSON or CSV).

#include <cstdio>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "isoperim/combinatorics.hpp"
#include "isoperim/error.hpp"
#include "isoperim/graph.hpp"
#include "isoperim/group.hpp"
#include "isoperim/harness.hpp"

namespace isoperim {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct LoadedSpec {
  json document;  // as read, with schema_version filled in
  std::string family;
  std::string name;
  Instance instance;
  EnumerationCaps caps;
};

namespace detail {

[[noreturn]] inline void spec_fail(const std::string& path, const std::string& what) {
  fail(Errc::spec_error, "field " + (path.empty() ? std::string("/") : path) + ": " + what);
}

inline const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) spec_fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) spec_fail(path + "/" + key, "required field is missing");
  return *it;
}

inline std::size_t as_count(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    spec_fail(path, "expected a non-negative integer");
  return v.get<std::size_t>();
}

inline GroupDescriptor parse_group(const json& g, const std::string& path) {
  const json& kind = require(g, "kind", path);
  if (!kind.is_string()) spec_fail(path + "/kind", "expected a string");
  const auto k = kind.get<std::string>();
  GroupDescriptor d;
  if (k == "cyclic" || k == "dihedral" || k == "symmetric") {
    const std::size_t n = as_count(require(g, "n", path), path + "/n");
    d = k == "cyclic" ? GroupDescriptor::cyclic(n) : k == "dihedral" ? GroupDescriptor::dihedral(n)
                                                                      : GroupDescriptor::symmetric(n);
  } else if (k == "direct_product") {
    const json& f = require(g, "factors", path);
    if (!f.is_array() || f.size() != 2) spec_fail(path + "/factors", "expected two factor descriptors");
    d = GroupDescriptor::direct_product(parse_group(f[0], path + "/factors/0"), parse_group(f[1], path + "/factors/1"));
  } else if (k == "permutations") {
    const std::size_t points = as_count(require(g, "points", path), path + "/points");
    const json& gens = require(g, "generators", path);
    if (!gens.is_array()) spec_fail(path + "/generators", "expected an array of permutations");
    std::vector<Permutation> perms;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::string p = path + "/generators/" + std::to_string(i);
      if (!gens[i].is_array()) spec_fail(p, "expected an image list");
      Permutation perm;
      for (std::size_t j = 0; j < gens[i].size(); ++j)
        perm.push_back(static_cast<std::uint32_t>(as_count(gens[i][j], p + "/" + std::to_string(j))));
      if (perm.size() != points || !is_permutation_of_range(perm)) spec_fail(p, "not a permutation of the points");
      perms.push_back(std::move(perm));
    }
    d = GroupDescriptor::from_permutations(points, std::move(perms));
  } else {
    spec_fail(path + "/kind", "unknown group kind '" + k + "'");
  }
  if (g.contains("element_cap")) d.element_cap = as_count(g["element_cap"], path + "/element_cap");
  return d;
}

/// Integers are element indices, strings are element labels.
inline Element parse_element(const GroupTable& g, const json& v, const std::string& path) {
  if (v.is_string()) {
    auto e = g.find_label(v.get<std::string>());
    if (!e) spec_fail(path, "no element labelled '" + v.get<std::string>() + "'");
    return *e;
  }
  const std::size_t i = as_count(v, path);
  if (i >= g.order()) spec_fail(path, "element index out of range");
  return static_cast<Element>(i);
}

inline ConnectionSet parse_connection_set(const GroupTable& g, const json& doc) {
  const json& s = require(doc, "connection_set", "");
  if (!s.is_array() || s.empty()) spec_fail("/connection_set", "expected a non-empty element list");
  std::vector<Element> elems;
  for (std::size_t i = 0; i < s.size(); ++i) elems.push_back(parse_element(g, s[i], "/connection_set/" + std::to_string(i)));
  return ConnectionSet(g, std::move(elems));
}

/// {"r": "r^3", ...} or [["r", "r^3"], ...]; absent means the identity.
inline AutomorphismMap parse_automorphism(const GroupTable& g, const json& doc) {
  if (!doc.contains("automorphism")) return AutomorphismMap::identity(g);
  const json& a = doc["automorphism"];
  std::vector<std::pair<Element, Element>> images;
  if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it)
      images.emplace_back(parse_element(g, json(it.key()), "/automorphism/" + it.key()),
                          parse_element(g, it.value(), "/automorphism/" + it.key()));
  } else if (a.is_array()) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string p = "/automorphism/" + std::to_string(i);
      if (!a[i].is_array() || a[i].size() != 2) spec_fail(p, "expected a [generator, image] pair");
      images.emplace_back(parse_element(g, a[i][0], p + "/0"), parse_element(g, a[i][1], p + "/1"));
    }
  } else {
    spec_fail("/automorphism", "expected an object or an array of pairs");
  }
  return AutomorphismMap::from_generator_images(g, images);
}

inline GroupAction parse_action(const GroupPtr& g, const json& doc, std::vector<std::string>& labels) {
  const json a = doc.contains("action") ? doc["action"] : json{{"kind", "natural"}};
  const json& kind = require(a, "kind", "/action");
  if (!kind.is_string()) spec_fail("/action/kind", "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "regular") {
    labels = g->labels();
    return left_regular_action(g);
  }
  if (k == "natural") {
    auto act = natural_action(g);
    for (std::size_t v = 0; v < act.degree(); ++v) labels.push_back(std::to_string(v));
    return act;
  }
  if (k == "k_subsets") {
    const std::size_t kk = as_count(require(a, "k", "/action"), "/action/k");
    if (!g->has_permutation_rep()) spec_fail("/action", "k_subsets needs a permutation group");
    const std::size_t points = g->permutations().front().size();
    if (kk == 0 || kk >= points) spec_fail("/action/k", "k must lie strictly between 0 and the number of points");
    for (const auto& s : k_subsets(points, kk)) {
      std::string l = "{";
      for (std::size_t i = 0; i < s.size(); ++i) l += (i ? "," : "") + std::to_string(s[i]);
      labels.push_back(l + "}");
    }
    return action_on_k_subsets(g, kk);
  }
  spec_fail("/action/kind", "unknown action kind '" + k + "'");
}

inline std::vector<BaseEdge> parse_base_edges(const json& doc) {
  const json& b = require(doc, "base_edges", "");
  if (!b.is_array() || b.empty()) spec_fail("/base_edges", "expected a non-empty edge list");
  std::vector<BaseEdge> out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const std::string p = "/base_edges/" + std::to_string(i);
    const json& e = b[i];
    if (e.is_array() && e.size() == 2) {
      out.push_back({static_cast<Vertex>(as_count(e[0], p + "/0")), static_cast<Vertex>(as_count(e[1], p + "/1")), 1});
    } else if (e.is_object()) {
      BaseEdge be{static_cast<Vertex>(as_count(require(e, "u", p), p + "/u")),
                  static_cast<Vertex>(as_count(require(e, "v", p), p + "/v")), 1};
      if (e.contains("multiplicity"))
        be.multiplicity = static_cast<std::uint32_t>(as_count(e["multiplicity"], p + "/multiplicity"));
      out.push_back(be);
    } else {
      spec_fail(p, "expected [u, v] or {u, v, multiplicity}");
    }
  }
  return out;
}

inline RegularMultigraph parse_adjacency(const json& doc) {
  const json& a = require(doc, "adjacency", "");
  if (!a.is_array()) spec_fail("/adjacency", "expected a square matrix");
  const std::size_t n = a.size();
  std::vector<std::uint32_t> adj;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string p = "/adjacency/" + std::to_string(i);
    if (!a[i].is_array() || a[i].size() != n) spec_fail(p, "row length differs from the row count");
    for (std::size_t j = 0; j < n; ++j)
      adj.push_back(static_cast<std::uint32_t>(as_count(a[i][j], p + "/" + std::to_string(j))));
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    const json& l = doc["labels"];
    if (!l.is_array() || l.size() != n) spec_fail("/labels", "expected one label per vertex");
    for (const auto& x : l) labels.push_back(x.is_string() ? x.get<std::string>() : x.dump());
  }
  return RegularMultigraph(n, std::move(adj), Provenance{GraphClass::explicit_matrix, "adjacency", std::move(labels)});
}

inline std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

/// Builds the instance described by a parsed document. A report document is
/// accepted too: its embedded spec is used.
inline LoadedSpec load_spec(json doc) {
  if (!doc.is_object()) detail::spec_fail("", "expected a JSON object");
  if (doc.contains("report") && doc.contains("spec")) doc = doc["spec"];
  if (!doc.is_object()) detail::spec_fail("/spec", "expected a JSON object");
  if (doc.contains("schema_version")) {
    const json& v = doc["schema_version"];
    if (!v.is_number_integer() || v.get<int>() != kSchemaVersion)
      detail::spec_fail("/schema_version", "unsupported schema version");
  } else {
    doc["schema_version"] = kSchemaVersion;
  }
  const json& fam = detail::require(doc, "family", "");
  if (!fam.is_string()) detail::spec_fail("/family", "expected a string");
  LoadedSpec out{doc, fam.get<std::string>(), doc.value("name", fam.get<std::string>()),
                 Instance{"", RegularMultigraph(2, {1, 0, 0, 1}), std::nullopt}, {}};
  if (doc.contains("caps")) {
    const json& c = doc["caps"];
    if (!c.is_object()) detail::spec_fail("/caps", "expected an object");
    if (c.contains("subset")) out.caps.subset = detail::as_count(c["subset"], "/caps/subset");
    if (c.contains("ternary")) out.caps.ternary = detail::as_count(c["ternary"], "/caps/ternary");
  }
  const std::string& f = out.family;
  if (f == "adjacency") {
    out.instance = Instance{out.name, detail::parse_adjacency(doc), std::nullopt};
    return out;
  }
  const GroupDescriptor desc = detail::parse_group(detail::require(doc, "group", ""), "/group");
  GroupPtr g = std::make_shared<const GroupTable>(build_group(desc));
  if (f == "action_graph") {
    std::vector<std::string> labels;
    GroupAction act = detail::parse_action(g, doc, labels);
    auto gr = from_action_graph(act, detail::parse_base_edges(doc), labels);
    out.instance = Instance{out.name, std::move(gr), std::move(act)};
    return out;
  }
  const ConnectionSet s = detail::parse_connection_set(*g, doc);
  std::optional<RegularMultigraph> gr;
  if (f == "cayley") {
    gr = cayley(*g, s);
  } else if (f == "cayley_sum") {
    gr = cayley_sum(*g, s);
  } else if (f == "twisted_cayley") {
    gr = twisted_cayley(*g, s, detail::parse_automorphism(*g, doc));
  } else if (f == "twisted_cayley_sum") {
    gr = twisted_cayley_sum(*g, s, detail::parse_automorphism(*g, doc));
  } else {
    detail::spec_fail("/family", "unknown family '" + f + "'");
  }
  out.instance = Instance{out.name, std::move(*gr), left_regular_action(g)};
  return out;
}

/// Parses JSON text; syntax errors carry the line and column.
inline LoadedSpec load_spec_text(const std::string& text, const std::string& origin = "<spec>") {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = detail::line_col(text, e.byte);
    fail(Errc::spec_error, origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
  try {
    return load_spec(std::move(doc));
  } catch (const json::exception& e) {
    fail(Errc::spec_error, origin + ": " + e.what());
  }
}

/// FNV-1a 64 digest of n and the row-major adjacency, vertices ordered by
/// label (ties by index). Rendered as 16 hex digits.
inline std::string canonical_hash(const RegularMultigraph& gr) {
  const std::size_t n = gr.n();
  const auto& labels = gr.provenance().vertex_labels;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  feed(n);
  for (auto u : order)
    for (auto v : order) feed(gr.adj(u, v));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Rendering

/// Exact integer when it fits in 64 bits, decimal string otherwise.
inline json big_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline json rational_json(const Rational& r) {
  return {{"num", big_json(r.num())}, {"den", big_json(r.den())}, {"text", r.str()}, {"decimal", r.decimal(12)}};
}

inline json witness_json(const CutWitness& w) {
  if (w.kind == CutWitness::Kind::subset) return {{"subset", vertices_of(w.subset)}};
  return {{"left", vertices_of(w.left)}, {"right", vertices_of(w.right)}};
}

inline json quantity_json(const Quantity& q) {
  if (q.exact) return rational_json(*q.exact);
  return {{"decimal", q.approx}};
}

inline json check_json(const CheckReport& c) {
  json j{{"check_id", c.check_id},
         {"hypothesis_ok", c.hypothesis_ok},
         {"verdict", std::string(to_string(c.verdict))},
         {"note", c.note}};
  if (c.verdict != Verdict::inapplicable || c.lhs.exact || c.lhs.approx != 0) {
    j["lhs"] = quantity_json(c.lhs);
    j["rhs"] = quantity_json(c.rhs);
    j["margin"] = c.exact_margin ? rational_json(*c.exact_margin) : json{{"decimal", c.margin}};
  }
  if (c.witness) j["witness"] = witness_json(*c.witness);
  return j;
}

inline json spectrum_json(const SpectrumReport& s) {
  return {{"eigenvalues", s.eigenvalues}, {"mu2", s.mu2},           {"mu_n", s.mun},
          {"upper_gap", s.upper_gap},     {"lower_gap", s.lower_gap}, {"residual", s.residual}};
}

inline json report_json(const LoadedSpec& spec, const InstanceReport& r) {
  const RegularMultigraph& gr = spec.instance.graph;
  json j;
  j["schema_version"] = kSchemaVersion;
  j["report"] = "analysis";
  j["spec"] = spec.document;
  j["graph"] = {{"family", spec.family},
                {"name", spec.name},
                {"class", std::string(to_string(gr.graph_class()))},
                {"description", gr.provenance().description},
                {"parameters", spec.document.contains("group") ? spec.document["group"] : json(nullptr)},
                {"n", gr.n()},
                {"d", gr.d()},
                {"bipartite", r.bipartite},
                {"hash", canonical_hash(gr)},
                {"vertex_labels", gr.provenance().vertex_labels}};
  j["status"] = r.status == InstanceStatus::ok ? "ok" : r.status == InstanceStatus::skipped ? "skipped" : "error";
  if (!r.error.empty()) j["error"] = r.error;
  if (r.constants) {
    const Constants& c = *r.constants;
    auto entry = [](const Optimum& o) {
      json e = rational_json(o.value);
      e["witness"] = witness_json(o.witness);
      return e;
    };
    j["constants"] = {{"edge_cheeger", entry(c.edge_cheeger)},
                      {"vertex_cheeger", entry(c.vertex_cheeger)},
                      {"beta_edge", entry(c.beta_edge)},
                      {"beta_vert", entry(c.beta_vert)},
                      {"square_edge_cheeger", entry(c.square_cheeger)}};
  }
  if (r.spectrum) j["spectrum"] = spectrum_json(*r.spectrum);
  j["hypotheses"] = json::array();
  for (const auto& h : r.hypotheses) j["hypotheses"].push_back({{"id", h.id}, {"expected", h.expected}, {"holds", h.holds}});
  j["checks"] = json::array();
  for (const auto& c : r.checks) j["checks"].push_back(check_json(c));
  json t = json::object();
  if (r.ratios.edge) t["edge"] = rational_json(*r.ratios.edge);
  if (r.ratios.vert) t["vert"] = rational_json(*r.ratios.vert);
  if (r.ratios.square) t["square"] = rational_json(*r.ratios.square);
  j["tightness"] = t;
  json timing = json::object();
  for (const auto& [stage, secs] : r.timings) timing[stage] = secs;
  j["timing_seconds"] = timing;
  return j;
}

// CSV: one row per instance, fixed columns.

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "family",        "name",          "n",          "d",           "status",        "h_edge_num",
      "h_edge_den",    "h_vert_num",    "h_vert_den", "beta_edge_num", "beta_edge_den", "beta_vert_num",
      "beta_vert_den", "h_square_num",  "h_square_den", "mu2",       "mu_n",          "ratio_edge",
      "ratio_vert",    "ratio_square",  "verdicts"};
  return cols;
}

inline std::string csv_header() {
  std::string out;
  for (const auto& c : csv_columns()) out += (out.empty() ? "" : ",") + c;
  return out;
}

inline std::string format_fixed(double x, int digits) {
  if (std::abs(x) < 0.5 * std::pow(10.0, -digits)) x = 0.0;  // no "-0.000"
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

inline std::string csv_row(const std::string& family, const InstanceReport& r) {
  std::vector<std::string> f{family, r.name, std::to_string(r.n), std::to_string(r.d)};
  f.push_back(r.status == InstanceStatus::ok ? "ok" : r.status == InstanceStatus::skipped ? "skipped" : "error");
  auto frac = [&](const Rational* q) {
    f.push_back(q ? q->num().str() : "");
    f.push_back(q ? q->den().str() : "");
  };
  const Constants* c = r.constants ? &*r.constants : nullptr;
  frac(c ? &c->edge_cheeger.value : nullptr);
  frac(c ? &c->vertex_cheeger.value : nullptr);
  frac(c ? &c->beta_edge.value : nullptr);
  frac(c ? &c->beta_vert.value : nullptr);
  frac(c ? &c->square_cheeger.value : nullptr);
  f.push_back(r.spectrum ? format_fixed(r.spectrum->mu2, 9) : "");
  f.push_back(r.spectrum ? format_fixed(r.spectrum->mun, 9) : "");
  for (const auto* q : {&r.ratios.edge, &r.ratios.vert, &r.ratios.square})
    f.push_back(*q ? (*q)->decimal(12) : "");
  std::string verdicts;
  for (const auto& ch : r.checks) verdicts += (verdicts.empty() ? "" : ";") + ch.check_id + "=" + std::string(to_string(ch.verdict));
  for (const auto& h : r.hypotheses)
    if (h.expected && !h.holds) verdicts += (verdicts.empty() ? "" : ";") + h.id + "=violated";
  f.push_back(verdicts);
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + f[i];
  return out;
}

}  // namespace isoperim
