#pragma once

// Subcommand implementations behind tools/isoperim. Reports go to `out`,
// diagnostics to `err`.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "isoperim/families.hpp"
#include "isoperim/harness.hpp"
#include "isoperim/spec_io.hpp"
#include "isoperim/spectral.hpp"

namespace isoperim::cli {

enum ExitCode : int { ok = 0, check_failed = 1, spec_error = 2, cap_exceeded = 3, internal = 4 };

struct Options {
  std::string spec;
  std::string out;  // empty: standard output
  std::string format;  // analyze: json (default) or csv; spectrum: text (default) or json
  std::string family;
  std::size_t min = 0;
  std::size_t max = 0;
  unsigned jobs = 1;
  std::optional<std::size_t> subset_cap;
  std::optional<std::size_t> ternary_cap;
  std::uint64_t seed = 1;
  bool corrupt_adjacency = false;  // debug: apply a 2-switch before analysis
};

inline int exit_code_for(Errc e) {
  switch (e) {
    case Errc::too_large:
    case Errc::closure_too_large:
      return cap_exceeded;
    case Errc::internal_error:
    case Errc::no_convergence:
    case Errc::not_symmetric:
      return internal;
    default:
      return spec_error;
  }
}

/// Replaces edges {a,b}, {c,e} by {a,c}, {b,e} for the first such pair with
/// four distinct endpoints. Degrees are unchanged.
inline RegularMultigraph two_switch(const RegularMultigraph& gr) {
  const std::size_t n = gr.n();
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) {
      if (gr.adj(a, b) == 0) continue;
      for (Vertex c = a + 1; c < n; ++c)
        for (Vertex e = c + 1; e < n; ++e) {
          if (c == b || e == b || gr.adj(c, e) == 0) continue;
          auto m = gr.matrix();
          auto bump = [&](Vertex x, Vertex y, int delta) {
            m[x * n + y] += delta;
            m[y * n + x] += delta;
          };
          bump(a, b, -1);
          bump(c, e, -1);
          bump(a, c, +1);
          bump(b, e, +1);
          return RegularMultigraph(n, std::move(m), gr.provenance());
        }
    }
  fail(Errc::spec_error, "graph has no pair of disjoint edges to switch");
}

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::spec_error, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline LoadedSpec load(const Options& opt) {
  if (opt.spec.empty()) fail(Errc::spec_error, "--spec is required");
  LoadedSpec s = load_spec_text(read_file(opt.spec), opt.spec);
  if (opt.subset_cap) s.caps.subset = *opt.subset_cap;
  if (opt.ternary_cap) s.caps.ternary = *opt.ternary_cap;
  s.caps.jobs = std::max(1u, opt.jobs);
  if (opt.corrupt_adjacency) s.instance.graph = two_switch(s.instance.graph);
  return s;
}

/// Writes to --out when given, otherwise to `out`.
inline void emit(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.out.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) fail(Errc::spec_error, "cannot write '" + opt.out + "'");
  f << text;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return internal;
  }
}

inline VerifyOptions verify_options(const Options& opt, const LoadedSpec& s) { return {s.caps, opt.seed}; }

}  // namespace detail

inline std::string format_spectrum_line(const std::vector<double>& eig) {
  std::string line;
  for (std::size_t i = 0; i < eig.size(); ++i) line += (i ? ", " : "") + format_fixed(eig[i], 9);
  return line;
}

inline int cmd_analyze(const Options& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const std::string fmt = opt.format.empty() ? "json" : opt.format;
    if (fmt != "json" && fmt != "csv") fail(Errc::spec_error, "--format must be json or csv");
    LoadedSpec s = detail::load(opt);
    InstanceReport r = verify_instance(s.instance, detail::verify_options(opt, s));
    if (r.error_code) {
      err << "error: " << r.error << "\n";
      return exit_code_for(*r.error_code);
    }
    if (fmt == "csv")
      detail::emit(opt, out, csv_header() + "\n" + csv_row(s.family, r) + "\n");
    else
      detail::emit(opt, out, report_json(s, r).dump(2) + "\n");
    return int{ok};
  });
}

inline constexpr int kCheckColumn = 36;

inline int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    LoadedSpec s = detail::load(opt);
    InstanceReport r = verify_instance(s.instance, detail::verify_options(opt, s));
    if (r.error_code) {
      err << "error: " << r.error << "\n";
      return exit_code_for(*r.error_code);
    }
    std::ostringstream t;
    t << std::left << std::setw(kCheckColumn) << "check" << std::setw(14) << "verdict" << std::setw(16) << "lhs"
      << std::setw(16) << "rhs"
      << "margin\n";
    std::vector<std::string> failed;
    for (const auto& c : r.checks) {
      t << std::setw(kCheckColumn) << c.check_id << std::setw(14) << to_string(c.verdict);
      if (c.verdict == Verdict::inapplicable)
        t << c.note << "\n";
      else
        t << std::setw(16) << c.lhs.str() << std::setw(16) << c.rhs.str() << format_fixed(c.margin, 9) << "\n";
      if (c.verdict == Verdict::fail) failed.push_back(c.check_id);
    }
    for (const auto& h : r.hypotheses) {
      const bool bad = h.expected && !h.holds;
      t << std::setw(kCheckColumn) << ("hypothesis:" + h.id) << (bad ? "violated" : h.holds ? "holds" : "absent") << "\n";
      if (bad) failed.push_back("hypothesis:" + h.id);
    }
    detail::emit(opt, out, t.str());
    if (failed.empty()) return int{ok};
    err << "failed:";
    for (const auto& f : failed) err << " " << f;
    err << "\n";
    return int{check_failed};
  });
}

inline int cmd_sweep(const Options& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (opt.family.empty()) fail(Errc::spec_error, "--family is required");
    auto family = family_instances(opt.family, opt.min, opt.max);
    VerifyOptions vo;
    if (opt.subset_cap) vo.caps.subset = *opt.subset_cap;
    if (opt.ternary_cap) vo.caps.ternary = *opt.ternary_cap;
    vo.seed = opt.seed;
    SweepReport rep = sweep(family, vo, std::max(1u, opt.jobs));
    std::string text = csv_header() + "\n";
    for (const auto& r : rep.instances) text += csv_row(opt.family, r) + "\n";
    if (!rep.instances.empty()) {
      const auto& m = rep.summary.min_ratios;
      auto show = [](const std::optional<Rational>& q) { return q ? q->str() + " (" + q->decimal(12) + ")" : std::string("n/a"); };
      text += "# instances=" + std::to_string(rep.summary.instances) + " skipped=" + std::to_string(rep.summary.skipped) +
              " failures=" + std::to_string(rep.summary.failures) + "\n";
      text += "# min_ratio_edge=" + show(m.edge) + "\n";
      text += "# min_ratio_vert=" + show(m.vert) + "\n";
      text += "# min_ratio_square=" + show(m.square) + "\n";
    }
    detail::emit(opt, out, text);
    for (const auto& r : rep.instances)
      if (r.status != InstanceStatus::ok) err << "skipped " << r.name << ": " << r.error << "\n";
    return rep.summary.failures ? int{check_failed} : int{ok};
  });
}

inline int cmd_decompose(const Options& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    LoadedSpec s = detail::load(opt);
    std::string text;
    for (const auto& p : birkhoff_decompose(s.instance.graph).perms) text += cycle_notation(p) + "\n";
    detail::emit(opt, out, text);
    return int{ok};
  });
}

inline int cmd_spectrum(const Options& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (!opt.format.empty() && opt.format != "text" && opt.format != "json")
      fail(Errc::spec_error, "--format must be text or json");
    LoadedSpec s = detail::load(opt);
    SpectrumReport r = normalized_spectrum(s.instance.graph);
    if (opt.format == "json") {
      detail::emit(opt, out, spectrum_json(r).dump(2) + "\n");
    } else {
      detail::emit(opt, out, format_spectrum_line(r.eigenvalues) + "\n");
    }
    return int{ok};
  });
}

}  // namespace isoperim::cli
