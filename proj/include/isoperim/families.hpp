#pragma once

// Parametrised graph families for sweeps.

#include <string>
#include <string_view>
#include <vector>

#include "isoperim/error.hpp"
#include "isoperim/graph.hpp"
#include "isoperim/group.hpp"
#include "isoperim/harness.hpp"

namespace isoperim {

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {"odd-cycles", "cycles", "cayley-sum-cyclic", "dihedral"};
  return names;
}

/// Cayley graph of Z_n with S = {1, -1}.
inline Instance cycle_instance(std::size_t n) {
  auto g = std::make_shared<const GroupTable>(build_group(GroupDescriptor::cyclic(n)));
  auto gr = cayley(*g, ConnectionSet(*g, {1, static_cast<Element>(n - 1)}));
  return {"C" + std::to_string(n), std::move(gr), left_regular_action(g)};
}

/// Cayley sum graph of Z_n with S = {0, 1}.
inline Instance cayley_sum_cyclic_instance(std::size_t n) {
  auto g = std::make_shared<const GroupTable>(build_group(GroupDescriptor::cyclic(n)));
  auto gr = cayley_sum(*g, ConnectionSet(*g, {0, 1}));
  return {"sum(Z" + std::to_string(n) + ",{0,1})", std::move(gr), left_regular_action(g)};
}

/// Cayley graph of D_n with S = {r, r^-1, s}: two rotations and a reflection.
inline Instance dihedral_instance(std::size_t n) {
  auto g = std::make_shared<const GroupTable>(build_group(GroupDescriptor::dihedral(n)));
  std::vector<Element> s{1, static_cast<Element>(n - 1), static_cast<Element>(n)};
  auto gr = cayley(*g, ConnectionSet(*g, s));
  return {"cay(D" + std::to_string(n) + ",{r,r^-1,s})", std::move(gr), left_regular_action(g)};
}

/// Members of `family` with parameter in [lo, hi]; an empty range gives none.
inline std::vector<Instance> family_instances(std::string_view family, std::size_t lo, std::size_t hi) {
  std::vector<Instance> out;
  for (std::size_t n = lo; n <= hi && hi != 0; ++n) {
    if (family == "odd-cycles") {
      if (n >= 3 && n % 2 == 1) out.push_back(cycle_instance(n));
    } else if (family == "cycles") {
      if (n >= 3) out.push_back(cycle_instance(n));
    } else if (family == "cayley-sum-cyclic") {
      if (n >= 3) out.push_back(cayley_sum_cyclic_instance(n));
    } else if (family == "dihedral") {
      if (n >= 3) out.push_back(dihedral_instance(n));
    } else {
      fail(Errc::spec_error, "unknown family '" + std::string(family) + "'");
    }
  }
  if (lo > hi) {
    bool known = false;
    for (const auto& f : family_names()) known = known || f == family;
    if (!known) fail(Errc::spec_error, "unknown family '" + std::string(family) + "'");
  }
  return out;
}

}  // namespace isoperim
