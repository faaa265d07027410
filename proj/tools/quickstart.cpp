// Builds the Petersen graph as an orbit graph of S5 on 2-subsets and prints
// its constants and the theorem checks.

#include <iostream>

#include "isoperim/harness.hpp"

using namespace isoperim;

int main() {
  auto s5 = std::make_shared<const GroupTable>(build_group(GroupDescriptor::symmetric(5)));
  GroupAction pairs = action_on_k_subsets(s5, 2);
  // {0,1} -- {2,3}: disjoint pairs are adjacent.
  RegularMultigraph petersen = from_action_graph(pairs, {{0, 7}});

  InstanceReport r = verify_instance({"petersen", petersen, pairs});
  const Constants& c = *r.constants;
  std::cout << "n=" << r.n << " d=" << r.d << "\n"
            << "edge Cheeger      " << c.edge_cheeger.value.str() << "\n"
            << "vertex Cheeger    " << c.vertex_cheeger.value.str() << "\n"
            << "beta_edge         " << c.beta_edge.value.str() << "\n"
            << "beta_vert         " << c.beta_vert.value.str() << "\n"
            << "mu_2, mu_n        " << r.spectrum->mu2 << ", " << r.spectrum->mun << "\n";
  for (const auto& check : r.checks) std::cout << check.check_id << ": " << to_string(check.verdict) << "\n";
  return r.any_failure() ? 1 : 0;
}
