#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isoperim {

enum class Errc {
  invalid_descriptor,
  closure_too_large,
  directed_result,
  not_regular,
  not_invariant,
  too_large,
  no_matching,
  not_symmetric,
  no_convergence,
  hypothesis_violated,
  inapplicable_bipartite,
  spec_error,
  internal_error,
};

constexpr std::string_view to_string(Errc e) {
  switch (e) {
    case Errc::invalid_descriptor: return "InvalidDescriptor";
    case Errc::closure_too_large: return "ClosureTooLarge";
    case Errc::directed_result: return "DirectedResult";
    case Errc::not_regular: return "NotRegular";
    case Errc::not_invariant: return "NotInvariant";
    case Errc::too_large: return "TooLarge";
    case Errc::no_matching: return "NoMatching";
    case Errc::not_symmetric: return "NotSymmetric";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::hypothesis_violated: return "HypothesisViolated";
    case Errc::inapplicable_bipartite: return "InapplicableBipartite";
    case Errc::spec_error: return "SpecError";
    case Errc::internal_error: return "InternalError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace isoperim
