#include "seqode/problem_class.hpp"

#include <sstream>

namespace seqode {

namespace {

void check_sequence(const Sequence& seq, const char* name) {
  require(static_cast<bool>(seq), std::string("class params: missing ") + name);
  double previous = seq(1.0);
  for (int e = 0; e <= 20; ++e) {
    const double k = std::ldexp(1.0, e);
    const double value = seq(k);
    if (!(std::isfinite(value) && value > 0.0) || value > previous) {
      std::ostringstream msg;
      msg << "class params: " << name << "(" << k << ") = " << value
          << " is not positive and nonincreasing";
      throw ValidationError(msg.str());
    }
    previous = value;
  }
}

}  // namespace

void validate(const ClassParams& params) {
  require(params.L > 0.0, "class params: L must be positive");
  require(params.M > 0.0, "class params: M must be positive");
  require(params.D > 0.0, "class params: D must be positive");
  require(params.r >= 0, "class params: r must be nonnegative");
  require(params.a < params.b, "class params: need a < b");
  check_sequence(params.gamma, "gamma");
  check_sequence(params.delta, "delta");
}

}  // namespace seqode
