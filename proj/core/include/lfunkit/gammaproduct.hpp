#pragma once

#include <vector>

#include "lfunkit/real.hpp"

namespace lfunkit {

// gamma(s) = f^(s/2) prod_j Gamma_R(s + b_j), integer shifts (motivic case)
struct GammaProduct {
  Real f = Real(1);
  std::vector<long> shifts;

  int degree() const { return static_cast<int>(shifts.size()); }
  long shift_sum() const {
    long s = 0;
    for (long b : shifts) s += b;
    return s;
  }
};

}  // namespace lfunkit
