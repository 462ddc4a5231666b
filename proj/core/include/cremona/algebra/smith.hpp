#pragma once

#include <vector>

#include "cremona/algebra/matrix.hpp"

namespace cremona {

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_r,
/// all diagonal entries non-negative.
struct SmithForm {
  ZMatrix U;
  ZMatrix D;
  ZMatrix V;
  std::size_t rank = 0;

  std::vector<Integer> invariant_factors() const;
};

SmithForm smith_normal_form(const ZMatrix& a);

/// Integral basis (as columns) of {x in Z^n : A x = 0}. Always saturated.
std::vector<std::vector<Integer>> integer_kernel(const ZMatrix& a);

}  // namespace cremona
