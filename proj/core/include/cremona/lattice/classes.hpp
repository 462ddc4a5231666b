#pragma once

#include <vector>

#include "cremona/lattice/picard.hpp"

namespace cremona {

/// All classes D with D^2 = square and -K.D = degree. Requires K^2 > 0; the
/// search runs over the positive definite form 2(K.x)^2/K^2 - x^2, so the
/// result is complete. Sorted lexicographically.
std::vector<DivClass> classes_with(const GPicardLattice& lattice, long square, long degree);

/// The (-1)-classes: D^2 = -1, K.D = -1.
std::vector<DivClass> minus_one_classes(const GPicardLattice& lattice);
/// Roots: D^2 = -2, K.D = 0.
std::vector<DivClass> root_classes(const GPicardLattice& lattice);

/// Naive search over the box |coeff| <= bound; only for cross-checks.
std::vector<DivClass> classes_in_box(const GPicardLattice& lattice, long square, long degree, long bound);

}  // namespace cremona
