#pragma once

#include <string>
#include <vector>

#include "cremona/geometry/curves.hpp"
#include "cremona/lattice/picard.hpp"

namespace cremona {

/// Strict transform of a catalog curve on a blown-up lattice.
struct CurveWitness {
  std::string label;
  DivClass cls;
  Integer square = 0;
  Integer degree = 0;
  /// Indices (into blown_points) of the centres on the curve.
  std::vector<std::size_t> through;
  std::string describe(const GPicardLattice& lattice) const;
};

/// Multiplicity of a curve at a point: 0 off the curve, 1 at smooth points,
/// 2 at singular points (catalog curves have at worst nodes).
int curve_multiplicity(const CurveSpec& curve, const SurfacePoint& p);

/// Strict transforms of the curves on a lattice blown up at actual points.
std::vector<CurveWitness> strict_transforms(const GPicardLattice& lattice, const std::vector<CurveSpec>& curves);

/// Strict transforms that are effective roots (square -2, K.D = 0) or worse
/// (square below -2, or -K.D <= 0); any of them rules out a del Pezzo blow-up.
std::vector<CurveWitness> minus_two_effective_candidates(const GPicardLattice& lattice,
                                                         const std::vector<CurveSpec>& curves);

}  // namespace cremona
