#pragma once

#include <optional>
#include <vector>

#include "cremona/lattice/picard.hpp"

namespace cremona {

/// Geometry of one link as seen on the common resolution Z: the source blown
/// up at the centre, followed by the contraction of disjoint (-1)-classes.
struct ContractionData {
  GPicardLattice z;
  /// Exceptional classes over the centre.
  std::vector<DivClass> centre;
  /// Pullback of the source fibre class (conic bundle sources).
  std::optional<DivClass> source_fiber;
  /// Classes contracted to reach the target.
  std::vector<DivClass> contracted;
  /// Pullback of the target fibre class (conic bundle targets).
  std::optional<DivClass> target_fiber;
};

/// A linear system a(-K) + b f on the source with multiplicity r at each
/// point of the centre.
struct SourceSystem {
  Rational a = 0;
  Rational b = 0;
  Rational r = 0;
};

/// The transformed system a'(-K') + b' f' on the target; `multiplicity` is its
/// multiplicity at each image point of a contracted curve.
struct TargetSystem {
  Rational a = 0;
  Rational b = 0;
  Rational multiplicity = 0;
};

/// Class on Z of the source system.
std::vector<Rational> source_system_class(const ContractionData& data, const SourceSystem& sys);

/// Pushes the system through the link by solving
///   H_Z + sum m_j F_j = a'(-K_Z + sum F_j) + b' f',  m_j = H_Z.F_j,
/// exactly. Throws InconsistentContraction when the contracted classes are
/// not disjoint (-1)-classes, the m_j differ, or the system has no solution.
TargetSystem pushforward_system(const ContractionData& data, const SourceSystem& sys);

}  // namespace cremona
