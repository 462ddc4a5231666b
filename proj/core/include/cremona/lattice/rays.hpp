#pragma once

#include <optional>
#include <vector>

#include "cremona/lattice/picard.hpp"

namespace cremona {

enum class RayKind {
  /// Pairwise disjoint (-1)-classes: a birational contraction.
  Birational,
  /// Pairs of (-1)-classes meeting once, all summing to one class of square 0.
  ConicBundle,
  Other,
};

struct ExtremalRay {
  /// (-1)-classes spanning the ray, sorted.
  std::vector<DivClass> classes;
  /// Value of (sum of exceptional classes).D, the same for every class above.
  Integer slope = 0;
  RayKind kind = RayKind::Other;
  /// Fibre class when kind == ConicBundle.
  std::optional<DivClass> fiber;
  /// K^2 after contracting the ray when kind == Birational.
  Integer target_k_squared = 0;
};

struct RayPair {
  ExtremalRay exceptional;
  ExtremalRay other;
};

/// The two extremal rays of the invariant cone of a del Pezzo surface whose
/// invariant sublattice has rank 2 and contains `exceptional_sum`. The cone is
/// read off in the coordinates (-K.D, S.D), S = exceptional_sum, where every
/// (-1)-class sits at height 1, so the rays are the extreme values of S.D.
RayPair extremal_rays(const GPicardLattice& lattice, const DivClass& exceptional_sum);

/// Classifies a G-stable set of (-1)-classes.
ExtremalRay classify_ray(const GPicardLattice& lattice, std::vector<DivClass> classes, const Integer& slope);

}  // namespace cremona
