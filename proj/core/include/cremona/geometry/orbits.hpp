#pragma once

#include <string>
#include <vector>

#include "cremona/algebra/group.hpp"
#include "cremona/geometry/model.hpp"

namespace cremona {

struct Orbit {
  std::vector<SurfacePoint> points;  // sorted
  Subgroup stabilizer;               // of points.front()

  std::size_t length() const { return points.size(); }
  bool contains(const SurfacePoint& p) const;
  friend bool operator==(const Orbit& a, const Orbit& b) { return a.points == b.points; }
};

/// Throws UndefinedImage if the action is not regular at p.
Orbit orbit_of(const SurfacePoint& p);
Subgroup stabilizer_of(const SurfacePoint& p);

struct FixedLocus {
  ModelId model;
  Subgroup group;
  std::vector<SurfacePoint> points;
  std::vector<std::string> components;  // positive-dimensional pieces
  std::vector<std::string> unresolved;  // candidates not reduced to Q(w)-points

  bool complete() const { return components.empty() && unresolved.empty(); }
};

/// Points fixed by every element of H. Linear models: common eigenspaces
/// intersected with the surface; torus: stratified monomial equations.
/// Throws PreconditionViolation for X0, whose Z2 action is birational.
FixedLocus fixed_locus(ModelId model, const Subgroup& h);

struct OrbitEnumeration {
  ModelId model;
  int max_length = 0;
  std::vector<Orbit> orbits;  // ordered by (length, points)
  bool complete = true;
  /// One line per length explaining why the list is exhaustive.
  std::vector<std::string> certificates;
  /// Reasons for an incomplete result.
  std::vector<std::string> flags;

  std::vector<Orbit> of_length(std::size_t d) const;
};

/// All orbits of length <= max_length, built from fixed loci of the subgroups
/// of order 12/d. Throws PreconditionViolation if max_length > 12 or the model
/// action is not regular.
OrbitEnumeration enumerate_orbits(ModelId model, int max_length);

}  // namespace cremona
