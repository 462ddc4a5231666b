#pragma once

#include <array>
#include <string>
#include <vector>

#include "cremona/algebra/group.hpp"
#include "cremona/algebra/rational.hpp"
#include "cremona/geometry/model.hpp"
#include "cremona/geometry/polynomial.hpp"

namespace cremona {

/// t^exponents = exp(2 pi i * angle), angle read modulo 1.
struct MonomialEquation {
  std::vector<long> exponents;
  Rational angle;
};

struct MonomialSolution {
  bool consistent = true;
  /// Dimension of the solution set as a union of subtorus cosets.
  std::size_t free_dimension = 0;
  /// Angle vectors in [0, 1)^n, one per solution (only when free_dimension is 0);
  /// with free directions, one representative per coset.
  std::vector<std::vector<Rational>> angles;
};

/// Solves a system of monomial equations on (C^*)^n through the Smith normal
/// form of the exponent matrix.
MonomialSolution solve_monomial_system(std::size_t nvars, const std::vector<MonomialEquation>& equations);

/// Type of a coordinate of (P^1)^3: 0, infinity, or a nonzero finite value.
enum class CoordType { Zero, Infinity, Free };
using TorusStratum = std::array<CoordType, 3>;

std::string stratum_name(const TorusStratum& s);
/// The open torus (all Free) followed by the boundary strata of X in a fixed order.
const std::vector<TorusStratum>& torus_strata();
TorusStratum stratum_of(const SurfacePoint& p);
TorusStratum act_on_stratum(const GroupElem& g, const TorusStratum& s);

/// Sizes of the G-orbits on the boundary strata; all equal 6, so no orbit of
/// length < 6 meets the boundary.
std::vector<std::size_t> boundary_stratum_orbit_sizes();

struct TorusLocus {
  std::vector<SurfacePoint> points;
  std::vector<std::string> components;
  std::vector<std::string> unresolved;
  bool complete() const { return components.empty() && unresolved.empty(); }
};

/// Points of X (in the multi-projective coordinates x1,x0,y1,y0,z1,z0) that
/// satisfy the given equations, each of at most two terms, and are fixed by
/// every element of `group`. Stratum by stratum, this reduces to monomial
/// equations with roots-of-unity right-hand sides.
TorusLocus torus_solve(const std::vector<Polynomial>& equations, const Subgroup& group);

}  // namespace cremona
