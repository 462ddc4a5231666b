#pragma once

#include <string>
#include <vector>

#include "cremona/algebra/matrix.hpp"
#include "cremona/geometry/model.hpp"

namespace cremona {

/// A pencil of plane sections of the quadric. The plane normal depends
/// linearly on a base parameter (s : t); `parameter_basis` turns (s, t) into
/// the coordinates used to report base points.
struct PencilSpec {
  std::string label;
  ModelId model = ModelId::X2_quadric;
  CMatrix normal_map;       // 4 x 2
  CMatrix parameter_basis;  // p x 2
  std::vector<std::string> members;
};

struct ReducibleFiber {
  std::vector<CycNum> base;  // normalized parameter coordinates
  SurfacePoint singular_point;
};

/// t0 (x+y+z) + t1 w = 0, generated by C1 and C0.
PencilSpec pencil_pi0();
/// u0 (x-y) + u1 (y-z) + u2 (z-x) = 0 with u0+u1+u2 = 0.
PencilSpec pencil_pi1();
/// The pencil of anticanonical curves on the torus model through P (twice),
/// P1 and P-1; recorded by its members only.
PencilSpec pencil_pi();

/// Fibers whose plane is tangent to the quadric, with the tangency point.
/// Throws PreconditionViolation unless the spec is a genuine conic pencil on
/// the quadric.
std::vector<ReducibleFiber> pencil_reducible_fibers(const PencilSpec& pencil);
/// Base locus of a conic pencil on the quadric.
std::vector<SurfacePoint> pencil_base_points(const PencilSpec& pencil);
/// Base coordinates of the fiber through p (p not a base point).
std::vector<CycNum> pencil_fiber_of(const PencilSpec& pencil, const SurfacePoint& p);

/// Image under g of the fiber with raw parameter (s, t), as a raw parameter
/// (normalized so the first nonzero entry is 1).
std::vector<CycNum> pencil_base_action(const PencilSpec& pencil, const GroupElem& g, const std::vector<CycNum>& st);
/// Elements mapping every fiber to itself.
Subgroup pencil_base_kernel(const PencilSpec& pencil);

}  // namespace cremona
