#pragma once

#include <optional>
#include <vector>

#include "cremona/geometry/model.hpp"
#include "cremona/geometry/pencil.hpp"
#include "cremona/geometry/solver.hpp"

namespace cremona {

/// The equivariant birational map from the torus to the quadric that blows
/// up P and contracts Gamma_x, Gamma_y, Gamma_z. Defined on affine torus
/// points; nullopt where all four coordinates vanish (the point P).
std::optional<SurfacePoint> torus_to_quadric(const CycNum& x, const CycNum& y, const CycNum& z);

/// Projection of the quadric from P1 = (1,1,1,1) to the plane w = 0, written
/// in (x, y, z). Throws UndefinedImage at P1.
std::vector<CycNum> project_from_p1(const SurfacePoint& p);
/// Inverse of the projection; nullopt on the exceptional locus.
std::optional<SurfacePoint> unproject_to_quadric(const std::vector<CycNum>& q);

/// Singular points of the cubic X1, as exact common zeros of the equation
/// and its partial derivatives.
ProjectiveSolution x1_singular_locus();

}  // namespace cremona
