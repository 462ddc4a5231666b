#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cremona/geometry/model.hpp"
#include "cremona/geometry/orbits.hpp"
#include "cremona/geometry/polynomial.hpp"

namespace cremona {

/// A curve on a model, cut out by `equations` together with the model's own
/// equations. `lattice_class` is expressed in the model's Picard basis:
/// (h, e1, e2, e3) on the torus model, (f1, f2) on the quadric.
struct CurveSpec {
  std::string label;
  ModelId model;
  std::vector<Polynomial> equations;
  std::vector<long> lattice_class;
};

bool curve_contains(const CurveSpec& c, const SurfacePoint& p);

/// Image curve g(C); the label is kept.
CurveSpec act_on_curve(const GroupElem& g, const CurveSpec& c);
/// Equal ideals up to scaling each generator.
bool same_curve_equations(const CurveSpec& a, const CurveSpec& b);

/// Exact common points of two curves on the same model.
std::vector<SurfacePoint> curve_intersection(const CurveSpec& a, const CurveSpec& b);

// Torus model. Coordinates are indexed 0, 1, 2 for x, y, z.

/// The boundary line where coordinate `zero` vanishes and coordinate `pole`
/// is infinite, with its class in (h, e1, e2, e3).
CurveSpec boundary_line(int zero, int pole);
/// The six boundary lines in hexagon order.
std::vector<CurveSpec> boundary_lines();
/// Class of a boundary line; adjacent hexagon edges meet once.
std::vector<long> boundary_line_class(int zero, int pole);

/// Closure of {x^m = c} for a primitive character m; its class is the pole
/// divisor of the character, summed over the boundary lines.
CurveSpec binomial_curve(const std::string& label, const std::array<long, 3>& m, const CycNum& c);

/// Gamma_x: x = 1, and its images (y = 1, z = 1).
std::vector<CurveSpec> gamma_curves();
/// Delta_x: y = z, Delta_y: z = x, Delta_z: x = y.
std::vector<CurveSpec> delta_curves();
/// E_x: x = -1, and its images.
std::vector<CurveSpec> e_curves();

// Quadric model.

CurveSpec conic_c0();
CurveSpec conic_c1();
/// Tangent plane of the quadric at p (a linear form in x, y, z, w).
Polynomial quadric_tangent_plane(const SurfacePoint& p);
/// The two lines of the quadric through p, classes (1,0) or (0,1) by ruling.
std::vector<CurveSpec> quadric_lines_through(const SurfacePoint& p);
/// Ruling index (0 or 1) of a line, relative to a fixed reference line through P1.
int quadric_ruling(const CurveSpec& line);

// The plane model.

/// The invariant line u0 = 0.
CurveSpec line_l0();

/// Low-degree rational curves through the points of an orbit, with their
/// classes: the curve set used to certify general position.
std::vector<CurveSpec> position_catalog(const Orbit& orbit);

}  // namespace cremona
