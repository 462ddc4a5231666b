#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cremona/algebra/cycnum.hpp"
#include "cremona/algebra/group.hpp"
#include "cremona/algebra/matrix.hpp"
#include "cremona/geometry/polynomial.hpp"

namespace cremona {

enum class ModelId { Y_P2, X_torus, X0_cubic, X1_cubic, X2_quadric };

std::string model_name(ModelId id);
/// Throws PreconditionViolation on an unknown name.
ModelId parse_model_name(const std::string& name);

struct SurfaceModel {
  ModelId id;
  /// Sizes of the projective factors: {3}, {4} or {2, 2, 2}.
  std::vector<std::size_t> factors;
  std::vector<Polynomial> equations;
  std::vector<std::string> variables;

  std::size_t arity() const;
  bool is_multiprojective() const { return factors.size() > 1; }
  /// True when every group element acts by a projective linear map.
  bool action_is_linear() const;
};

const SurfaceModel& surface_model(ModelId id);

/// Normalized coordinate tuple: in every projective factor the first
/// nonzero entry equals 1.
struct SurfacePoint {
  ModelId model = ModelId::X_torus;
  std::vector<CycNum> coords;

  std::string to_string() const;
  friend bool operator==(const SurfacePoint&, const SurfacePoint&) = default;
  friend auto operator<=>(const SurfacePoint& a, const SurfacePoint& b) {
    if (a.model != b.model) return a.model <=> b.model;
    return a.coords <=> b.coords;
  }
};

/// Scales each projective factor; throws PreconditionViolation when a factor is zero.
std::vector<CycNum> normalize_coords(ModelId model, std::vector<CycNum> coords);

/// Builds a normalized point and checks membership; throws
/// PreconditionViolation when the tuple is not on the surface.
SurfacePoint make_point(ModelId model, std::vector<CycNum> coords);
/// Torus point from its affine coordinates (x, y, z) with xyz = 1.
SurfacePoint torus_point(const CycNum& x, const CycNum& y, const CycNum& z);
/// Affine (x, y, z) of a torus point off the boundary, nullopt otherwise.
std::optional<std::vector<CycNum>> torus_affine(const SurfacePoint& p);

/// Exact membership test; throws ArityMismatch or PreconditionViolation on
/// malformed input.
bool contains(ModelId model, const std::vector<CycNum>& coords);

/// Matrix of g on a linear model (acting on column vectors); nullopt for the
/// torus and for the birational realization on X0.
std::optional<CMatrix> linear_action(ModelId model, const GroupElem& g);

/// Image of p under g. Throws UndefinedImage at an indeterminacy point of a
/// birational realization.
SurfacePoint act(const GroupElem& g, const SurfacePoint& p);

/// Image of a hypersurface {f = 0} under g, as a polynomial in the same
/// variables (defined for the linear models and the torus).
Polynomial act_on_polynomial(ModelId model, const GroupElem& g, const Polynomial& f);

}  // namespace cremona
