#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cremona/algebra/matrix.hpp"
#include "cremona/geometry/polynomial.hpp"

namespace cremona {

/// The zero set of `equations` inside the projective span of the columns of
/// `basis`; only emitted when it was not reduced to points.
struct SolverComponent {
  CMatrix basis;
  std::vector<Polynomial> equations;  // in the basis parameters
  std::string describe() const;
};

/// Common zeros of homogeneous polynomials in a projective space. Points are
/// exact and normalized (first nonzero entry 1); anything the solver cannot
/// reduce to points over Q(w) is listed, never dropped.
struct ProjectiveSolution {
  std::vector<std::vector<CycNum>> points;
  std::vector<SolverComponent> components;
  std::vector<std::string> unresolved;

  bool complete() const { return components.empty() && unresolved.empty(); }
};

/// Zeros of the (ambient) homogeneous `equations` inside span(basis), where
/// basis is ambient x k. Splits on monomial, linear and rank <= 2 quadratic
/// factors; binary forms are solved through gcd and the discriminant.
ProjectiveSolution solve_projective(const std::vector<Polynomial>& equations, const CMatrix& basis);
ProjectiveSolution solve_projective(const std::vector<Polynomial>& equations);

/// Roots (s : t) of A s^2 + B s t + C t^2, or nullopt if they leave Q(w).
/// Throws PreconditionViolation on the zero form.
std::optional<std::vector<std::pair<CycNum, CycNum>>> binary_quadratic_roots(const CycNum& a, const CycNum& b,
                                                                             const CycNum& c);

/// Scales a nonzero vector so its first nonzero entry is 1.
std::vector<CycNum> normalize_projective(std::vector<CycNum> v);

}  // namespace cremona
