#include "cremona/lattice/rays.hpp"

#include <algorithm>

#include "cremona/errors.hpp"
#include "cremona/lattice/classes.hpp"

namespace cremona {

ExtremalRay classify_ray(const GPicardLattice& l, std::vector<DivClass> classes, const Integer& slope) {
  std::sort(classes.begin(), classes.end());
  ExtremalRay ray;
  ray.classes = classes;
  ray.slope = slope;
  const std::size_t n = classes.size();
  bool disjoint = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (sgn(l.dot(classes[i], classes[j])) != 0) disjoint = false;
  if (disjoint) {
    ray.kind = RayKind::Birational;
    ray.target_k_squared = l.k_squared() + Integer(static_cast<long>(n));
    return ray;
  }
  // Each class must meet exactly one partner once, and every pair must sum
  // to the same square-zero class.
  std::optional<DivClass> fiber;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t partners = 0;
    std::size_t partner = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Integer p = l.dot(classes[i], classes[j]);
      if (p == 1) {
        ++partners;
        partner = j;
      } else if (sgn(p) != 0) {
        partners = 2;
      }
    }
    if (partners != 1) return ray;
    DivClass f = classes[i] + classes[partner];
    if (fiber && *fiber != f) return ray;
    fiber = f;
  }
  if (!fiber || sgn(l.square(*fiber)) != 0) return ray;
  for (const auto& g : group_all())
    if (l.act(g, *fiber) != *fiber) return ray;
  ray.kind = RayKind::ConicBundle;
  ray.fiber = fiber;
  return ray;
}

RayPair extremal_rays(const GPicardLattice& l, const DivClass& s) {
  if (invariant_sublattice(l).size() != 2) throw PreconditionViolation("extremal rays need an invariant sublattice of rank 2");
  for (const auto& g : group_all())
    if (l.act(g, s) != s) throw PreconditionViolation("exceptional sum is not invariant");
  const auto minus_one = minus_one_classes(l);
  if (minus_one.empty()) throw PreconditionViolation("no (-1)-classes on " + l.name);
  Integer lo = l.dot(s, minus_one.front());
  Integer hi = lo;
  for (const auto& d : minus_one) {
    const Integer v = l.dot(s, d);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo == hi) throw PreconditionViolation("invariant cone is degenerate");
  std::vector<DivClass> low, high;
  for (const auto& d : minus_one) {
    const Integer v = l.dot(s, d);
    if (v == lo) low.push_back(d);
    if (v == hi) high.push_back(d);
  }
  return {classify_ray(l, low, lo), classify_ray(l, high, hi)};
}

}  // namespace cremona
