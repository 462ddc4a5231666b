#include "cremona/lattice/position.hpp"

#include "cremona/errors.hpp"

namespace cremona {

std::string CurveWitness::describe(const GPicardLattice& l) const {
  return label + " = " + class_to_string(cls, l.labels) + " (D^2 = " + to_string(square) + ", -K.D = " +
         to_string(degree) + ")";
}

int curve_multiplicity(const CurveSpec& c, const SurfacePoint& p) {
  if (!curve_contains(c, p)) return 0;
  const auto& m = surface_model(c.model);
  std::vector<Polynomial> eqs = m.equations;
  eqs.insert(eqs.end(), c.equations.begin(), c.equations.end());
  CMatrix jac(eqs.size(), m.arity());
  for (std::size_t i = 0; i < eqs.size(); ++i)
    for (std::size_t v = 0; v < m.arity(); ++v) jac(i, v) = eqs[i].derivative(v).evaluate(p.coords);
  std::size_t ambient = 0;
  for (auto f : m.factors) ambient += f - 1;
  return jac.rank() + 1 >= ambient ? 1 : 2;
}

std::vector<CurveWitness> strict_transforms(const GPicardLattice& l, const std::vector<CurveSpec>& curves) {
  if (!l.model) throw PreconditionViolation("lattice " + l.name + " has no model");
  if (l.blown_points.size() + l.base_rank != l.rank())
    throw PreconditionViolation("strict transforms need every exceptional class to sit over a known point");
  std::vector<CurveWitness> out;
  for (const auto& c : curves) {
    if (c.model != *l.model) throw PreconditionViolation("curve " + c.label + " is on another model");
    CurveWitness w;
    w.label = c.label;
    w.cls = l.extend(make_class(c.lattice_class));
    for (std::size_t i = 0; i < l.blown_points.size(); ++i) {
      const int mult = curve_multiplicity(c, l.blown_points[i]);
      if (mult == 0) continue;
      w.cls[l.base_rank + i] -= mult;
      w.through.push_back(i);
    }
    w.square = l.square(w.cls);
    w.degree = l.degree(w.cls);
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<CurveWitness> minus_two_effective_candidates(const GPicardLattice& l, const std::vector<CurveSpec>& curves) {
  std::vector<CurveWitness> out;
  for (auto& w : strict_transforms(l, curves))
    if (w.square < -1 || sgn(w.degree) <= 0) out.push_back(std::move(w));
  return out;
}

}  // namespace cremona
