#include "cremona/geometry/orbits.hpp"

#include <algorithm>
#include <set>

#include "cremona/errors.hpp"
#include "cremona/geometry/solver.hpp"
#include "cremona/geometry/torus.hpp"

namespace cremona {

namespace {

// Splits every subspace along the eigenspaces of m; eigenvalues of finite
// order matrices here are sixth roots of unity.
std::vector<CMatrix> refine_by_eigenspaces(const std::vector<CMatrix>& spaces, const CMatrix& m) {
  std::vector<CMatrix> out;
  const std::size_t n = m.rows();
  for (const auto& basis : spaces) {
    for (int k = 0; k < 6; ++k) {
      CMatrix shifted = m - CycNum::sixth_root(k) * CMatrix::identity(n);
      auto ker = (shifted * basis).nullspace();
      if (ker.empty()) continue;
      out.push_back(basis * CMatrix::from_columns(ker, basis.cols()));
    }
  }
  return out;
}

FixedLocus linear_fixed_locus(ModelId model, const Subgroup& h) {
  const auto& m = surface_model(model);
  const std::size_t n = m.arity();
  std::vector<CMatrix> spaces{CMatrix::identity(n)};
  for (const auto& g : h.elements) {
    if (g.is_identity()) continue;
    spaces = refine_by_eigenspaces(spaces, *linear_action(model, g));
  }
  FixedLocus out{model, h, {}, {}, {}};
  std::set<SurfacePoint> points;
  for (const auto& basis : spaces) {
    ProjectiveSolution sol = solve_projective(m.equations, basis);
    for (auto& p : sol.points) points.insert(SurfacePoint{model, normalize_coords(model, p)});
    for (const auto& c : sol.components) out.components.push_back(c.describe());
    for (const auto& u : sol.unresolved) out.unresolved.push_back(u);
  }
  out.points.assign(points.begin(), points.end());
  return out;
}

}  // namespace

bool Orbit::contains(const SurfacePoint& p) const {
  return std::binary_search(points.begin(), points.end(), p);
}

Subgroup stabilizer_of(const SurfacePoint& p) {
  std::vector<GroupElem> stab;
  for (const auto& g : group_all())
    if (act(g, p) == p) stab.push_back(g);
  return make_subgroup(std::move(stab));
}

Orbit orbit_of(const SurfacePoint& p) {
  std::set<SurfacePoint> pts;
  for (const auto& g : group_all()) pts.insert(act(g, p));
  Orbit o;
  o.points.assign(pts.begin(), pts.end());
  o.stabilizer = stabilizer_of(o.points.front());
  return o;
}

FixedLocus fixed_locus(ModelId model, const Subgroup& h) {
  if (model == ModelId::X0_cubic)
    throw PreconditionViolation("the Z2 action on X0 is birational; fixed loci are computed on the other models");
  if (model == ModelId::X_torus) {
    TorusLocus t = torus_solve({}, h);
    return FixedLocus{model, h, std::move(t.points), std::move(t.components), std::move(t.unresolved)};
  }
  return linear_fixed_locus(model, h);
}

std::vector<Orbit> OrbitEnumeration::of_length(std::size_t d) const {
  std::vector<Orbit> out;
  for (const auto& o : orbits)
    if (o.length() == d) out.push_back(o);
  return out;
}

OrbitEnumeration enumerate_orbits(ModelId model, int max_length) {
  if (max_length > 12) throw PreconditionViolation("orbit lengths are bounded by |G| = 12");
  if (model == ModelId::X0_cubic) throw PreconditionViolation("orbit enumeration needs a regular action");
  OrbitEnumeration out{model, max_length, {}, true, {}, {}};
  std::set<std::vector<SurfacePoint>> seen;
  for (int d = 1; d <= max_length; ++d) {
    if (12 % d != 0) {
      out.certificates.push_back("d=" + std::to_string(d) + ": " + std::to_string(d) +
                                 " does not divide 12, so no orbit has this length");
      continue;
    }
    auto subgroups = subgroups_of_order(12 / d);
    std::size_t found = 0;
    std::string basis;
    for (const auto& h : subgroups) {
      FixedLocus fl = fixed_locus(model, h);
      if (!fl.complete()) {
        out.complete = false;
        for (const auto& c : fl.components) out.flags.push_back("d=" + std::to_string(d) + " " + h.name() + ": component " + c);
        for (const auto& u : fl.unresolved) out.flags.push_back("d=" + std::to_string(d) + " " + h.name() + ": unresolved " + u);
      }
      std::size_t exact = 0;
      for (const auto& p : fl.points) {
        Orbit o = orbit_of(p);
        if (o.length() != static_cast<std::size_t>(d)) continue;
        ++exact;
        if (seen.insert(o.points).second) {
          out.orbits.push_back(std::move(o));
          ++found;
        }
      }
      if (!basis.empty()) basis += "; ";
      basis += "Fix" + h.name() + " has " + std::to_string(fl.points.size()) + " point(s), " +
               std::to_string(exact) + " with stabilizer exactly this subgroup";
    }
    out.certificates.push_back("d=" + std::to_string(d) + ": " + std::to_string(subgroups.size()) +
                               " subgroup(s) of order " + std::to_string(12 / d) + " [" + basis + "] -> " +
                               std::to_string(found) + " orbit(s)");
  }
  if (model == ModelId::X_torus) {
    auto sizes = boundary_stratum_orbit_sizes();
    std::size_t smallest = *std::min_element(sizes.begin(), sizes.end());
    out.certificates.push_back("boundary: " + std::to_string(sizes.size()) +
                               " G-orbits of boundary strata, smallest of size " + std::to_string(smallest) +
                               "; boundary points lie in orbits of length >= " + std::to_string(smallest));
  }
  if (model == ModelId::X2_quadric)
    out.certificates.push_back("coverage: fixed loci are solved on all of P^3, including the plane w=0 carrying C0");
  std::sort(out.orbits.begin(), out.orbits.end(), [](const Orbit& a, const Orbit& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.points < b.points;
  });
  return out;
}

}  // namespace cremona
