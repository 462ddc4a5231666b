#include "cremona/geometry/pencil.hpp"

#include <algorithm>

#include "cremona/errors.hpp"
#include "cremona/geometry/solver.hpp"

namespace cremona {

namespace {

// Inverse of the quadric's Gram matrix: plane n is tangent iff n^T S^-1 n = 0.
CMatrix dual_quadric() {
  const Polynomial& f = surface_model(ModelId::X2_quadric).equations.front();
  return f.quadratic_form_matrix().inverse();
}

void require_conic_pencil(const PencilSpec& p) {
  if (p.model != ModelId::X2_quadric || p.normal_map.rows() != 4 || p.normal_map.cols() != 2)
    throw PreconditionViolation(p.label + " is not a pencil of plane sections of the quadric");
  if (p.normal_map.rank() != 2) throw PreconditionViolation(p.label + " is a single conic, not a pencil");
}

std::vector<CycNum> base_coordinates(const PencilSpec& p, const CycNum& s, const CycNum& t) {
  return normalize_projective(p.parameter_basis.apply({s, t}));
}

}  // namespace

PencilSpec pencil_pi0() {
  CMatrix n{{1, 0}, {1, 0}, {1, 0}, {0, 1}};
  return PencilSpec{"Pi0", ModelId::X2_quadric, n, CMatrix::identity(2), {"C1 at (1,0)", "C0 at (0,1)"}};
}

PencilSpec pencil_pi1() {
  // (u0, u1, u2) = s (1,-1,0) + t (0,1,-1).
  CMatrix basis{{1, 0}, {-1, 1}, {0, -1}};
  CMatrix n{{1, 1}, {-2, 1}, {1, -2}, {0, 0}};
  return PencilSpec{"Pi1", ModelId::X2_quadric, n, basis, {"x-y+... planes through P1 and P-1"}};
}

PencilSpec pencil_pi() {
  return PencilSpec{"Pi", ModelId::X_torus, CMatrix(), CMatrix(),
                    {"Gamma_x+Delta_x", "Gamma_y+Delta_y", "Gamma_z+Delta_z"}};
}

std::vector<ReducibleFiber> pencil_reducible_fibers(const PencilSpec& pencil) {
  require_conic_pencil(pencil);
  const CMatrix q = pencil.normal_map.transpose() * dual_quadric() * pencil.normal_map;
  if (q.is_zero_matrix()) throw PreconditionViolation(pencil.label + ": every member is tangent");
  auto roots = binary_quadratic_roots(q(0, 0), CycNum(2) * q(0, 1), q(1, 1));
  if (!roots) throw PreconditionViolation(pencil.label + ": tangency parameters leave Q(w)");
  const CMatrix sinv = dual_quadric();
  std::vector<ReducibleFiber> out;
  for (const auto& [s, t] : *roots) {
    auto normal = pencil.normal_map.apply({s, t});
    out.push_back({base_coordinates(pencil, s, t), make_point(ModelId::X2_quadric, sinv.apply(normal))});
  }
  std::sort(out.begin(), out.end(),
            [](const ReducibleFiber& a, const ReducibleFiber& b) { return a.singular_point < b.singular_point; });
  return out;
}

std::vector<SurfacePoint> pencil_base_points(const PencilSpec& pencil) {
  require_conic_pencil(pencil);
  std::vector<Polynomial> eqs = surface_model(ModelId::X2_quadric).equations;
  for (std::size_t c = 0; c < 2; ++c) eqs.push_back(Polynomial::linear(pencil.normal_map.column(c)));
  ProjectiveSolution sol = solve_projective(eqs);
  if (!sol.complete()) throw PreconditionViolation(pencil.label + ": base locus is not finite over Q(w)");
  std::vector<SurfacePoint> out;
  for (auto& p : sol.points) out.push_back(SurfacePoint{ModelId::X2_quadric, p});
  return out;
}

std::vector<CycNum> pencil_fiber_of(const PencilSpec& pencil, const SurfacePoint& p) {
  require_conic_pencil(pencil);
  const CycNum a = dot(pencil.normal_map.column(0), p.coords);
  const CycNum b = dot(pencil.normal_map.column(1), p.coords);
  if (a.is_zero() && b.is_zero()) throw PreconditionViolation("base point lies on every fiber");
  // s a + t b = 0
  return base_coordinates(pencil, b, -a);
}

std::vector<CycNum> pencil_base_action(const PencilSpec& pencil, const GroupElem& g, const std::vector<CycNum>& st) {
  require_conic_pencil(pencil);
  if (st.size() != 2) throw ArityMismatch("pencil parameter has two coordinates");
  const CMatrix m = *linear_action(pencil.model, g);
  // g maps {n.v = 0} to {n.(M^-1 v) = 0}, whose normal is M^-T n.
  const auto image = m.inverse().transpose().apply(pencil.normal_map.apply(st));
  const auto solved = pencil.normal_map.solve(image);
  if (!solved) throw PreconditionViolation(pencil.label + " is not G-stable");
  return normalize_projective(*solved);
}

Subgroup pencil_base_kernel(const PencilSpec& pencil) {
  const std::vector<std::vector<CycNum>> probes{{CycNum(1), CycNum(0)}, {CycNum(0), CycNum(1)}, {CycNum(1), CycNum(1)}};
  std::vector<GroupElem> kernel;
  for (const auto& g : group_all()) {
    bool trivial = true;
    for (const auto& st : probes)
      if (pencil_base_action(pencil, g, st) != normalize_projective(st)) trivial = false;
    if (trivial) kernel.push_back(g);
  }
  return make_subgroup(kernel);
}

}  // namespace cremona
