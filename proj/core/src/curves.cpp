#include "cremona/geometry/curves.hpp"

#include <algorithm>
#include <set>

#include "cremona/errors.hpp"
#include "cremona/geometry/solver.hpp"
#include "cremona/geometry/torus.hpp"

namespace cremona {

namespace {

const char* kCoord = "xyz";

Polynomial v6(std::size_t i) { return Polynomial::variable(6, i); }
Polynomial v4(std::size_t i) { return Polynomial::variable(4, i); }

// Scales so that the largest monomial has coefficient 1.
Polynomial monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  CycNum lead = p.terms().rbegin()->second;
  return lead.inv() * p;
}

std::vector<Polynomial> canonical_generators(const std::vector<Polynomial>& eqs) {
  std::vector<Polynomial> out;
  for (const auto& e : eqs) out.push_back(monic(e));
  std::sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) { return a.terms() < b.terms(); });
  return out;
}

std::vector<long> add(std::vector<long> a, const std::vector<long>& b, long scale = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += scale * b[i];
  return a;
}

// Two-dimensional subspace spanned by a line of the quadric.
CMatrix line_basis(const CurveSpec& line) {
  std::vector<std::vector<CycNum>> rows;
  for (const auto& e : line.equations) rows.push_back(e.linear_coefficients());
  auto ker = CMatrix::from_rows(rows, 4).nullspace();
  if (ker.size() != 2) throw PreconditionViolation("not a line: " + line.label);
  return CMatrix::from_columns(ker, 4);
}

bool lines_meet(const CurveSpec& a, const CurveSpec& b) {
  CMatrix ba = line_basis(a), bb = line_basis(b);
  std::vector<std::vector<CycNum>> cols;
  for (std::size_t j = 0; j < 2; ++j) {
    cols.push_back(ba.column(j));
    cols.push_back(bb.column(j));
  }
  return CMatrix::from_columns(cols, 4).rank() <= 3;
}

CurveSpec line_from_planes(const std::string& label, std::vector<Polynomial> planes) {
  return CurveSpec{label, ModelId::X2_quadric, std::move(planes), {}};
}

// The two lines in the tangent plane at p, ruling not yet assigned.
std::vector<CurveSpec> raw_lines_through(const SurfacePoint& p) {
  const auto& model = surface_model(ModelId::X2_quadric);
  Polynomial tangent = quadric_tangent_plane(p);
  auto ker = CMatrix::from_rows({tangent.linear_coefficients()}, 4).nullspace();
  CMatrix plane = CMatrix::from_columns(ker, 4);
  // Restricted to the plane the quadric is a pair of lines through p.
  Polynomial q = model.equations.front().pullback(plane);
  CMatrix s = q.quadratic_form_matrix();
  CMatrix e = s;
  auto pivots = e.rref_in_place();
  if (pivots.size() != 2) throw PreconditionViolation("tangent section is not a line pair");
  auto roots = binary_quadratic_roots(s(pivots[0], pivots[0]), CycNum(2) * s(pivots[0], pivots[1]),
                                      s(pivots[1], pivots[1]));
  if (!roots || roots->size() != 2) throw PreconditionViolation("lines through the point are not defined over Q(w)");
  auto vertex = s.nullspace();
  std::vector<CurveSpec> out;
  for (const auto& [rs, rt] : *roots) {
    std::vector<CycNum> dir(3, CycNum(0));
    dir[pivots[0]] = rs;
    dir[pivots[1]] = rt;
    std::vector<std::vector<CycNum>> cols = {plane.apply(vertex.front()), plane.apply(dir)};
    // Equations of the line: the annihilator of its span.
    auto eqs = CMatrix::from_columns(cols, 4).transpose().nullspace();
    std::vector<Polynomial> planes;
    for (const auto& n : eqs) planes.push_back(Polynomial::linear(n));
    out.push_back(line_from_planes("", std::move(planes)));
  }
  return out;
}

const CurveSpec& reference_line() {
  static const CurveSpec ref = [] {
    auto lines = raw_lines_through(make_point(ModelId::X2_quadric, {1, 1, 1, 1}));
    std::sort(lines.begin(), lines.end(), [](const CurveSpec& a, const CurveSpec& b) {
      return canonical_generators(a.equations).front().terms() < canonical_generators(b.equations).front().terms();
    });
    return lines.front();
  }();
  return ref;
}

}  // namespace

bool curve_contains(const CurveSpec& c, const SurfacePoint& p) {
  if (c.model != p.model) throw ArityMismatch("curve and point live on different models");
  if (!contains(p.model, p.coords)) return false;
  for (const auto& e : c.equations)
    if (!e.evaluate(p.coords).is_zero()) return false;
  return true;
}

CurveSpec act_on_curve(const GroupElem& g, const CurveSpec& c) {
  CurveSpec out = c;
  for (auto& e : out.equations) e = act_on_polynomial(c.model, g, e);
  return out;
}

bool same_curve_equations(const CurveSpec& a, const CurveSpec& b) {
  if (a.model != b.model) return false;
  if (a.model == ModelId::X2_quadric) {
    // Compare spans of the linear generators when both are linear.
    bool linear = true;
    for (const auto* c : {&a, &b})
      for (const auto& e : c->equations) linear = linear && e.degree() == 1;
    if (linear) {
      std::vector<std::vector<CycNum>> ra, rb, rab;
      for (const auto& e : a.equations) ra.push_back(e.linear_coefficients());
      for (const auto& e : b.equations) rb.push_back(e.linear_coefficients());
      rab = ra;
      rab.insert(rab.end(), rb.begin(), rb.end());
      const auto r1 = CMatrix::from_rows(ra, 4).rank();
      return r1 == CMatrix::from_rows(rb, 4).rank() && r1 == CMatrix::from_rows(rab, 4).rank();
    }
  }
  return canonical_generators(a.equations) == canonical_generators(b.equations);
}

std::vector<SurfacePoint> curve_intersection(const CurveSpec& a, const CurveSpec& b) {
  if (a.model != b.model) throw ArityMismatch("curves live on different models");
  std::vector<Polynomial> eqs = a.equations;
  eqs.insert(eqs.end(), b.equations.begin(), b.equations.end());
  if (a.model == ModelId::X_torus) {
    TorusLocus t = torus_solve(eqs, make_subgroup({GroupElem::identity()}));
    if (!t.complete()) throw PreconditionViolation("curves " + a.label + " and " + b.label + " share a component");
    return t.points;
  }
  const auto& m = surface_model(a.model);
  eqs.insert(eqs.end(), m.equations.begin(), m.equations.end());
  ProjectiveSolution sol = solve_projective(eqs);
  if (!sol.complete()) throw PreconditionViolation("intersection of " + a.label + " and " + b.label + " is not finite");
  std::vector<SurfacePoint> out;
  for (auto& p : sol.points) out.push_back(SurfacePoint{a.model, normalize_coords(a.model, p)});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<long> boundary_line_class(int zero, int pole) {
  // Basis (h, e1, e2, e3).
  const std::vector<long> h{1, 0, 0, 0}, e1{0, 1, 0, 0}, e2{0, 0, 1, 0}, e3{0, 0, 0, 1};
  if (zero == 0 && pole == 1) return e1;
  if (zero == 1 && pole == 2) return e2;
  if (zero == 2 && pole == 0) return e3;
  if (zero == 0 && pole == 2) return add(add(h, e1, -1), e2, -1);
  if (zero == 1 && pole == 0) return add(add(h, e2, -1), e3, -1);
  if (zero == 2 && pole == 1) return add(add(h, e1, -1), e3, -1);
  throw PreconditionViolation("boundary line needs two distinct coordinates");
}

CurveSpec boundary_line(int zero, int pole) {
  std::string label = std::string("L_") + kCoord[zero] + "0" + kCoord[pole] + "inf";
  return CurveSpec{label,
                   ModelId::X_torus,
                   {v6(2 * static_cast<std::size_t>(zero)), v6(2 * static_cast<std::size_t>(pole) + 1)},
                   boundary_line_class(zero, pole)};
}

std::vector<CurveSpec> boundary_lines() {
  const int order[6][2] = {{0, 1}, {0, 2}, {1, 2}, {1, 0}, {2, 0}, {2, 1}};
  std::vector<CurveSpec> out;
  for (const auto& zp : order) out.push_back(boundary_line(zp[0], zp[1]));
  return out;
}

CurveSpec binomial_curve(const std::string& label, const std::array<long, 3>& m, const CycNum& c) {
  Polynomial lhs = Polynomial::constant(6, CycNum(1));
  Polynomial rhs = Polynomial::constant(6, CycNum(1));
  for (std::size_t i = 0; i < 3; ++i) {
    if (m[i] > 0) {
      lhs *= pow(v6(2 * i), static_cast<int>(m[i]));
      rhs *= pow(v6(2 * i + 1), static_cast<int>(m[i]));
    } else if (m[i] < 0) {
      lhs *= pow(v6(2 * i + 1), static_cast<int>(-m[i]));
      rhs *= pow(v6(2 * i), static_cast<int>(-m[i]));
    }
  }
  std::vector<long> cls(4, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const long pairing = m[static_cast<std::size_t>(i)] - m[static_cast<std::size_t>(j)];
      if (pairing < 0) cls = add(cls, boundary_line_class(i, j), -pairing);
    }
  return CurveSpec{label, ModelId::X_torus, {lhs - c * rhs}, cls};
}

std::vector<CurveSpec> gamma_curves() {
  return {binomial_curve("Gamma_x", {1, 0, 0}, 1), binomial_curve("Gamma_y", {0, 1, 0}, 1),
          binomial_curve("Gamma_z", {0, 0, 1}, 1)};
}

std::vector<CurveSpec> delta_curves() {
  return {binomial_curve("Delta_x", {0, 1, -1}, 1), binomial_curve("Delta_y", {-1, 0, 1}, 1),
          binomial_curve("Delta_z", {1, -1, 0}, 1)};
}

std::vector<CurveSpec> e_curves() {
  return {binomial_curve("E_x", {1, 0, 0}, -1), binomial_curve("E_y", {0, 1, 0}, -1),
          binomial_curve("E_z", {0, 0, 1}, -1)};
}

CurveSpec conic_c0() { return CurveSpec{"C0", ModelId::X2_quadric, {v4(3)}, {1, 1}}; }

CurveSpec conic_c1() { return CurveSpec{"C1", ModelId::X2_quadric, {v4(0) + v4(1) + v4(2)}, {1, 1}}; }

CurveSpec line_l0() { return CurveSpec{"L0", ModelId::Y_P2, {Polynomial::variable(3, 0)}, {1}}; }

Polynomial quadric_tangent_plane(const SurfacePoint& p) {
  if (p.model != ModelId::X2_quadric) throw PreconditionViolation("tangent plane of the quadric needs a quadric point");
  const Polynomial& f = surface_model(ModelId::X2_quadric).equations.front();
  std::vector<CycNum> grad;
  for (std::size_t i = 0; i < 4; ++i) grad.push_back(f.derivative(i).evaluate(p.coords));
  return Polynomial::linear(grad);
}

int quadric_ruling(const CurveSpec& line) {
  const CurveSpec& ref = reference_line();
  if (same_curve_equations(line, ref)) return 0;
  return lines_meet(line, ref) ? 1 : 0;
}

std::vector<CurveSpec> quadric_lines_through(const SurfacePoint& p) {
  auto lines = raw_lines_through(p);
  for (auto& l : lines) {
    const int r = quadric_ruling(l);
    l.lattice_class = r == 0 ? std::vector<long>{1, 0} : std::vector<long>{0, 1};
    l.label = "line_f" + std::to_string(r + 1) + "@" + p.to_string();
  }
  std::sort(lines.begin(), lines.end(),
            [](const CurveSpec& a, const CurveSpec& b) { return a.lattice_class > b.lattice_class; });
  return lines;
}

std::vector<CurveSpec> position_catalog(const Orbit& orbit) {
  std::vector<CurveSpec> out;
  if (orbit.points.empty()) return out;
  const ModelId model = orbit.points.front().model;
  auto push_unique = [&out](CurveSpec c) {
    for (const auto& existing : out)
      if (same_curve_equations(existing, c)) return;
    out.push_back(std::move(c));
  };
  if (model == ModelId::X_torus) {
    for (auto& c : gamma_curves()) push_unique(c);
    for (auto& c : delta_curves()) push_unique(c);
    for (auto& c : e_curves()) push_unique(c);
    for (auto& c : boundary_lines()) push_unique(c);
    for (const auto& p : orbit.points) {
      auto affine = torus_affine(p);
      if (!affine) continue;
      const auto& a = *affine;
      for (std::size_t i = 0; i < 3; ++i) {
        std::array<long, 3> m{0, 0, 0};
        m[i] = 1;
        push_unique(binomial_curve(std::string("fiber_") + kCoord[i] + "=" + a[i].to_string(), m, a[i]));
        const std::size_t j = (i + 1) % 3;
        std::array<long, 3> r{0, 0, 0};
        r[i] = 1;
        r[j] = -1;
        push_unique(binomial_curve(std::string("ratio_") + kCoord[i] + "/" + kCoord[j] + "=" + (a[i] / a[j]).to_string(),
                                   r, a[i] / a[j]));
      }
    }
  } else if (model == ModelId::X2_quadric) {
    push_unique(conic_c0());
    push_unique(conic_c1());
    for (const auto& p : orbit.points)
      for (auto& l : quadric_lines_through(p)) push_unique(l);
    // Plane sections through three of the points.
    const auto& pts = orbit.points;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        for (std::size_t k = j + 1; k < pts.size(); ++k) {
          auto normals = CMatrix::from_rows({pts[i].coords, pts[j].coords, pts[k].coords}, 4).nullspace();
          if (normals.size() != 1) continue;
          push_unique(CurveSpec{"plane_section_" + std::to_string(i) + std::to_string(j) + std::to_string(k),
                                ModelId::X2_quadric,
                                {Polynomial::linear(normals.front())},
                                {1, 1}});
        }
  }
  return out;
}

}  // namespace cremona
