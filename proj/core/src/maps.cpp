#include "cremona/geometry/maps.hpp"

#include "cremona/errors.hpp"

namespace cremona {

std::optional<SurfacePoint> torus_to_quadric(const CycNum& x, const CycNum& y, const CycNum& z) {
  if (!(x * y * z).is_one()) throw PreconditionViolation("torus point must satisfy xyz = 1");
  const std::vector<CycNum> v{x, y, z};
  std::vector<CycNum> u;
  CycNum total(0);
  CycNum odd(0);
  for (const auto& c : v) {
    u.push_back(c + c.inv() - CycNum(2));
    total += u.back();
    odd += c - c.inv();
  }
  // W = -(2w+1)/3 * sum(x - 1/x); 2w+1 is a square root of -3.
  const CycNum scale = -(CycNum(1) + CycNum(2) * CycNum::omega()) / CycNum(3);
  std::vector<CycNum> image{CycNum(2) * u[0] - total, CycNum(2) * u[1] - total, CycNum(2) * u[2] - total,
                            scale * odd};
  bool zero = true;
  for (const auto& c : image) zero = zero && c.is_zero();
  if (zero) return std::nullopt;
  return make_point(ModelId::X2_quadric, std::move(image));
}

std::vector<CycNum> project_from_p1(const SurfacePoint& p) {
  if (p.model != ModelId::X2_quadric) throw PreconditionViolation("projection is defined on the quadric");
  const auto& c = p.coords;
  std::vector<CycNum> q{c[0] - c[3], c[1] - c[3], c[2] - c[3]};
  if (q[0].is_zero() && q[1].is_zero() && q[2].is_zero()) throw UndefinedImage("projection centre P1");
  return normalize_projective(std::move(q));
}

std::optional<SurfacePoint> unproject_to_quadric(const std::vector<CycNum>& q) {
  if (q.size() != 3) throw ArityMismatch("plane point needs three coordinates");
  // Line through P1 and (q, 0): the second intersection is 2B(q,P1) q - F(q) P1.
  const CycNum b = q[0] + q[1] + q[2];
  const CycNum f = q[0] * q[1] + q[1] * q[2] + q[2] * q[0];
  std::vector<CycNum> p{CycNum(2) * b * q[0] - f, CycNum(2) * b * q[1] - f, CycNum(2) * b * q[2] - f, -f};
  bool zero = true;
  for (const auto& c : p) zero = zero && c.is_zero();
  if (zero || b.is_zero()) return std::nullopt;
  return make_point(ModelId::X2_quadric, std::move(p));
}

ProjectiveSolution x1_singular_locus() {
  const Polynomial& f = surface_model(ModelId::X1_cubic).equations.front();
  std::vector<Polynomial> eqs{f};
  for (std::size_t i = 0; i < 4; ++i) eqs.push_back(f.derivative(i));
  return solve_projective(eqs);
}

}  // namespace cremona
