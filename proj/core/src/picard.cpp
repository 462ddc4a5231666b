#include "cremona/lattice/picard.hpp"

#include <algorithm>

#include "cremona/algebra/smith.hpp"
#include "cremona/errors.hpp"
#include "cremona/geometry/curves.hpp"

namespace cremona {

namespace {

DivClass column_as_class(const ZMatrix& m, std::size_t j) { return m.column(j); }

ZMatrix identity_action(std::size_t n) { return ZMatrix::identity(n); }

}  // namespace

DivClass make_class(const std::vector<long>& coeffs) {
  DivClass out;
  for (long c : coeffs) out.emplace_back(c);
  return out;
}

DivClass operator+(const DivClass& a, const DivClass& b) {
  if (a.size() != b.size()) throw ArityMismatch("class sum rank mismatch");
  DivClass out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

DivClass operator-(const DivClass& a, const DivClass& b) {
  if (a.size() != b.size()) throw ArityMismatch("class difference rank mismatch");
  DivClass out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

DivClass operator*(const Integer& s, const DivClass& a) {
  DivClass out = a;
  for (auto& c : out) c *= s;
  return out;
}

std::string class_to_string(const DivClass& c, const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) == 0) continue;
    const std::string name = i < labels.size() ? labels[i] : "b" + std::to_string(i);
    if (sgn(c[i]) > 0 && !out.empty()) out += "+";
    if (c[i] == -1) out += "-";
    else if (c[i] != 1) out += to_string(c[i]) + "*";
    out += name;
  }
  return out.empty() ? "0" : out;
}

Integer GPicardLattice::dot(const DivClass& a, const DivClass& b) const {
  if (a.size() != rank() || b.size() != rank()) throw ArityMismatch("class rank does not match lattice " + name);
  Integer s = 0;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j)
      if (sgn(gram(i, j)) != 0) s += a[i] * gram(i, j) * b[j];
  return s;
}

Integer GPicardLattice::degree(const DivClass& a) const { return -dot(K, a); }

DivClass GPicardLattice::basis_vector(std::size_t i) const {
  DivClass out(rank(), Integer(0));
  out.at(i) = 1;
  return out;
}

DivClass GPicardLattice::extend(const DivClass& d) const {
  if (d.size() > rank()) throw ArityMismatch("class does not come from a sublattice");
  DivClass out = d;
  out.resize(rank(), Integer(0));
  return out;
}

DivClass GPicardLattice::exceptional_sum() const {
  DivClass out(rank(), Integer(0));
  for (std::size_t i = base_rank; i < rank(); ++i) out[i] = 1;
  return out;
}

std::vector<std::string> lattice_invariant_failures(const GPicardLattice& l) {
  std::vector<std::string> out;
  if (l.action.size() != 12) out.push_back("action table does not have 12 entries");
  for (const auto& g : group_all()) {
    const ZMatrix& m = l.matrix_of(g);
    if (m.transpose() * l.gram * m != l.gram) out.push_back(g.name() + " is not an isometry");
    if (m.apply(l.K) != l.K) out.push_back(g.name() + " moves K");
    for (const auto& h : group_all())
      if (l.matrix_of(g * h) != m * l.matrix_of(h)) out.push_back(g.name() + "*" + h.name() + " breaks the homomorphism");
  }
  // Signature via an exact rational LDL^T.
  QMatrix q(l.rank(), l.rank());
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < l.rank(); ++j) q(i, j) = Rational(l.gram(i, j));
  std::size_t positive = 0, negative = 0;
  std::vector<bool> used(l.rank(), false);
  for (std::size_t step = 0; step < l.rank(); ++step) {
    std::size_t p = l.rank();
    for (std::size_t i = 0; i < l.rank(); ++i)
      if (!used[i] && sgn(q(i, i)) != 0) {
        p = i;
        break;
      }
    if (p == l.rank()) {
      // Rotate an off-diagonal pair onto the diagonal.
      bool fixed = false;
      for (std::size_t i = 0; i < l.rank() && !fixed; ++i)
        for (std::size_t j = 0; j < l.rank() && !fixed; ++j)
          if (!used[i] && !used[j] && i != j && sgn(q(i, j)) != 0) {
            for (std::size_t k = 0; k < l.rank(); ++k) q(i, k) += q(j, k);
            for (std::size_t k = 0; k < l.rank(); ++k) q(k, i) += q(k, j);
            fixed = true;
          }
      if (!fixed) break;
      --step;
      continue;
    }
    used[p] = true;
    const Rational pivot = q(p, p);
    (sgn(pivot) > 0 ? positive : negative) += 1;
    for (std::size_t i = 0; i < l.rank(); ++i) {
      if (used[i]) continue;
      const Rational f = q(i, p) / pivot;
      for (std::size_t k = 0; k < l.rank(); ++k) q(i, k) -= f * q(p, k);
      for (std::size_t k = 0; k < l.rank(); ++k) q(k, i) -= f * q(k, p);
      q(i, p) = 0;
      q(p, i) = 0;
    }
  }
  if (positive != 1 || negative + 1 != l.rank()) out.push_back("signature is not (1, rank-1)");
  return out;
}

GPicardLattice dp6_lattice() {
  GPicardLattice l;
  l.name = "dP6";
  l.labels = {"h", "e1", "e2", "e3"};
  l.gram = ZMatrix{{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}};
  l.K = make_class({-3, 1, 1, 1});
  l.model = ModelId::X_torus;
  l.base_rank = 4;
  // The action on classes follows the action on the boundary lines:
  // e1 = L(x0,yinf), e2 = L(y0,zinf), e3 = L(z0,xinf), h = e1 + e2 + L(x0,zinf).
  auto line_image = [](const GroupElem& g, int zero, int pole) {
    int z = g.perm[static_cast<std::size_t>(zero)];
    int p = g.perm[static_cast<std::size_t>(pole)];
    if (g.inv) std::swap(z, p);
    return make_class(boundary_line_class(z, p));
  };
  for (const auto& g : group_all()) {
    DivClass e1 = line_image(g, 0, 1);
    DivClass e2 = line_image(g, 1, 2);
    DivClass e3 = line_image(g, 2, 0);
    DivClass h = e1 + e2 + line_image(g, 0, 2);
    l.action.push_back(ZMatrix::from_columns({h, e1, e2, e3}, 4));
  }
  return l;
}

GPicardLattice quadric_lattice() {
  GPicardLattice l;
  l.name = "Q";
  l.labels = {"f1", "f2"};
  l.gram = ZMatrix{{0, 1}, {1, 0}};
  l.K = make_class({-2, -2});
  l.model = ModelId::X2_quadric;
  l.base_rank = 2;
  const ZMatrix swap{{0, 1}, {1, 0}};
  for (const auto& g : group_all()) {
    // Elements of determinant -1 in O(q) exchange the rulings.
    const bool odd = linear_action(ModelId::X2_quadric, g)->determinant() == CycNum(-1);
    l.action.push_back(odd ? swap : identity_action(2));
  }
  return l;
}

GPicardLattice p2_lattice() {
  GPicardLattice l;
  l.name = "P2";
  l.labels = {"h"};
  l.gram = ZMatrix{{1}};
  l.K = make_class({-3});
  l.model = ModelId::Y_P2;
  l.base_rank = 1;
  for (std::size_t i = 0; i < 12; ++i) l.action.push_back(identity_action(1));
  return l;
}

std::vector<DivClass> invariant_sublattice(const GPicardLattice& l) {
  const std::size_t n = l.rank();
  ZMatrix stacked(12 * n, n);
  for (std::size_t gi = 0; gi < 12; ++gi) {
    const ZMatrix& m = l.action[gi];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) stacked(gi * n + i, j) = m(i, j) - (i == j ? 1 : 0);
  }
  auto basis = integer_kernel(stacked);
  if (basis.size() == 1 && sgn(l.degree(basis[0])) < 0) basis[0] = Integer(-1) * basis[0];
  return basis;
}

BlowupResult blow_up(const GPicardLattice& l, const std::vector<std::vector<std::size_t>>& permutations,
                     const std::vector<std::string>& labels, const std::vector<SurfacePoint>& points) {
  const std::size_t n = l.rank();
  const std::size_t d = labels.size();
  if (permutations.size() != 12) throw ArityMismatch("blow-up needs a permutation for each group element");
  if (l.base_rank != n && l.blown_points.size() != n - l.base_rank && !points.empty())
    throw PreconditionViolation("cannot mix point and abstract blow-ups");
  BlowupResult out;
  GPicardLattice& z = out.lattice;
  z.name = l.name + "+" + std::to_string(d);
  z.labels = l.labels;
  z.labels.insert(z.labels.end(), labels.begin(), labels.end());
  z.gram = ZMatrix(n + d, n + d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z.gram(i, j) = l.gram(i, j);
  for (std::size_t i = 0; i < d; ++i) z.gram(n + i, n + i) = -1;
  z.K = l.K;
  z.K.resize(n + d, Integer(1));
  z.model = l.model;
  z.base_rank = l.base_rank;
  z.blown_points = l.blown_points;
  z.blown_points.insert(z.blown_points.end(), points.begin(), points.end());
  for (std::size_t gi = 0; gi < 12; ++gi) {
    const auto& perm = permutations[gi];
    if (perm.size() != d) throw ArityMismatch("permutation length does not match the number of points");
    ZMatrix m(n + d, n + d);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = l.action[gi](i, j);
    for (std::size_t i = 0; i < d; ++i) m(n + perm[i], n + i) = 1;
    z.action.push_back(std::move(m));
  }
  out.pullback = ZMatrix(n + d, n);
  out.pushforward = ZMatrix(n, n + d);
  for (std::size_t i = 0; i < n; ++i) {
    out.pullback(i, i) = 1;
    out.pushforward(i, i) = 1;
  }
  for (std::size_t i = 0; i < d; ++i) out.exceptional.push_back(column_as_class(ZMatrix::identity(n + d), n + i));
  return out;
}

BlowupResult blow_up_orbit(const GPicardLattice& l, const Orbit& orbit) {
  if (orbit.points.empty()) throw PreconditionViolation("empty orbit");
  if (!l.model || *l.model != orbit.points.front().model)
    throw PreconditionViolation("orbit does not live on the model of lattice " + l.name);
  std::vector<std::vector<std::size_t>> perms;
  for (const auto& g : group_all()) {
    std::vector<std::size_t> perm;
    for (const auto& p : orbit.points) {
      auto image = act(g, p);
      auto it = std::lower_bound(orbit.points.begin(), orbit.points.end(), image);
      if (it == orbit.points.end() || *it != image) throw PreconditionViolation("point set is not G-stable");
      perm.push_back(static_cast<std::size_t>(it - orbit.points.begin()));
    }
    perms.push_back(std::move(perm));
  }
  std::vector<std::string> labels;
  for (const auto& p : orbit.points) labels.push_back("E" + p.to_string());
  return blow_up(l, perms, labels, orbit.points);
}

BlowupResult blow_up_coset_space(const GPicardLattice& l, const Subgroup& stabilizer, const std::string& prefix) {
  // Cosets gH, listed by their sorted element sets.
  std::vector<std::vector<GroupElem>> cosets;
  for (const auto& g : group_all()) {
    std::vector<GroupElem> c;
    for (const auto& h : stabilizer.elements) c.push_back(g * h);
    std::sort(c.begin(), c.end());
    if (std::find(cosets.begin(), cosets.end(), c) == cosets.end()) cosets.push_back(std::move(c));
  }
  std::sort(cosets.begin(), cosets.end());
  std::vector<std::vector<std::size_t>> perms;
  for (const auto& g : group_all()) {
    std::vector<std::size_t> perm;
    for (const auto& c : cosets) {
      std::vector<GroupElem> image;
      for (const auto& x : c) image.push_back(g * x);
      std::sort(image.begin(), image.end());
      perm.push_back(static_cast<std::size_t>(std::find(cosets.begin(), cosets.end(), image) - cosets.begin()));
    }
    perms.push_back(std::move(perm));
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < cosets.size(); ++i) labels.push_back(prefix + std::to_string(i + 1));
  return blow_up(l, perms, labels);
}

nlohmann::json class_to_json(const DivClass& c) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : c) out.push_back(x.get_si());
  return out;
}

nlohmann::json lattice_to_json(const GPicardLattice& l) {
  auto matrix = [](const ZMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(class_to_json(m.row(i)));
    return rows;
  };
  nlohmann::json action = nlohmann::json::object();
  for (const auto& g : group_all()) action[g.name()] = matrix(l.matrix_of(g));
  return {{"name", l.name}, {"labels", l.labels}, {"gram", matrix(l.gram)}, {"K", class_to_json(l.K)},
          {"k_squared", l.k_squared().get_si()}, {"action", action}};
}

}  // namespace cremona
