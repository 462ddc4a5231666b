#include "cremona/geometry/solver.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cremona/errors.hpp"

namespace cremona {

namespace {

using Univariate = std::vector<CycNum>;  // coefficients, low degree first

void trim(Univariate& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Univariate univariate_mod(Univariate a, const Univariate& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const CycNum f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

Univariate univariate_gcd(Univariate a, Univariate b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Univariate r = univariate_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const CycNum lead = a.back().inv();
    for (auto& c : a) c *= lead;
  }
  return a;
}

// Binary form f(t0, t1) restricted to t1 = 1.
Univariate dehomogenize(const Polynomial& f) {
  Univariate out;
  for (const auto& [m, c] : f.terms()) {
    const auto d = static_cast<std::size_t>(m[0]);
    if (out.size() <= d) out.resize(d + 1, CycNum(0));
    out[d] += c;
  }
  trim(out);
  return out;
}

std::vector<CycNum> column_of(const CMatrix& b, const std::vector<CycNum>& t) { return b.apply(t); }

CMatrix drop_column(std::size_t k, std::size_t col) {
  CMatrix n(k, k - 1);
  for (std::size_t i = 0, j = 0; i < k; ++i) {
    if (i == col) continue;
    n(i, j++) = CycNum(1);
  }
  return n;
}

CMatrix columns_to_matrix(const std::vector<std::vector<CycNum>>& cols, std::size_t rows) {
  return CMatrix::from_columns(cols, rows);
}

class Solver {
 public:
  ProjectiveSolution result;

  void run(std::vector<Polynomial> polys, const CMatrix& basis, int depth) {
    if (depth > 64) {
      result.unresolved.push_back("recursion limit reached");
      return;
    }
    const std::size_t k = basis.cols();
    std::erase_if(polys, [](const Polynomial& p) { return p.is_zero(); });
    for (const auto& p : polys)
      if (!p.is_homogeneous()) throw PreconditionViolation("projective solver needs homogeneous equations");
    if (polys.empty()) {
      if (k == 1) {
        add_point(basis, {CycNum(1)});
      } else {
        result.components.push_back({basis, {}});
      }
      return;
    }
    for (const auto& p : polys)
      if (p.degree() == 0) return;
    if (k == 1) return;  // a nonzero form never vanishes at the single point

    polys = reduce_by_degree(polys);

    // Linear equations cut the subspace down directly.
    std::vector<std::vector<CycNum>> linear_rows;
    for (const auto& p : polys)
      if (p.degree() == 1) linear_rows.push_back(p.linear_coefficients());
    if (!linear_rows.empty()) {
      auto ker = CMatrix::from_rows(linear_rows, k).nullspace();
      if (ker.empty()) return;
      restrict_and_recurse(polys, basis, columns_to_matrix(ker, k), depth);
      return;
    }

    // Monomial factors split off coordinate hyperplanes.
    for (std::size_t idx = 0; idx < polys.size(); ++idx) {
      Monomial content = polys[idx].monomial_content();
      for (std::size_t v = 0; v < k; ++v) {
        if (content[v] == 0) continue;
        restrict_and_recurse(polys, basis, drop_column(k, v), depth);
        Monomial single(k, 0);
        single[v] = content[v];
        auto rest = polys;
        rest[idx] = polys[idx].divide_by_monomial(single);
        run(std::move(rest), basis, depth + 1);
        return;
      }
    }

    // Quadrics of rank <= 2 are products of linear forms.
    for (const auto& p : polys) {
      if (p.degree() != 2) continue;
      CMatrix s = p.quadratic_form_matrix();
      CMatrix echelon = s;
      auto pivots = echelon.rref_in_place();
      if (pivots.size() > 2) continue;
      auto ker = s.nullspace();
      if (pivots.size() == 1) {
        restrict_and_recurse(polys, basis, columns_to_matrix(ker, k), depth);
        return;
      }
      const std::size_t a = pivots[0];
      const std::size_t b = pivots[1];
      auto roots = binary_quadratic_roots(s(a, a), CycNum(2) * s(a, b), s(b, b));
      if (!roots) {
        // Only the common line of the two conjugate hyperplanes carries Q(w)-points.
        result.unresolved.push_back("conjugate hyperplane pair off Q(w) for " + p.to_string({}));
        if (!ker.empty()) restrict_and_recurse(polys, basis, columns_to_matrix(ker, k), depth);
        return;
      }
      for (const auto& [rs, rt] : *roots) {
        std::vector<CycNum> dir(k, CycNum(0));
        dir[a] = rs;
        dir[b] = rt;
        auto cols = ker;
        cols.push_back(dir);
        restrict_and_recurse(polys, basis, columns_to_matrix(cols, k), depth);
      }
      return;
    }

    if (k == 2) {
      solve_binary(polys, basis);
      return;
    }

    if (polys.size() == 1) {
      result.components.push_back({basis, polys});
      return;
    }
    SolverComponent c{basis, polys};
    result.unresolved.push_back("unsplit system " + c.describe());
  }

 private:
  void add_point(const CMatrix& basis, const std::vector<CycNum>& t) {
    result.points.push_back(normalize_projective(column_of(basis, t)));
  }

  void restrict_and_recurse(const std::vector<Polynomial>& polys, const CMatrix& basis, const CMatrix& sub,
                            int depth) {
    std::vector<Polynomial> pulled;
    pulled.reserve(polys.size());
    for (const auto& p : polys) pulled.push_back(p.pullback(sub));
    run(std::move(pulled), basis * sub, depth + 1);
  }

  // Gaussian elimination within each degree keeps the ideal and exposes
  // differences that factor.
  static std::vector<Polynomial> reduce_by_degree(const std::vector<Polynomial>& polys) {
    std::map<int, std::vector<Polynomial>> by_degree;
    for (const auto& p : polys) by_degree[p.degree()].push_back(p);
    std::vector<Polynomial> out;
    for (auto& [deg, group] : by_degree) {
      std::set<Monomial> monos;
      for (const auto& p : group)
        for (const auto& [m, c] : p.terms()) monos.insert(m);
      std::vector<Monomial> order(monos.rbegin(), monos.rend());
      CMatrix coef(group.size(), order.size());
      for (std::size_t i = 0; i < group.size(); ++i)
        for (std::size_t j = 0; j < order.size(); ++j) coef(i, j) = group[i].coefficient(order[j]);
      auto pivots = coef.rref_in_place();
      for (std::size_t i = 0; i < pivots.size(); ++i) {
        Polynomial p(group.front().nvars());
        for (std::size_t j = 0; j < order.size(); ++j) p.add_term(order[j], coef(i, j));
        out.push_back(std::move(p));
      }
    }
    return out;
  }

  void solve_binary(const std::vector<Polynomial>& polys, const CMatrix& basis) {
    Univariate g;
    for (const auto& p : polys) g = g.empty() ? univariate_gcd(dehomogenize(p), {}) : univariate_gcd(g, dehomogenize(p));
    // No poly has a t1 factor here, so (1 : 0) is never a root.
    if (g.size() <= 1) return;
    const std::size_t deg = g.size() - 1;
    if (deg == 1) {
      add_point(basis, {-g[0] / g[1], CycNum(1)});
      return;
    }
    if (deg == 2) {
      auto roots = binary_quadratic_roots(g[2], g[1], g[0]);
      if (!roots) {
        result.unresolved.push_back("binary quadratic with roots off Q(w)");
        return;
      }
      for (const auto& [s, t] : *roots) add_point(basis, {s, t});
      return;
    }
    result.unresolved.push_back("binary form of degree " + std::to_string(deg) + " left unfactored");
  }
};

}  // namespace

std::string SolverComponent::describe() const {
  std::string out = "span of " + std::to_string(basis.cols()) + " vectors";
  if (!equations.empty()) {
    out += " cut by";
    for (const auto& e : equations) out += " [" + e.to_string({}) + "]";
  }
  return out;
}

std::vector<CycNum> normalize_projective(std::vector<CycNum> v) {
  auto lead = std::find_if(v.begin(), v.end(), [](const CycNum& c) { return !c.is_zero(); });
  if (lead == v.end()) throw PreconditionViolation("zero vector has no projective class");
  const CycNum scale = lead->inv();
  for (auto& c : v) c *= scale;
  return v;
}

std::optional<std::vector<std::pair<CycNum, CycNum>>> binary_quadratic_roots(const CycNum& a, const CycNum& b,
                                                                             const CycNum& c) {
  if (a.is_zero() && b.is_zero() && c.is_zero()) throw PreconditionViolation("zero binary form");
  std::vector<std::pair<CycNum, CycNum>> out;
  if (a.is_zero()) {
    // t (b s + c t) = 0
    out.emplace_back(CycNum(1), CycNum(0));
    if (!b.is_zero()) out.emplace_back(-c / b, CycNum(1));
    return out;
  }
  const CycNum disc = b * b - CycNum(4) * a * c;
  auto root = disc.sqrt();
  if (!root) return std::nullopt;
  const CycNum two_a = CycNum(2) * a;
  out.emplace_back((-b + *root) / two_a, CycNum(1));
  if (!root->is_zero()) out.emplace_back((-b - *root) / two_a, CycNum(1));
  return out;
}

ProjectiveSolution solve_projective(const std::vector<Polynomial>& equations, const CMatrix& basis) {
  for (const auto& e : equations)
    if (e.nvars() != basis.rows()) throw ArityMismatch("equation arity does not match the ambient space");
  std::vector<Polynomial> pulled;
  for (const auto& e : equations) pulled.push_back(e.pullback(basis));
  Solver s;
  s.run(std::move(pulled), basis, 0);
  std::sort(s.result.points.begin(), s.result.points.end());
  s.result.points.erase(std::unique(s.result.points.begin(), s.result.points.end()), s.result.points.end());
  return std::move(s.result);
}

ProjectiveSolution solve_projective(const std::vector<Polynomial>& equations) {
  if (equations.empty()) throw PreconditionViolation("no equations given");
  return solve_projective(equations, CMatrix::identity(equations.front().nvars()));
}

}  // namespace cremona
