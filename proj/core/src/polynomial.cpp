#include "cremona/geometry/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "cremona/errors.hpp"

namespace cremona {

namespace {

int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

}  // namespace

Polynomial Polynomial::constant(std::size_t nvars, const CycNum& c) {
  Polynomial p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw ArityMismatch("variable index out of range");
  Monomial m(nvars, 0);
  m[i] = 1;
  return monomial(m, CycNum(1));
}

Polynomial Polynomial::monomial(const Monomial& exps, const CycNum& c) {
  Polynomial p(exps.size());
  p.add_term(exps, c);
  return p;
}

Polynomial Polynomial::linear(const std::vector<CycNum>& coeffs) {
  Polynomial p(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Monomial m(coeffs.size(), 0);
    m[i] = 1;
    p.add_term(m, coeffs[i]);
  }
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
  return d;
}

bool Polynomial::is_homogeneous() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int t = total_degree(m);
    if (d >= 0 && t != d) return false;
    d = t;
  }
  return true;
}

CycNum Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? CycNum(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const CycNum& c) {
  if (m.size() != nvars_) throw ArityMismatch("monomial arity mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CycNum Polynomial::evaluate(const std::vector<CycNum>& point) const {
  if (point.size() != nvars_) throw ArityMismatch("evaluation point arity mismatch");
  CycNum sum(0);
  for (const auto& [m, c] : terms_) {
    CycNum term = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m[i] != 0) term *= point[i].pow(m[i]);
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars_) throw ArityMismatch("derivative variable out of range");
  Polynomial out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    out.add_term(d, c * CycNum(m[var]));
  }
  return out;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if (images.size() != nvars_) throw ArityMismatch("substitution arity mismatch");
  std::size_t target = images.empty() ? 0 : images.front().nvars();
  for (const auto& im : images)
    if (im.nvars() != target) throw ArityMismatch("substitution images disagree on arity");
  Polynomial out(target);
  for (const auto& [m, c] : terms_) {
    Polynomial term = constant(target, c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m[i] != 0) term *= pow(images[i], m[i]);
    out += term;
  }
  return out;
}

Polynomial Polynomial::pullback(const CMatrix& basis) const {
  if (basis.rows() != nvars_) throw ArityMismatch("pullback basis has wrong row count");
  std::vector<Polynomial> images;
  images.reserve(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) images.push_back(linear(basis.row(i)));
  if (nvars_ == 0) return Polynomial(basis.cols());
  return substitute(images);
}

Monomial Polynomial::monomial_content() const {
  Monomial g(nvars_, 0);
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (first) {
      g = m;
      first = false;
    } else {
      for (std::size_t i = 0; i < nvars_; ++i) g[i] = std::min(g[i], m[i]);
    }
  }
  return g;
}

Polynomial Polynomial::divide_by_monomial(const Monomial& d) const {
  Polynomial out(nvars_);
  for (const auto& [m, c] : terms_) {
    Monomial q = m;
    for (std::size_t i = 0; i < nvars_; ++i) {
      q[i] -= d[i];
      if (q[i] < 0) throw PreconditionViolation("monomial does not divide polynomial");
    }
    out.add_term(q, c);
  }
  return out;
}

CMatrix Polynomial::quadratic_form_matrix() const {
  CMatrix s(nvars_, nvars_);
  const CycNum half(Rational(1, 2));
  for (const auto& [m, c] : terms_) {
    if (total_degree(m) != 2) throw PreconditionViolation("not a quadratic form");
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (int k = 0; k < m[i]; ++k) idx.push_back(i);
    if (idx[0] == idx[1]) {
      s(idx[0], idx[0]) += c;
    } else {
      s(idx[0], idx[1]) += c * half;
      s(idx[1], idx[0]) += c * half;
    }
  }
  return s;
}

std::vector<CycNum> Polynomial::linear_coefficients() const {
  std::vector<CycNum> out(nvars_, CycNum(0));
  for (const auto& [m, c] : terms_) {
    if (total_degree(m) != 1) throw PreconditionViolation("not a linear form");
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m[i] == 1) out[i] = c;
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw ArityMismatch("polynomial sum arity mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw ArityMismatch("polynomial difference arity mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw ArityMismatch("polynomial product arity mismatch");
  Polynomial out(nvars_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m(nvars_);
      for (std::size_t i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  *this = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator*=(const CycNum& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  // Highest degree first, for readability.
  std::vector<std::pair<Monomial, CycNum>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return total_degree(a.first) > total_degree(b.first);
  });
  for (const auto& [m, c] : sorted) {
    std::string mono;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < names.size() ? names[i] : "v" + std::to_string(i);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    std::string coef = c.to_string();
    bool compound = !c.is_rational();
    std::string term;
    if (mono.empty()) {
      term = compound ? "(" + coef + ")" : coef;
    } else if (c.is_one()) {
      term = mono;
    } else if (c == CycNum(-1)) {
      term = "-" + mono;
    } else {
      term = (compound ? "(" + coef + ")" : coef) + "*" + mono;
    }
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out;
}

Polynomial pow(const Polynomial& p, int e) {
  if (e < 0) throw PreconditionViolation("negative polynomial power");
  Polynomial out = Polynomial::constant(p.nvars(), CycNum(1));
  for (int i = 0; i < e; ++i) out *= p;
  return out;
}

}  // namespace cremona
