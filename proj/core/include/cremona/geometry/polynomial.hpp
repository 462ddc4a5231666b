#pragma once

#include <map>
#include <string>
#include <vector>

#include "cremona/algebra/cycnum.hpp"
#include "cremona/algebra/matrix.hpp"

namespace cremona {

using Monomial = std::vector<int>;

/// Sparse multivariate polynomial over Q(w) in a fixed number of variables.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const CycNum& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  static Polynomial monomial(const Monomial& exps, const CycNum& c);
  /// sum_i coeffs[i] * x_i
  static Polynomial linear(const std::vector<CycNum>& coeffs);

  std::size_t nvars() const { return nvars_; }
  const std::map<Monomial, CycNum>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  CycNum coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const CycNum& c);

  CycNum evaluate(const std::vector<CycNum>& point) const;
  Polynomial derivative(std::size_t var) const;
  /// Substitutes x_i := images[i]; all images share one variable count.
  Polynomial substitute(const std::vector<Polynomial>& images) const;
  /// Pullback along x = B t, B of shape nvars x k.
  Polynomial pullback(const CMatrix& basis) const;

  /// Largest monomial dividing every term.
  Monomial monomial_content() const;
  Polynomial divide_by_monomial(const Monomial& m) const;

  /// For a homogeneous quadric, the symmetric matrix S with q(v) = v^T S v.
  CMatrix quadratic_form_matrix() const;
  /// Linear coefficients of a homogeneous degree-1 polynomial.
  std::vector<CycNum> linear_coefficients() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const CycNum& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(const CycNum& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Human-readable form using the given variable names.
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::size_t nvars_ = 0;
  std::map<Monomial, CycNum> terms_;
};

Polynomial pow(const Polynomial& p, int e);

}  // namespace cremona
