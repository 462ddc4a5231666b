#include "cremona/lattice/classes.hpp"

#include <algorithm>
#include <functional>

#include "cremona/errors.hpp"

namespace cremona {

namespace {

// Integers x with (x + c)^2 <= t.
std::vector<Integer> integer_window(const Rational& c, const Rational& t) {
  std::vector<Integer> out;
  if (sgn(t) < 0) return out;
  Integer root;
  const Integer ft = floor_of(t);
  mpz_sqrt(root.get_mpz_t(), ft.get_mpz_t());
  root += 1;  // root > sqrt(t)
  const Integer lo = floor_of(-c) - root;
  const Integer hi = ceil_of(-c) + root;
  for (Integer x = lo; x <= hi; ++x) {
    Rational y = Rational(x) + c;
    if (y * y <= t) out.push_back(x);
  }
  return out;
}

}  // namespace

std::vector<DivClass> classes_with(const GPicardLattice& l, long square, long degree) {
  const std::size_t n = l.rank();
  const Integer k2 = l.k_squared();
  if (sgn(k2) <= 0) throw PreconditionViolation("class enumeration needs K^2 > 0");
  // kv = gram * K, so K.x = kv . x
  std::vector<Rational> kv(n);
  for (std::size_t i = 0; i < n; ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j < n; ++j) s += l.gram(i, j) * l.K[j];
    kv[i] = s;
  }
  QMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = Rational(2) * kv[i] * kv[j] / Rational(k2) - Rational(l.gram(i, j));
  const Rational bound = Rational(2 * degree * degree) / Rational(k2) - Rational(square);

  // q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2
  std::vector<Rational> d(n);
  QMatrix mu(n, n);
  QMatrix work = q;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = work(i, i);
    if (sgn(d[i]) <= 0) throw PreconditionViolation("form is not positive definite; lattice is not hyperbolic");
    for (std::size_t j = i + 1; j < n; ++j) mu(i, j) = work(i, j) / d[i];
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = i + 1; k < n; ++k) work(j, k) -= d[i] * mu(i, j) * mu(i, k);
  }

  std::vector<DivClass> out;
  DivClass x(n, Integer(0));
  std::function<void(std::size_t, const Rational&)> descend = [&](std::size_t level, const Rational& remaining) {
    const std::size_t i = level - 1;
    Rational c = 0;
    for (std::size_t j = i + 1; j < n; ++j) c += mu(i, j) * Rational(x[j]);
    for (const auto& v : integer_window(c, remaining / d[i])) {
      x[i] = v;
      Rational y = Rational(v) + c;
      Rational rest = remaining - d[i] * y * y;
      if (i == 0) {
        if (l.square(x) == square && l.degree(x) == degree) out.push_back(x);
      } else {
        descend(i, rest);
      }
    }
    x[i] = 0;
  };
  if (n > 0) descend(n, bound);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DivClass> minus_one_classes(const GPicardLattice& l) { return classes_with(l, -1, 1); }

std::vector<DivClass> root_classes(const GPicardLattice& l) { return classes_with(l, -2, 0); }

std::vector<DivClass> classes_in_box(const GPicardLattice& l, long square, long degree, long bound) {
  const std::size_t n = l.rank();
  std::vector<DivClass> out;
  DivClass x(n, Integer(-bound));
  while (true) {
    if (l.square(x) == square && l.degree(x) == degree) out.push_back(x);
    std::size_t i = 0;
    while (i < n && x[i] == bound) x[i++] = -bound;
    if (i == n) break;
    x[i] += 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cremona
