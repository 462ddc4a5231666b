#include "cremona/algebra/smith.hpp"

#include <utility>

namespace cremona {

namespace {

void swap_rows(ZMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(ZMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_a -= q * row_b
void add_row(ZMatrix& m, std::size_t a, std::size_t b, const Integer& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) -= q * m(b, j);
}

void add_col(ZMatrix& m, std::size_t a, std::size_t b, const Integer& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, a) -= q * m(i, b);
}

void negate_row(ZMatrix& m, std::size_t a) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) = -m(a, j);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

std::vector<Integer> SmithForm::invariant_factors() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
  return out;
}

SmithForm smith_normal_form(const ZMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  ZMatrix d = a;
  ZMatrix u = ZMatrix::identity(m);
  ZMatrix v = ZMatrix::identity(n);

  std::size_t t = 0;
  for (; t < m && t < n; ++t) {
    // Pick the smallest nonzero entry in the trailing block as pivot.
    bool found = false;
    std::size_t pi = t;
    std::size_t pj = t;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (sgn(d(i, j)) == 0) continue;
        if (!found || abs(d(i, j)) < abs(d(pi, pj))) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;
    swap_rows(d, t, pi);
    swap_rows(u, t, pi);
    swap_cols(d, t, pj);
    swap_cols(v, t, pj);

    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(d(i, t)) == 0) continue;
        Integer q = floor_div(d(i, t), d(t, t));
        add_row(d, i, t, q);
        add_row(u, i, t, q);
        if (sgn(d(i, t)) != 0) {
          swap_rows(d, t, i);
          swap_rows(u, t, i);
          changed = true;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(d(t, j)) == 0) continue;
        Integer q = floor_div(d(t, j), d(t, t));
        add_col(d, j, t, q);
        add_col(v, j, t, q);
        if (sgn(d(t, j)) != 0) {
          swap_cols(d, t, j);
          swap_cols(v, t, j);
          changed = true;
        }
      }
      if (changed) continue;
      // Enforce divisibility of the trailing block by the pivot.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j) {
          Integer r;
          mpz_fdiv_r(r.get_mpz_t(), d(i, j).get_mpz_t(), d(t, t).get_mpz_t());
          if (sgn(r) != 0) {
            // Fold row i into row t; the column sweep then produces a smaller pivot.
            add_row(d, t, i, Integer(-1));
            add_row(u, t, i, Integer(-1));
            divisible = false;
            break;
          }
        }
      if (divisible) break;
    }
    if (sgn(d(t, t)) < 0) {
      negate_row(d, t);
      negate_row(u, t);
    }
  }
  return SmithForm{std::move(u), std::move(d), std::move(v), t};
}

std::vector<std::vector<Integer>> integer_kernel(const ZMatrix& a) {
  SmithForm s = smith_normal_form(a);
  std::vector<std::vector<Integer>> basis;
  for (std::size_t j = s.rank; j < a.cols(); ++j) basis.push_back(s.V.column(j));
  return basis;
}

}  // namespace cremona
