#pragma once

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>

#include "cremona/algebra/rational.hpp"

namespace cremona {

/// An element re + wc*w of Q(w), where w is a primitive cube root of unity
/// (w^2 = -1 - w). The representation is unique once both rationals are
/// canonical.
class CycNum {
 public:
  CycNum() = default;
  CycNum(long n) : re_(n) {}  // NOLINT: integers embed implicitly
  CycNum(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  CycNum(Rational re, Rational wc) : re_(std::move(re)), wc_(std::move(wc)) {
    re_.canonicalize();
    wc_.canonicalize();
  }

  static CycNum omega() { return CycNum(Rational(0), Rational(1)); }
  static CycNum omega_squared() { return CycNum(Rational(-1), Rational(-1)); }
  /// e^{2 pi i k / 6}; the only roots of unity that live in Q(w).
  static CycNum sixth_root(int k);

  const Rational& re() const { return re_; }
  const Rational& wc() const { return wc_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(wc_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(wc_) == 0; }
  bool is_rational() const { return sgn(wc_) == 0; }

  /// Galois conjugate: w -> w^2.
  CycNum conj() const;
  /// Field norm re^2 - re*wc + wc^2.
  Rational norm() const;
  /// Throws DivisionByZero on zero.
  CycNum inv() const;
  CycNum pow(long e) const;

  /// Square root inside Q(w), or nullopt when the root leaves the field.
  std::optional<CycNum> sqrt() const;
  /// k in [0,6) with *this == sixth_root(k), if any.
  std::optional<int> sixth_root_index() const;

  CycNum operator-() const { return CycNum(-re_, -wc_); }
  CycNum& operator+=(const CycNum& o);
  CycNum& operator-=(const CycNum& o);
  CycNum& operator*=(const CycNum& o);
  CycNum& operator/=(const CycNum& o);

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
  friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }

  friend bool operator==(const CycNum& a, const CycNum& b) {
    return a.re_ == b.re_ && a.wc_ == b.wc_;
  }
  /// Lexicographic on (re, wc); an ordering for canonical sorting only.
  friend std::strong_ordering operator<=>(const CycNum& a, const CycNum& b);

  std::string to_string() const;
  /// Inverse of to_string.
  static CycNum parse(const std::string& text);

 private:
  Rational re_{0};
  Rational wc_{0};
};

CycNum cyc_mul(const CycNum& a, const CycNum& b);
CycNum cyc_inv(const CycNum& a);

std::ostream& operator<<(std::ostream& os, const CycNum& x);

}  // namespace cremona
