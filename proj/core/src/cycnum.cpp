#include "cremona/algebra/cycnum.hpp"

#include <ostream>

#include "cremona/errors.hpp"

namespace cremona {

CycNum CycNum::sixth_root(int k) {
  k = ((k % 6) + 6) % 6;
  // e^{2 pi i / 6} = -w^2 = 1 + w
  const CycNum zeta(Rational(1), Rational(1));
  CycNum out(1);
  for (int i = 0; i < k; ++i) out *= zeta;
  return out;
}

CycNum CycNum::conj() const { return CycNum(re_ - wc_, -wc_); }

Rational CycNum::norm() const { return re_ * re_ - re_ * wc_ + wc_ * wc_; }

CycNum CycNum::inv() const {
  if (is_zero()) throw DivisionByZero();
  Rational n = norm();
  CycNum c = conj();
  return CycNum(c.re_ / n, c.wc_ / n);
}

CycNum CycNum::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  CycNum base = *this;
  CycNum out(1);
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

CycNum& CycNum::operator+=(const CycNum& o) {
  re_ += o.re_;
  wc_ += o.wc_;
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) {
  re_ -= o.re_;
  wc_ -= o.wc_;
  return *this;
}

CycNum& CycNum::operator*=(const CycNum& o) {
  // (a + bw)(c + dw) = ac + (ad + bc) w + bd w^2,  w^2 = -1 - w
  Rational bd = wc_ * o.wc_;
  Rational re = re_ * o.re_ - bd;
  Rational wc = re_ * o.wc_ + wc_ * o.re_ - bd;
  re_ = std::move(re);
  wc_ = std::move(wc);
  return *this;
}

CycNum& CycNum::operator/=(const CycNum& o) { return *this *= o.inv(); }

std::strong_ordering operator<=>(const CycNum& a, const CycNum& b) {
  int c = cmp(a.re_, b.re_);
  if (c == 0) c = cmp(a.wc_, b.wc_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::optional<CycNum> CycNum::sqrt() const {
  if (is_zero()) return CycNum(0);
  // Write the element as p + q*s with s = sqrt(-3) = 1 + 2w, and look for
  // u + v*s with u^2 - 3 v^2 = p and 2 u v = q.
  const Rational p = re_ - wc_ / 2;
  const Rational q = wc_ / 2;
  auto assemble = [](const Rational& u, const Rational& v) { return CycNum(u + v, 2 * v); };
  std::optional<CycNum> found;
  if (sgn(q) == 0) {
    if (auto u = rational_sqrt(p)) {
      found = assemble(*u, Rational(0));
    } else if (auto v = rational_sqrt(-p / 3)) {
      found = assemble(Rational(0), *v);
    }
  } else {
    auto n = rational_sqrt(p * p + 3 * q * q);
    if (n) {
      for (const Rational& u2 : {Rational((p + *n) / 2), Rational((p - *n) / 2)}) {
        if (sgn(u2) <= 0) continue;
        if (auto u = rational_sqrt(u2)) {
          found = assemble(*u, q / (2 * *u));
          break;
        }
      }
    }
  }
  if (found && *found * *found != *this) return std::nullopt;
  return found;
}

std::optional<int> CycNum::sixth_root_index() const {
  for (int k = 0; k < 6; ++k)
    if (sixth_root(k) == *this) return k;
  return std::nullopt;
}

std::string CycNum::to_string() const {
  if (sgn(wc_) == 0) return re_.get_str();
  std::string w;
  if (wc_ == 1) {
    w = "w";
  } else if (wc_ == -1) {
    w = "-w";
  } else {
    w = wc_.get_str() + "*w";
  }
  if (sgn(re_) == 0) return w;
  if (w[0] == '-') return re_.get_str() + w;
  return re_.get_str() + "+" + w;
}

CycNum CycNum::parse(const std::string& text) {
  auto wpos = text.find('w');
  if (wpos == std::string::npos) return CycNum(parse_rational(text));
  // Split "re(+|-)coef*w" at the sign that starts the w-term.
  std::size_t split = std::string::npos;
  for (std::size_t i = wpos; i-- > 1;) {
    if ((text[i] == '+' || text[i] == '-') && text[i - 1] != '/') {
      split = i;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : text.substr(0, split);
  std::string w_part = split == std::string::npos ? text : text.substr(split);
  if (!w_part.empty() && w_part[0] == '+') w_part.erase(0, 1);
  std::string coef = w_part.substr(0, w_part.find('w'));
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  Rational wc;
  if (coef.empty()) {
    wc = 1;
  } else if (coef == "-") {
    wc = -1;
  } else {
    wc = parse_rational(coef);
  }
  Rational re = re_part.empty() ? Rational(0) : parse_rational(re_part);
  return CycNum(re, wc);
}

CycNum cyc_mul(const CycNum& a, const CycNum& b) { return a * b; }

CycNum cyc_inv(const CycNum& a) { return a.inv(); }

std::ostream& operator<<(std::ostream& os, const CycNum& x) { return os << x.to_string(); }

}  // namespace cremona
