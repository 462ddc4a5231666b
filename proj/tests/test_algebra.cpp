#include <random>
#include <set>

#include "cremona/algebra/cycnum.hpp"
#include "cremona/algebra/group.hpp"
#include "cremona/algebra/matrix.hpp"
#include "cremona/algebra/smith.hpp"
#include "cremona/errors.hpp"
#include "doctest.h"

using namespace cremona;

namespace {

CycNum random_cyc(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-20, 20);
  std::uniform_int_distribution<long> den(1, 9);
  return CycNum(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
}

}  // namespace

TEST_CASE("cyc_mul reduces by the minimal polynomial") {
  const CycNum w = CycNum::omega();
  CHECK(cyc_mul(w, w) == CycNum(-1, -1));
  CHECK(cyc_mul(CycNum(1) + w, CycNum(1) + w) == w);
  CycNum x(Rational(3, 7), Rational(-2, 5));
  CHECK(cyc_mul(x, CycNum(1)) == x);
  CHECK((CycNum(1) + w + w * w).is_zero());
}

TEST_CASE("cyc_inv") {
  CHECK(cyc_inv(CycNum::omega()) == CycNum(-1, -1));
  CHECK(cyc_inv(CycNum(2)) == CycNum(Rational(1, 2)));
  CHECK(cyc_inv(CycNum(1) + CycNum::omega()) == -CycNum::omega());
  CHECK_THROWS_AS(cyc_inv(CycNum(0)), DivisionByZero);
}

TEST_CASE("inverse property over roots of unity and random elements") {
  for (int k = 0; k < 6; ++k) {
    CycNum z = CycNum::sixth_root(k);
    CHECK(cyc_mul(z, cyc_inv(z)) == CycNum(1));
    CHECK(z.pow(6) == CycNum(1));
    CHECK(z.sixth_root_index() == k);
  }
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    CycNum a = random_cyc(rng);
    if (a.is_zero()) continue;
    CHECK(cyc_mul(a, cyc_inv(a)) == CycNum(1));
    CHECK(a.norm() == (a * a.conj()).re());
  }
}

TEST_CASE("field axioms on random samples") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    CycNum a = random_cyc(rng), b = random_cyc(rng), c = random_cyc(rng);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(CycNum::parse(a.to_string()) == a);
  }
}

TEST_CASE("square roots stay inside the field") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    CycNum a = random_cyc(rng);
    auto r = (a * a).sqrt();
    REQUIRE(r.has_value());
    CHECK(*r * *r == a * a);
  }
  CHECK_FALSE(CycNum(2).sqrt().has_value());
  CHECK(CycNum(-3).sqrt().has_value());
  auto rw = CycNum::omega().sqrt();
  REQUIRE(rw.has_value());
  CHECK(*rw * *rw == CycNum::omega());
}

TEST_CASE("group_all") {
  const auto& g = group_all();
  CHECK(g.size() == 12);
  CHECK(g.front() == GroupElem::identity());
  CHECK(element_order(GroupElem::tau()) == 2);
  CHECK(element_order(GroupElem::sigma_xyz()) == 3);
  CHECK(element_order(GroupElem::identity()) == 1);
  CHECK(element_order(GroupElem::sigma_xyz() * GroupElem::tau()) == 6);
}

TEST_CASE("composition table is a Latin square and associative") {
  const auto& g = group_all();
  for (const auto& a : g) {
    std::set<int> row, col;
    for (const auto& b : g) {
      row.insert((a * b).index());
      col.insert((b * a).index());
      for (const auto& c : g) CHECK((a * b) * c == a * (b * c));
    }
    CHECK(row.size() == 12);
    CHECK(col.size() == 12);
    CHECK((a * a.inverse()).is_identity());
    CHECK(12 % element_order(a) == 0);
  }
}

TEST_CASE("subgroups_of_order") {
  CHECK(subgroups_of_order(12).size() == 1);
  CHECK(subgroups_of_order(3).size() == 1);
  CHECK(subgroups_of_order(3).front() == generated_by({GroupElem::sigma_xyz()}));
  CHECK(subgroups_of_order(6).size() == 3);
  CHECK(subgroups_of_order(4).size() == 3);
  CHECK(subgroups_of_order(2).size() == 7);
  CHECK(subgroups_of_order(1).size() == 1);
  CHECK_THROWS_AS(subgroups_of_order(5), InvalidOrder);
  for (int n : {1, 2, 3, 4, 6, 12})
    for (const auto& h : subgroups_of_order(n)) {
      CHECK(h.order() == static_cast<std::size_t>(n));
      CHECK(h.is_closed());
    }
}

TEST_CASE("smith normal form") {
  ZMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  SmithForm s = smith_normal_form(a);
  CHECK(s.U * a * s.V == s.D);
  CHECK(s.invariant_factors() == std::vector<Integer>{2, 6, 12});
  ZMatrix b{{1, 1, 1}};
  auto ker = integer_kernel(b);
  CHECK(ker.size() == 2);
  for (const auto& v : ker) CHECK(v[0] + v[1] + v[2] == 0);
}
