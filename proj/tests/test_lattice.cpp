#include <algorithm>

#include "cremona/errors.hpp"
#include "cremona/geometry/curves.hpp"
#include "cremona/geometry/orbits.hpp"
#include "cremona/lattice/classes.hpp"
#include "cremona/lattice/picard.hpp"
#include "cremona/lattice/position.hpp"
#include "cremona/lattice/pushforward.hpp"
#include "cremona/lattice/rays.hpp"
#include "doctest.h"

using namespace cremona;

namespace {

const CycNum w = CycNum::omega();

Orbit orbit_containing(ModelId model, const SurfacePoint& p) {
  for (const auto& o : enumerate_orbits(model, 6).orbits)
    if (o.contains(p)) return o;
  FAIL("no orbit through " << p.to_string());
  return {};
}

Orbit torus_p_orbit() { return orbit_containing(ModelId::X_torus, torus_point(CycNum(1), CycNum(1), CycNum(1))); }
Orbit torus_pm_orbit() { return orbit_containing(ModelId::X_torus, torus_point(w, w, w)); }
Orbit torus_q_orbit() { return orbit_containing(ModelId::X_torus, torus_point(CycNum(1), CycNum(-1), CycNum(-1))); }
Orbit quadric_pm_orbit() {
  return orbit_containing(ModelId::X2_quadric, make_point(ModelId::X2_quadric, {CycNum(1), CycNum(1), CycNum(1), CycNum(1)}));
}
Orbit quadric_r_orbit() {
  return orbit_containing(ModelId::X2_quadric, make_point(ModelId::X2_quadric, {CycNum(1), w, w * w, CycNum(0)}));
}
Orbit quadric_b_orbit() {
  return orbit_containing(ModelId::X2_quadric, make_point(ModelId::X2_quadric, {CycNum(1), CycNum(-2), CycNum(-2), CycNum(0)}));
}
Orbit quadric_a_orbit() {
  for (const auto& o : enumerate_orbits(ModelId::X2_quadric, 3).of_length(3))
    if (o != quadric_b_orbit()) return o;
  FAIL("no second orbit of length 3");
  return {};
}

Rational q(long n, long d = 1) { return make_rational(n, d); }

DivClass class_of(const GPicardLattice& l, const std::vector<long>& c) { return l.extend(make_class(c)); }

}  // namespace

TEST_CASE("dp6 lattice: K^2, hexagon, invariants") {
  auto l = dp6_lattice();
  CHECK(l.k_squared() == 6);
  CHECK(lattice_invariant_failures(l).empty());
  auto m1 = minus_one_classes(l);
  std::vector<DivClass> expected{make_class({0, 1, 0, 0}), make_class({0, 0, 1, 0}), make_class({0, 0, 0, 1}),
                                 make_class({1, -1, -1, 0}), make_class({1, -1, 0, -1}), make_class({1, 0, -1, -1})};
  std::sort(expected.begin(), expected.end());
  CHECK(m1 == expected);
  auto inv = invariant_sublattice(l);
  REQUIRE(inv.size() == 1);
  CHECK(inv[0] == Integer(-1) * l.K);
  for (const auto& g : group_all()) {
    auto image = m1;
    for (auto& d : image) d = l.act(g, d);
    std::sort(image.begin(), image.end());
    CHECK(image == m1);
  }
}

TEST_CASE("dp6 action agrees with the geometric action on catalog curves") {
  auto l = dp6_lattice();
  std::vector<CurveSpec> catalog = boundary_lines();
  for (const auto& set : {gamma_curves(), delta_curves(), e_curves()}) catalog.insert(catalog.end(), set.begin(), set.end());
  for (const auto& g : group_all()) {
    for (const auto& c : catalog) {
      auto image = act_on_curve(g, c);
      auto it = std::find_if(catalog.begin(), catalog.end(), [&](const CurveSpec& d) { return same_curve_equations(d, image); });
      REQUIRE_MESSAGE(it != catalog.end(), g.name() << " " << c.label);
      CHECK_MESSAGE(l.act(g, make_class(c.lattice_class)) == make_class(it->lattice_class), g.name() << " " << c.label);
    }
  }
}

TEST_CASE("Gamma, Delta and E classes have the stated numerics") {
  auto l = dp6_lattice();
  for (const auto& c : gamma_curves()) {
    CHECK(l.degree(make_class(c.lattice_class)) == 2);
    CHECK(l.square(make_class(c.lattice_class)) == 0);
  }
  for (const auto& c : delta_curves()) {
    CHECK(l.degree(make_class(c.lattice_class)) == 4);
    CHECK(l.square(make_class(c.lattice_class)) == 2);
  }
  for (const auto& c : e_curves()) {
    CHECK(l.degree(make_class(c.lattice_class)) == 2);
    CHECK(l.square(make_class(c.lattice_class)) == 0);
  }
}

TEST_CASE("quadric and plane lattices") {
  auto qd = quadric_lattice();
  CHECK(qd.k_squared() == 8);
  CHECK(lattice_invariant_failures(qd).empty());
  auto inv = invariant_sublattice(qd);
  REQUIRE(inv.size() == 1);
  CHECK(inv[0] == make_class({1, 1}));
  CHECK(Integer(-2) * inv[0] == qd.K);
  CHECK(minus_one_classes(qd).empty());
  // Rulings swap in the lattice exactly when they swap geometrically.
  const auto p1 = make_point(ModelId::X2_quadric, {CycNum(1), CycNum(1), CycNum(1), CycNum(1)});
  const auto lines = quadric_lines_through(p1);
  for (const auto& g : group_all()) {
    const auto image = act_on_curve(g, lines[0]);
    const int ruling = quadric_ruling(image);
    CHECK(qd.act(g, make_class({1, 0})) == (ruling == 0 ? make_class({1, 0}) : make_class({0, 1})));
  }

  auto p2 = p2_lattice();
  CHECK(lattice_invariant_failures(p2).empty());
  CHECK(minus_one_classes(p2).empty());
  CHECK(invariant_sublattice(p2).size() == 1);
}

TEST_CASE("class enumeration agrees with a box search") {
  auto dp6 = dp6_lattice();
  CHECK(minus_one_classes(dp6) == classes_in_box(dp6, -1, 1, 3));
  CHECK(root_classes(dp6) == classes_in_box(dp6, -2, 0, 3));
  CHECK(root_classes(dp6).size() == 8);  // A2 + A1
  auto pm = blow_up_orbit(dp6, torus_pm_orbit()).lattice;
  auto m1 = minus_one_classes(pm);
  CHECK(m1.size() == 16);
  CHECK(m1 == classes_in_box(pm, -1, 1, 3));
  // No class of the box search touches the box boundary.
  for (const auto& d : m1)
    for (const auto& c : d) CHECK(abs(c) < 3);
  auto quad3 = blow_up_orbit(quadric_lattice(), quadric_b_orbit()).lattice;
  CHECK(minus_one_classes(quad3) == classes_in_box(quad3, -1, 1, 3));
  CHECK(minus_one_classes(quad3).size() == 10);
}

TEST_CASE("blow-ups: degrees, exceptional classes and invariant rank") {
  auto dp6 = dp6_lattice();
  auto p = blow_up_orbit(dp6, torus_p_orbit());
  CHECK(p.lattice.k_squared() == 5);
  CHECK(minus_one_classes(p.lattice).size() == 10);

  auto pm = blow_up_orbit(dp6, torus_pm_orbit());
  CHECK(pm.lattice.k_squared() == 4);
  CHECK(lattice_invariant_failures(pm.lattice).empty());
  CHECK(invariant_sublattice(pm.lattice).size() == 2);
  CHECK(pm.lattice.blown_points.size() == 2);
  // K_new = pullback(K) + sum E; exceptional classes are orthogonal (-1)-classes.
  DivClass k = pm.pullback.apply(dp6.K);
  for (const auto& e : pm.exceptional) k = k + e;
  CHECK(k == pm.lattice.K);
  CHECK(pm.pushforward.apply(pm.lattice.K) == dp6.K);
  for (std::size_t i = 0; i < pm.exceptional.size(); ++i) {
    CHECK(pm.lattice.square(pm.exceptional[i]) == -1);
    CHECK(pm.lattice.degree(pm.exceptional[i]) == 1);
    for (std::size_t j = i + 1; j < pm.exceptional.size(); ++j) CHECK(pm.lattice.dot(pm.exceptional[i], pm.exceptional[j]) == 0);
  }
  // G permutes the exceptional classes as it permutes the points.
  for (const auto& g : group_all())
    for (std::size_t i = 0; i < 2; ++i) {
      const auto image = act(g, pm.lattice.blown_points[i]);
      const std::size_t j = image == pm.lattice.blown_points[0] ? 0 : 1;
      CHECK(pm.lattice.act(g, pm.exceptional[i]) == pm.exceptional[j]);
    }

  auto both = blow_up_orbit(blow_up_orbit(dp6, torus_q_orbit()).lattice, torus_pm_orbit());
  CHECK(both.lattice.k_squared() == 1);
  CHECK(lattice_invariant_failures(both.lattice).empty());
  CHECK(minus_one_classes(both.lattice).size() == 240);

  auto coset = blow_up_coset_space(quadric_lattice(), subgroups_of_order(2).front(), "F");
  CHECK(coset.exceptional.size() == 6);
  CHECK(coset.lattice.k_squared() == 2);
  CHECK(lattice_invariant_failures(coset.lattice).empty());
  CHECK(minus_one_classes(coset.lattice).size() == 56);

  CHECK_THROWS_AS(blow_up_orbit(quadric_lattice(), torus_p_orbit()), PreconditionViolation);
}

TEST_CASE("general position witnesses") {
  auto dp6 = dp6_lattice();
  auto qz = blow_up_orbit(dp6, torus_q_orbit()).lattice;
  auto witnesses = minus_two_effective_candidates(qz, e_curves());
  REQUIRE(witnesses.size() == 3);
  for (const auto& w : witnesses) {
    CHECK(w.square == -2);
    CHECK(w.degree == 0);
    CHECK(w.through.size() == 2);
  }
  // H = a(-K_X) - r sum E meets E'_x in 2a - 2r.
  const DivClass sum = qz.exceptional_sum();
  for (long a = 1; a <= 4; ++a)
    for (long r = 0; r <= 6; ++r) {
      DivClass h = Integer(a) * (Integer(-1) * qz.K + sum) - Integer(r) * sum;
      CHECK(qz.dot(h, witnesses[0].cls) == 2 * a - 2 * r);
    }
  CHECK(minus_two_effective_candidates(qz, {}).empty());

  auto pm = blow_up_orbit(dp6, torus_pm_orbit()).lattice;
  CHECK(minus_two_effective_candidates(pm, position_catalog(torus_pm_orbit())).empty());
  auto pz = blow_up_orbit(dp6, torus_p_orbit()).lattice;
  CHECK(minus_two_effective_candidates(pz, position_catalog(torus_p_orbit())).empty());
  // P lies on all three Gamma curves: each drops to a (-1)-class.
  for (const auto& w : strict_transforms(pz, gamma_curves())) {
    CHECK(w.square == -1);
    CHECK(w.degree == 1);
  }
}

TEST_CASE("extremal rays of blown-up surfaces") {
  auto dp6 = dp6_lattice();
  {
    auto z = blow_up_orbit(dp6, torus_p_orbit()).lattice;
    auto rays = extremal_rays(z, z.exceptional_sum());
    CHECK(rays.exceptional.classes.size() == 1);
    CHECK(rays.other.kind == RayKind::Birational);
    CHECK(rays.other.classes.size() == 3);
    CHECK(rays.other.target_k_squared == 8);
  }
  {
    auto z = blow_up_orbit(dp6, torus_pm_orbit()).lattice;
    auto rays = extremal_rays(z, z.exceptional_sum());
    CHECK(rays.other.kind == RayKind::Birational);
    CHECK(rays.other.classes.size() == 2);
    CHECK(rays.other.target_k_squared == 6);
  }
  auto quad = quadric_lattice();
  for (const auto& orbit : {quadric_pm_orbit(), quadric_r_orbit()}) {
    auto z = blow_up_orbit(quad, orbit).lattice;
    auto rays = extremal_rays(z, z.exceptional_sum());
    CHECK(rays.other.kind == RayKind::ConicBundle);
    REQUIRE(rays.other.fiber);
    CHECK(*rays.other.fiber == make_class({1, 1, -1, -1}));
    CHECK(z.degree(*rays.other.fiber) == 2);
  }
  for (const auto& orbit : {quadric_a_orbit(), quadric_b_orbit()}) {
    auto z = blow_up_orbit(quad, orbit).lattice;
    auto rays = extremal_rays(z, z.exceptional_sum());
    CHECK(rays.other.kind == RayKind::Birational);
    CHECK(rays.other.classes == std::vector<DivClass>{make_class({1, 1, -1, -1, -1})});
    CHECK(rays.other.target_k_squared == 6);
  }
  {
    auto z = blow_up_coset_space(quad, subgroups_of_order(2).front(), "F").lattice;
    auto rays = extremal_rays(z, z.exceptional_sum());
    CHECK(rays.other.kind == RayKind::Birational);
    CHECK(rays.other.classes.size() == 6);
    CHECK(rays.other.target_k_squared == 8);
    for (const auto& d : rays.other.classes) CHECK(z.dot(z.exceptional_sum(), d) == 7);
  }
  CHECK_THROWS_AS(extremal_rays(dp6, make_class({0, 0, 0, 0})), PreconditionViolation);
}

namespace {

ContractionData del_pezzo_link(const GPicardLattice& source, const BlowupResult& b) {
  ContractionData d;
  d.z = b.lattice;
  d.centre = b.exceptional;
  auto rays = extremal_rays(d.z, d.z.exceptional_sum());
  if (rays.other.kind == RayKind::Birational) d.contracted = rays.other.classes;
  else d.target_fiber = rays.other.fiber;
  (void)source;
  return d;
}

}  // namespace

TEST_CASE("pushforward oracle reproduces the link formulas") {
  auto dp6 = dp6_lattice();
  auto quad = quadric_lattice();
  auto phi61 = del_pezzo_link(dp6, blow_up_orbit(dp6, torus_p_orbit()));
  auto phi62 = del_pezzo_link(dp6, blow_up_orbit(dp6, torus_pm_orbit()));
  auto phi82 = del_pezzo_link(quad, blow_up_orbit(quad, quadric_r_orbit()));
  auto phi86 = del_pezzo_link(quad, blow_up_coset_space(quad, subgroups_of_order(2).front(), "F"));
  for (long a = 1; a <= 6; ++a)
    for (long r = 0; r <= 2 * a + 1; ++r) {
      const Rational A = a, R = r;
      auto t61 = pushforward_system(phi61, {A, 0, R});
      CHECK(t61.a == (3 * A - R) / 2);
      CHECK(t61.multiplicity == 2 * A - R);

      auto t62 = pushforward_system(phi62, {A, 0, R});
      CHECK(t62.a == 2 * A - R);
      CHECK(t62.multiplicity == 3 * A - 2 * R);
      auto back = pushforward_system(phi62, {t62.a, 0, t62.multiplicity});
      CHECK(back.a == A);
      CHECK(back.multiplicity == R);

      auto t82 = pushforward_system(phi82, {A, 0, R});
      CHECK(t82.a == 2 * A - R);
      CHECK(t82.b == 2 * (R - A));

      auto t86 = pushforward_system(phi86, {A, 0, R});
      CHECK(t86.a == 7 * A - 6 * R);
      CHECK(t86.multiplicity == 8 * A - 7 * R);
    }
  // Identity contraction.
  ContractionData id;
  id.z = dp6;
  auto t = pushforward_system(id, {q(5, 2), 0, 0});
  CHECK(t.a == q(5, 2));
}

TEST_CASE("pushforward oracle on conic bundle links") {
  auto quad = quadric_lattice();
  auto cb = blow_up_orbit(quad, quadric_pm_orbit());
  const DivClass f = make_class({1, 1, -1, -1});

  ContractionData down;
  down.z = cb.lattice;
  down.source_fiber = f;
  down.contracted = cb.exceptional;
  auto elem_z = blow_up_coset_space(cb.lattice, subgroups_of_order(4).front(), "G");
  ContractionData elem;
  elem.z = elem_z.lattice;
  elem.centre = elem_z.exceptional;
  elem.source_fiber = elem.z.extend(f);
  elem.target_fiber = elem.source_fiber;
  for (const auto& e : elem_z.exceptional) elem.contracted.push_back(*elem.source_fiber - e);

  for (long a1 = 1; a1 <= 5; ++a1)
    for (long b1 = -4; b1 <= 4; ++b1) {
      auto t = pushforward_system(down, {Rational(a1), Rational(b1), 0});
      CHECK(t.a == Rational(a1) + Rational(b1) / 2);
      CHECK(t.multiplicity == a1 + b1);
      for (long r = 0; r <= 2 * a1; ++r) {
        auto e = pushforward_system(elem, {Rational(a1), Rational(b1), Rational(r)});
        CHECK(e.a == a1);
        CHECK(e.b == Rational(b1 + 3 * (a1 - r)));
        CHECK(e.multiplicity == 2 * a1 - r);
      }
    }

  ContractionData bad = down;
  bad.contracted = {f};
  CHECK_THROWS_AS(pushforward_system(bad, {1, 0, 0}), InconsistentContraction);
  ContractionData meets = down;
  meets.contracted.push_back(make_class({1, 0, -1, 0}));
  CHECK_THROWS_AS(pushforward_system(meets, {1, 0, 0}), InconsistentContraction);
}

TEST_CASE("lattice JSON") {
  auto j = lattice_to_json(dp6_lattice());
  CHECK(j["k_squared"] == 6);
  CHECK(j["gram"].size() == 4);
  CHECK(j["action"].size() == 12);
  CHECK(j["K"] == nlohmann::json::array({-3, 1, 1, 1}));
}
