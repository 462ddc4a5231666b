#include <algorithm>
#include <fstream>
#include <random>

#include "cremona/errors.hpp"
#include "cremona/geometry/orbits.hpp"
#include "cremona/links/catalog.hpp"
#include "cremona/links/link.hpp"
#include "doctest.h"

using namespace cremona;

namespace {

const CycNum w = CycNum::omega();

Orbit orbit_through(ModelId model, const SurfacePoint& p) {
  for (const auto& o : enumerate_orbits(model, 3).orbits)
    if (o.contains(p)) return o;
  FAIL("no orbit through " << p.to_string());
  return {};
}

SurfacePoint qp(std::vector<CycNum> c) { return make_point(ModelId::X2_quadric, std::move(c)); }

CenterSpec center(const std::string& label, StateModel m, const Orbit& o) { return {label, m, o.length(), o}; }
CenterSpec symbolic(const std::string& label, StateModel m, std::size_t d) { return {label, m, d, std::nullopt}; }

Orbit torus_p() { return orbit_through(ModelId::X_torus, torus_point(CycNum(1), CycNum(1), CycNum(1))); }
Orbit torus_pm() { return orbit_through(ModelId::X_torus, torus_point(w, w, w)); }
Orbit torus_q() { return orbit_through(ModelId::X_torus, torus_point(CycNum(1), CycNum(-1), CycNum(-1))); }
Orbit quad_pm() { return orbit_through(ModelId::X2_quadric, qp({CycNum(1), CycNum(1), CycNum(1), CycNum(1)})); }
Orbit quad_r() { return orbit_through(ModelId::X2_quadric, qp({CycNum(1), w, w * w, CycNum(0)})); }
Orbit quad_b() { return orbit_through(ModelId::X2_quadric, qp({CycNum(1), CycNum(-2), CycNum(-2), CycNum(0)})); }
Orbit quad_a() {
  for (const auto& o : enumerate_orbits(ModelId::X2_quadric, 3).of_length(3))
    if (o != quad_b()) return o;
  FAIL("orbit A missing");
  return {};
}

LinkState state(StateModel m, Rational a, Rational b, std::map<std::string, Rational> mults) { return {m, a, b, std::move(mults)}; }

Rational q(long n, long d = 1) { return make_rational(n, d); }

}  // namespace

TEST_CASE("catalog table") {
  const auto table = default_link_table();
  CHECK(table.specs().size() == all_link_kinds().size());
  CHECK(table.at(LinkKind::PHI_6_3).refuted);
  CHECK_FALSE(table.at(LinkKind::PHI_6_3).formula.has_value());
  CHECK(table.at(LinkKind::PHI_6_1).target == StateModel::X2);
  CHECK(table.at(LinkKind::ELEM).center_lengths == std::vector<std::size_t>{3, 6});
  for (auto k : all_link_kinds()) CHECK(parse_link_kind(link_kind_name(k)) == k);
  for (auto m : all_state_models()) CHECK(parse_state_model(state_model_name(m)) == m);
  CHECK_THROWS_AS(parse_link_kind("PHI_9_9"), PreconditionViolation);
  CHECK(table.at(LinkKind::PHI_6_2).formula->a_out.to_string() == "2*a - r");
  CHECK(table.at(LinkKind::ELEM).formula->b_out->to_string() == "b + d*a - d*r");
}

TEST_CASE("noether gate") {
  auto s = state(StateModel::X, 2, 0, {{"P+-1", 3}});
  CHECK(noether_gate(s, center("P+-1", StateModel::X, torus_pm())).admissible);
  auto five = noether_gate(s, symbolic("five", StateModel::X, 5));
  CHECK(five.reason == GateReason::LengthFail);
  auto six = noether_gate(s, symbolic("six", StateModel::X, 6));
  CHECK(six.reason == GateReason::LengthFail);
  auto x2 = state(StateModel::X2, 1, 0, {{"seven", 5}});
  CHECK(noether_gate(x2, symbolic("seven", StateModel::X2, 7)).reason == GateReason::LengthFail);
  auto low = state(StateModel::X, 2, 0, {{"P+-1", 2}});
  CHECK(noether_gate(low, center("P+-1", StateModel::X, torus_pm())).reason == GateReason::NoetherFail);
  // Conic bundles have no K^2 bound on the orbit length.
  auto cb = state(StateModel::CB1, 1, 0, {{"six", 2}});
  CHECK(noether_gate(cb, symbolic("six", StateModel::CB1, 6)).admissible);
  CHECK_THROWS_AS(noether_gate(s, symbolic("x", StateModel::X2, 2)), PreconditionViolation);
}

TEST_CASE("position gate on del Pezzo models") {
  auto q3 = position_gate(center("Q", StateModel::X, torus_q()));
  CHECK_FALSE(q3.admissible);
  CHECK(q3.reason == GateReason::PositionFail);
  REQUIRE(q3.curve_witnesses.size() >= 3);
  std::size_t e_curves = 0;
  for (const auto& w : q3.curve_witnesses)
    if (w.square == -2 && w.degree == 0 && w.label.rfind("E_", 0) == 0) ++e_curves;
  CHECK(e_curves == 3);

  CHECK(position_gate(center("P", StateModel::X, torus_p())).admissible);
  CHECK(position_gate(center("P+-1", StateModel::X, torus_pm())).admissible);
  for (const auto& o : {quad_pm(), quad_r(), quad_a(), quad_b()}) CHECK(position_gate(center("o", StateModel::X2, o)).admissible);
  CHECK(position_gate(symbolic("six", StateModel::X2, 6)).admissible);
}

TEST_CASE("position gate on conic bundles") {
  auto pm = position_gate(center("P+-1", StateModel::CB0, quad_pm()));
  CHECK_FALSE(pm.admissible);
  REQUIRE(pm.fiber_witnesses.size() == 2);
  CHECK(pm.fiber_witnesses[0].find("reducible") != std::string::npos);

  CHECK(position_gate(center("A", StateModel::CB1, quad_a())).admissible);
  CHECK(position_gate(center("B", StateModel::CB1, quad_b())).admissible);
  auto r = position_gate(center("R", StateModel::CB1, quad_r()));
  CHECK_FALSE(r.admissible);
  CHECK(r.fiber_witnesses.size() == 2);
  // The base points of a pencil are never admissible centres.
  CHECK_FALSE(position_gate(center("R", StateModel::CB0, quad_r())).admissible);
  CHECK_FALSE(position_gate(center("A", StateModel::CB0, quad_a())).admissible);
}

TEST_CASE("apply_link examples") {
  const auto table = default_link_table();
  {
    auto s = state(StateModel::X, 5, 0, {{"P+-1", 6}});
    auto app = apply_link(table, LinkKind::PHI_6_2, s, center("P+-1", StateModel::X, torus_pm()));
    CHECK(app.after.model == StateModel::X);
    CHECK(app.after.a == 4);
    CHECK(app.after.multiplicity("P+-1") == 3);
    CHECK(app.discrepancies.empty());
    REQUIRE(app.oracle_result);
  }
  {
    auto s = state(StateModel::X2, 13, 0, {{"six", 14}});
    auto app = apply_link(table, LinkKind::PHI_8_6, s, symbolic("six", StateModel::X2, 6));
    CHECK(app.after.a == 7);
    CHECK(app.formula_result.mults.begin()->second == 6);
    CHECK(app.discrepancies.empty());
  }
  {
    auto s = state(StateModel::CB1, 2, 2, {{"A", 3}});
    auto app = apply_link(table, LinkKind::ELEM, s, center("A", StateModel::CB1, quad_a()));
    CHECK(app.formula_result.a == 2);
    CHECK(app.formula_result.b == -1);
    CHECK(app.formula_result.multiplicity("A'") == 2);
    REQUIRE(app.oracle_result);
    CHECK(app.oracle_result->b == -1);
    CHECK(app.oracle_result->multiplicity("A'") == 1);
    REQUIRE(app.discrepancies.size() == 1);
    CHECK(app.discrepancies[0].output == "r");
    CHECK(app.discrepancies[0].documented);
    CHECK_FALSE(app.has_undocumented_discrepancy());
  }
  {
    auto s = state(StateModel::X, 3, 0, {{"P", 4}});
    auto app = apply_link(table, LinkKind::PHI_6_1, s, center("P", StateModel::X, torus_p()));
    CHECK(app.after.model == StateModel::X2);
    CHECK(app.after.a == q(5, 2));
    CHECK(app.after.multiplicity("A") == 2);
  }
  {
    auto s = state(StateModel::X2, 3, 0, {{"R", 4}});
    auto app = apply_link(table, LinkKind::PHI_8_2_PI0, s, center("R", StateModel::X2, quad_r()));
    CHECK(app.after.model == StateModel::CB0);
    CHECK(app.after.a == 2);
    CHECK(app.after.b == 2);
  }
  {
    auto s = state(StateModel::CB1, 3, -2, {});
    auto app = apply_link(table, LinkKind::PHI_8_2_INV, s, symbolic("sections", StateModel::CB1, 2));
    CHECK(app.formula_result.a == q(5, 3));
    CHECK(app.after.a == 2);
    CHECK(app.after.multiplicity("P+-1") == 1);
    REQUIRE(app.discrepancies.size() == 1);
    CHECK(app.discrepancies[0].documented);
  }
}

TEST_CASE("apply_link refuses what the gates refuse") {
  const auto table = default_link_table();
  auto s = state(StateModel::X, 2, 0, {{"Q", 3}});
  CHECK_THROWS_AS(apply_link(table, LinkKind::PHI_6_3, s, center("Q", StateModel::X, torus_q())), GateViolation);
  auto low = state(StateModel::X, 2, 0, {{"P+-1", 1}});
  CHECK_THROWS_AS(apply_link(table, LinkKind::PHI_6_2, low, center("P+-1", StateModel::X, torus_pm())), GateViolation);
  CHECK_NOTHROW(apply_link(table, LinkKind::PHI_6_2, low, center("P+-1", StateModel::X, torus_pm()), GateMode::OracleValidation));
  CHECK_THROWS_AS(apply_link(table, LinkKind::PHI_8_6, s, symbolic("six", StateModel::X, 6)), PreconditionViolation);
  auto cb = state(StateModel::CB1, 2, 1, {});
  CHECK_THROWS_AS(apply_link(table, LinkKind::PHI_8_2_INV, cb, symbolic("s", StateModel::CB1, 2)), GateViolation);
  auto x2 = state(StateModel::X2, 1, 0, {{"c", 2}});
  CHECK_THROWS_AS(apply_link(table, LinkKind::PHI_8_3_A, x2, symbolic("c", StateModel::X2, 6)), PreconditionViolation);
}

TEST_CASE("untwisting examples") {
  const auto table = default_link_table();
  auto t1 = untwist_conic_bundle(table, state(StateModel::CB1, 2, 2, {}), {{3, 3}});
  CHECK(t1.reached_negative_fiber_coefficient);
  CHECK(t1.final_state.b == -1);
  CHECK(t1.steps.size() == 1);
  auto t2 = untwist_conic_bundle(table, state(StateModel::CB1, 1, 0, {}), {{6, 2}});
  CHECK(t2.final_state.b == -6);
  auto t3 = untwist_conic_bundle(table, state(StateModel::CB1, 1, 0, {}), {});
  CHECK_FALSE(t3.reached_negative_fiber_coefficient);
  CHECK(t3.steps.empty());
  CHECK_THROWS_AS(untwist_conic_bundle(table, state(StateModel::CB1, 2, 2, {}), {{3, 2}}), NonProgress);
  CHECK_THROWS_AS(untwist_conic_bundle(table, state(StateModel::X2, 2, 2, {}), {{3, 3}}), PreconditionViolation);
}

TEST_CASE("untwisting terminates within the step bound") {
  const auto table = default_link_table();
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Rational a = make_rational(static_cast<long>(rng() % 20 + 1), static_cast<long>(rng() % 3 + 1));
    const Rational b = make_rational(static_cast<long>(rng() % 30), static_cast<long>(rng() % 2 + 1));
    const std::size_t d = rng() % 2 ? 3 : 6;
    const bool integral = trial % 2 == 0;
    const Rational excess = integral ? Rational(static_cast<long>(rng() % 3 + 1)) : make_rational(static_cast<long>(rng() % 5 + 1), 7);
    const Rational step = Rational(static_cast<long>(d)) * excess;
    const Rational bound_q = (b + 1) / step;
    const long bound = ceil_of(bound_q).get_si();
    std::vector<UntwistStep> steps(static_cast<std::size_t>(bound) + 1, UntwistStep{d, a + excess});
    auto trace = untwist_conic_bundle(table, state(StateModel::CB1, a, b, {}), steps);
    REQUIRE(trace.reached_negative_fiber_coefficient);
    CHECK(static_cast<long>(trace.steps.size()) <= bound);
    if (integral) CHECK(static_cast<long>(trace.steps.size()) <= ceil_of((b + 1) / Rational(static_cast<long>(d))).get_si());
    for (const auto& s : trace.steps) {
      CHECK(s.after.a == s.before.a);
      CHECK(s.after.b < s.before.b);
    }
  }
}

TEST_CASE("descent and non-maximality on random maximal centres") {
  const auto table = default_link_table();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const Rational a = make_rational(static_cast<long>(rng() % 40 + 1), static_cast<long>(rng() % 4 + 1));
    const Rational r = a + make_rational(static_cast<long>(rng() % 40 + 1), static_cast<long>(rng() % 5 + 1));
    for (auto [kind, model, d] : {std::tuple{LinkKind::PHI_6_1, StateModel::X, 1UL}, {LinkKind::PHI_6_2, StateModel::X, 2UL},
                                  {LinkKind::PHI_8_6, StateModel::X2, 6UL}}) {
      auto app = apply_link(table, kind, state(model, a, 0, {{"c", r}}), symbolic("c", model, d), GateMode::OracleValidation);
      CHECK(app.after.a < a);
      CHECK(app.after.mults.begin()->second < app.after.a);
      CHECK(app.discrepancies.empty());
    }
    for (auto kind : {LinkKind::PHI_8_2_PI0, LinkKind::PHI_8_2_PI1}) {
      auto app = apply_link(table, kind, state(StateModel::X2, a, 0, {{"c", r}}), symbolic("c", StateModel::X2, 2),
                            GateMode::OracleValidation);
      CHECK(app.after.a < a);
      CHECK(app.after.b > 0);
      CHECK(app.discrepancies.empty());
    }
  }
}

TEST_CASE("involution identities and oracle agreement") {
  const auto rep = involution_identities(default_link_table());
  CHECK(rep.passed());
  for (const auto& c : rep.checks) CHECK_MESSAGE((c.holds || !c.required), c.name << ": " << c.detail);
  auto find = [&](const std::string& prefix) {
    return std::find_if(rep.checks.begin(), rep.checks.end(), [&](const IdentityCheck& c) { return c.name.rfind(prefix, 0) == 0; });
  };
  auto tabulated = find("PHI_8_2_INV after PHI_8_2_PI1 recovers (a, r) with the tabulated");
  REQUIRE(tabulated != rep.checks.end());
  CHECK_FALSE(tabulated->holds);
  CHECK_FALSE(tabulated->required);
  auto lattice = find("PHI_8_2_INV after PHI_8_2_PI1 recovers (a, r) through the lattice");
  REQUIRE(lattice != rep.checks.end());
  CHECK(lattice->holds);
  for (const char* k : {"PHI_6_1 agrees", "PHI_6_2 agrees", "PHI_8_2_PI0 agrees", "PHI_8_2_PI1 agrees"}) {
    auto it = find(k);
    REQUIRE(it != rep.checks.end());
    CHECK(it->holds);
  }
}

TEST_CASE("a corrupted formula is caught") {
  std::ifstream in(std::string(CREMONA_TEST_FIXTURES) + "/corrupted_formulas.json");
  REQUIRE(in.good());
  auto table = default_link_table();
  auto changed = table.apply_overrides(nlohmann::json::parse(in));
  CHECK(changed == std::vector<LinkKind>{LinkKind::PHI_6_2});
  const auto rep = involution_identities(table);
  CHECK_FALSE(rep.passed());
  bool named = false;
  for (const auto& c : rep.checks)
    if (!c.holds && c.required && c.name.find("PHI_6_2 agrees") != std::string::npos) named = true;
  CHECK(named);
  auto app = apply_link(table, LinkKind::PHI_6_2, state(StateModel::X, 5, 0, {{"P+-1", 6}}), center("P+-1", StateModel::X, torus_pm()));
  CHECK(app.has_undocumented_discrepancy());
  CHECK_THROWS_AS(table.apply_overrides(nlohmann::json{{"links", {{{"kind", "PHI_6_3"}, {"formula", {{"a", {{"a", "1"}}}}}}}}}),
                  PreconditionViolation);
}

TEST_CASE("cone test") {
  CHECK(negative_on_cone({1, 0, -1}, {{1, 0, 1}, {0, 0, 1}}) == true);
  CHECK(negative_on_cone({0, 0, 0}, {{1, 0, 1}, {0, 0, 1}}) == false);
  CHECK(negative_on_cone({-1, 1, 0}, {{1, 0, 1}, {0, 0, 1}}, {{0, 1, 0}}) == false);
}

TEST_CASE("symbolic lattice formulas") {
  auto f62 = oracle_formula(LinkKind::PHI_6_2, 2);
  REQUIRE(f62);
  CHECK(f62->a_out.to_string() == "2*a - r");
  CHECK(f62->r_out->to_string() == "3*a - 2*r");
  auto f61 = oracle_formula(LinkKind::PHI_6_1, 1);
  CHECK(f61->a_out.to_string() == "3/2*a - 1/2*r");
  auto f82 = oracle_formula(LinkKind::PHI_8_2_PI1, 2);
  CHECK(f82->b_out->to_string() == "-2*a + 2*r");
  CHECK_FALSE(f82->r_out);
  auto elem = oracle_formula(LinkKind::ELEM, 6);
  CHECK(elem->b_out->to_string() == "6*a + b - 6*r");
  CHECK(elem->r_out->to_string() == "2*a - r");
  auto inv = oracle_formula(LinkKind::PHI_8_2_INV, 0);
  CHECK(inv->a_out.to_string() == "a + 1/2*b");
  CHECK(inv->r_out->to_string() == "a + b");
  CHECK(oracle_formula(LinkKind::PHI_8_3_A, 3)->a_out == oracle_formula(LinkKind::PHI_8_3_B, 3)->a_out);
  CHECK(oracle_formula(LinkKind::PHI_8_3_A, 3)->r_out->to_string() == "4*a - 3*r");
  CHECK_FALSE(oracle_formula(LinkKind::PHI_6_3, 3));
}
