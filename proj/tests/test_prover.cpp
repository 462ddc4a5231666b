#include <algorithm>
#include <fstream>
#include <map>

#include "cremona/errors.hpp"
#include "cremona/prover/contrast.hpp"
#include "cremona/prover/prover.hpp"
#include "doctest.h"

using namespace cremona;

namespace {

const CaseNode* find_model(const CaseNode& n, StateModel m) {
  if (n.is_model_node() && n.model == m) return &n;
  for (const auto& c : n.children)
    if (auto* f = find_model(c, m)) return f;
  return nullptr;
}

void model_nodes(const CaseNode& n, std::vector<StateModel>& out) {
  if (n.is_model_node()) out.push_back(n.model);
  for (const auto& c : n.children) model_nodes(c, out);
}

void link_nodes(const CaseNode& n, std::vector<const CaseNode*>& out) {
  if (n.outcome == "link" || n.outcome == "back-edge") out.push_back(&n);
  for (const auto& c : n.children) link_nodes(c, out);
  for (const auto& c : n.exits) link_nodes(c, out);
}

std::vector<std::size_t> branch_lengths(const CaseNode& model) {
  std::vector<std::size_t> out;
  for (const auto& c : model.children) out.push_back(c.length);
  std::sort(out.begin(), out.end());
  return out;
}

const RefutationWitness* witness_for(const std::vector<RefutationWitness>& ws, const std::string& branch_prefix) {
  for (const auto& w : ws)
    if (w.branch.rfind(branch_prefix, 0) == 0) return &w;
  return nullptr;
}

bool any_contains(const std::vector<std::string>& lines, const std::string& needle) {
  return std::any_of(lines.begin(), lines.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

LinkTable corrupted_table() {
  auto table = default_link_table();
  std::ifstream in(std::string(CREMONA_TEST_FIXTURES) + "/corrupted_formulas.json");
  REQUIRE(in);
  table.apply_overrides(nlohmann::json::parse(in));
  return table;
}

}  // namespace

TEST_CASE("P2 is unreachable from the torus model") {
  const auto v = prove_unreachable(default_link_table(), StateModel::X, StateModel::P2);
  CHECK_FALSE(v.reachable);
  CHECK(v.all_closed);
  CHECK(v.path.empty());
  CHECK(v.undocumented_discrepancies.empty());
  CHECK(v.to_json(false)["verdict"] == "unreachable");

  std::vector<StateModel> models;
  model_nodes(v.tree, models);
  CHECK(models.size() == 4);
  CHECK(std::count(models.begin(), models.end(), StateModel::P2) == 0);
}

TEST_CASE("branch set of the case tree") {
  const auto tree = build_case_tree(default_link_table());
  const std::map<StateModel, std::vector<std::size_t>> expected{
      {StateModel::X, {1, 2, 3, 4, 5}},
      {StateModel::X2, {1, 2, 2, 3, 3, 4, 5, 6}},
      {StateModel::CB0, {}},
      {StateModel::CB1, {3, 3, 6}},
  };
  for (const auto& [m, lengths] : expected) {
    const CaseNode* node = find_model(tree, m);
    REQUIRE_MESSAGE(node != nullptr, state_model_name(m));
    CHECK_MESSAGE(branch_lengths(*node) == lengths, state_model_name(m));
  }
  const CaseNode* cb1 = find_model(tree, StateModel::CB1);
  REQUIRE(cb1->exits.size() == 1);
  CHECK(cb1->exits.front().link == LinkKind::PHI_8_2_INV);
  CHECK(cb1->exits.front().target == StateModel::X2);
  CHECK(std::count_if(cb1->children.begin(), cb1->children.end(), [](const CaseNode& c) { return c.symbolic; }) == 1);
}

TEST_CASE("case tree matches the golden shape") {
  const auto golden = load_golden_tree(CREMONA_GOLDEN_TREE);
  const auto shape = build_case_tree(default_link_table()).shape();
  CHECK(shape == golden);
  CHECK_THROWS_AS(load_golden_tree("/nonexistent/golden.json"), PreconditionViolation);
}

TEST_CASE("every link in the tree descends") {
  const auto tree = build_case_tree(default_link_table());
  std::vector<const CaseNode*> links;
  link_nodes(tree, links);
  CHECK(links.size() == 11);
  for (const auto* n : links) {
    CHECK_MESSAGE(n->descends, n->center << ": " << n->descent);
    if (n->link == LinkKind::ELEM) CHECK(n->descent.find("a' - a = 0") != std::string::npos);
  }
  // A link that raised a would not close its branch.
  CaseNode bad = *links.front();
  bad.descends = false;
  CHECK_FALSE(bad.closed());
}

TEST_CASE("reachability") {
  const auto table = default_link_table();
  const auto to_x2 = prove_unreachable(table, StateModel::X, StateModel::X2);
  CHECK(to_x2.reachable);
  CHECK(to_x2.path == std::vector<LinkKind>{LinkKind::PHI_6_1});

  const auto to_x = prove_unreachable(table, StateModel::X, StateModel::X);
  CHECK(to_x.reachable);
  CHECK(to_x.path.empty());

  const auto to_cb0 = prove_unreachable(table, StateModel::X, StateModel::CB0);
  CHECK(to_cb0.path == std::vector<LinkKind>{LinkKind::PHI_6_1, LinkKind::PHI_8_2_PI0});

  // Starting inside the graph still never meets P2.
  for (auto start : {StateModel::X2, StateModel::CB1, StateModel::CB0}) {
    const auto v = prove_unreachable(table, start, StateModel::P2);
    CHECK_FALSE(v.reachable);
    CHECK(v.all_closed);
  }
}

TEST_CASE("model graph") {
  const auto edges = model_graph(default_link_table());
  std::vector<ModelEdge> from_x, from_cb0, into_p2;
  for (const auto& e : edges) {
    if (e.source == StateModel::X) from_x.push_back(e);
    if (e.source == StateModel::CB0) from_cb0.push_back(e);
    if (e.target == StateModel::P2) into_p2.push_back(e);
  }
  CHECK(from_x == std::vector<ModelEdge>{{StateModel::X, LinkKind::PHI_6_1, StateModel::X2},
                                         {StateModel::X, LinkKind::PHI_6_2, StateModel::X}});
  CHECK(from_cb0.empty());
  CHECK(into_p2.empty());
  CHECK(edges.size() == 9);
}

TEST_CASE("refutation witnesses") {
  const auto ws = refutation_witnesses(build_case_tree(default_link_table()));

  const auto* d3 = witness_for(ws, "X / d3");
  REQUIRE(d3 != nullptr);
  CHECK(d3->witness.size() == 3);
  for (const auto& line : d3->witness) {
    CHECK(line.find("H.D = 2*a - 2*r, negative for every r > a") != std::string::npos);
    CHECK(line.find("D^2 = -2, -K.D = 0") != std::string::npos);
  }

  const auto* cb0 = witness_for(ws, "CB0");
  REQUIRE(cb0 != nullptr);
  CHECK(any_contains(cb0->witness, "fixed points of"));
  CHECK(any_contains(cb0->witness, "(1,1,1,1) lies on the reducible fibre"));
  CHECK(any_contains(cb0->witness, "(1,1,1,-1) lies on the reducible fibre"));

  const auto* d4 = witness_for(ws, "X / d4");
  REQUIRE(d4 != nullptr);
  CHECK(any_contains(d4->witness, "subgroup(s) of order 3"));
  CHECK(any_contains(d4->witness, "0 orbit(s)"));
  const auto* d5 = witness_for(ws, "X / d5");
  REQUIRE(d5 != nullptr);
  CHECK(any_contains(d5->witness, "does not divide 12"));
}

TEST_CASE("formula errata are carried into the tree") {
  const auto tree = build_case_tree(default_link_table());
  std::vector<FormulaCheck> checks;
  std::vector<const CaseNode*> links;
  link_nodes(tree, links);
  for (const auto* n : links) checks.insert(checks.end(), n->formula_checks.begin(), n->formula_checks.end());
  const auto inv = std::find_if(checks.begin(), checks.end(),
                                [](const FormulaCheck& c) { return c.kind == LinkKind::PHI_8_2_INV && c.output == "a"; });
  REQUIRE(inv != checks.end());
  CHECK_FALSE(inv->agrees);
  CHECK(inv->documented);
  CHECK(inv->lattice == "a + 1/2*b");
  for (const auto& c : checks) CHECK_MESSAGE((c.agrees || c.documented), link_kind_name(c.kind) << " " << c.output);
}

TEST_CASE("a corrupted formula is reported") {
  const auto v = prove_unreachable(corrupted_table(), StateModel::X, StateModel::P2);
  REQUIRE_FALSE(v.undocumented_discrepancies.empty());
  CHECK(v.undocumented_discrepancies.front().find("PHI_6_2") != std::string::npos);
}

TEST_CASE("a table with a link into P2 makes it reachable") {
  auto specs = default_link_table().specs();
  for (auto& s : specs)
    if (s.kind == LinkKind::PHI_8_3_B) s.target = StateModel::P2;
  const auto v = prove_unreachable(LinkTable(specs), StateModel::X, StateModel::P2);
  CHECK(v.reachable);
  CHECK(v.path == std::vector<LinkKind>{LinkKind::PHI_6_1, LinkKind::PHI_8_3_B});
  CHECK(build_case_tree(LinkTable(specs)).shape() != load_golden_tree(CREMONA_GOLDEN_TREE));
}

TEST_CASE("serialization is deterministic") {
  const auto table = default_link_table();
  const auto a = prove_unreachable(table, StateModel::X, StateModel::P2).to_json(true).dump();
  const auto b = prove_unreachable(table, StateModel::X, StateModel::P2).to_json(true).dump();
  CHECK(a == b);
}

TEST_CASE("S3 contrast") {
  const auto rep = s3_contrast(42);
  CHECK(rep.reachable());
  CHECK(rep.samples == 100);
  CHECK(rep.round_trip_passed == 100);
  for (const auto& run : rep.subgroup_runs) {
    CHECK(run.passed == 100);
    CHECK(run.failed == 0);
  }
  for (const auto& c : rep.fixed_points) CHECK_MESSAGE(c.holds, c.name);
  for (const auto& c : rep.examples) CHECK_MESSAGE(c.holds, c.name);
  CHECK(rep.negative_control.element == GroupElem::tau());
  CHECK(rep.negative_control.failed > 0);
  CHECK_FALSE(rep.negative_control.first_failure.empty());

  CHECK(s3_contrast(42).to_json().dump() == rep.to_json().dump());
  const auto other = s3_contrast(7, 150);
  CHECK(other.reachable());
  CHECK(other.round_trip_passed == 150);
  CHECK(other.to_json().dump() != rep.to_json().dump());
}
