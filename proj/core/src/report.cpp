#include "cremona/report/report.hpp"

#include <algorithm>
#include <sstream>

#include "cremona/errors.hpp"
#include "cremona/geometry/curves.hpp"
#include "cremona/geometry/maps.hpp"
#include "cremona/geometry/orbits.hpp"
#include "cremona/geometry/pencil.hpp"
#include "cremona/links/link.hpp"

namespace cremona {

namespace {

const CycNum w = CycNum::omega();
const CycNum w2 = CycNum::omega_squared();

std::string join(const std::vector<std::string>& parts, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string point_text(const SurfacePoint& p) {
  if (p.model == ModelId::X_torus) {
    if (auto xyz = torus_affine(p)) {
      std::vector<std::string> c;
      for (const auto& v : *xyz) c.push_back(v.to_string());
      return "(" + join(c) + ")";
    }
  }
  return p.to_string();
}

std::string points_text(std::vector<SurfacePoint> pts) {
  std::sort(pts.begin(), pts.end());
  std::vector<std::string> parts;
  for (const auto& p : pts) parts.push_back(point_text(p));
  return "{" + join(parts) + "}";
}

std::string orbits_text(const std::vector<Orbit>& orbits) {
  if (orbits.empty()) return "none";
  std::vector<std::string> parts;
  for (const auto& o : orbits) parts.push_back(points_text(o.points));
  std::sort(parts.begin(), parts.end());
  return join(parts, "; ");
}

std::string orbit_sets_text(std::vector<std::vector<SurfacePoint>> sets) {
  if (sets.empty()) return "none";
  std::vector<std::string> parts;
  for (auto& s : sets) parts.push_back(points_text(s));
  std::sort(parts.begin(), parts.end());
  return join(parts, "; ");
}

std::string coords_text(const std::vector<CycNum>& v) {
  std::vector<std::string> c;
  for (const auto& x : v) c.push_back(x.to_string());
  return "(" + join(c) + ")";
}

SurfacePoint qp(std::vector<CycNum> c) { return make_point(ModelId::X2_quadric, std::move(c)); }

void add(VerifyReport& r, std::string name, std::string expected, std::string observed, std::string origin = "reference") {
  const bool pass = expected == observed;
  r.checks.push_back({std::move(name), std::move(expected), std::move(observed), pass, std::move(origin)});
}

void add_flag(VerifyReport& r, std::string name, bool holds, std::string detail, std::string origin = "computed") {
  r.checks.push_back({std::move(name), "holds", holds ? "holds" : "fails: " + detail, holds, std::move(origin)});
}

nlohmann::json orbits_json(const OrbitEnumeration& e) {
  nlohmann::json j{{"model", model_name(e.model)}, {"max_length", e.max_length}, {"complete", e.complete},
                   {"certificates", e.certificates}, {"flags", e.flags}, {"orbits", nlohmann::json::array()}};
  for (const auto& o : e.orbits) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : o.points) pts.push_back(point_text(p));
    j["orbits"].push_back({{"length", o.length()}, {"stabilizer", o.stabilizer.name()}, {"points", pts}});
  }
  return j;
}

VerifyReport torus_orbits() {
  VerifyReport r;
  const auto e = enumerate_orbits(ModelId::X_torus, 5);
  add(r, "enumeration up to length 5 is certified", "complete", e.complete ? "complete" : "incomplete: " + join(e.flags), "computed");
  const std::vector<std::vector<std::vector<SurfacePoint>>> expected{
      {{torus_point(1, 1, 1)}},
      {{torus_point(w, w, w), torus_point(w2, w2, w2)}},
      {{torus_point(1, -1, -1), torus_point(-1, 1, -1), torus_point(-1, -1, 1)}},
      {},
      {}};
  for (std::size_t d = 1; d <= 5; ++d)
    add(r, "orbits of length " + std::to_string(d), orbit_sets_text(expected[d - 1]), orbits_text(e.of_length(d)));
  r.data = orbits_json(e);
  return r;
}

VerifyReport quadric_orbits() {
  VerifyReport r;
  const auto e = enumerate_orbits(ModelId::X2_quadric, 3);
  add(r, "enumeration up to length 3 is certified", "complete", e.complete ? "complete" : "incomplete: " + join(e.flags), "computed");
  const std::vector<SurfacePoint> pm{qp({1, 1, 1, 1}), qp({1, 1, 1, -1})};
  const std::vector<SurfacePoint> rr{qp({1, w, w2, 0}), qp({1, w2, w, 0})};

  const auto fixed = fixed_locus(ModelId::X2_quadric, whole_group());
  add(r, "points fixed by the whole group", "none",
      fixed.points.empty() && fixed.complete() ? "none" : points_text(fixed.points) + join(fixed.components));
  add(r, "orbits of length 1", "none", orbits_text(e.of_length(1)));
  add(r, "orbits of length 2", orbit_sets_text({pm, rr}), orbits_text(e.of_length(2)));
  add(r, "C0 meets C1 in the second pair", points_text(rr), points_text(curve_intersection(conic_c0(), conic_c1())));

  const auto triples = e.of_length(3);
  add(r, "number of orbits of length 3", "2", std::to_string(triples.size()));
  const CurveSpec c0 = conic_c0();
  bool on_c0 = true;
  for (const auto& o : triples)
    for (const auto& p : o.points) on_c0 = on_c0 && curve_contains(c0, p);
  add(r, "both orbits of length 3 lie on C0", "yes", on_c0 ? "yes" : "no");
  const bool b_found = std::any_of(triples.begin(), triples.end(), [](const Orbit& o) { return o.contains(qp({1, -2, -2, 0})); });
  add(r, "one of them contains (1,-2,-2,0)", "yes", b_found ? "yes" : "no");

  std::vector<std::string> bases;
  std::vector<SurfacePoint> sing0, sing1;
  for (const auto& f : pencil_reducible_fibers(pencil_pi0())) {
    bases.push_back(coords_text(f.base));
    sing0.push_back(f.singular_point);
  }
  std::sort(bases.begin(), bases.end());
  add(r, "reducible fibres of Pi0 (base parameters)", "(1, -3), (1, 3)", join(bases));
  add(r, "singular points of the reducible fibres of Pi0", points_text(pm), points_text(sing0));
  for (const auto& f : pencil_reducible_fibers(pencil_pi1())) sing1.push_back(f.singular_point);
  add(r, "singular points of the reducible fibres of Pi1", points_text(rr), points_text(sing1));
  r.data = orbits_json(e);
  return r;
}

VerifyReport cubic_singular() {
  VerifyReport r;
  const auto s = x1_singular_locus();
  std::vector<SurfacePoint> pts;
  for (const auto& p : s.points) pts.push_back(make_point(ModelId::X1_cubic, p));
  add(r, "singular locus is finite and exact", "complete", s.complete() ? "complete" : "components or unresolved parts remain", "computed");
  add(r, "singular points", points_text({make_point(ModelId::X1_cubic, {1, 0, 0, 0}), make_point(ModelId::X1_cubic, {0, 1, 0, 0}),
                                         make_point(ModelId::X1_cubic, {0, 0, 1, 0})}),
      points_text(pts));

  const SurfacePoint a = make_point(ModelId::X1_cubic, {1, 1, 1, 1});
  const SurfacePoint b = act(GroupElem::tau(), a);
  add(r, "images of the pair on the cubic", points_text({make_point(ModelId::X1_cubic, {1, 1, 1, 1}), make_point(ModelId::X1_cubic, {-1, -1, -1, 1})}),
      points_text({a, b}));
  add(r, "the point (0,0,0,1) lies on the cubic", "yes", contains(ModelId::X1_cubic, {0, 0, 0, 1}) ? "yes" : "no");

  bool lines = true;
  for (int i = 0; i < 3; ++i)
    for (long s_ : {0L, 1L, 2L}) {
      std::vector<CycNum> p{1, 1, 1, CycNum(s_)};
      p[i] = 0;
      p[(i + 1) % 3] = -1;
      lines = lines && contains(ModelId::X1_cubic, p);
    }
  add(r, "the lines x = 0, y = 0, z = 0 of the plane x+y+z = 0 lie on the cubic", "yes", lines ? "yes" : "no");
  r.data = {{"singular_points", nlohmann::json::array()}};
  for (const auto& p : pts) r.data["singular_points"].push_back(p.to_string());
  return r;
}

VerifyReport link_identities(const LinkTable& table) {
  VerifyReport r;
  const IdentityReport rep = involution_identities(table);
  for (const auto& c : rep.checks) {
    if (c.required) {
      r.checks.push_back({c.name, "holds", c.holds ? "holds" : "fails: " + c.detail, c.holds, "computed"});
    } else {
      r.checks.push_back({c.name, "reported", (c.holds ? "holds: " : "does not hold: ") + c.detail, true, "computed"});
    }
  }

  // Elementary transformations on a grid: each step keeps a and lowers b by
  // d (r - a), so b turns negative within ceil((b + 1) / (d (r - a))) steps.
  bool bounded = true;
  std::string first;
  std::size_t runs = 0;
  for (long a : {1L, 2L, 5L})
    for (long b : {0L, 1L, 7L, 20L})
      for (std::size_t d : {3UL, 6UL})
        for (const Rational& excess : {Rational(1), Rational(2), make_rational(1, 3)}) {
          const Rational step = Rational(static_cast<long>(d)) * excess;
          const long bound = ceil_of((Rational(b) + 1) / step).get_si();
          std::vector<UntwistStep> centers(static_cast<std::size_t>(bound) + 1, UntwistStep{d, Rational(a) + excess});
          const auto trace = untwist_conic_bundle(table, LinkState{StateModel::CB1, a, b, {}}, centers);
          ++runs;
          const bool ok = trace.reached_negative_fiber_coefficient && static_cast<long>(trace.steps.size()) <= bound;
          if (!ok && bounded) first = "a=" + std::to_string(a) + " b=" + std::to_string(b) + " d=" + std::to_string(d);
          bounded = bounded && ok;
        }
  add_flag(r, "untwisting reaches b < 0 within the step bound (" + std::to_string(runs) + " runs)", bounded, first);
  r.data = rep.to_json();
  return r;
}

VerifyReport conic_bundle_dead_end(const LinkTable& table) {
  VerifyReport r;
  const PencilSpec pi0 = pencil_pi0();
  const Subgroup kernel = pencil_base_kernel(pi0);
  add(r, "elements fixing every fibre of Pi0", s3_subgroup().name(), kernel.name());
  const auto fix = fixed_locus(ModelId::X2_quadric, kernel);
  const std::vector<SurfacePoint> pm{qp({1, 1, 1, 1}), qp({1, 1, 1, -1})};
  add(r, "fixed locus of that subgroup", points_text(pm), fix.complete() ? points_text(fix.points) : "not finite");

  std::vector<std::vector<CycNum>> reducible;
  for (const auto& f : pencil_reducible_fibers(pi0)) reducible.push_back(f.base);
  for (const auto& p : pm) {
    const auto fiber = pencil_fiber_of(pi0, p);
    const bool on = std::find(reducible.begin(), reducible.end(), fiber) != reducible.end();
    add(r, p.to_string() + " lies on a reducible fibre", "yes", on ? "yes" : "no");
  }
  const SurfacePoint r1 = qp({1, w, w2, 0});
  const bool swapped = std::any_of(kernel.elements.begin(), kernel.elements.end(), [&](const GroupElem& g) { return act(g, r1) != r1; });
  add(r, "the blown-up pair is swapped inside the subgroup", "yes", swapped ? "yes" : "no");

  const CaseNode node = build_case_tree(table, StateModel::CB0);
  add(r, "candidate centres on the conic bundle", "0", std::to_string(node.children.size()));
  add(r, "links leaving the conic bundle", "0", std::to_string(node.exits.size()));
  add_flag(r, "the branch is closed with witnesses", node.closed(), join(node.witnesses, "; "));
  r.data = node.to_json(true);
  return r;
}

std::string md_escape(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n') out += ' ';
    else out += c;
  }
  return out;
}

void render_node(std::ostringstream& os, const CaseNode& n, int depth, bool full) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  os << pad << "- ";
  if (n.is_model_node()) {
    os << "**" << state_model_name(n.model) << "**";
  } else {
    os << "`" << n.center << "` " << n.outcome;
    if (n.link) os << " via " << link_kind_name(*n.link);
    if (n.target) os << " to " << state_model_name(*n.target);
    if (!n.descent.empty()) os << " (" << n.descent << ")";
    else if (!n.reason.empty()) os << ": " << n.reason;
  }
  os << "\n";
  if (full)
    for (const auto& wl : n.witnesses) os << pad << "  - " << wl << "\n";
  for (const auto& c : n.children) render_node(os, c, depth + 1, full);
  for (const auto& c : n.exits) render_node(os, c, depth + 1, full);
}

}  // namespace

bool VerifyReport::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

std::string VerifyReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return c.name + ": expected " + c.expected + ", got " + c.observed;
  return {};
}

const std::vector<VerificationInfo>& verifications() {
  static const std::vector<VerificationInfo> list{
      {"torus-orbits", "1.4.1", "Short orbits on the torus model"},
      {"quadric-orbits", "1.8", "Short orbits and conic pencils on the quadric"},
      {"cubic-singular", "1.5-singular", "Singular points of the nodal cubic model"},
      {"links-identities", "links-identities", "Link formulas against the lattice computation"},
      {"conic-bundle-dead-end", "2.4.2", "The conic bundle with no centres"},
  };
  return list;
}

std::optional<std::string> resolve_verification(const std::string& name) {
  for (const auto& v : verifications())
    if (v.id == name || v.alias == name) return v.id;
  return std::nullopt;
}

VerifyReport run_verification(const std::string& id, const LinkTable& table, const ReportConfig&) {
  const auto resolved = resolve_verification(id);
  if (!resolved) throw PreconditionViolation("unknown check '" + id + "'");
  VerifyReport r;
  if (*resolved == "torus-orbits") r = torus_orbits();
  else if (*resolved == "quadric-orbits") r = quadric_orbits();
  else if (*resolved == "cubic-singular") r = cubic_singular();
  else if (*resolved == "links-identities") r = link_identities(table);
  else r = conic_bundle_dead_end(table);
  r.id = *resolved;
  for (const auto& v : verifications())
    if (v.id == r.id) r.title = v.title;
  return r;
}

ProveReport run_prove(const LinkTable& table, const ReportConfig& config, const nlohmann::json& golden) {
  ProveReport r{prove_unreachable(table, StateModel::X, StateModel::P2), s3_contrast(config.seed), false, {}};
  r.golden_match = r.verdict.tree.shape() == golden;
  if (r.verdict.reachable) r.failures.push_back("P2 is reachable from X");
  if (!r.verdict.all_closed) r.failures.push_back("the case tree has an open branch");
  for (const auto& d : r.verdict.undocumented_discrepancies) r.failures.push_back("formula disagrees with the lattice: " + d);
  if (!r.golden_match) r.failures.push_back("case tree differs from the golden tree");
  if (!r.contrast.reachable()) r.failures.push_back("S3 contrast failed");
  return r;
}

nlohmann::json report_json(const VerifyReport& r, const ReportConfig&) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"expected", c.expected}, {"observed", c.observed}, {"pass", c.pass}, {"origin", c.origin}});
  nlohmann::json j{{"schema_version", kReportSchemaVersion},
                   {"command", "verify"},
                   {"id", r.id},
                   {"title", r.title},
                   {"pass", r.pass()},
                   {"checks", checks},
                   {"data", r.data}};
  if (!r.pass()) j["first_failure"] = r.first_failure();
  return j;
}

nlohmann::json report_json(const ProveReport& r, const ReportConfig& config) {
  const bool full = config.verbosity == Verbosity::FullTree;
  return {{"schema_version", kReportSchemaVersion},
          {"command", "prove"},
          {"seed", std::to_string(config.seed)},
          {"verbosity", full ? "full-tree" : "summary"},
          {"pass", r.pass()},
          {"failures", r.failures},
          {"golden_match", r.golden_match},
          {"verdict", r.verdict.to_json(full)},
          {"contrast", r.contrast.to_json()}};
}

std::string render_markdown(const VerifyReport& r, const ReportConfig&) {
  std::ostringstream os;
  os << "# " << r.title << "\n\n";
  os << "Check `" << r.id << "`: **" << (r.pass() ? "PASS" : "FAIL") << "**\n\n";
  os << "| check | expected | observed | origin | result |\n|---|---|---|---|---|\n";
  for (const auto& c : r.checks)
    os << "| " << md_escape(c.name) << " | " << md_escape(c.expected) << " | " << md_escape(c.observed) << " | " << c.origin
       << " | " << (c.pass ? "pass" : "FAIL") << " |\n";
  return os.str();
}

std::string render_markdown(const ProveReport& r, const ReportConfig& config) {
  const bool full = config.verbosity == Verbosity::FullTree;
  const Verdict& v = r.verdict;
  std::ostringstream os;
  os << "# Link search from X to P2\n\n";
  os << "Result: **" << (r.pass() ? "PASS" : "FAIL") << "**\n\n";
  os << "- verdict: " << (v.reachable ? "reachable" : v.all_closed ? "unreachable" : "open") << "\n";
  os << "- all branches closed: " << (v.all_closed ? "yes" : "no") << "\n";
  os << "- case tree equals the golden tree: " << (r.golden_match ? "yes" : "no") << "\n";
  os << "- S3 contrast: " << (r.contrast.reachable() ? "reachable" : "failed") << " (seed " << config.seed << ", "
     << r.contrast.samples << " samples, " << r.contrast.skipped << " skipped)\n";
  for (const auto& run : r.contrast.subgroup_runs)
    os << "  - " << run.element.name() << ": " << run.passed << " passed, " << run.failed << " failed\n";
  os << "  - round trip: " << r.contrast.round_trip_passed << " passed\n";
  os << "  - control " << r.contrast.negative_control.element.name() << ": " << r.contrast.negative_control.failed
     << " failed (expected to fail)\n";
  if (!r.failures.empty()) {
    os << "\n## Failures\n\n";
    for (const auto& f : r.failures) os << "- " << f << "\n";
  }
  os << "\n## Certification\n\n";
  for (const auto& n : v.certification_notes) os << "- " << n << "\n";
  os << "\n## Case tree\n\n";
  std::ostringstream tree;
  render_node(tree, v.tree, 0, full);
  os << tree.str();
  return os.str();
}

}  // namespace cremona
