#include "cremona/prover/prover.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <set>

#include "cremona/errors.hpp"
#include "cremona/geometry/curves.hpp"

namespace cremona {

namespace {

// Search range for enumerated centres; longer orbits are handled symbolically.
constexpr int kEnumeratedLength = 5;
constexpr std::size_t kSymbolicLength = 6;

const std::vector<std::vector<Rational>> kMaximalCone{{1, 0, 1}, {0, 0, 1}};

std::string affine_label(const SurfacePoint& p) {
  if (p.model != ModelId::X_torus) return p.to_string();
  if (auto xyz = torus_affine(p)) {
    std::string out = "(";
    for (std::size_t i = 0; i < xyz->size(); ++i) out += (i ? ", " : "") + (*xyz)[i].to_string();
    return out + ")";
  }
  return p.to_string();
}

std::string center_label(std::size_t d, const Orbit& orbit) {
  return "d" + std::to_string(d) + " " + affine_label(orbit.points.front());
}

std::string symbolic_label(std::size_t d) { return "d" + std::to_string(d) + " generic"; }

AffineForm form_of(const std::vector<Rational>& row) { return AffineForm{row[0], row[1], row[2], 0, 0}; }

std::vector<Rational> row_of(const QMatrix& m, std::size_t i) { return {m(i, 0), m(i, 1), m(i, 2)}; }

bool fixed_by(const Subgroup& h, const SurfacePoint& p) {
  return std::all_of(h.elements.begin(), h.elements.end(), [&](const GroupElem& g) { return act(g, p) == p; });
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.compare(0, prefix.size(), prefix) == 0; }

std::vector<std::string> certificates_for(const OrbitEnumeration& e, std::size_t d) {
  std::vector<std::string> out;
  const std::string key = "d=" + std::to_string(d) + ":";
  for (const auto& c : e.certificates)
    if (starts_with(c, key) || starts_with(c, "boundary:") || starts_with(c, "coverage:")) out.push_back(c);
  return out;
}

class TreeBuilder {
 public:
  explicit TreeBuilder(const LinkTable& table) : table_(table) {}

  CaseNode expand(StateModel m) {
    visited_.insert(m);
    CaseNode node;
    node.model = m;
    node.outcome = "model";
    switch (m) {
      case StateModel::X:
      case StateModel::X2: del_pezzo(node); break;
      case StateModel::CB0:
      case StateModel::CB1: conic_bundle(node); break;
      case StateModel::P2: node.witnesses.push_back("no link in the table leaves P2"); break;
    }
    for (const auto& spec : table_.specs())
      if (spec.source == m && spec.kind == LinkKind::PHI_8_2_INV) node.exits.push_back(exit_branch(spec));
    return node;
  }

 private:
  const LinkTable& table_;
  std::set<StateModel> visited_;

  static void require_complete(const OrbitEnumeration& e) {
    if (e.complete) return;
    std::string msg = "orbit enumeration on " + model_name(e.model) + " is incomplete:";
    for (const auto& f : e.flags) msg += " [" + f + "]";
    throw IncompleteCertification(msg);
  }

  void del_pezzo(CaseNode& node) {
    const ModelId carrier = carrier_model(node.model);
    const long k2 = state_k_squared(node.model);
    const auto enumeration = enumerate_orbits(carrier, kEnumeratedLength);
    require_complete(enumeration);
    node.witnesses = enumeration.certificates;

    for (long d = 1; d < k2; ++d) {
      const auto len = static_cast<std::size_t>(d);
      if (d <= kEnumeratedLength) {
        const auto orbits = enumeration.of_length(len);
        if (orbits.empty()) {
          CaseNode leaf;
          leaf.model = node.model;
          leaf.center = "d" + std::to_string(d);
          leaf.length = len;
          leaf.outcome = "empty";
          leaf.reason = "no orbit of length " + std::to_string(d);
          leaf.witnesses = certificates_for(enumeration, len);
          node.children.push_back(std::move(leaf));
        }
        for (const auto& o : orbits) node.children.push_back(center_branch(node.model, CenterSpec{center_label(len, o), node.model, len, o}));
      } else if (len == kSymbolicLength) {
        // Orbits with a stabilizer of order 2 fill curves; the branch is closed
        // for every multiplicity r > a rather than orbit by orbit.
        const auto wide = enumerate_orbits(carrier, static_cast<int>(len));
        std::string why = "d=6: treated as a general member of the families";
        for (const auto& f : wide.flags) why += " [" + f + "]";
        node.witnesses.push_back(why);
        node.children.push_back(center_branch(node.model, CenterSpec{symbolic_label(len), node.model, len, std::nullopt}));
      } else if (12 % d != 0) {
        node.witnesses.push_back("d=" + std::to_string(d) + ": " + std::to_string(d) + " does not divide 12, so no orbit has this length");
      } else {
        throw IncompleteCertification("no treatment of centres of length " + std::to_string(d) + " on " + state_model_name(node.model));
      }
    }
  }

  void conic_bundle(CaseNode& node) {
    const PencilSpec pencil = conic_bundle_pencil(node.model);
    const Subgroup kernel = pencil_base_kernel(pencil);
    const FixedLocus fix = fixed_locus(ModelId::X2_quadric, kernel);
    if (!fix.unresolved.empty()) throw IncompleteCertification("unresolved fixed locus of " + kernel.name() + " on the quadric");

    node.witnesses.push_back(kernel.name() + " maps every fibre of " + pencil.label +
                             " to itself, so a centre orbit lies in its fixed locus (otherwise two of its points share a fibre)");
    std::string pts;
    for (const auto& p : fix.points) pts += (pts.empty() ? "" : ", ") + p.to_string();
    node.witnesses.push_back("fixed points of " + kernel.name() + ": {" + pts + "}");
    for (const auto& c : fix.components) node.witnesses.push_back("fixed curve of " + kernel.name() + ": " + c);

    // The blown-up pair is replaced by exceptional curves; a kernel element
    // swapping the two curves leaves no fixed point on them.
    const LinkKind into = node.model == StateModel::CB0 ? LinkKind::PHI_8_2_PI0 : LinkKind::PHI_8_2_PI1;
    const Orbit blown = *link_center_orbit(into);
    for (const auto& g : kernel.elements) {
      if (act(g, blown.points[0]) != blown.points[0]) {
        node.witnesses.push_back(g.name() + " swaps " + blown.points[0].to_string() + " and " + blown.points[1].to_string() +
                                 ", so the exceptional curves over them carry no fixed point");
        break;
      }
    }

    const auto enumeration = enumerate_orbits(ModelId::X2_quadric, kEnumeratedLength);
    require_complete(enumeration);
    for (const auto& o : enumeration.orbits) {
      if (o == blown) continue;
      if (!std::all_of(o.points.begin(), o.points.end(), [&](const SurfacePoint& p) { return fixed_by(kernel, p); })) continue;
      const CenterSpec c{center_label(o.length(), o), node.model, o.length(), o};
      const GateVerdict pos = position_gate(c);
      if (pos.admissible) {
        node.children.push_back(center_branch(node.model, c));
        continue;
      }
      std::string line = "fixed orbit " + c.label + " excluded: " + pos.detail;
      for (const auto& w : pos.fiber_witnesses) line += "; " + w;
      node.witnesses.push_back(line);
    }
    if (!fix.components.empty()) {
      const std::size_t len = 12 / kernel.order();
      node.children.push_back(center_branch(node.model, CenterSpec{symbolic_label(len), node.model, len, std::nullopt}));
    }
    if (node.children.empty()) node.witnesses.push_back("no centre is available: " + state_model_name(node.model) + " has no links out");
  }

  std::vector<LinkKind> matching_links(const CenterSpec& c) const {
    std::vector<LinkKind> out;
    for (const auto& spec : table_.specs()) {
      if (spec.source != c.model || spec.kind == LinkKind::PHI_8_2_INV) continue;
      if (std::find(spec.center_lengths.begin(), spec.center_lengths.end(), c.length) == spec.center_lengths.end()) continue;
      const auto tied = link_center_orbit(spec.kind);
      if (tied && (!c.orbit || !(*tied == *c.orbit))) continue;
      out.push_back(spec.kind);
    }
    return out;
  }

  CaseNode center_branch(StateModel m, const CenterSpec& c) {
    CaseNode node;
    node.model = m;
    node.center = c.label;
    node.length = c.length;
    node.symbolic = c.symbolic();

    // r > a is the hypothesis of every branch; the state only carries it.
    LinkState probe;
    probe.model = m;
    probe.a = 1;
    probe.mults[c.label] = 2;
    GateVerdict noether = noether_gate(probe, c);
    if (noether.admissible)
      noether.detail = "length " + std::to_string(c.length) + " divides 12" +
                       (is_conic_bundle(m) ? "" : " and is below K^2 = " + std::to_string(state_k_squared(m))) +
                       "; r > a holds by hypothesis";
    node.verdicts.push_back(noether);
    if (!noether.admissible) {
      node.outcome = "refuted";
      node.reason = noether.detail;
      node.witnesses.push_back(noether.detail);
      return node;
    }
    const GateVerdict position = position_gate(c);
    node.verdicts.push_back(position);
    if (!position.admissible) {
      node.outcome = "refuted";
      node.reason = position.detail;
      position_witnesses(node, c, position);
      return node;
    }

    const auto kinds = matching_links(c);
    if (kinds.empty()) {
      node.outcome = "open";
      node.reason = "no link in the table starts at this centre";
      return node;
    }
    if (kinds.size() > 1) throw PreconditionViolation("several links start at " + c.label);
    const LinkSpec& spec = table_.at(kinds.front());
    if (spec.refuted || !spec.formula) {
      node.outcome = "refuted";
      node.link = spec.kind;
      node.reason = spec.description;
      node.witnesses.push_back(link_kind_name(spec.kind) + ": " + spec.description);
      return node;
    }
    take_link(node, spec, c.length);
    return node;
  }

  static void position_witnesses(CaseNode& node, const CenterSpec& c, const GateVerdict& position) {
    for (const auto& w : position.fiber_witnesses) node.witnesses.push_back(w);
    if (position.curve_witnesses.empty()) return;
    // H = a(-K_Z + E) - r E with E the exceptional sum, so
    // H.D = a(-K_Z + E).D - r E.D.
    const auto base = c.model == StateModel::X ? dp6_lattice() : quadric_lattice();
    const auto blown = blow_up_orbit(base, *c.orbit);
    const GPicardLattice& z = blown.lattice;
    const DivClass e = z.exceptional_sum();
    for (const auto& w : position.curve_witnesses) {
      const Rational ca(z.degree(w.cls) + z.dot(e, w.cls));
      const Rational cr(-z.dot(e, w.cls));
      const bool negative = negative_on_cone({ca, 0, cr}, kMaximalCone);
      node.witnesses.push_back(w.describe(z) + "; H.D = " + AffineForm{ca, 0, cr, 0, 0}.to_string() +
                               (negative ? ", negative for every r > a" : ", not negative on r > a"));
    }
  }

  CaseNode exit_branch(const LinkSpec& spec) {
    CaseNode node;
    node.model = spec.source;
    node.center = "b<0";
    node.reason = "contract the invariant pair of sections once the fibre coefficient is negative";
    take_link(node, spec, 0);
    return node;
  }

  void take_link(CaseNode& node, const LinkSpec& spec, std::size_t d) {
    node.link = spec.kind;
    node.target = spec.target;
    const auto oracle = oracle_formula(spec.kind, d);
    const long dl = static_cast<long>(d);
    const QMatrix tab = spec.formula->matrix(dl);
    const QMatrix used = oracle ? oracle->matrix(dl) : tab;
    compare_formulas(node, spec, d, tab, oracle);
    descent(node, spec, used);
    if (visited_.count(spec.target)) {
      node.outcome = "back-edge";
    } else {
      node.outcome = "link";
      node.children.push_back(expand(spec.target));
    }
  }

  static void compare_formulas(CaseNode& node, const LinkSpec& spec, std::size_t d, const QMatrix& tab,
                               const std::optional<LinkFormula>& oracle) {
    if (!oracle) return;
    const QMatrix lat = oracle->matrix(static_cast<long>(d));
    const std::vector<std::pair<std::string, bool>> outputs{
        {"a", true}, {"b", spec.formula->b_out && oracle->b_out}, {"r", spec.formula->r_out && oracle->r_out}};
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      if (!outputs[i].second) continue;
      FormulaCheck fc;
      fc.kind = spec.kind;
      fc.length = d;
      fc.output = outputs[i].first;
      const auto t = row_of(tab, i), l = row_of(lat, i);
      fc.tabulated = form_of(t).to_string();
      fc.lattice = form_of(l).to_string();
      fc.agrees = t == l;
      if (!fc.agrees) {
        if (const Erratum* err = spec.erratum_for(fc.output)) {
          fc.documented = err->corrected.row(static_cast<long>(d)) == l;
          fc.note = err->note;
        }
      }
      node.formula_checks.push_back(std::move(fc));
    }
  }

  static void descent(CaseNode& node, const LinkSpec& spec, const QMatrix& m) {
    auto delta = [&](std::size_t i) {
      auto row = row_of(m, i);
      row[i] -= 1;
      return row;
    };
    const auto da = delta(0);
    if (spec.kind == LinkKind::PHI_8_2_INV) {
      node.descends = negative_on_cone(da, {{0, -1, 0}}, {{0, 0, 1}, {1, 0, 0}});
      node.descent = "a' - a = " + form_of(da).to_string() + (node.descends ? ", negative for b < 0" : ", not negative for b < 0");
    } else if (is_conic_bundle(spec.source) && spec.target == spec.source) {
      const auto db = delta(1);
      const bool a_fixed = std::all_of(da.begin(), da.end(), [](const Rational& q) { return sgn(q) == 0; });
      const bool b_down = negative_on_cone(db, kMaximalCone, {{0, 1, 0}});
      node.descends = a_fixed && b_down;
      node.descent = "a' - a = " + form_of(da).to_string() + ", b' - b = " + form_of(db).to_string() +
                     (node.descends ? ", b decreases for every r > a" : ", no descent");
    } else {
      node.descends = negative_on_cone(da, kMaximalCone);
      node.descent = "a' - a = " + form_of(da).to_string() + (node.descends ? ", negative for every r > a" : ", not negative on r > a");
    }
  }
};

void collect_edges(const CaseNode& n, std::set<ModelEdge>& out) {
  if (n.link && n.target && (n.outcome == "link" || n.outcome == "back-edge")) out.insert({n.model, *n.link, *n.target});
  for (const auto& c : n.children) collect_edges(c, out);
  for (const auto& c : n.exits) collect_edges(c, out);
}

bool closed_leaf(const CaseNode& n) {
  if (n.outcome == "refuted" || n.outcome == "empty") return !n.witnesses.empty();
  if (n.outcome == "back-edge") return n.descends;
  if (n.outcome == "link") return n.descends && n.children.size() == 1 && n.children.front().closed();
  return false;
}

void collect_refutations(const CaseNode& n, const std::string& prefix, std::vector<RefutationWitness>& out) {
  const std::string here = n.is_model_node() ? state_model_name(n.model) : prefix + " / " + n.center;
  if (n.is_model_node() && n.children.empty() && n.exits.empty()) out.push_back({here, n.witnesses});
  if (n.outcome == "refuted" || n.outcome == "empty") out.push_back({here, n.witnesses});
  for (const auto& c : n.children) collect_refutations(c, here, out);
}

void collect_discrepancies(const CaseNode& n, std::vector<std::string>& out) {
  for (const auto& fc : n.formula_checks)
    if (!fc.agrees && !fc.documented)
      out.push_back(link_kind_name(fc.kind) + " d=" + std::to_string(fc.length) + " output " + fc.output + ": tabulated " +
                    fc.tabulated + ", lattice " + fc.lattice);
  for (const auto& c : n.children) collect_discrepancies(c, out);
  for (const auto& c : n.exits) collect_discrepancies(c, out);
}

}  // namespace

nlohmann::json FormulaCheck::to_json() const {
  nlohmann::json j{{"kind", link_kind_name(kind)}, {"length", length}, {"output", output}, {"tabulated", tabulated},
                   {"lattice", lattice},          {"agrees", agrees}, {"documented", documented}};
  if (!note.empty()) j["note"] = note;
  return j;
}

bool CaseNode::closed() const {
  if (is_model_node()) {
    return std::all_of(children.begin(), children.end(), [](const CaseNode& c) { return c.closed(); }) &&
           std::all_of(exits.begin(), exits.end(), [](const CaseNode& c) { return c.closed(); }) &&
           (!children.empty() || !exits.empty() || !witnesses.empty());
  }
  return closed_leaf(*this);
}

nlohmann::json CaseNode::shape() const {
  nlohmann::json j{{"model", state_model_name(model)}, {"outcome", outcome}};
  if (!is_model_node()) {
    j["center"] = center;
    j["length"] = length;
  }
  if (link) j["link"] = link_kind_name(*link);
  if (target) j["target"] = state_model_name(*target);
  j["children"] = nlohmann::json::array();
  for (const auto& c : children) j["children"].push_back(c.shape());
  if (!exits.empty()) {
    j["exits"] = nlohmann::json::array();
    for (const auto& c : exits) j["exits"].push_back(c.shape());
  }
  return j;
}

nlohmann::json CaseNode::to_json(bool full) const {
  nlohmann::json j{{"model", state_model_name(model)}, {"outcome", outcome}};
  if (!is_model_node()) {
    j["center"] = center;
    j["length"] = length;
    j["symbolic"] = symbolic;
  }
  if (!reason.empty()) j["reason"] = reason;
  if (link) j["link"] = link_kind_name(*link);
  if (target) j["target"] = state_model_name(*target);
  if (!descent.empty()) {
    j["descent"] = descent;
    j["descends"] = descends;
  }
  if (full) {
    if (!verdicts.empty()) {
      j["gates"] = nlohmann::json::array();
      for (const auto& v : verdicts) j["gates"].push_back(v.to_json());
    }
    if (!witnesses.empty()) j["witnesses"] = witnesses;
    if (!formula_checks.empty()) {
      j["formula_checks"] = nlohmann::json::array();
      for (const auto& f : formula_checks) j["formula_checks"].push_back(f.to_json());
    }
  }
  j["children"] = nlohmann::json::array();
  for (const auto& c : children) j["children"].push_back(c.to_json(full));
  if (!exits.empty()) {
    j["exits"] = nlohmann::json::array();
    for (const auto& c : exits) j["exits"].push_back(c.to_json(full));
  }
  return j;
}

CaseNode build_case_tree(const LinkTable& table, StateModel start) {
  TreeBuilder builder(table);
  return builder.expand(start);
}

std::vector<ModelEdge> graph_of(const CaseNode& tree) {
  std::set<ModelEdge> edges;
  collect_edges(tree, edges);
  return {edges.begin(), edges.end()};
}

std::vector<ModelEdge> model_graph(const LinkTable& table) { return graph_of(build_case_tree(table, StateModel::X)); }

nlohmann::json Verdict::to_json(bool full_tree) const {
  nlohmann::json path_json = nlohmann::json::array();
  for (auto k : path) path_json.push_back(link_kind_name(k));
  std::string status = reachable ? "reachable" : (all_closed ? "unreachable" : "open");
  return {{"start", state_model_name(start)},
          {"target", state_model_name(target)},
          {"verdict", status},
          {"reachable", reachable},
          {"path", path_json},
          {"all_branches_closed", all_closed},
          {"certification_notes", certification_notes},
          {"undocumented_discrepancies", undocumented_discrepancies},
          {"tree", full_tree ? tree.to_json(true) : tree.to_json(false)}};
}

Verdict prove_unreachable(const LinkTable& table, StateModel start, StateModel target) {
  Verdict v;
  v.start = start;
  v.target = target;
  v.tree = build_case_tree(table, start);
  v.all_closed = v.tree.closed();
  collect_discrepancies(v.tree, v.undocumented_discrepancies);

  // Shortest path by breadth-first search over the tree's edges.
  const auto edges = graph_of(v.tree);
  std::map<StateModel, std::pair<StateModel, LinkKind>> parent;
  std::set<StateModel> seen{start};
  std::deque<StateModel> queue{start};
  while (!queue.empty()) {
    const StateModel m = queue.front();
    queue.pop_front();
    for (const auto& e : edges) {
      if (e.source != m || seen.count(e.target)) continue;
      seen.insert(e.target);
      parent[e.target] = {m, e.kind};
      queue.push_back(e.target);
    }
  }
  v.reachable = seen.count(target) > 0;
  if (v.reachable) {
    for (StateModel m = target; m != start; m = parent.at(m).first) v.path.push_back(parent.at(m).second);
    std::reverse(v.path.begin(), v.path.end());
  }

  for (ModelId id : {ModelId::X_torus, ModelId::X2_quadric}) {
    const auto e = enumerate_orbits(id, kEnumeratedLength);
    v.certification_notes.push_back(model_name(id) + ": orbits of length at most " + std::to_string(kEnumeratedLength) +
                                    " certified complete (" + std::to_string(e.certificates.size()) + " certificates)");
  }
  v.certification_notes.push_back("centres of length 6 are symbolic: every r > a is covered by the formulas");
  v.certification_notes.push_back("position of enumerated centres is decided against the catalog of low-degree invariant curves");
  return v;
}

std::vector<RefutationWitness> refutation_witnesses(const CaseNode& tree) {
  std::vector<RefutationWitness> out;
  collect_refutations(tree, "", out);
  return out;
}

nlohmann::json load_golden_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionViolation("cannot open golden tree " + path);
  return nlohmann::json::parse(in);
}

}  // namespace cremona
