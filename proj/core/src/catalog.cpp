#include "cremona/links/catalog.hpp"

#include <algorithm>

#include "cremona/errors.hpp"

namespace cremona {

namespace {

struct ModelRow {
  StateModel model;
  const char* name;
  long k2;
};

constexpr ModelRow kModels[] = {
    {StateModel::X, "X", 6}, {StateModel::X2, "X2", 8}, {StateModel::CB0, "CB0", 6},
    {StateModel::CB1, "CB1", 6}, {StateModel::P2, "P2", 9},
};

struct KindRow {
  LinkKind kind;
  const char* name;
};

constexpr KindRow kKinds[] = {
    {LinkKind::PHI_6_1, "PHI_6_1"},         {LinkKind::PHI_6_2, "PHI_6_2"},         {LinkKind::PHI_6_3, "PHI_6_3"},
    {LinkKind::PHI_8_2_PI0, "PHI_8_2_PI0"}, {LinkKind::PHI_8_2_PI1, "PHI_8_2_PI1"}, {LinkKind::ELEM, "ELEM"},
    {LinkKind::PHI_8_2_INV, "PHI_8_2_INV"}, {LinkKind::PHI_8_3_A, "PHI_8_3_A"},     {LinkKind::PHI_8_3_B, "PHI_8_3_B"},
    {LinkKind::PHI_8_6, "PHI_8_6"},
};

AffineForm form(long a, long b, long r, long da = 0, long dr = 0) {
  return {Rational(a), Rational(b), Rational(r), Rational(da), Rational(dr)};
}

std::string term(const Rational& c, const std::string& var, bool first) {
  if (sgn(c) == 0) return "";
  std::string out;
  if (sgn(c) < 0) out += first ? "-" : " - ";
  else if (!first) out += " + ";
  const Rational m = abs(c);
  if (m != 1) out += cremona::to_string(m) + (var.empty() ? "" : "*");
  else if (var.empty()) out += "1";
  return out + var;
}

Rational parse_coefficient(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw PreconditionViolation("formula coefficients must be integers or rational strings");
  Rational q;
  if (q.set_str(j.get<std::string>(), 10) != 0) throw PreconditionViolation("bad rational " + j.get<std::string>());
  q.canonicalize();
  return q;
}

}  // namespace

std::string state_model_name(StateModel m) {
  for (const auto& row : kModels)
    if (row.model == m) return row.name;
  return "?";
}

StateModel parse_state_model(const std::string& name) {
  for (const auto& row : kModels)
    if (name == row.name) return row.model;
  throw PreconditionViolation("unknown model " + name);
}

const std::vector<StateModel>& all_state_models() {
  static const std::vector<StateModel> all{StateModel::X, StateModel::X2, StateModel::CB0, StateModel::CB1, StateModel::P2};
  return all;
}

long state_k_squared(StateModel m) {
  for (const auto& row : kModels)
    if (row.model == m) return row.k2;
  return 0;
}

bool is_conic_bundle(StateModel m) { return m == StateModel::CB0 || m == StateModel::CB1; }

ModelId carrier_model(StateModel m) {
  switch (m) {
    case StateModel::X: return ModelId::X_torus;
    case StateModel::P2: return ModelId::Y_P2;
    default: return ModelId::X2_quadric;
  }
}

std::string link_kind_name(LinkKind k) {
  for (const auto& row : kKinds)
    if (row.kind == k) return row.name;
  return "?";
}

LinkKind parse_link_kind(const std::string& name) {
  for (const auto& row : kKinds)
    if (name == row.name) return row.kind;
  throw PreconditionViolation("unknown link kind " + name);
}

const std::vector<LinkKind>& all_link_kinds() {
  static const std::vector<LinkKind> all = [] {
    std::vector<LinkKind> v;
    for (const auto& row : kKinds) v.push_back(row.kind);
    return v;
  }();
  return all;
}

Rational AffineForm::evaluate(const Rational& va, const Rational& vb, const Rational& vr, long d) const {
  return a * va + b * vb + r * vr + Rational(d) * (da * va + dr * vr);
}

std::vector<Rational> AffineForm::row(long d) const { return {a + Rational(d) * da, b, r + Rational(d) * dr}; }

std::string AffineForm::to_string() const {
  std::string out;
  for (const auto& [c, v] : {std::pair{a, std::string("a")}, {b, "b"}, {r, "r"}, {da, "d*a"}, {dr, "d*r"}}) {
    out += term(c, v, out.empty());
  }
  return out.empty() ? "0" : out;
}

QMatrix LinkFormula::matrix(long d) const {
  QMatrix m(3, 3);
  auto put = [&](std::size_t i, const std::optional<AffineForm>& f) {
    if (!f) return;
    const auto row = f->row(d);
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = row[j];
  };
  put(0, a_out);
  put(1, b_out);
  put(2, r_out);
  return m;
}

const Erratum* LinkSpec::erratum_for(const std::string& output) const {
  for (const auto& e : errata)
    if (e.output == output) return &e;
  return nullptr;
}

const LinkSpec& LinkTable::at(LinkKind k) const {
  for (const auto& s : specs_)
    if (s.kind == k) return s;
  throw PreconditionViolation("link kind missing from table: " + link_kind_name(k));
}

nlohmann::json affine_form_to_json(const AffineForm& f) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [c, v] : {std::pair{f.a, "a"}, {f.b, "b"}, {f.r, "r"}, {f.da, "da"}, {f.dr, "dr"}})
    if (sgn(c) != 0) j[v] = cremona::to_string(c);
  return j;
}

AffineForm affine_form_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw PreconditionViolation("affine form must be an object");
  AffineForm f;
  for (const auto& [key, value] : j.items()) {
    const Rational c = parse_coefficient(value);
    if (key == "a") f.a = c;
    else if (key == "b") f.b = c;
    else if (key == "r") f.r = c;
    else if (key == "da") f.da = c;
    else if (key == "dr") f.dr = c;
    else throw PreconditionViolation("unknown affine form key " + key);
  }
  return f;
}

std::vector<LinkKind> LinkTable::apply_overrides(const nlohmann::json& overrides) {
  std::vector<LinkKind> changed;
  if (!overrides.contains("links") || !overrides["links"].is_array())
    throw PreconditionViolation("override file needs a \"links\" array");
  for (const auto& entry : overrides["links"]) {
    const LinkKind kind = parse_link_kind(entry.at("kind").get<std::string>());
    auto it = std::find_if(specs_.begin(), specs_.end(), [&](const LinkSpec& s) { return s.kind == kind; });
    if (it == specs_.end() || !it->formula) throw PreconditionViolation("link " + link_kind_name(kind) + " has no formula to override");
    const auto& f = entry.at("formula");
    if (f.contains("a")) it->formula->a_out = affine_form_from_json(f["a"]);
    if (f.contains("b")) it->formula->b_out = affine_form_from_json(f["b"]);
    if (f.contains("r")) it->formula->r_out = affine_form_from_json(f["r"]);
    changed.push_back(kind);
  }
  return changed;
}

nlohmann::json LinkTable::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : specs_) {
    nlohmann::json j{{"kind", link_kind_name(s.kind)},
                     {"source", state_model_name(s.source)},
                     {"target", state_model_name(s.target)},
                     {"center_lengths", s.center_lengths},
                     {"refuted", s.refuted},
                     {"description", s.description}};
    if (s.formula) {
      nlohmann::json f{{"a", s.formula->a_out.to_string()}};
      if (s.formula->b_out) f["b"] = s.formula->b_out->to_string();
      if (s.formula->r_out) f["r"] = s.formula->r_out->to_string();
      j["formula"] = f;
    }
    for (const auto& e : s.errata)
      j["errata"].push_back({{"output", e.output}, {"corrected", e.corrected.to_string()}, {"note", e.note}});
    out.push_back(j);
  }
  return out;
}

LinkTable default_link_table() {
  std::vector<LinkSpec> specs;
  const Rational half = make_rational(1, 2);

  LinkSpec s61{LinkKind::PHI_6_1, StateModel::X, StateModel::X2, {1}, "A", false, {}, {},
               "blow up the fixed point, contract the three curves x=1, y=1, z=1 onto the quadric"};
  s61.formula = LinkFormula{{3 * half, 0, -half, 0, 0}, std::nullopt, form(2, 0, -1)};
  specs.push_back(s61);

  LinkSpec s62{LinkKind::PHI_6_2, StateModel::X, StateModel::X, {2}, "P+-1", false, {}, {},
               "blow up the pair, contract the residual pair of the anticanonical section through it"};
  s62.formula = LinkFormula{form(2, 0, -1), std::nullopt, form(3, 0, -2)};
  specs.push_back(s62);

  specs.push_back(LinkSpec{LinkKind::PHI_6_3, StateModel::X, StateModel::X, {3}, "", true, std::nullopt, {},
                           "no link: the blow-up of the length-3 orbit carries invariant (-2)-curves"});

  for (auto [kind, target, label] : {std::tuple{LinkKind::PHI_8_2_PI0, StateModel::CB0, "conics through the pair on w=0"},
                                     std::tuple{LinkKind::PHI_8_2_PI1, StateModel::CB1, "conics through the pair fixed by S3"}}) {
    LinkSpec s{kind, StateModel::X2, target, {2}, "", false, {}, {}, std::string("blow up a pair; fibration by ") + label};
    s.formula = LinkFormula{form(2, 0, -1), form(-2, 0, 2), std::nullopt};
    specs.push_back(s);
  }

  LinkSpec elem{LinkKind::ELEM, StateModel::CB1, StateModel::CB1, {3, 6}, "complement", false, {}, {},
                "elementary transformation: blow up the orbit, contract the fibres through it"};
  elem.formula = LinkFormula{form(1, 0, 0), form(0, 1, 0, 1, -1), form(-2, 0, 2)};
  elem.errata.push_back({"r", form(2, 0, -1),
                         "the class maps x -> d f - x, -K -> -K + d f - 2x give 2a - r, not 2(r - a)"});
  specs.push_back(elem);

  LinkSpec inv{LinkKind::PHI_8_2_INV, StateModel::CB1, StateModel::X2, {}, "P+-1", false, {}, {},
               "contract the invariant pair of sections back to the quadric"};
  inv.formula = LinkFormula{{1, make_rational(2, 3), 0, 0, 0}, std::nullopt, form(1, 1, 0)};
  inv.errata.push_back({"a", AffineForm{1, half, 0, 0, 0},
                        "the class maps -K -> -K' - x, 2f -> -K' - 2x give a1 + b1/2, not a1 + 2b1/3"});
  specs.push_back(inv);

  for (auto [kind, label] : {std::pair{LinkKind::PHI_8_3_A, "orbit A"}, std::pair{LinkKind::PHI_8_3_B, "orbit B"}}) {
    LinkSpec s{kind, StateModel::X2, StateModel::X, {3}, "P", false, {}, {},
               std::string("blow up ") + label + " on the conic w=0, contract the strict transform of that conic"};
    s.formula = LinkFormula{form(2, 0, -1), std::nullopt, form(4, 0, -3)};
    specs.push_back(s);
  }

  LinkSpec geiser{LinkKind::PHI_8_6, StateModel::X2, StateModel::X2, {6}, "image of the length-6 orbit", false, {}, {},
                  "Geiser involution of the degree 2 blow-up"};
  geiser.formula = LinkFormula{form(7, 0, -6), std::nullopt, form(8, 0, -7)};
  specs.push_back(geiser);

  return LinkTable(std::move(specs));
}

}  // namespace cremona
