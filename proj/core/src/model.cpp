#include "cremona/geometry/model.hpp"

#include <map>

#include "cremona/errors.hpp"

namespace cremona {

namespace {

Polynomial var(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }

SurfaceModel build_model(ModelId id) {
  SurfaceModel m{id, {}, {}, {}};
  switch (id) {
    case ModelId::Y_P2:
      m.factors = {3};
      m.variables = {"u0", "u1", "u2"};
      break;
    case ModelId::X_torus: {
      m.factors = {2, 2, 2};
      m.variables = {"x1", "x0", "y1", "y0", "z1", "z0"};
      auto v = [](std::size_t i) { return var(6, i); };
      m.equations.push_back(v(0) * v(2) * v(4) - v(1) * v(3) * v(5));
      break;
    }
    case ModelId::X0_cubic: {
      m.factors = {4};
      m.variables = {"x", "y", "z", "w"};
      auto v = [](std::size_t i) { return var(4, i); };
      m.equations.push_back(v(0) * v(1) * v(2) - pow(v(3), 3));
      break;
    }
    case ModelId::X1_cubic: {
      m.factors = {4};
      m.variables = {"x", "y", "z", "w"};
      auto v = [](std::size_t i) { return var(4, i); };
      const CycNum a(Rational(1, 3));
      m.equations.push_back(v(0) * v(1) * v(2) - a * (pow(v(3), 2) * (v(0) + v(1) + v(2))));
      break;
    }
    case ModelId::X2_quadric: {
      m.factors = {4};
      m.variables = {"x", "y", "z", "w"};
      auto v = [](std::size_t i) { return var(4, i); };
      m.equations.push_back(v(0) * v(1) + v(1) * v(2) + v(2) * v(0) - CycNum(3) * pow(v(3), 2));
      break;
    }
  }
  return m;
}

// Position that coordinate k of g(v) is read from: (g v)[g.perm[i]] = v[i].
std::size_t source_of(const GroupElem& g, std::size_t k) {
  for (std::size_t i = 0; i < 3; ++i)
    if (g.perm[i] == k) return i;
  return k;
}

CMatrix y_p2_matrix(const GroupElem& g) {
  // (x, y, z) * u0 as linear forms in (u0, u1, u2).
  const std::vector<std::vector<CycNum>> forms = {{0, 1, 0}, {0, 0, 1}, {0, -1, -1}};
  const CycNum s = g.inv ? CycNum(-1) : CycNum(1);
  CMatrix m(3, 3);
  m(0, 0) = CycNum(1);
  for (std::size_t r = 1; r <= 2; ++r) {
    const auto& f = forms[source_of(g, r - 1)];
    for (std::size_t c = 0; c < 3; ++c) m(r, c) = s * f[c];
  }
  return m;
}

CMatrix space_matrix(const GroupElem& g) {
  const CycNum s = g.inv ? CycNum(-1) : CycNum(1);
  CMatrix m(4, 4);
  for (std::size_t i = 0; i < 3; ++i) m(g.perm[i], i) = s;
  m(3, 3) = CycNum(1);
  return m;
}

CMatrix s3_space_matrix(const GroupElem& g) {
  CMatrix m(4, 4);
  for (std::size_t i = 0; i < 3; ++i) m(g.perm[i], i) = CycNum(1);
  m(3, 3) = CycNum(1);
  return m;
}

}  // namespace

std::string model_name(ModelId id) {
  switch (id) {
    case ModelId::Y_P2: return "Y_P2";
    case ModelId::X_torus: return "X_torus";
    case ModelId::X0_cubic: return "X0_cubic";
    case ModelId::X1_cubic: return "X1_cubic";
    case ModelId::X2_quadric: return "X2_quadric";
  }
  return "?";
}

ModelId parse_model_name(const std::string& name) {
  for (ModelId id : {ModelId::Y_P2, ModelId::X_torus, ModelId::X0_cubic, ModelId::X1_cubic,
                     ModelId::X2_quadric})
    if (model_name(id) == name) return id;
  throw PreconditionViolation("unknown model '" + name + "'");
}

std::size_t SurfaceModel::arity() const {
  std::size_t n = 0;
  for (auto f : factors) n += f;
  return n;
}

bool SurfaceModel::action_is_linear() const {
  return id == ModelId::Y_P2 || id == ModelId::X1_cubic || id == ModelId::X2_quadric;
}

const SurfaceModel& surface_model(ModelId id) {
  static const std::map<ModelId, SurfaceModel> models = [] {
    std::map<ModelId, SurfaceModel> out;
    for (ModelId m : {ModelId::Y_P2, ModelId::X_torus, ModelId::X0_cubic, ModelId::X1_cubic,
                      ModelId::X2_quadric})
      out.emplace(m, build_model(m));
    return out;
  }();
  return models.at(id);
}

std::vector<CycNum> normalize_coords(ModelId model, std::vector<CycNum> coords) {
  const auto& m = surface_model(model);
  if (coords.size() != m.arity()) throw ArityMismatch("coordinate tuple has wrong arity for " + model_name(model));
  std::size_t start = 0;
  for (auto len : m.factors) {
    std::size_t lead = start;
    while (lead < start + len && coords[lead].is_zero()) ++lead;
    if (lead == start + len) throw PreconditionViolation("projective factor is identically zero");
    const CycNum scale = coords[lead].inv();
    for (std::size_t i = start; i < start + len; ++i) coords[i] *= scale;
    start += len;
  }
  return coords;
}

bool contains(ModelId model, const std::vector<CycNum>& coords) {
  const auto& m = surface_model(model);
  auto normalized = normalize_coords(model, coords);
  for (const auto& eq : m.equations)
    if (!eq.evaluate(normalized).is_zero()) return false;
  return true;
}

SurfacePoint make_point(ModelId model, std::vector<CycNum> coords) {
  auto normalized = normalize_coords(model, std::move(coords));
  if (!contains(model, normalized)) throw PreconditionViolation("point is not on " + model_name(model));
  return SurfacePoint{model, std::move(normalized)};
}

SurfacePoint torus_point(const CycNum& x, const CycNum& y, const CycNum& z) {
  return make_point(ModelId::X_torus, {x, CycNum(1), y, CycNum(1), z, CycNum(1)});
}

std::optional<std::vector<CycNum>> torus_affine(const SurfacePoint& p) {
  if (p.model != ModelId::X_torus) throw PreconditionViolation("not a torus point");
  std::vector<CycNum> out;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& a = p.coords[2 * k];
    const auto& b = p.coords[2 * k + 1];
    if (a.is_zero() || b.is_zero()) return std::nullopt;
    out.push_back(a / b);
  }
  return out;
}

std::optional<CMatrix> linear_action(ModelId model, const GroupElem& g) {
  switch (model) {
    case ModelId::Y_P2: return y_p2_matrix(g);
    case ModelId::X1_cubic:
    case ModelId::X2_quadric: return space_matrix(g);
    case ModelId::X_torus:
    case ModelId::X0_cubic: return std::nullopt;
  }
  return std::nullopt;
}

SurfacePoint act(const GroupElem& g, const SurfacePoint& p) {
  const ModelId model = p.model;
  if (auto m = linear_action(model, g)) return SurfacePoint{model, normalize_coords(model, m->apply(p.coords))};
  if (model == ModelId::X_torus) {
    std::vector<CycNum> out(6);
    for (std::size_t i = 0; i < 3; ++i) {
      const std::size_t k = g.perm[i];
      out[2 * k] = g.inv ? p.coords[2 * i + 1] : p.coords[2 * i];
      out[2 * k + 1] = g.inv ? p.coords[2 * i] : p.coords[2 * i + 1];
    }
    return SurfacePoint{model, normalize_coords(model, std::move(out))};
  }
  // X0: permutations are linear, the Z2 factor is the coordinatewise inversion.
  std::vector<CycNum> v = s3_space_matrix(g).apply(p.coords);
  if (g.inv) {
    const auto& c = v;
    std::vector<CycNum> inv = {c[1] * c[2] * c[3], c[0] * c[2] * c[3], c[0] * c[1] * c[3],
                               c[0] * c[1] * c[2]};
    bool all_zero = true;
    for (const auto& x : inv) all_zero = all_zero && x.is_zero();
    if (all_zero) throw UndefinedImage("inversion is undefined at " + p.to_string());
    v = std::move(inv);
  }
  return SurfacePoint{model, normalize_coords(model, std::move(v))};
}

Polynomial act_on_polynomial(ModelId model, const GroupElem& g, const Polynomial& f) {
  const auto& m = surface_model(model);
  const std::size_t n = m.arity();
  if (f.nvars() != n) throw ArityMismatch("polynomial arity does not match model");
  std::vector<Polynomial> images;
  if (auto mat = linear_action(model, g)) {
    // g(C) = {f o g^-1 = 0}.
    CMatrix inv = mat->inverse();
    for (std::size_t i = 0; i < n; ++i) images.push_back(Polynomial::linear(inv.row(i)));
    return f.substitute(images);
  }
  if (model != ModelId::X_torus) throw PreconditionViolation("no polynomial action on " + model_name(model));
  const GroupElem h = g.inverse();
  images.resize(6);
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t src = source_of(h, k);
    const std::size_t a = 2 * src + (h.inv ? 1 : 0);
    const std::size_t b = 2 * src + (h.inv ? 0 : 1);
    images[2 * k] = Polynomial::variable(6, a);
    images[2 * k + 1] = Polynomial::variable(6, b);
  }
  return f.substitute(images);
}

std::string SurfacePoint::to_string() const {
  const auto& m = surface_model(model);
  std::string out = "(";
  std::size_t start = 0;
  for (std::size_t f = 0; f < m.factors.size(); ++f) {
    if (f > 0) out += ",";
    if (m.is_multiprojective()) out += "(";
    for (std::size_t i = 0; i < m.factors[f]; ++i) {
      if (i > 0) out += ",";
      out += coords[start + i].to_string();
    }
    if (m.is_multiprojective()) out += ")";
    start += m.factors[f];
  }
  return out + ")";
}

}  // namespace cremona
