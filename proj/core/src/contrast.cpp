#include "cremona/prover/contrast.hpp"

#include <optional>
#include <random>

#include "cremona/errors.hpp"
#include "cremona/geometry/maps.hpp"
#include "cremona/geometry/model.hpp"
#include "cremona/geometry/orbits.hpp"

namespace cremona {

namespace {

std::string coords_to_string(const std::vector<CycNum>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].to_string();
  return out + ")";
}

// The plane w = 0 is invariant under the whole group; g acts on it by the
// restriction of its linear action on the quadric's ambient space.
std::vector<CycNum> plane_act(const GroupElem& g, const std::vector<CycNum>& q) {
  const CMatrix m = *linear_action(ModelId::X2_quadric, g);
  std::vector<CycNum> out(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out[i] += m(i, j) * q[j];
  for (std::size_t j = 0; j < 3; ++j)
    if (!(m(3, j) * q[j]).is_zero()) throw PreconditionViolation("plane w=0 is not invariant under " + g.name());
  return out;
}

std::vector<CycNum> projective(std::vector<CycNum> v) {
  for (const auto& c : v) {
    if (c.is_zero()) continue;
    const CycNum s = c.inv();
    for (auto& x : v) x *= s;
    break;
  }
  return v;
}

struct Sample {
  std::vector<CycNum> xyz;
  SurfacePoint on_quadric;
  std::vector<CycNum> projected;
};

// nullopt when the point meets the exceptional locus of one of the maps.
std::optional<Sample> prepare(const CycNum& x, const CycNum& y) {
  const CycNum z = (x * y).inv();
  auto q = torus_to_quadric(x, y, z);
  if (!q) return std::nullopt;
  try {
    auto proj = projective(project_from_p1(*q));
    return Sample{{x, y, z}, *q, proj};
  } catch (const UndefinedImage&) {
    return std::nullopt;
  }
}

// g . phi(p) == phi(g . p), exactly and projectively.
bool equivariant_at(const GroupElem& g, const Sample& s) {
  const SurfacePoint moved = act(g, s.on_quadric);
  try {
    return projective(plane_act(g, s.projected)) == projective(project_from_p1(moved));
  } catch (const UndefinedImage&) {
    return false;
  }
}

void record(EquivarianceRun& run, bool ok, const Sample& s) {
  if (ok) {
    ++run.passed;
    return;
  }
  if (run.failed++ == 0) run.first_failure = "torus point " + coords_to_string(s.xyz) + " -> " + s.on_quadric.to_string();
}

nlohmann::json run_json(const EquivarianceRun& r) {
  nlohmann::json j{{"element", r.element.name()}, {"passed", r.passed}, {"failed", r.failed}};
  if (!r.first_failure.empty()) j["first_failure"] = r.first_failure;
  return j;
}

}  // namespace

bool ContrastReport::reachable() const {
  for (const auto& c : fixed_points)
    if (!c.holds) return false;
  for (const auto& c : examples)
    if (!c.holds) return false;
  for (const auto& r : subgroup_runs)
    if (r.failed != 0 || r.passed != samples) return false;
  return round_trip_passed == samples && samples > 0 && negative_control.failed > 0;
}

nlohmann::json ContrastReport::to_json() const {
  auto checks = [](const std::vector<ContrastCheck>& cs) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : cs) a.push_back({{"name", c.name}, {"holds", c.holds}, {"detail", c.detail}});
    return a;
  };
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& r : subgroup_runs) runs.push_back(run_json(r));
  return {{"seed", std::to_string(seed)},
          {"samples", samples},
          {"skipped", skipped},
          {"fixed_points", checks(fixed_points)},
          {"examples", checks(examples)},
          {"equivariance", runs},
          {"round_trip_passed", round_trip_passed},
          {"negative_control", run_json(negative_control)},
          {"verdict", reachable() ? "reachable" : "failed"}};
}

ContrastReport s3_contrast(std::uint64_t seed, std::size_t samples) {
  ContrastReport rep;
  rep.seed = seed;
  const Subgroup s3 = s3_subgroup();
  const CycNum w = CycNum::omega();

  auto fixed_check = [&](const std::string& name, const SurfacePoint& p) {
    bool ok = true;
    for (const auto& g : s3.elements) ok = ok && act(g, p) == p;
    rep.fixed_points.push_back({name, ok, p.to_string() + (ok ? " is fixed by S3" : " is moved by S3")});
  };
  fixed_check("P on the torus", torus_point(1, 1, 1));
  fixed_check("P1 on the torus", torus_point(w, w, w));
  fixed_check("P-1 on the torus", torus_point(w * w, w * w, w * w));
  const SurfacePoint p1 = make_point(ModelId::X2_quadric, {1, 1, 1, 1});
  const SurfacePoint pm1 = make_point(ModelId::X2_quadric, {1, 1, 1, -1});
  fixed_check("P1 on the quadric", p1);
  fixed_check("P-1 on the quadric", pm1);
  {
    const auto a = torus_to_quadric(w, w, w), b = torus_to_quadric(w * w, w * w, w * w);
    const bool ok = a && b && ((*a == p1 && *b == pm1) || (*a == pm1 && *b == p1));
    rep.fixed_points.push_back({"the pair goes to P1 and P-1", ok,
                                (a ? a->to_string() : "undefined") + ", " + (b ? b->to_string() : "undefined")});
  }

  // Exceptional checks at named points.
  {
    std::string detail;
    bool ok = true;
    try {
      detail = "projection of P-1 = " + coords_to_string(project_from_p1(pm1));
    } catch (const UndefinedImage& e) {
      ok = false;
      detail = e.what();
    }
    rep.examples.push_back({"projection defined at P-1", ok, detail});
  }
  {
    const auto s = prepare(CycNum(2), CycNum(3));
    bool ok = s.has_value();
    std::string detail = "undefined at (2, 3, 1/6)";
    if (s) {
      for (const auto& g : {GroupElem::sigma_xy(), GroupElem::sigma_xyz()}) ok = ok && equivariant_at(g, *s);
      detail = "(2, 3, 1/6) -> " + s->on_quadric.to_string() + " -> " + coords_to_string(s->projected);
    }
    rep.examples.push_back({"equivariance at the image of (2, 3, 1/6)", ok, detail});
  }

  // Generic round trip at a point fixed by no group element.
  {
    const auto s = prepare(CycNum(2), CycNum(5));
    bool ok = false;
    std::string detail = "sample on the exceptional locus";
    if (s) {
      ok = stabilizer_of(s->on_quadric).order() == 1;
      const auto back = unproject_to_quadric(s->projected);
      ok = ok && back && *back == s->on_quadric;
      detail = s->on_quadric.to_string() + " has trivial stabilizer and returns to itself";
    }
    rep.examples.push_back({"round trip at a free point", ok, detail});
  }

  rep.subgroup_runs = {{GroupElem::sigma_xy()}, {GroupElem::sigma_xyz()}};
  rep.negative_control.element = GroupElem::tau();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-12, 12), den(1, 12);
  auto draw = [&]() {
    long n = 0;
    while (n == 0) n = num(rng);
    return CycNum(Rational(n, den(rng)));
  };
  const std::size_t max_draws = samples * 20;
  std::size_t draws = 0;
  while (rep.samples < samples) {
    if (++draws > max_draws) throw PreconditionViolation("too many samples on the exceptional locus");
    const CycNum x = draw(), y = draw();
    const auto s = prepare(x, y);
    const auto back = s ? unproject_to_quadric(s->projected) : std::nullopt;
    if (!s || !back) {
      ++rep.skipped;
      continue;
    }
    ++rep.samples;
    if (*back == s->on_quadric) ++rep.round_trip_passed;
    for (auto& run : rep.subgroup_runs) record(run, equivariant_at(run.element, *s), *s);
    record(rep.negative_control, equivariant_at(rep.negative_control.element, *s), *s);
  }
  return rep;
}

}  // namespace cremona
