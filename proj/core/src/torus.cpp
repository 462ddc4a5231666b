#include "cremona/geometry/torus.hpp"

#include <algorithm>
#include <set>

#include "cremona/algebra/smith.hpp"
#include "cremona/errors.hpp"

namespace cremona {

namespace {

Rational frac_part(const Rational& q) {
  Rational r = q - Rational(floor_of(q));
  r.canonicalize();
  return r;
}

// Zero pattern of a multi-projective variable on a stratum.
bool variable_vanishes(const TorusStratum& s, std::size_t var) {
  const CoordType t = s[var / 2];
  return (var % 2 == 0) ? t == CoordType::Zero : t == CoordType::Infinity;
}

bool monomial_vanishes(const TorusStratum& s, const Monomial& m) {
  for (std::size_t v = 0; v < m.size(); ++v)
    if (m[v] > 0 && variable_vanishes(s, v)) return true;
  return false;
}

SurfacePoint stratum_point(const TorusStratum& s, const std::vector<std::size_t>& free, const std::vector<int>& sixths) {
  std::vector<CycNum> coords(6);
  for (std::size_t k = 0; k < 3; ++k) {
    switch (s[k]) {
      case CoordType::Zero: coords[2 * k] = 0; coords[2 * k + 1] = 1; break;
      case CoordType::Infinity: coords[2 * k] = 1; coords[2 * k + 1] = 0; break;
      case CoordType::Free: break;
    }
  }
  for (std::size_t i = 0; i < free.size(); ++i) {
    coords[2 * free[i]] = CycNum::sixth_root(sixths[i]);
    coords[2 * free[i] + 1] = 1;
  }
  return make_point(ModelId::X_torus, std::move(coords));
}

}  // namespace

MonomialSolution solve_monomial_system(std::size_t nvars, const std::vector<MonomialEquation>& equations) {
  MonomialSolution out;
  if (equations.empty()) {
    out.free_dimension = nvars;
    out.angles.push_back(std::vector<Rational>(nvars, Rational(0)));
    return out;
  }
  ZMatrix a(equations.size(), nvars);
  for (std::size_t i = 0; i < equations.size(); ++i) {
    if (equations[i].exponents.size() != nvars) throw ArityMismatch("monomial equation arity");
    for (std::size_t j = 0; j < nvars; ++j) a(i, j) = Integer(equations[i].exponents[j]);
  }
  SmithForm snf = smith_normal_form(a);
  // D mu = U phi (mod 1), theta = V mu.
  std::vector<Rational> psi(equations.size(), Rational(0));
  for (std::size_t i = 0; i < equations.size(); ++i)
    for (std::size_t k = 0; k < equations.size(); ++k) psi[i] += Rational(snf.U(i, k)) * equations[k].angle;
  for (std::size_t i = snf.rank; i < equations.size(); ++i)
    if (sgn(frac_part(psi[i])) != 0) {
      out.consistent = false;
      return out;
    }
  out.free_dimension = nvars - snf.rank;

  std::vector<std::vector<Rational>> choices(snf.rank);
  for (std::size_t i = 0; i < snf.rank; ++i) {
    const Integer& d = snf.D(i, i);
    if (d > 720) throw PreconditionViolation("torsion order too large to enumerate");
    for (long k = 0; k < d.get_si(); ++k) choices[i].push_back((psi[i] + Rational(k)) / Rational(d));
  }
  std::vector<std::size_t> idx(snf.rank, 0);
  std::set<std::vector<Rational>> seen;
  for (;;) {
    std::vector<Rational> mu(nvars, Rational(0));
    for (std::size_t i = 0; i < snf.rank; ++i) mu[i] = choices[i][idx[i]];
    std::vector<Rational> theta(nvars, Rational(0));
    for (std::size_t r = 0; r < nvars; ++r) {
      for (std::size_t c = 0; c < nvars; ++c) theta[r] += Rational(snf.V(r, c)) * mu[c];
      theta[r] = frac_part(theta[r]);
    }
    if (seen.insert(theta).second) out.angles.push_back(theta);
    std::size_t pos = 0;
    while (pos < snf.rank && ++idx[pos] == choices[pos].size()) idx[pos++] = 0;
    if (pos == snf.rank) break;
  }
  std::sort(out.angles.begin(), out.angles.end());
  return out;
}

std::string stratum_name(const TorusStratum& s) {
  std::string out;
  for (auto t : s) out += t == CoordType::Zero ? '0' : t == CoordType::Infinity ? 'i' : '*';
  return out;
}

const std::vector<TorusStratum>& torus_strata() {
  static const std::vector<TorusStratum> strata = [] {
    std::vector<TorusStratum> out;
    out.push_back({CoordType::Free, CoordType::Free, CoordType::Free});
    const CoordType types[] = {CoordType::Zero, CoordType::Infinity, CoordType::Free};
    for (auto a : types)
      for (auto b : types)
        for (auto c : types) {
          TorusStratum s{a, b, c};
          bool has_zero = std::count(s.begin(), s.end(), CoordType::Zero) > 0;
          bool has_inf = std::count(s.begin(), s.end(), CoordType::Infinity) > 0;
          // x1 y1 z1 = x0 y0 z0 forces a zero to come with a pole.
          if (has_zero && has_inf) out.push_back(s);
        }
    return out;
  }();
  return strata;
}

TorusStratum stratum_of(const SurfacePoint& p) {
  if (p.model != ModelId::X_torus) throw PreconditionViolation("not a torus point");
  TorusStratum s{};
  for (std::size_t k = 0; k < 3; ++k) {
    if (p.coords[2 * k].is_zero()) s[k] = CoordType::Zero;
    else if (p.coords[2 * k + 1].is_zero()) s[k] = CoordType::Infinity;
    else s[k] = CoordType::Free;
  }
  return s;
}

TorusStratum act_on_stratum(const GroupElem& g, const TorusStratum& s) {
  TorusStratum out{};
  for (std::size_t i = 0; i < 3; ++i) {
    CoordType t = s[i];
    if (g.inv && t != CoordType::Free) t = t == CoordType::Zero ? CoordType::Infinity : CoordType::Zero;
    out[g.perm[i]] = t;
  }
  return out;
}

std::vector<std::size_t> boundary_stratum_orbit_sizes() {
  std::set<TorusStratum> done;
  std::vector<std::size_t> sizes;
  const auto& strata = torus_strata();
  for (std::size_t i = 1; i < strata.size(); ++i) {
    if (done.count(strata[i])) continue;
    std::set<TorusStratum> orbit;
    for (const auto& g : group_all()) orbit.insert(act_on_stratum(g, strata[i]));
    done.insert(orbit.begin(), orbit.end());
    sizes.push_back(orbit.size());
  }
  return sizes;
}

TorusLocus torus_solve(const std::vector<Polynomial>& equations, const Subgroup& group) {
  for (const auto& e : equations) {
    if (e.nvars() != 6) throw ArityMismatch("torus equations live in six variables");
    if (e.term_count() > 2) throw PreconditionViolation("torus solver handles binomial equations only");
  }
  TorusLocus out;
  std::set<SurfacePoint> points;
  for (const auto& stratum : torus_strata()) {
    bool stable = true;
    for (const auto& h : group.elements) stable = stable && act_on_stratum(h, stratum) == stratum;
    if (!stable) continue;

    std::vector<std::size_t> free;
    for (std::size_t k = 0; k < 3; ++k)
      if (stratum[k] == CoordType::Free) free.push_back(k);
    auto free_index = [&](std::size_t coord) {
      return static_cast<std::size_t>(std::find(free.begin(), free.end(), coord) - free.begin());
    };
    const std::size_t n = free.size();
    std::vector<MonomialEquation> system;
    if (n == 3) system.push_back({{1, 1, 1}, Rational(0)});

    bool empty = false;
    std::string unresolved;
    for (const auto& h : group.elements) {
      // h fixes p iff coordinate perm[i] of p equals coordinate i raised to +-1.
      for (std::size_t i : free) {
        std::vector<long> e(n, 0);
        e[free_index(h.perm[i])] += 1;
        e[free_index(i)] -= h.inv ? -1 : 1;
        system.push_back({e, Rational(0)});
      }
    }
    for (const auto& eq : equations) {
      std::vector<std::pair<Monomial, CycNum>> live;
      for (const auto& [m, c] : eq.terms())
        if (!monomial_vanishes(stratum, m)) live.emplace_back(m, c);
      if (live.empty()) continue;
      if (live.size() == 1) {
        empty = true;
        break;
      }
      // m1 / m2 = -c2 / c1 on the free coordinates.
      std::vector<long> e(n, 0);
      // Free coordinates are stored as (t, 1), so only the x1-type exponent counts.
      for (std::size_t k : free) e[free_index(k)] += live[0].first[2 * k] - live[1].first[2 * k];
      const CycNum rhs = -live[1].second / live[0].second;
      auto k = rhs.sixth_root_index();
      if (!k) {
        unresolved = "binomial with right-hand side " + rhs.to_string() + " (not a root of unity) on stratum " +
                     stratum_name(stratum);
        break;
      }
      system.push_back({e, Rational(*k, 6)});
    }
    if (empty) continue;
    if (!unresolved.empty()) {
      out.unresolved.push_back(unresolved);
      continue;
    }
    if (n == 0) {
      points.insert(stratum_point(stratum, free, {}));
      continue;
    }
    MonomialSolution sol = solve_monomial_system(n, system);
    if (!sol.consistent) continue;
    if (sol.free_dimension > 0) {
      out.components.push_back(std::to_string(sol.free_dimension) + "-dimensional family (" +
                               std::to_string(sol.angles.size()) + " cosets) on stratum " + stratum_name(stratum));
      continue;
    }
    for (const auto& theta : sol.angles) {
      std::vector<int> sixths;
      bool representable = true;
      for (const auto& t : theta) {
        Rational six = t * 6;
        if (six.get_den() != 1) {
          representable = false;
          break;
        }
        sixths.push_back(static_cast<int>(six.get_num().get_si()));
      }
      if (!representable) {
        std::string desc = "torsion point with angles";
        for (const auto& t : theta) desc += " " + to_string(t);
        out.unresolved.push_back(desc + " on stratum " + stratum_name(stratum));
        continue;
      }
      points.insert(stratum_point(stratum, free, sixths));
    }
  }
  out.points.assign(points.begin(), points.end());
  return out;
}

}  // namespace cremona
