#include "cremona/lattice/pushforward.hpp"

#include "cremona/errors.hpp"

namespace cremona {

namespace {

std::vector<Rational> to_rational(const DivClass& d) {
  std::vector<Rational> out;
  for (const auto& c : d) out.emplace_back(c);
  return out;
}

void axpy(std::vector<Rational>& y, const Rational& a, const std::vector<Rational>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

Rational qdot(const GPicardLattice& l, const std::vector<Rational>& a, const DivClass& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < l.rank(); ++j)
      if (sgn(l.gram(i, j)) != 0) s += a[i] * Rational(l.gram(i, j) * b[j]);
  return s;
}

}  // namespace

std::vector<Rational> source_system_class(const ContractionData& d, const SourceSystem& sys) {
  const auto& z = d.z;
  DivClass centre_sum(z.rank(), Integer(0));
  for (const auto& e : d.centre) centre_sum = centre_sum + e;
  // Pullback of -K_source is -K_Z + sum E.
  std::vector<Rational> h(z.rank(), Rational(0));
  axpy(h, sys.a, to_rational(Integer(-1) * z.K + centre_sum));
  axpy(h, -sys.r, to_rational(centre_sum));
  if (sgn(sys.b) != 0) {
    if (!d.source_fiber) throw InconsistentContraction("fibre coefficient given but the source has no fibration");
    axpy(h, sys.b, to_rational(*d.source_fiber));
  }
  return h;
}

TargetSystem pushforward_system(const ContractionData& d, const SourceSystem& sys) {
  const auto& z = d.z;
  for (std::size_t i = 0; i < d.contracted.size(); ++i) {
    const auto& f = d.contracted[i];
    if (z.square(f) != -1 || z.degree(f) != 1) throw InconsistentContraction("contracted class is not a (-1)-class");
    for (std::size_t j = i + 1; j < d.contracted.size(); ++j)
      if (sgn(z.dot(f, d.contracted[j])) != 0) throw InconsistentContraction("contracted classes meet");
  }
  std::vector<Rational> h = source_system_class(d, sys);
  TargetSystem out;
  DivClass contracted_sum(z.rank(), Integer(0));
  for (std::size_t j = 0; j < d.contracted.size(); ++j) {
    const Rational m = qdot(z, h, d.contracted[j]);
    if (j == 0) out.multiplicity = m;
    else if (m != out.multiplicity) throw InconsistentContraction("multiplicities along the contracted orbit differ");
    contracted_sum = contracted_sum + d.contracted[j];
  }
  std::vector<Rational> pulled = h;
  axpy(pulled, out.multiplicity, to_rational(contracted_sum));

  // Unknowns a' (and b'): columns -K_Z + sum F, and the target fibre.
  std::vector<std::vector<Rational>> cols{to_rational(Integer(-1) * z.K + contracted_sum)};
  if (d.target_fiber) {
    for (const auto& f : d.contracted)
      if (sgn(z.dot(*d.target_fiber, f)) != 0) throw InconsistentContraction("target fibre meets a contracted class");
    cols.push_back(to_rational(*d.target_fiber));
  }
  const QMatrix system = QMatrix::from_columns(cols, z.rank());
  const auto solution = system.solve(pulled);
  if (!solution) throw InconsistentContraction("transformed system is not a combination of -K' and the fibre");
  out.a = (*solution)[0];
  if (d.target_fiber) out.b = (*solution)[1];
  return out;
}

}  // namespace cremona
