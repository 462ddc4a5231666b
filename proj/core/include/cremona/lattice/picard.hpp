#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cremona/algebra/group.hpp"
#include "cremona/algebra/matrix.hpp"
#include "cremona/geometry/model.hpp"
#include "cremona/geometry/orbits.hpp"

namespace cremona {

/// Integer coordinates of a divisor class in a lattice basis.
using DivClass = std::vector<Integer>;

DivClass make_class(const std::vector<long>& coeffs);
DivClass operator+(const DivClass& a, const DivClass& b);
DivClass operator-(const DivClass& a, const DivClass& b);
DivClass operator*(const Integer& s, const DivClass& a);
std::string class_to_string(const DivClass& c, const std::vector<std::string>& labels);

/// Picard lattice of a G-surface: intersection form, canonical class and
/// the action of every group element.
struct GPicardLattice {
  std::string name;
  std::vector<std::string> labels;
  ZMatrix gram;
  DivClass K;
  /// Indexed by GroupElem::index().
  std::vector<ZMatrix> action;
  /// Model whose points the exceptional classes sit over, if any.
  std::optional<ModelId> model;
  /// Number of basis vectors that are not exceptional classes of blow-ups
  /// recorded below.
  std::size_t base_rank = 0;
  /// Centre of each exceptional class (index base_rank + i), when the blow-up
  /// was made at actual points.
  std::vector<SurfacePoint> blown_points;

  std::size_t rank() const { return labels.size(); }
  Integer dot(const DivClass& a, const DivClass& b) const;
  Integer square(const DivClass& a) const { return dot(a, a); }
  Integer k_squared() const { return square(K); }
  /// Anticanonical degree -K.D.
  Integer degree(const DivClass& a) const;
  const ZMatrix& matrix_of(const GroupElem& g) const { return action.at(static_cast<std::size_t>(g.index())); }
  DivClass act(const GroupElem& g, const DivClass& d) const { return matrix_of(g).apply(d); }
  /// Unit vector of basis element i.
  DivClass basis_vector(std::size_t i) const;
  /// Pads a class of a sublattice (first coordinates) with zeros.
  DivClass extend(const DivClass& d) const;
  /// Sum of the exceptional classes beyond base_rank.
  DivClass exceptional_sum() const;
};

/// Checks of the lattice invariants: isometries fixing K, homomorphism on all
/// pairs, signature (1, rank-1). Returns failure messages (empty when sound).
std::vector<std::string> lattice_invariant_failures(const GPicardLattice& lattice);

/// Degree 6 del Pezzo of the torus model: basis (h, e1, e2, e3).
GPicardLattice dp6_lattice();
/// The quadric: basis (f1, f2) of the two rulings.
GPicardLattice quadric_lattice();
/// The plane: basis (h).
GPicardLattice p2_lattice();

/// Integral basis of the sublattice fixed by every action matrix. A rank-one
/// answer is oriented to have positive anticanonical degree.
std::vector<DivClass> invariant_sublattice(const GPicardLattice& lattice);

struct BlowupResult {
  GPicardLattice lattice;
  /// Exceptional classes, in the order of the blown-up points.
  std::vector<DivClass> exceptional;
  /// Old classes into the new basis (rank_new x rank_old) and back.
  ZMatrix pullback;
  ZMatrix pushforward;
};

/// Blow-up at d points permuted by G: permutations[g.index()][i] is the
/// position of g(point i). Labels name the new exceptional classes.
BlowupResult blow_up(const GPicardLattice& lattice, const std::vector<std::vector<std::size_t>>& permutations,
                     const std::vector<std::string>& labels, const std::vector<SurfacePoint>& points = {});
/// Blow-up at the points of an orbit on the lattice's model.
BlowupResult blow_up_orbit(const GPicardLattice& lattice, const Orbit& orbit);
/// Blow-up at an abstract orbit G/H (used for symbolic centres that are
/// never located as points).
BlowupResult blow_up_coset_space(const GPicardLattice& lattice, const Subgroup& stabilizer, const std::string& prefix);

/// Gram matrix, K, labels and action matrices keyed by group element name.
nlohmann::json lattice_to_json(const GPicardLattice& lattice);
nlohmann::json class_to_json(const DivClass& c);

}  // namespace cremona
