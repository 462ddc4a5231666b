#pragma once

#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cremona/geometry/orbits.hpp"
#include "cremona/geometry/pencil.hpp"
#include "cremona/lattice/position.hpp"
#include "cremona/lattice/pushforward.hpp"
#include "cremona/links/catalog.hpp"

namespace cremona {

/// Linear system a(-K) + b f with multiplicities at labelled centres.
struct LinkState {
  StateModel model = StateModel::X;
  Rational a = 0;
  Rational b = 0;
  std::map<std::string, Rational> mults;

  Rational multiplicity(const std::string& label) const;
  nlohmann::json to_json() const;
};

/// A candidate centre: an enumerated orbit, or a symbolic orbit of the given
/// length standing for a positive-dimensional family.
struct CenterSpec {
  std::string label;
  StateModel model = StateModel::X;
  std::size_t length = 0;
  std::optional<Orbit> orbit;

  bool symbolic() const { return !orbit.has_value(); }
  nlohmann::json to_json() const;
};

enum class GateReason { Ok, NoetherFail, LengthFail, PositionFail };
std::string gate_reason_name(GateReason r);

struct GateVerdict {
  bool admissible = true;
  GateReason reason = GateReason::Ok;
  std::string detail;
  /// Curves whose strict transforms break the del Pezzo condition.
  std::vector<CurveWitness> curve_witnesses;
  /// Fibre incidences breaking the conic bundle condition.
  std::vector<std::string> fiber_witnesses;

  nlohmann::json to_json() const;
};

/// Orbit length must divide 12 and, on del Pezzo models, stay below K^2;
/// the multiplicity must exceed a.
GateVerdict noether_gate(const LinkState& state, const CenterSpec& center);
/// del Pezzo models: no strict transform of a catalog curve through the
/// centre has square below -1 or nonpositive degree. Conic bundles: no centre
/// point on a reducible fibre or a base point, and one point per fibre.
/// Symbolic centres are assumed general.
GateVerdict position_gate(const CenterSpec& center);

/// The pencil whose fibres form the conic bundle.
PencilSpec conic_bundle_pencil(StateModel m);

/// Resolution data of a link computed from the lattices alone: the source
/// blown up at a centre of length d, the second extremal ray, fibre classes.
/// Empty for links with no del Pezzo resolution.
std::optional<ContractionData> link_contraction(LinkKind kind, std::size_t d);

/// The orbit a link is resolved at, for links tied to one enumerated orbit;
/// empty for links whose centre is any orbit of an allowed length.
std::optional<Orbit> link_center_orbit(LinkKind kind);

/// The lattice computation as affine forms in (a, b, r) for centres of length
/// d; it is linear, so its values on unit inputs determine it.
std::optional<LinkFormula> oracle_formula(LinkKind kind, std::size_t d);

struct Discrepancy {
  std::string output;
  Rational formula_value;
  Rational oracle_value;
  /// The table carries an erratum for this output that matches the oracle.
  bool documented = false;
  std::string note;

  nlohmann::json to_json() const;
};

struct LinkApplication {
  LinkKind kind;
  std::string center_label;
  std::size_t center_length = 0;
  LinkState before;
  LinkState formula_result;
  std::optional<LinkState> oracle_result;
  /// The state carried forward: the oracle result when one exists.
  LinkState after;
  std::vector<Discrepancy> discrepancies;
  GateVerdict noether;
  GateVerdict position;

  bool has_undocumented_discrepancy() const;
  nlohmann::json to_json() const;
};

enum class GateMode { Enforce, OracleValidation };

/// Applies a link. With GateMode::Enforce a failing gate throws
/// GateViolation. The formula and the lattice oracle are both evaluated and
/// every disagreement is listed.
LinkApplication apply_link(const LinkTable& table, LinkKind kind, const LinkState& state, const CenterSpec& center,
                           GateMode mode = GateMode::Enforce);

struct UntwistStep {
  std::size_t length;
  Rational multiplicity;
};

struct UntwistTrace {
  std::vector<LinkApplication> steps;
  LinkState final_state;
  bool reached_negative_fiber_coefficient = false;
  std::string note;

  nlohmann::json to_json() const;
};

/// Iterated elementary transformations on the conic bundle; stops at the
/// first state with b < 0. Throws NonProgress when a step has r <= a.
UntwistTrace untwist_conic_bundle(const LinkTable& table, const LinkState& start, const std::vector<UntwistStep>& centers);

struct IdentityCheck {
  std::string name;
  bool holds = false;
  /// Required checks decide pass/fail; the others are reported only.
  bool required = true;
  std::string detail;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool passed() const;
  nlohmann::json to_json() const;
};

/// Symbolic composition identities of the table, agreement of every formula
/// with the lattice oracle on a grid of inputs, and the cross-check of the
/// return link from the conic bundle.
IdentityReport involution_identities(const LinkTable& table);

/// L < 0 on the open cone spanned by `rays`, and L vanishes on `lines`.
bool negative_on_cone(const std::vector<Rational>& l, const std::vector<std::vector<Rational>>& rays,
                      const std::vector<std::vector<Rational>>& lines = {});

}  // namespace cremona
