#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cremona/algebra/matrix.hpp"
#include "cremona/algebra/rational.hpp"
#include "cremona/geometry/model.hpp"

namespace cremona {

/// Models visited by the link search. The conic bundles are the quadric
/// blown up at one of its two orbits of length 2.
enum class StateModel { X, X2, CB0, CB1, P2 };

std::string state_model_name(StateModel m);
/// Throws PreconditionViolation on an unknown name.
StateModel parse_state_model(const std::string& name);
const std::vector<StateModel>& all_state_models();
long state_k_squared(StateModel m);
bool is_conic_bundle(StateModel m);
/// The embedded model whose points the centres are taken from.
ModelId carrier_model(StateModel m);

enum class LinkKind { PHI_6_1, PHI_6_2, PHI_6_3, PHI_8_2_PI0, PHI_8_2_PI1, ELEM, PHI_8_2_INV, PHI_8_3_A, PHI_8_3_B, PHI_8_6 };

std::string link_kind_name(LinkKind k);
LinkKind parse_link_kind(const std::string& name);
const std::vector<LinkKind>& all_link_kinds();

/// c_a a + c_b b + c_r r + d (c_da a + c_dr r), d the centre length.
struct AffineForm {
  Rational a = 0, b = 0, r = 0, da = 0, dr = 0;

  Rational evaluate(const Rational& va, const Rational& vb, const Rational& vr, long d) const;
  /// Coefficients on (a, b, r) for a fixed d.
  std::vector<Rational> row(long d) const;
  std::string to_string() const;
  friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

struct LinkFormula {
  AffineForm a_out;
  std::optional<AffineForm> b_out;
  std::optional<AffineForm> r_out;

  /// Rows (a', b', r') over (a, b, r); absent outputs are zero rows.
  QMatrix matrix(long d) const;
};

/// An output whose tabulated formula is known to disagree with the derivation
/// from the class maps; `corrected` is the form the lattice computation gives.
struct Erratum {
  std::string output;  // "a", "b" or "r"
  AffineForm corrected;
  std::string note;
};

struct LinkSpec {
  LinkKind kind;
  StateModel source;
  StateModel target;
  std::vector<std::size_t> center_lengths;
  /// Label of the image orbit of the contracted curves on the target.
  std::string image_label;
  bool refuted = false;
  std::optional<LinkFormula> formula;
  std::vector<Erratum> errata;
  std::string description;

  const Erratum* erratum_for(const std::string& output) const;
};

class LinkTable {
 public:
  explicit LinkTable(std::vector<LinkSpec> specs) : specs_(std::move(specs)) {}

  const LinkSpec& at(LinkKind k) const;
  const std::vector<LinkSpec>& specs() const { return specs_; }
  /// Replaces formulas from {"links": [{"kind": ..., "formula": {...}}]};
  /// coefficients are rational strings. Returns the kinds that changed.
  std::vector<LinkKind> apply_overrides(const nlohmann::json& overrides);
  nlohmann::json to_json() const;

 private:
  std::vector<LinkSpec> specs_;
};

/// The tabulated link formulas.
LinkTable default_link_table();

nlohmann::json affine_form_to_json(const AffineForm& f);
AffineForm affine_form_from_json(const nlohmann::json& j);

}  // namespace cremona
