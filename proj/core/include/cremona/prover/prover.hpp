#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cremona/links/catalog.hpp"
#include "cremona/links/link.hpp"

namespace cremona {

/// Tabulated link formula against the lattice computation for one output.
struct FormulaCheck {
  LinkKind kind;
  std::size_t length = 0;
  std::string output;
  std::string tabulated;
  std::string lattice;
  bool agrees = true;
  /// A disagreement covered by an erratum matching the lattice form.
  bool documented = false;
  std::string note;

  nlohmann::json to_json() const;
};

/// One node of the case tree. A model node (empty `center`) lists the
/// candidate centres on that model as children; a centre node records the
/// gates and either a refutation or the link taken, with the target model as
/// its only child when the target is visited for the first time.
struct CaseNode {
  StateModel model = StateModel::X;
  std::string center;
  std::size_t length = 0;
  bool symbolic = false;
  /// "model", "link", "back-edge", "refuted", "empty" or "open".
  std::string outcome;
  std::string reason;
  std::vector<GateVerdict> verdicts;
  std::optional<LinkKind> link;
  std::optional<StateModel> target;
  /// Refutation witnesses, or for model nodes the completeness certificates.
  std::vector<std::string> witnesses;
  /// Change of the termination measure along a link, and whether it decreases.
  std::string descent;
  bool descends = false;
  std::vector<FormulaCheck> formula_checks;
  std::vector<CaseNode> children;
  /// Links leaving a model node without a centre (contracting sections once
  /// the fibre coefficient is negative); kept apart from the centre branches.
  std::vector<CaseNode> exits;

  bool is_model_node() const { return center.empty(); }
  bool closed() const;
  nlohmann::json to_json(bool full) const;
  /// Structure only: models, centre labels, outcomes, link kinds, targets.
  nlohmann::json shape() const;
};

struct ModelEdge {
  StateModel source;
  LinkKind kind;
  StateModel target;
  friend auto operator<=>(const ModelEdge&, const ModelEdge&) = default;
};

/// Builds the case tree from `start` using the given link table. Throws
/// IncompleteCertification when an orbit enumeration is incomplete.
CaseNode build_case_tree(const LinkTable& table, StateModel start = StateModel::X);

/// Admissible link edges occurring in the case tree from X, sorted.
std::vector<ModelEdge> model_graph(const LinkTable& table);
std::vector<ModelEdge> graph_of(const CaseNode& tree);

struct Verdict {
  StateModel start;
  StateModel target;
  bool reachable = false;
  /// Links of a shortest path when reachable.
  std::vector<LinkKind> path;
  CaseNode tree;
  std::vector<std::string> certification_notes;
  /// Table entries disagreeing with the lattice without a matching erratum.
  std::vector<std::string> undocumented_discrepancies;
  /// Every branch is closed and every link descends.
  bool all_closed = false;

  nlohmann::json to_json(bool full_tree) const;
};

/// Throws IncompleteCertification when an orbit enumeration is incomplete.
Verdict prove_unreachable(const LinkTable& table, StateModel start, StateModel target);

struct RefutationWitness {
  std::string branch;
  std::vector<std::string> witness;
};

/// Refuted and empty branches of the tree with their witnesses.
std::vector<RefutationWitness> refutation_witnesses(const CaseNode& tree);

/// Expected tree shape, stored with the sources.
nlohmann::json load_golden_tree(const std::string& path);

}  // namespace cremona
