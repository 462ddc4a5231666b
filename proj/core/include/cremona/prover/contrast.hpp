#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "cremona/algebra/group.hpp"

namespace cremona {

struct ContrastCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

/// Equivariance of the projection from P1 to the plane w = 0 for one group
/// element, on the images of sampled torus points.
struct EquivarianceRun {
  GroupElem element;
  std::size_t passed = 0;
  std::size_t failed = 0;
  /// First failing sample, when there is one.
  std::string first_failure;
};

struct ContrastReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  /// Draws skipped because they hit the exceptional locus of a map.
  std::size_t skipped = 0;
  std::vector<ContrastCheck> fixed_points;
  std::vector<ContrastCheck> examples;
  std::vector<EquivarianceRun> subgroup_runs;
  std::size_t round_trip_passed = 0;
  /// The same check for the Z2 generator; expected to fail.
  EquivarianceRun negative_control;

  /// All S3 checks pass on every sample and the control fails.
  bool reachable() const;
  nlohmann::json to_json() const;
};

/// Draws `samples` rational torus points from the seed, maps them to the
/// quadric and checks the projection from P1 exactly.
ContrastReport s3_contrast(std::uint64_t seed, std::size_t samples = 100);

}  // namespace cremona
