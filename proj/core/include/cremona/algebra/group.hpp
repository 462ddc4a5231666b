#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace cremona {

/// Element of G = S3 x Z2. `perm[i]` is the position that coordinate i is
/// moved to; `inv` is the Z2 component (inversion / swap of the torus
/// coordinates, sign change on the linear models).
struct GroupElem {
  std::array<std::uint8_t, 3> perm{0, 1, 2};
  bool inv = false;

  static GroupElem identity() { return {}; }
  /// Transposition of x and y.
  static GroupElem sigma_xy() { return {{1, 0, 2}, false}; }
  /// The 3-cycle sending (x, y, z) to (y, z, x).
  static GroupElem sigma_xyz() { return {{2, 0, 1}, false}; }
  /// Generator of the Z2 factor.
  static GroupElem tau() { return {{0, 1, 2}, true}; }

  /// (g * h) acts as g after h.
  friend GroupElem operator*(const GroupElem& g, const GroupElem& h);
  GroupElem inverse() const;
  bool is_identity() const { return perm[0] == 0 && perm[1] == 1 && perm[2] == 2 && !inv; }
  /// +1 or -1.
  int perm_sign() const;
  /// Stable index in [0, 12), consistent with the order of group_all().
  int index() const;

  std::string name() const;

  friend auto operator<=>(const GroupElem&, const GroupElem&) = default;
};

/// All 12 elements in a fixed order (permutations lexicographically, then
/// the Z2 flag).
const std::vector<GroupElem>& group_all();
const GroupElem& group_elem(int index);

int element_order(const GroupElem& g);

struct Subgroup {
  std::vector<GroupElem> elements;  // sorted

  std::size_t order() const { return elements.size(); }
  bool contains(const GroupElem& g) const;
  bool is_closed() const;
  std::string name() const;

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

Subgroup make_subgroup(std::vector<GroupElem> elements);
Subgroup generated_by(const std::vector<GroupElem>& generators);
Subgroup whole_group();

/// All subgroups of order n; throws InvalidOrder unless n divides 12.
std::vector<Subgroup> subgroups_of_order(int n);

/// The elements acting trivially on the permuted coordinates, i.e. S3 x 1.
Subgroup s3_subgroup();

}  // namespace cremona
