#include "cremona/algebra/group.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "cremona/errors.hpp"

namespace cremona {

GroupElem operator*(const GroupElem& g, const GroupElem& h) {
  GroupElem out;
  for (int i = 0; i < 3; ++i) out.perm[i] = g.perm[h.perm[i]];
  out.inv = g.inv != h.inv;
  return out;
}

GroupElem GroupElem::inverse() const {
  GroupElem out;
  for (std::uint8_t i = 0; i < 3; ++i) out.perm[perm[i]] = i;
  out.inv = inv;
  return out;
}

int GroupElem::perm_sign() const {
  int inversions = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

const std::vector<GroupElem>& group_all() {
  static const std::vector<GroupElem> all = [] {
    std::vector<GroupElem> out;
    std::array<std::uint8_t, 3> p{0, 1, 2};
    do {
      out.push_back({p, false});
      out.push_back({p, true});
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  return all;
}

int GroupElem::index() const {
  const auto& all = group_all();
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i] == *this) return static_cast<int>(i);
  return -1;
}

const GroupElem& group_elem(int index) { return group_all().at(static_cast<std::size_t>(index)); }

std::string GroupElem::name() const {
  static const char* letters = "xyz";
  std::string p;
  if (perm == std::array<std::uint8_t, 3>{0, 1, 2}) {
    p = "e";
  } else {
    // cycle notation on the coordinate names
    std::array<bool, 3> seen{};
    for (int start = 0; start < 3; ++start) {
      if (seen[start] || perm[start] == start) continue;
      std::string cycle = "(";
      int i = start;
      while (!seen[i]) {
        seen[i] = true;
        cycle += letters[i];
        i = perm[i];
      }
      p += cycle + ")";
    }
  }
  if (!inv) return p;
  return p == "e" ? "t" : p + "t";
}

int element_order(const GroupElem& g) {
  GroupElem acc = g;
  int k = 1;
  while (!acc.is_identity()) {
    acc = g * acc;
    ++k;
  }
  return k;
}

bool Subgroup::contains(const GroupElem& g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

bool Subgroup::is_closed() const {
  if (elements.empty()) return false;
  for (const auto& a : elements) {
    if (!contains(a.inverse())) return false;
    for (const auto& b : elements)
      if (!contains(a * b)) return false;
  }
  return true;
}

std::string Subgroup::name() const {
  std::string out = "{";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) out += ",";
    out += elements[i].name();
  }
  return out + "}";
}

Subgroup make_subgroup(std::vector<GroupElem> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return Subgroup{std::move(elements)};
}

Subgroup generated_by(const std::vector<GroupElem>& generators) {
  std::set<GroupElem> closure{GroupElem::identity()};
  bool grown = true;
  while (grown) {
    grown = false;
    std::vector<GroupElem> current(closure.begin(), closure.end());
    for (const auto& a : current)
      for (const auto& g : generators)
        if (closure.insert(g * a).second) grown = true;
  }
  return make_subgroup({closure.begin(), closure.end()});
}

Subgroup whole_group() { return make_subgroup(group_all()); }

std::vector<Subgroup> subgroups_of_order(int n) {
  if (n <= 0 || 12 % n != 0) throw InvalidOrder("subgroup order must divide 12, got " + std::to_string(n));
  const auto& all = group_all();
  const int identity = GroupElem::identity().index();
  std::vector<Subgroup> out;
  for (unsigned mask = 0; mask < (1u << 12); ++mask) {
    if (std::popcount(mask) != n || !(mask & (1u << identity))) continue;
    std::vector<GroupElem> elems;
    for (int i = 0; i < 12; ++i)
      if (mask & (1u << i)) elems.push_back(all[static_cast<std::size_t>(i)]);
    Subgroup h = make_subgroup(std::move(elems));
    if (h.is_closed()) out.push_back(std::move(h));
  }
  return out;
}

Subgroup s3_subgroup() { return generated_by({GroupElem::sigma_xy(), GroupElem::sigma_xyz()}); }

}  // namespace cremona
