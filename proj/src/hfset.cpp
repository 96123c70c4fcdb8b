#include "symext/hfset.hpp"

#include <algorithm>

namespace symext {

std::strong_ordering operator<=>(const HfSet& a, const HfSet& b) {
  return std::lexicographical_compare_three_way(a.members_.begin(), a.members_.end(),
                                                b.members_.begin(), b.members_.end());
}

HfSet HfSet::of(std::vector<HfSet> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  HfSet out;
  out.members_ = std::move(members);
  return out;
}

HfSet HfSet::nat(unsigned n) {
  std::vector<HfSet> members;
  members.reserve(n);
  for (unsigned k = 0; k < n; ++k) members.push_back(nat(k));
  return of(std::move(members));
}

HfSet HfSet::pair(const HfSet& a, const HfSet& b) {
  return of({of({a}), of({a, b})});
}

bool HfSet::contains(const HfSet& x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

std::optional<unsigned> HfSet::as_nat() const {
  // n is a natural iff its members are exactly 0..n-1; members sort by size
  // for naturals since k < k+1 lexicographically.
  for (std::size_t k = 0; k < members_.size(); ++k) {
    auto inner = members_[k].as_nat();
    if (!inner || *inner != k) return std::nullopt;
  }
  return static_cast<unsigned>(members_.size());
}

std::string HfSet::str() const {
  if (auto n = as_nat()) return std::to_string(*n);
  std::string out = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += ", ";
    out += members_[i].str();
  }
  return out + "}";
}

}  // namespace symext
