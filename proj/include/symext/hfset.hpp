#ifndef SYMEXT_HFSET_HPP
#define SYMEXT_HFSET_HPP

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace symext {

/// A hereditarily finite pure set (a ground-model set). Members are kept
/// sorted and duplicate-free, so structural equality is set equality.
class HfSet {
 public:
  HfSet() = default;

  static HfSet of(std::vector<HfSet> members);
  /// Von Neumann natural n = {0, ..., n-1}.
  static HfSet nat(unsigned n);
  /// Kuratowski pair {{a}, {a, b}}.
  static HfSet pair(const HfSet& a, const HfSet& b);

  std::span<const HfSet> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const HfSet& x) const;
  std::optional<unsigned> as_nat() const;

  /// Naturals print as numerals, other sets as braces.
  std::string str() const;

  friend bool operator==(const HfSet& a, const HfSet& b) { return a.members_ == b.members_; }
  friend std::strong_ordering operator<=>(const HfSet& a, const HfSet& b);

 private:
  std::vector<HfSet> members_;
};

}  // namespace symext

#endif  // SYMEXT_HFSET_HPP
