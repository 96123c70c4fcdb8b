#ifndef SYMEXT_POSET_HPP
#define SYMEXT_POSET_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "symext/limits.hpp"

namespace symext {

/// A set of conditions of one poset, indexed by condition number.
using ConditionSet = boost::dynamic_bitset<std::uint64_t>;

/// Opaque condition identifier: an index into its poset.
struct Cond {
  std::uint32_t index = 0;

  friend auto operator<=>(const Cond&, const Cond&) = default;
};

struct GenericFilter {
  Cond generator;  // the minimal element whose up-set this is
  ConditionSet members;

  bool contains(Cond p) const { return members.test(p.index); }
};

struct AntichainInfo {
  bool antichain = false;
  bool maximal = false;
};

/// A finite forcing notion. Stronger conditions are lower; `leq(q, p)` reads
/// "q extends p". Immutable after construction: the full order relation is
/// precomputed as down-sets and up-sets.
class FinPoset {
 public:
  /// Builds a poset from an explicit relation. `leq(q, p)` must describe a
  /// partial order with a unique maximum; violations throw
  /// std::invalid_argument.
  template <typename Leq>
  static FinPoset from_relation(std::vector<std::string> labels, Leq&& leq,
                                const Limits& limits = {}) {
    FinPoset poset(std::move(labels), limits);
    for (std::size_t p = 0; p < poset.size(); ++p)
      for (std::size_t q = 0; q < poset.size(); ++q)
        if (leq(q, p)) poset.set_leq(q, p);
    poset.finish();
    return poset;
  }

  /// Builds a poset as the reflexive-transitive closure of `below` pairs
  /// (q, p) meaning q < p.
  static FinPoset from_covers(std::vector<std::string> labels,
                              std::span<const std::pair<std::size_t, std::size_t>> below,
                              const Limits& limits = {});

  std::size_t size() const { return labels_.size(); }
  Cond top() const { return top_; }
  Cond at(std::size_t index) const;
  const std::string& label(Cond p) const;
  std::optional<Cond> find(std::string_view label) const;
  /// Like find, but throws std::invalid_argument on an unknown label.
  Cond lookup(std::string_view label) const;
  std::vector<Cond> conditions() const;

  bool leq(Cond q, Cond p) const;
  const ConditionSet& below(Cond p) const;
  const ConditionSet& above(Cond p) const;
  ConditionSet empty_set() const { return ConditionSet(size()); }
  ConditionSet full_set() const { return ConditionSet(size()).set(); }

  bool compatible(Cond p, Cond q) const;

  /// Every q <= below has an extension in s.
  bool is_dense(const ConditionSet& s, Cond below) const;
  bool is_dense(const ConditionSet& s) const { return is_dense(s, top_); }

  /// Conditions having an extension in s.
  ConditionSet up_closure(const ConditionSet& s) const;
  /// {p : every q <= p lies in u}.
  ConditionSet interior(const ConditionSet& u) const;
  /// {p : s is dense below p}.
  ConditionSet dense_below(const ConditionSet& s) const { return interior(up_closure(s)); }

  AntichainInfo is_antichain(std::span<const Cond> d) const;
  std::vector<Cond> minimal() const;
  std::vector<GenericFilter> generic_filters() const;
  /// Size of the largest antichain (Dilworth, via bipartite matching).
  std::size_t antichain_width() const;

  ConditionSet to_set(std::span<const Cond> conds) const;
  std::vector<Cond> members(const ConditionSet& s) const;

  const Limits& limits() const { return limits_; }

 private:
  FinPoset(std::vector<std::string> labels, const Limits& limits);
  void set_leq(std::size_t q, std::size_t p);
  void finish();
  void check(Cond p) const;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::uint32_t> by_label_;
  std::vector<ConditionSet> below_;
  std::vector<ConditionSet> above_;
  Cond top_;
  Limits limits_;
};

/// Componentwise product; the pair (i, j) gets index i * |P2| + j.
FinPoset product_poset(const FinPoset& p1, const FinPoset& p2, const Limits& limits = {});

}  // namespace symext

#endif  // SYMEXT_POSET_HPP
