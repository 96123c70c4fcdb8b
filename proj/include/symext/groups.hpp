#ifndef SYMEXT_GROUPS_HPP
#define SYMEXT_GROUPS_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "symext/forcing.hpp"
#include "symext/names.hpp"
#include "symext/poset.hpp"

namespace symext {

/// A permutation of the conditions of a poset preserving ≤ in both
/// directions.
class Automorphism {
 public:
  Automorphism() = default;

  static Automorphism identity(const FinPoset& poset);
  /// Throws std::invalid_argument unless `images` is an order automorphism.
  static Automorphism from_images(const FinPoset& poset, std::vector<Cond> images);

  Cond operator()(Cond p) const { return Cond{images_.at(p.index)}; }
  std::size_t degree() const { return images_.size(); }
  bool is_identity() const;
  Automorphism inverse() const;

  /// Composition: (a * b)(p) = a(b(p)).
  friend Automorphism operator*(const Automorphism& a, const Automorphism& b);
  friend bool operator==(const Automorphism&, const Automorphism&) = default;
  friend auto operator<=>(const Automorphism&, const Automorphism&) = default;

  /// Cycle notation over condition labels, "id" for the identity.
  std::string str(const FinPoset& poset) const;

 private:
  explicit Automorphism(std::vector<std::uint32_t> images) : images_(std::move(images)) {}
  std::vector<std::uint32_t> images_;
};

/// A finite group of automorphisms. Every group is a subset of an
/// enumerated ambient group; subgroups share the ambient element table.
/// Equality is equality of element sets.
class FinGroup {
 public:
  using Mask = boost::dynamic_bitset<std::uint64_t>;

  /// Closure of the generators under composition. Throws CapExceeded when
  /// the group grows past `cap`.
  static FinGroup generate(const FinPoset& poset, std::span<const Automorphism> generators,
                           std::size_t cap);

  std::size_t order() const { return members_.count(); }
  std::size_t ambient_order() const;
  bool contains(const Automorphism& pi) const;
  std::vector<Automorphism> elements() const;
  /// Indices into the ambient table, ascending.
  std::vector<std::size_t> indices() const;
  const Automorphism& ambient_element(std::size_t index) const;
  std::optional<std::size_t> index_of(const Automorphism& pi) const;
  const Mask& mask() const { return members_; }

  /// The whole ambient group.
  FinGroup ambient() const;
  /// Members satisfying the predicate; the caller guarantees a subgroup.
  FinGroup where(const std::function<bool(const Automorphism&)>& keep) const;
  FinGroup where_index(const std::function<bool(std::size_t)>& keep) const;
  FinGroup intersect(const FinGroup& other) const;
  bool is_subset_of(const FinGroup& other) const;
  bool is_trivial() const { return order() == 1; }
  bool shares_ambient(const FinGroup& other) const { return table_ == other.table_; }

  friend bool operator==(const FinGroup& a, const FinGroup& b);

  std::string str(const FinPoset& poset) const;

 private:
  struct Table {
    std::vector<Automorphism> elements;  // sorted
  };
  FinGroup(std::shared_ptr<const Table> table, Mask members)
      : table_(std::move(table)), members_(std::move(members)) {}
  void require_same(const FinGroup& other) const;

  std::shared_ptr<const Table> table_;
  Mask members_;
};

/// πẋ = {⟨πp, πẏ⟩ | ⟨p, ẏ⟩ ∈ ẋ}
Name apply(const Automorphism& pi, Name x, NameStore& store);
Formula apply(const Automorphism& pi, const Formula& phi, NameStore& store);

/// sym(ẋ) = {π ∈ 𝒢 | πẋ = ẋ}
FinGroup stabilizer(const FinGroup& group, Name x, NameStore& store);
/// {π h π⁻¹ : h ∈ H}; π must lie in H's ambient group.
FinGroup conjugate(const Automorphism& pi, const FinGroup& h);
/// {π ∈ 𝒢 | πp = p}
FinGroup condition_stabilizer(const FinGroup& group, Cond p);

/// All order automorphisms of a poset, by backtracking search.
FinGroup automorphism_group(const FinPoset& poset, std::size_t cap);

struct SymmetryViolation {
  Cond condition;
  Automorphism pi;
  std::size_t formula = 0;  // index into the checked formula list
  bool forces_original = false;
  bool forces_image = false;
};

struct SymmetryReport {
  std::size_t checked = 0;  // (p, π, φ) triples
  std::size_t violation_count = 0;
  std::vector<SymmetryViolation> violations;  // first few, in formula order
};

/// Checks p ⊩ φ ⟺ πp ⊩ πφ for every condition, every group element and
/// every formula. Work is split over `jobs` threads; the report does not
/// depend on the split.
SymmetryReport symmetry_lemma_check(const Forcing& forcing, const FinGroup& group,
                                    std::span<const Formula> formulas, unsigned jobs = 1);

/// x ∈ y and x = y for every ordered pair of the given names.
std::vector<Formula> atomic_formulas(std::span<const Name> names);

}  // namespace symext

#endif  // SYMEXT_GROUPS_HPP
