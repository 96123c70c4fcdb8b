#ifndef SYMEXT_SYMMETRIC_HPP
#define SYMEXT_SYMMETRIC_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "symext/forcing.hpp"
#include "symext/groups.hpp"
#include "symext/names.hpp"
#include "symext/poset.hpp"

namespace symext {

/// A normal filter of subgroups, represented by a base: H is in the filter
/// iff H contains some base element. Directedness and normality are
/// reported, not assumed.
class FilterBase {
 public:
  FilterBase(FinGroup ambient, std::vector<FinGroup> base, std::vector<std::string> labels = {});

  const FinGroup& ambient() const { return ambient_; }
  std::span<const FinGroup> base() const { return base_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  /// Index of the first base element contained in h.
  std::optional<std::size_t> witness(const FinGroup& h) const;
  bool contains(const FinGroup& h) const { return witness(h).has_value(); }
  /// The filter contains {id}; every name is then symmetric.
  bool degenerate() const;
  /// First pair of base elements whose intersection contains no base element.
  std::optional<std::pair<std::size_t, std::size_t>> directedness_violation() const;
  bool directed() const { return !directedness_violation(); }

 private:
  FinGroup ambient_;
  std::vector<FinGroup> base_;
  std::vector<std::string> labels_;
};

bool filter_contains(const FilterBase& filter, const FinGroup& h);

/// A symmetric system ⟨P, 𝒢, ℱ⟩ together with the name store over P and
/// the memoized forcing relation. Factories derive from this to expose
/// their name families.
class SymSystem {
 public:
  SymSystem(std::shared_ptr<const FinPoset> poset, FinGroup group, std::vector<FinGroup> base,
            std::vector<std::string> labels, Limits limits = {});
  virtual ~SymSystem() = default;
  SymSystem(const SymSystem&) = delete;
  SymSystem& operator=(const SymSystem&) = delete;

  virtual std::string kind() const { return "custom"; }

  const FinPoset& poset() const { return *poset_; }
  std::shared_ptr<const FinPoset> poset_ptr() const { return poset_; }
  NameStore& names() const { return *names_; }
  const Forcing& forcing() const { return *forcing_; }
  const FinGroup& group() const { return group_; }
  const FilterBase& filter() const { return filter_; }
  const Limits& limits() const { return limits_; }
  bool degenerate() const { return filter_.degenerate(); }

  /// sym(ẋ), memoized.
  FinGroup sym(Name x) const;
  /// Hereditarily symmetric, memoized.
  bool in_hs(Name x) const;

 private:
  std::shared_ptr<const FinPoset> poset_;
  std::unique_ptr<NameStore> names_;
  std::unique_ptr<Forcing> forcing_;
  FinGroup group_;
  FilterBase filter_;
  Limits limits_;
  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<std::uint32_t, FinGroup> sym_memo_;
  mutable std::unordered_map<std::uint32_t, bool> hs_memo_;
};

struct NormalityWitness {
  Automorphism pi;
  std::size_t base_index = 0;
  FinGroup conjugate;  // πBπ⁻¹, which contains no base element
};

struct NormalityResult {
  bool normal = true;
  std::optional<NormalityWitness> witness;
};

/// Conjugation closure: for every π ∈ 𝒢 and base element B some base
/// element lies inside πBπ⁻¹.
NormalityResult is_normal(const FilterBase& filter);
NormalityResult is_normal(const SymSystem& system);

bool in_hs(const SymSystem& system, Name x);

bool is_tenacious(const SymSystem& system, Cond p);

struct TenacityReport {
  ConditionSet tenacious;
  std::vector<Cond> non_tenacious;
  bool dense = false;  // the tenacious conditions are dense
  bool all = false;
};
TenacityReport tenacity_report(const SymSystem& system);

/// Witness that a constructed name is symmetric: a subgroup of its
/// stabilizer that contains a base element.
struct Certificate {
  FinGroup subgroup;
  std::size_t base_index = 0;
};

struct ConstructionResult {
  Name name;
  std::optional<Certificate> certificate;
  std::string diagnostic;  // why no certificate was produced
};

/// ġ = {⟨α̌, ẏ_α⟩• | α}•, certified by ⋂_α sym(ẏ_α). Throws
/// std::invalid_argument on duplicate indices.
ConstructionResult seq_name(const SymSystem& system,
                            std::span<const std::pair<unsigned, Name>> entries);

/// ⋃_{p∈D} ẏ_p↾p over an antichain D, certified by ⋂_p (sym(ẏ_p) ∩ stab(p)).
/// Throws std::invalid_argument if D is not an antichain.
ConstructionResult mix(const SymSystem& system, std::span<const std::pair<Cond, Name>> assignment);

/// Product of two systems: product poset, componentwise group, filter base
/// {B × 𝒢₂ : B ∈ base₁} ∪ {𝒢₁ × 𝒢₂}. The second factor's filter is not used.
class ProductSystem : public SymSystem {
 public:
  static std::unique_ptr<ProductSystem> make(const SymSystem& left, const SymSystem& right,
                                             const Limits& limits = {});
  std::string kind() const override { return "product"; }

  std::size_t left_size() const { return left_size_; }
  std::size_t right_size() const { return right_size_; }
  Cond pair(Cond left, Cond right) const;
  /// Ambient indices of the components in the factor groups.
  std::pair<std::size_t, std::size_t> split(std::size_t ambient_index) const {
    return parts_.at(ambient_index);
  }
  /// Is the left component of this element the identity?
  bool left_identity(std::size_t ambient_index) const;

 private:
  ProductSystem(std::shared_ptr<const FinPoset> poset, FinGroup group, std::vector<FinGroup> base,
                std::vector<std::string> labels, Limits limits)
      : SymSystem(std::move(poset), std::move(group), std::move(base), std::move(labels), limits) {}

  std::size_t left_size_ = 0, right_size_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> parts_;
  std::vector<char> left_is_identity_;
};

std::unique_ptr<ProductSystem> product_system(const SymSystem& left, const SymSystem& right,
                                              const Limits& limits = {});

/// ⟨P, aut(P), {aut(P)}⟩
std::unique_ptr<SymSystem> trivial_full_system(std::shared_ptr<const FinPoset> poset,
                                               const Limits& limits = {});

}  // namespace symext

#endif  // SYMEXT_SYMMETRIC_HPP
