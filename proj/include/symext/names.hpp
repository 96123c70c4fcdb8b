#ifndef SYMEXT_NAMES_HPP
#define SYMEXT_NAMES_HPP

#include <atomic>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "symext/hfset.hpp"
#include "symext/limits.hpp"
#include "symext/poset.hpp"

namespace symext {

class NameStore;
struct NameEntry;

/// Handle to a hash-consed P-name. Two handles from the same store are
/// equal iff the names have the same entry set.
class Name {
 public:
  Name() = default;

  const NameStore* store() const { return store_; }
  std::uint32_t id() const { return id_; }
  bool valid() const { return store_ != nullptr; }

  std::size_t rank() const;
  std::span<const NameEntry> entries() const;
  bool empty() const { return entries().empty(); }

  friend bool operator==(const Name&, const Name&) = default;
  friend auto operator<=>(const Name&, const Name&) = default;

 private:
  friend class NameStore;
  Name(const NameStore* store, std::uint32_t id) : store_(store), id_(id) {}

  const NameStore* store_ = nullptr;
  std::uint32_t id_ = 0;
};

struct NameEntry {
  Cond cond;
  Name name;

  friend bool operator==(const NameEntry&, const NameEntry&) = default;
  friend auto operator<=>(const NameEntry&, const NameEntry&) = default;
};

/// Hash-consing table of names over one poset. Insertion is serialized;
/// lookups of existing names are lock-free. Names are never removed.
class NameStore {
 public:
  explicit NameStore(std::shared_ptr<const FinPoset> poset, Limits limits = {});
  ~NameStore();
  NameStore(const NameStore&) = delete;
  NameStore& operator=(const NameStore&) = delete;

  const FinPoset& poset() const { return *poset_; }
  std::shared_ptr<const FinPoset> poset_ptr() const { return poset_; }
  const Limits& limits() const { return limits_; }

  /// Canonicalizes a raw entry list: entries are deduplicated and sorted.
  /// Throws std::invalid_argument for names from another store and
  /// CapExceeded for rank or entry-count overflow.
  Name make(std::vector<NameEntry> raw);

  Name empty();
  /// x̌ = {y̌ | y ∈ x}•
  Name check(const HfSet& x);
  /// {ẏ_i}• = {⟨1, ẏ_i⟩}
  Name bullet_set(std::span<const Name> names);
  Name bullet_set(std::initializer_list<Name> names) {
    return bullet_set(std::span<const Name>(names.begin(), names.size()));
  }
  /// ⟨ẋ, ẏ⟩• = {{ẋ}•, {ẋ, ẏ}•}•
  Name bullet_pair(Name x, Name y);

  std::size_t size() const { return count_.load(std::memory_order_acquire); }
  std::size_t rank(Name x) const;
  std::span<const NameEntry> entries(Name x) const;

  /// If x is a check name, the ground set it denotes.
  std::optional<HfSet> as_check(Name x) const;

  /// Deterministic textual form that does not depend on insertion order.
  std::string render(Name x) const;

 private:
  struct Node {
    std::vector<NameEntry> entries;
    std::uint32_t rank = 0;
    std::size_t hash = 0;
  };

  static constexpr std::size_t kChunkBits = 12;
  static constexpr std::size_t kChunkSize = std::size_t{1} << kChunkBits;
  static constexpr std::size_t kMaxChunks = 4096;

  const Node& node(Name x) const;
  void own(Name x) const;
  std::string render_rec(Name x, std::unordered_map<std::uint32_t, std::string>& memo) const;

  std::shared_ptr<const FinPoset> poset_;
  Limits limits_;
  std::unique_ptr<std::atomic<Node*>[]> chunks_;
  std::atomic<std::uint32_t> count_{0};
  std::mutex insert_mutex_;
  std::unordered_multimap<std::size_t, std::uint32_t> index_;
};

inline std::size_t Name::rank() const { return store_->rank(*this); }
inline std::span<const NameEntry> Name::entries() const { return store_->entries(*this); }

/// Some pair ⟨p, ẏ⟩ ∈ ẋ.
bool appears_in(Name y, Name x);
/// Some pair ⟨p, ẏ⟩ ∈ ẋ with the given p.
bool condition_appears(Cond p, Name x);
/// Distinct names appearing in x, in entry order.
std::vector<Name> appearing_names(Name x);

}  // namespace symext

template <>
struct std::hash<symext::Name> {
  std::size_t operator()(const symext::Name& x) const noexcept {
    return std::hash<const void*>()(x.store()) * 31 + x.id();
  }
};

#endif  // SYMEXT_NAMES_HPP
