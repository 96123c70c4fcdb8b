#ifndef SYMEXT_SAMPLING_HPP
#define SYMEXT_SAMPLING_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "symext/forcing.hpp"
#include "symext/groups.hpp"
#include "symext/names.hpp"
#include "symext/poset.hpp"

namespace symext {

/// Deterministic random source. Draws use the raw engine output so that
/// samples are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform-enough value in [0, n).
  std::size_t below(std::size_t n) { return n ? static_cast<std::size_t>(engine_() % n) : 0; }
  bool chance(unsigned num, unsigned den) { return below(den) < num; }

 private:
  std::mt19937_64 engine_;
};

struct NameSampleConfig {
  /// Rank-≤1 names: all of them when the poset has at most this many
  /// conditions, otherwise `rank1_samples` random ones.
  std::size_t exhaustive_rank1_up_to = 6;
  std::size_t rank1_samples = 64;
  std::size_t rank2_samples = 48;
  std::size_t rank2_max_entries = 3;
};

/// Check names of 0 and 1, every (or a sample of) rank-≤1 name, and random
/// rank-2 names with a few entries over the rank-≤1 pool. Sorted by id,
/// duplicates removed.
std::vector<Name> sample_names(NameStore& store, std::uint64_t seed, const NameSampleConfig& config = {});

/// Adds every image πẋ for π in the group.
std::vector<Name> close_under(const FinGroup& group, std::span<const Name> names, NameStore& store);

/// ⋃_π πẋ, a name fixed by every element of the group.
Name symmetrize(const FinGroup& group, Name x, NameStore& store);

/// A random poset with `size` conditions: index 0 is the top, every other
/// condition lies below it, and further order pairs are random.
FinPoset random_poset(Rng& rng, std::size_t size, const Limits& limits = {});

struct FormulaFamilyConfig {
  std::size_t connective_samples = 200;
  std::size_t quantifier_samples = 200;
};

/// Every atom x ∈ y and x = y over the names, a random layer of ¬, ∧, ∨
/// over atoms, and a random layer of bounded quantifiers over atoms.
std::vector<Formula> formula_family(std::span<const Name> names, Rng& rng,
                                    const FormulaFamilyConfig& config = {});

}  // namespace symext

#endif  // SYMEXT_SAMPLING_HPP
