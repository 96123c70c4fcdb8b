#ifndef SYMEXT_SUITES_HPP
#define SYMEXT_SUITES_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symext/forcing.hpp"
#include "symext/groups.hpp"
#include "symext/symmetric.hpp"

namespace symext {

/// Outcome of an exhaustive check: how many instances ran, how many failed,
/// and descriptions of the first few failures in a deterministic order.
struct SuiteReport {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::vector<std::string> examples;

  bool passed() const { return failures == 0; }
  void merge(SuiteReport other);
};

/// Compares forcing_set(φ) with the generic-filter oracle at every
/// condition for every formula.
SuiteReport oracle_equivalence(const Forcing& forcing, std::span<const Formula> formulas, unsigned jobs = 1);

/// p ⊩ ẋ = ẋ↾p for every p, and q ⊩ ẋ↾p = ∅ for every q incompatible with p.
SuiteReport restriction_identities(const Forcing& forcing, std::span<const Name> names, unsigned jobs = 1);

/// The Symmetry Lemma over every group element, condition and formula.
SuiteReport symmetry_lemma(const Forcing& forcing, const FinGroup& group, std::span<const Formula> formulas,
                           unsigned jobs = 1);

/// The system's own equivariance identities: the generator families of the
/// Cohen and wreath factories, plus in_hs(ẋ) ⟺ in_hs(πẋ) over the names.
SuiteReport equivariance(const SymSystem& system, std::span<const Name> names, unsigned jobs = 1);

/// Names of the system used by suites: a seeded sample closed under the
/// group, plus the factory name families.
std::vector<Name> suite_names(const SymSystem& system, std::uint64_t seed);

}  // namespace symext

#endif  // SYMEXT_SUITES_HPP
