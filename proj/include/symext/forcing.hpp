#ifndef SYMEXT_FORCING_HPP
#define SYMEXT_FORCING_HPP

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "symext/hfset.hpp"
#include "symext/names.hpp"
#include "symext/poset.hpp"

namespace symext {

/// A variable bound by a quantifier; `slot` indexes the evaluation
/// environment.
struct Var {
  unsigned slot = 0;
  friend bool operator==(const Var&, const Var&) = default;
};

using Term = std::variant<Name, Var>;

/// Bounded formulas of the forcing language. Immutable, cheap to copy.
class Formula {
 public:
  enum class Kind { In, Eq, Not, And, Or, Exists, Forall };

  static Formula in(Term x, Term y);
  static Formula eq(Term x, Term y);
  static Formula negate(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  /// ∃v∈bound body, where v is `slot`.
  static Formula exists(unsigned slot, Term bound, Formula body);
  static Formula forall(unsigned slot, Term bound, Formula body);

  Kind kind() const;
  /// Atoms: the two terms. Quantifiers: lhs() is the bound.
  const Term& lhs() const;
  const Term& rhs() const;
  /// Not/quantifiers: body in left(); And/Or: both operands.
  const Formula& left() const;
  const Formula& right() const;
  unsigned slot() const;

  /// No variable occurs outside the scope of its binder.
  bool closed() const;
  /// Replaces every name term by f(name).
  Formula map_names(const std::function<Name(Name)>& f) const;
  std::string str(const NameStore& store) const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// The forcing relation by its recursive definition. Atom results are
/// memoized as whole forcing sets {p : p ⊩ φ}; the memo is safe for
/// concurrent use.
class Forcing {
 public:
  explicit Forcing(NameStore& store);

  const FinPoset& poset() const { return store_.poset(); }
  NameStore& store() const { return store_; }

  /// {p : p ⊩ φ}. Throws std::invalid_argument for open formulas.
  ConditionSet forcing_set(const Formula& phi) const;
  bool forces(Cond p, const Formula& phi) const;

  /// {p : p ⊩ x ∈ y}
  std::shared_ptr<const ConditionSet> member(Name x, Name y) const;
  /// {p : p ⊩ x = y}
  std::shared_ptr<const ConditionSet> equal(Name x, Name y) const;

  /// ẋ↾p = {⟨q, ẏ⟩ | q ≤ p, ẏ appears in ẋ, q ⊩ ẏ ∈ ẋ}
  Name restrict(Name x, Cond p) const;

  std::size_t memo_size() const;

 private:
  struct Key {
    std::uint32_t kind, x, y;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return (std::size_t{k.kind} << 62) ^ (std::size_t{k.x} << 31) ^ k.y;
    }
  };

  ConditionSet eval(const Formula& phi, std::vector<Name>& env) const;
  Name resolve(const Term& t, const std::vector<Name>& env) const;
  std::shared_ptr<const ConditionSet> lookup(const Key& key) const;
  std::shared_ptr<const ConditionSet> publish(const Key& key, ConditionSet value) const;

  NameStore& store_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<Key, std::shared_ptr<const ConditionSet>, KeyHash> memo_;
};

/// ẋ^G = {ẏ^G : ∃p ∈ G, ⟨p, ẏ⟩ ∈ ẋ}
HfSet interpret(Name x, const GenericFilter& g);

/// Independent truth oracle: p ⊩ φ iff φ holds in the interpretation by
/// every generic filter containing p. Not thread-safe (caches per filter).
class Oracle {
 public:
  explicit Oracle(const FinPoset& poset);

  const std::vector<GenericFilter>& filters() const { return filters_; }
  bool holds(std::size_t filter, const Formula& phi);
  bool forces(Cond p, const Formula& phi);
  const HfSet& value(std::size_t filter, Name x);

 private:
  bool eval(std::size_t filter, const Formula& phi, std::vector<HfSet>& env);
  const HfSet& term_value(std::size_t filter, const Term& t, const std::vector<HfSet>& env);

  const FinPoset& poset_;
  std::vector<GenericFilter> filters_;
  std::vector<std::unordered_map<Name, HfSet>> cache_;
};

}  // namespace symext

#endif  // SYMEXT_FORCING_HPP
