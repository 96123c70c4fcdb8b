#ifndef SYMEXT_CONSTRUCTIONS_HPP
#define SYMEXT_CONSTRUCTIONS_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symext/structure.hpp"
#include "symext/symmetric.hpp"

namespace symext {

/// A finite partial function from points to {0,1}, as bit masks over at
/// most 64 points.
struct PartialFunction {
  std::uint64_t domain = 0;
  std::uint64_t values = 0;

  bool defined(unsigned point) const { return (domain >> point) & 1u; }
  bool value(unsigned point) const { return (values >> point) & 1u; }
  /// this ⊇ other, i.e. this extends other.
  bool extends(const PartialFunction& other) const {
    return (other.domain & ~domain) == 0 && ((values ^ other.values) & other.domain) == 0;
  }

  friend auto operator<=>(const PartialFunction&, const PartialFunction&) = default;
};

/// Common base of the partial-function systems. Points are grouped in
/// columns of equal width; conditions touch at most `support` columns.
class PartialFunctionSystem : public SymSystem {
 public:
  unsigned columns() const { return layout_.columns; }
  unsigned width() const { return layout_.width; }
  unsigned support() const { return layout_.support; }

  const PartialFunction& function(Cond p) const { return layout_.functions.at(p.index); }
  std::optional<Cond> find(const PartialFunction& f) const;
  /// Columns touched by a condition, ascending.
  std::vector<unsigned> touched(Cond p) const;

 protected:
  struct Layout {
    unsigned columns = 0, width = 0, support = 0;
    std::vector<PartialFunction> functions;
    std::shared_ptr<const FinPoset> poset;
    std::map<PartialFunction, std::uint32_t> index;
  };
  /// Enumerates the conditions and builds the order. `label` renders a
  /// single point assignment.
  static Layout layout(unsigned columns, unsigned width, unsigned support,
                       const std::function<std::string(unsigned point, bool value)>& label,
                       const Limits& limits);
  /// The automorphism induced by a permutation of the points.
  static Automorphism induced(const Layout& layout, const std::vector<unsigned>& point_map);

  PartialFunctionSystem(Layout layout, FinGroup group, std::vector<FinGroup> base,
                        std::vector<std::string> labels, Limits limits);
  const Layout& layout_data() const { return layout_; }

 private:
  Layout layout_;
};

struct CohenSpec {
  unsigned indices = 3;
  unsigned bits = 1;
  unsigned support = 1;
  /// Largest |E| in the base {fix(E)}; defaults to the support bound.
  std::optional<unsigned> fix_bound;
  /// Explicit base index sets, replacing the enumerated base.
  std::optional<std::vector<std::vector<unsigned>>> base_sets;
};

/// Partial functions I × N → 2 touching at most s indices, Sym(I) acting by
/// πp(π(i), n) = p(i, n), base {fix(E) : |E| ≤ fix bound}.
class CohenSystem : public PartialFunctionSystem {
 public:
  static std::unique_ptr<CohenSystem> make(const CohenSpec& spec, const Limits& limits = {});
  std::string kind() const override { return "cohen"; }

  const CohenSpec& spec() const { return spec_; }
  unsigned indices() const { return spec_.indices; }
  unsigned bits() const { return spec_.bits; }

  /// gen(i) = {⟨p, ň⟩ : p(i, n) = 1}
  Name gen(unsigned i) const;
  Automorphism lift(const std::vector<unsigned>& index_perm) const;
  const std::vector<unsigned>& index_permutation(std::size_t ambient_index) const {
    return index_perms_.at(ambient_index);
  }
  std::vector<unsigned> index_permutation(const Automorphism& pi) const;
  /// Pointwise stabilizer of a set of indices.
  FinGroup fix(std::span<const unsigned> indices) const;

 private:
  CohenSystem(CohenSpec spec, Layout layout, FinGroup group, std::vector<FinGroup> base,
              std::vector<std::string> labels, std::vector<std::vector<unsigned>> index_perms,
              Limits limits);

  CohenSpec spec_;
  std::vector<std::vector<unsigned>> index_perms_;
};

std::unique_ptr<CohenSystem> cohen_system(const CohenSpec& spec, const Limits& limits = {});

struct WreathSpec {
  FinStructure structure = FinStructure::pure(2);
  unsigned columns = 2;  // |A|
  unsigned values = 2;   // |B|
  unsigned support = 1;
  unsigned fix_rows = 1;     // s_N
  unsigned fix_columns = 1;  // s_E
};

/// An element of aut(M) ≀ Sym(A): a structure automorphism and one column
/// permutation per structure element.
struct WreathElement {
  std::vector<unsigned> structure;
  std::vector<std::vector<unsigned>> columns;

  friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

/// Partial functions M × A × B → 2 with the support bound, aut(M) ≀ Sym(A)
/// acting by πp(π*(m), π_m(α), β) = p(m, α, β), base {fix(N, E)}.
class WreathSystem : public PartialFunctionSystem {
 public:
  static std::unique_ptr<WreathSystem> make(const WreathSpec& spec, const Limits& limits = {});
  std::string kind() const override { return "wreath"; }

  const WreathSpec& spec() const { return spec_; }
  const FinStructure& structure() const { return spec_.structure; }
  unsigned rows() const { return spec_.structure.size(); }
  unsigned row_columns() const { return spec_.columns; }
  unsigned values() const { return spec_.values; }
  unsigned point(unsigned m, unsigned alpha, unsigned beta) const {
    return (m * spec_.columns + alpha) * spec_.values + beta;
  }

  /// ẋ_{m,α} = {⟨p, β̌⟩ : p(m, α, β) = 1}
  Name gen(unsigned m, unsigned alpha) const;
  /// ȧ_m = {ẋ_{m,α} : α ∈ A}•
  Name row(unsigned m) const;
  /// Ȧ = {ȧ_m : m ∈ M}•
  Name all_rows() const;
  /// {ȧ_{m⃗} : m⃗ ∈ R^M}•, tuples as nested •-pairs.
  Name relation_name(std::string_view relation) const;

  Automorphism lift(const WreathElement& element) const;
  const WreathElement& split(std::size_t ambient_index) const { return parts_.at(ambient_index); }
  WreathElement split(const Automorphism& pi) const;
  /// {π : π*↾N = id ∧ ∀n ∈ N: π_n↾E = id}
  FinGroup fix(std::span<const unsigned> rows, std::span<const unsigned> columns) const;

 private:
  WreathSystem(WreathSpec spec, Layout layout, FinGroup group, std::vector<FinGroup> base,
               std::vector<std::string> labels, std::vector<WreathElement> parts, Limits limits);

  WreathSpec spec_;
  std::vector<WreathElement> parts_;
};

std::unique_ptr<WreathSystem> wreath_system(const WreathSpec& spec, const Limits& limits = {});

/// The column room or the support bound is too small to separate a
/// condition from its image.
class DisjointifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lifts π* to π ∈ 𝒢 whose column permutations move the columns p uses on
/// each moved row off the columns p uses on the target row, so that πp and
/// p are compatible. Rows fixed by π* keep the identity permutation.
Automorphism disjointify(const WreathSystem& system, const std::vector<unsigned>& structure_perm,
                         Cond p);

enum class SupportVerdict { Supported, NotSupported, Contradiction, Inconclusive };
std::string_view to_string(SupportVerdict v);

struct SupportWitness {
  Cond condition;
  unsigned row = 0;         // p ⊩ ȧ_row ∈ Ḃ
  unsigned moved_row = 0;   // p ⊩ ȧ_moved_row ∉ Ḃ
  std::vector<unsigned> structure_perm;  // fixes N pointwise, row ↦ moved_row
};

struct SupportResult {
  SupportVerdict verdict = SupportVerdict::Supported;
  std::optional<SupportWitness> witness;
  std::string detail;
};

/// Searches for p, m, m′ and π* ∈ aut(M) fixing N pointwise with π*(m) = m′,
/// p ⊩ ȧ_m ∈ Ḃ and p ⊩ ȧ_{m′} ∉ Ḃ. No witness: supported. A witness while
/// fix(N, E) ⊄ sym(Ḃ): not supported. A witness despite the precondition
/// and a compatible disjointified π: contradiction. Otherwise inconclusive.
/// E defaults to every column.
SupportResult support_check(const WreathSystem& system, Name b, std::span<const unsigned> rows,
                            std::optional<std::vector<unsigned>> columns = std::nullopt);

}  // namespace symext

#endif  // SYMEXT_CONSTRUCTIONS_HPP
