#ifndef SYMEXT_STRUCTURE_HPP
#define SYMEXT_STRUCTURE_HPP

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace symext {

/// A relation symbol with its interpretation.
struct Relation {
  std::string name;
  unsigned arity = 1;
  std::set<std::vector<unsigned>> tuples;
};

/// A finite relational structure on {0, ..., size-1}.
class FinStructure {
 public:
  static constexpr unsigned kMaxSize = 6;

  /// Throws std::invalid_argument on tuples outside the universe, wrong
  /// arities, duplicate symbols or a universe larger than kMaxSize.
  FinStructure(unsigned size, std::vector<Relation> relations);
  static FinStructure pure(unsigned size) { return FinStructure(size, {}); }

  unsigned size() const { return size_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const Relation* relation(std::string_view name) const;

  /// Every automorphism as an image vector; the identity comes first.
  const std::vector<std::vector<unsigned>>& automorphisms() const { return automorphisms_; }
  bool is_automorphism(const std::vector<unsigned>& f) const;

  /// f maps domain[i] to image[i]; injective and preserving every relation
  /// on tuples from the domain, both ways.
  bool is_partial_isomorphism(const std::vector<unsigned>& domain,
                              const std::vector<unsigned>& image) const;

 private:
  unsigned size_;
  std::vector<Relation> relations_;
  std::vector<std::vector<unsigned>> automorphisms_;
};

struct PartialIsomorphism {
  std::vector<unsigned> domain;
  std::vector<unsigned> image;
};

struct HomogeneityResult {
  bool homogeneous = true;
  std::optional<PartialIsomorphism> witness;  // does not extend
};

/// Every isomorphism between induced substructures of size < k extends to
/// an automorphism. Brute force over all partial maps.
HomogeneityResult check_homogeneous(const FinStructure& m, unsigned k);

}  // namespace symext

#endif  // SYMEXT_STRUCTURE_HPP
