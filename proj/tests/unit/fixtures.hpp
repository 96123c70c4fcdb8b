#ifndef SYMEXT_TESTS_FIXTURES_HPP
#define SYMEXT_TESTS_FIXTURES_HPP

#include <memory>
#include <utility>
#include <vector>

#include "symext/poset.hpp"

namespace fixtures {

/// {1, a, b} with a, b incomparable below 1.
inline std::shared_ptr<const symext::FinPoset> p3() {
  const std::vector<std::pair<std::size_t, std::size_t>> below{{1, 0}, {2, 0}};
  return std::make_shared<const symext::FinPoset>(symext::FinPoset::from_covers({"1", "a", "b"}, below));
}

inline std::shared_ptr<const symext::FinPoset> single() {
  return std::make_shared<const symext::FinPoset>(symext::FinPoset::from_covers({"1"}, {}));
}

}  // namespace fixtures

#endif
