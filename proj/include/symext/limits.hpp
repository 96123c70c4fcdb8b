#ifndef SYMEXT_LIMITS_HPP
#define SYMEXT_LIMITS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symext {

/// Size caps shared by every exhaustive computation in the workbench.
struct Limits {
  std::size_t max_poset = 20000;
  std::size_t max_group = 10080;
  std::size_t rank_cap = 6;
  std::size_t max_entries = 1u << 16;
};

/// Thrown when a construction would exceed one of the configured caps.
/// The CLI reports these as "inconclusive" rather than as failures.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what_cap, std::size_t size, std::size_t cap)
      : std::runtime_error(what_cap + " cap exceeded: " + std::to_string(size) +
                           " > " + std::to_string(cap)),
        size_(size),
        cap_(cap) {}

  std::size_t size() const { return size_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t size_;
  std::size_t cap_;
};

}  // namespace symext

#endif  // SYMEXT_LIMITS_HPP
