#include "symext/structure.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace symext {

FinStructure::FinStructure(unsigned size, std::vector<Relation> relations)
    : size_(size), relations_(std::move(relations)) {
  if (size_ == 0) throw std::invalid_argument("structure universe is empty");
  if (size_ > kMaxSize)
    throw std::invalid_argument("structure has " + std::to_string(size_) + " elements, at most " +
                                std::to_string(kMaxSize) + " supported");
  std::set<std::string> names;
  for (const Relation& r : relations_) {
    if (!names.insert(r.name).second) throw std::invalid_argument("duplicate relation symbol " + r.name);
    if (r.arity == 0) throw std::invalid_argument("relation " + r.name + " has arity 0");
    for (const auto& t : r.tuples) {
      if (t.size() != r.arity)
        throw std::invalid_argument("tuple of wrong arity in relation " + r.name);
      for (unsigned x : t)
        if (x >= size_) throw std::invalid_argument("tuple outside the universe in relation " + r.name);
    }
  }
  std::vector<unsigned> f(size_);
  std::iota(f.begin(), f.end(), 0u);
  do {
    if (is_automorphism(f)) automorphisms_.push_back(f);
  } while (std::next_permutation(f.begin(), f.end()));
}

const Relation* FinStructure::relation(std::string_view name) const {
  for (const Relation& r : relations_)
    if (r.name == name) return &r;
  return nullptr;
}

bool FinStructure::is_automorphism(const std::vector<unsigned>& f) const {
  std::vector<unsigned> domain(size_);
  std::iota(domain.begin(), domain.end(), 0u);
  return f.size() == size_ && is_partial_isomorphism(domain, f);
}

bool FinStructure::is_partial_isomorphism(const std::vector<unsigned>& domain,
                                          const std::vector<unsigned>& image) const {
  if (domain.size() != image.size()) return false;
  std::vector<int> map(size_, -1);
  std::vector<char> hit(size_, 0);
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (domain[i] >= size_ || image[i] >= size_) return false;
    if (map[domain[i]] >= 0 || hit[image[i]]) return false;
    map[domain[i]] = static_cast<int>(image[i]);
    hit[image[i]] = 1;
  }
  for (const Relation& r : relations_) {
    // Every tuple over the domain, checked in both directions.
    std::vector<unsigned> t(r.arity), u(r.arity);
    std::function<bool(unsigned)> walk = [&](unsigned pos) {
      if (pos == r.arity) {
        for (unsigned i = 0; i < r.arity; ++i) u[i] = static_cast<unsigned>(map[t[i]]);
        return r.tuples.contains(t) == r.tuples.contains(u);
      }
      for (unsigned x : domain) {
        t[pos] = x;
        if (!walk(pos + 1)) return false;
      }
      return true;
    };
    if (!domain.empty() && !walk(0)) return false;
  }
  return true;
}

HomogeneityResult check_homogeneous(const FinStructure& m, unsigned k) {
  if (k > m.size()) throw std::invalid_argument("homogeneity order exceeds the structure size");
  HomogeneityResult out;
  const unsigned n = m.size();
  // Domains as increasing tuples, images as injective tuples.
  for (unsigned d = 0; d < k; ++d) {
    std::vector<unsigned> domain;
    std::function<bool(unsigned)> choose_domain;
    std::vector<unsigned> image;
    std::vector<char> used(n, 0);
    std::function<bool()> choose_image = [&]() {
      if (image.size() == domain.size()) {
        if (!m.is_partial_isomorphism(domain, image)) return true;
        for (const auto& f : m.automorphisms()) {
          bool extends = true;
          for (std::size_t i = 0; i < domain.size() && extends; ++i) extends = f[domain[i]] == image[i];
          if (extends) return true;
        }
        out.homogeneous = false;
        out.witness = PartialIsomorphism{domain, image};
        return false;
      }
      for (unsigned y = 0; y < n; ++y) {
        if (used[y]) continue;
        used[y] = 1;
        image.push_back(y);
        const bool go_on = choose_image();
        image.pop_back();
        used[y] = 0;
        if (!go_on) return false;
      }
      return true;
    };
    choose_domain = [&](unsigned from) {
      if (domain.size() == d) return choose_image();
      for (unsigned x = from; x < n; ++x) {
        domain.push_back(x);
        const bool go_on = choose_domain(x + 1);
        domain.pop_back();
        if (!go_on) return false;
      }
      return true;
    };
    if (!choose_domain(0)) return out;
  }
  return out;
}

}  // namespace symext
