#include "symext/groups.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "symext/parallel.hpp"

namespace symext {

Automorphism Automorphism::identity(const FinPoset& poset) {
  std::vector<std::uint32_t> images(poset.size());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = static_cast<std::uint32_t>(i);
  return Automorphism(std::move(images));
}

Automorphism Automorphism::from_images(const FinPoset& poset, std::vector<Cond> images) {
  const std::size_t n = poset.size();
  if (images.size() != n) throw std::invalid_argument("automorphism has wrong degree");
  std::vector<std::uint32_t> raw(n);
  std::vector<char> hit(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (images[i].index >= n) throw std::invalid_argument("automorphism image out of range");
    if (hit[images[i].index]++) throw std::invalid_argument("automorphism is not injective");
    raw[i] = images[i].index;
  }
  // q ≤ p ⟺ πq ≤ πp, checked one down-set at a time.
  for (std::size_t p = 0; p < n; ++p) {
    ConditionSet mapped(n);
    const ConditionSet& below = poset.below(poset.at(p));
    for (std::size_t q = below.find_first(); q != ConditionSet::npos; q = below.find_next(q))
      mapped.set(raw[q]);
    if (mapped != poset.below(poset.at(raw[p])))
      throw std::invalid_argument("permutation does not preserve the order at '" +
                                  poset.label(poset.at(p)) + "'");
  }
  return Automorphism(std::move(raw));
}

bool Automorphism::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Automorphism Automorphism::inverse() const {
  std::vector<std::uint32_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<std::uint32_t>(i);
  return Automorphism(std::move(inv));
}

Automorphism operator*(const Automorphism& a, const Automorphism& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("composing automorphisms of different posets");
  std::vector<std::uint32_t> out(a.degree());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.images_[b.images_[i]];
  return Automorphism(std::move(out));
}

std::string Automorphism::str(const FinPoset& poset) const {
  std::string out;
  std::vector<char> seen(images_.size(), 0);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    out += "(";
    std::size_t i = start;
    bool first = true;
    while (!seen[i]) {
      seen[i] = 1;
      if (!first) out += " ";
      out += poset.label(poset.at(i));
      first = false;
      i = images_[i];
    }
    out += ")";
  }
  return out.empty() ? "id" : out;
}

// ---------------------------------------------------------------------------

FinGroup FinGroup::generate(const FinPoset& poset, std::span<const Automorphism> generators,
                            std::size_t cap) {
  std::set<Automorphism> seen;
  std::deque<Automorphism> frontier;
  const Automorphism id = Automorphism::identity(poset);
  seen.insert(id);
  frontier.push_back(id);
  for (const auto& g : generators)
    if (g.degree() != poset.size()) throw std::invalid_argument("generator of wrong degree");
  while (!frontier.empty()) {
    Automorphism x = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : generators) {
      Automorphism y = g * x;
      if (seen.insert(y).second) {
        if (seen.size() > cap) throw CapExceeded("group", seen.size(), cap);
        frontier.push_back(std::move(y));
      }
    }
  }
  auto table = std::make_shared<Table>();
  table->elements.assign(seen.begin(), seen.end());
  Mask all(table->elements.size());
  all.set();
  return FinGroup(std::move(table), std::move(all));
}

std::size_t FinGroup::ambient_order() const { return table_->elements.size(); }

std::optional<std::size_t> FinGroup::index_of(const Automorphism& pi) const {
  const auto& els = table_->elements;
  auto it = std::lower_bound(els.begin(), els.end(), pi);
  if (it == els.end() || *it != pi) return std::nullopt;
  return static_cast<std::size_t>(it - els.begin());
}

bool FinGroup::contains(const Automorphism& pi) const {
  auto idx = index_of(pi);
  return idx && members_.test(*idx);
}

std::vector<Automorphism> FinGroup::elements() const {
  std::vector<Automorphism> out;
  out.reserve(order());
  for (std::size_t i = members_.find_first(); i != Mask::npos; i = members_.find_next(i))
    out.push_back(table_->elements[i]);
  return out;
}

std::vector<std::size_t> FinGroup::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = members_.find_first(); i != Mask::npos; i = members_.find_next(i))
    out.push_back(i);
  return out;
}

const Automorphism& FinGroup::ambient_element(std::size_t index) const {
  return table_->elements.at(index);
}

FinGroup FinGroup::ambient() const {
  Mask all(ambient_order());
  all.set();
  return FinGroup(table_, std::move(all));
}

FinGroup FinGroup::where(const std::function<bool(const Automorphism&)>& keep) const {
  Mask out(ambient_order());
  for (std::size_t i = members_.find_first(); i != Mask::npos; i = members_.find_next(i))
    if (keep(table_->elements[i])) out.set(i);
  return FinGroup(table_, std::move(out));
}

FinGroup FinGroup::where_index(const std::function<bool(std::size_t)>& keep) const {
  Mask out(ambient_order());
  for (std::size_t i = members_.find_first(); i != Mask::npos; i = members_.find_next(i))
    if (keep(i)) out.set(i);
  return FinGroup(table_, std::move(out));
}

void FinGroup::require_same(const FinGroup& other) const {
  if (table_ != other.table_) throw std::invalid_argument("groups have different ambient groups");
}

FinGroup FinGroup::intersect(const FinGroup& other) const {
  require_same(other);
  return FinGroup(table_, members_ & other.members_);
}

bool FinGroup::is_subset_of(const FinGroup& other) const {
  if (table_ == other.table_) return members_.is_subset_of(other.members_);
  for (const auto& pi : elements())
    if (!other.contains(pi)) return false;
  return true;
}

bool operator==(const FinGroup& a, const FinGroup& b) {
  if (a.table_ == b.table_) return a.members_ == b.members_;
  return a.elements() == b.elements();
}

std::string FinGroup::str(const FinPoset& poset) const {
  std::string out = "{";
  bool first = true;
  for (const auto& pi : elements()) {
    if (!first) out += ", ";
    out += pi.str(poset);
    first = false;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------

namespace {

Name apply_rec(const Automorphism& pi, Name x, NameStore& store,
               std::unordered_map<std::uint32_t, Name>& memo) {
  if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
  std::vector<NameEntry> entries;
  entries.reserve(x.entries().size());
  for (const NameEntry& e : x.entries()) entries.push_back({pi(e.cond), apply_rec(pi, e.name, store, memo)});
  Name out = store.make(std::move(entries));
  memo.emplace(x.id(), out);
  return out;
}

}  // namespace

Name apply(const Automorphism& pi, Name x, NameStore& store) {
  if (pi.degree() != store.poset().size())
    throw std::invalid_argument("automorphism acts on a different poset");
  std::unordered_map<std::uint32_t, Name> memo;
  return apply_rec(pi, x, store, memo);
}

Formula apply(const Automorphism& pi, const Formula& phi, NameStore& store) {
  std::unordered_map<std::uint32_t, Name> memo;
  return phi.map_names([&](Name x) { return apply_rec(pi, x, store, memo); });
}

FinGroup stabilizer(const FinGroup& group, Name x, NameStore& store) {
  return group.where([&](const Automorphism& pi) { return apply(pi, x, store) == x; });
}

FinGroup conjugate(const Automorphism& pi, const FinGroup& h) {
  if (!h.index_of(pi)) throw std::invalid_argument("conjugating element is outside the ambient group");
  const Automorphism inv = pi.inverse();
  FinGroup::Mask out(h.ambient_order());
  for (const auto& x : h.elements()) {
    auto idx = h.index_of(pi * x * inv);
    if (!idx) throw std::logic_error("ambient group not closed under conjugation");
    out.set(*idx);
  }
  return h.ambient().where_index([&](std::size_t i) { return out.test(i); });
}

FinGroup condition_stabilizer(const FinGroup& group, Cond p) {
  return group.where([&](const Automorphism& pi) { return pi(p) == p; });
}

FinGroup automorphism_group(const FinPoset& poset, std::size_t cap) {
  const std::size_t n = poset.size();
  std::vector<std::size_t> down(n), up(n);
  for (std::size_t i = 0; i < n; ++i) {
    down[i] = poset.below(poset.at(i)).count();
    up[i] = poset.above(poset.at(i)).count();
  }
  std::vector<Automorphism> found;
  std::vector<Cond> image(n);
  std::vector<char> used(n, 0);
  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i == n) {
      found.push_back(Automorphism::from_images(poset, image));
      if (found.size() > cap) throw CapExceeded("group", found.size(), cap);
      return;
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c] || down[c] != down[i] || up[c] != up[i]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        ok = poset.leq(poset.at(j), poset.at(i)) == poset.leq(image[j], poset.at(c)) &&
             poset.leq(poset.at(i), poset.at(j)) == poset.leq(poset.at(c), image[j]);
      }
      if (!ok) continue;
      used[c] = 1;
      image[i] = poset.at(c);
      extend(i + 1);
      used[c] = 0;
    }
  };
  extend(0);
  return FinGroup::generate(poset, found, cap);
}

// ---------------------------------------------------------------------------

SymmetryReport symmetry_lemma_check(const Forcing& forcing, const FinGroup& group,
                                    std::span<const Formula> formulas, unsigned jobs) {
  constexpr std::size_t kKeep = 10;
  const FinPoset& P = forcing.poset();
  const std::vector<Automorphism> elements = group.elements();
  std::vector<SymmetryReport> parts(std::max(1u, jobs));
  parallel_chunks(formulas.size(), jobs, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    SymmetryReport& part = parts[chunk];
    for (std::size_t f = begin; f < end; ++f) {
      const ConditionSet original = forcing.forcing_set(formulas[f]);
      for (const Automorphism& pi : elements) {
        const ConditionSet image = forcing.forcing_set(apply(pi, formulas[f], forcing.store()));
        for (std::size_t p = 0; p < P.size(); ++p) {
          ++part.checked;
          const bool lhs = original.test(p);
          const bool rhs = image.test(pi(P.at(p)).index);
          if (lhs == rhs) continue;
          ++part.violation_count;
          if (part.violations.size() < kKeep) part.violations.push_back({P.at(p), pi, f, lhs, rhs});
        }
      }
    }
  });
  SymmetryReport out;
  for (auto& part : parts) {
    out.checked += part.checked;
    out.violation_count += part.violation_count;
    for (auto& v : part.violations)
      if (out.violations.size() < kKeep) out.violations.push_back(std::move(v));
  }
  return out;
}

std::vector<Formula> atomic_formulas(std::span<const Name> names) {
  std::vector<Formula> out;
  out.reserve(names.size() * names.size() * 2);
  for (Name x : names)
    for (Name y : names) {
      out.push_back(Formula::in(x, y));
      out.push_back(Formula::eq(x, y));
    }
  return out;
}

}  // namespace symext
