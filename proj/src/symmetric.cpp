#include "symext/symmetric.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace symext {

FilterBase::FilterBase(FinGroup ambient, std::vector<FinGroup> base, std::vector<std::string> labels)
    : ambient_(std::move(ambient)), base_(std::move(base)), labels_(std::move(labels)) {
  if (base_.empty()) throw std::invalid_argument("filter base is empty");
  for (const auto& b : base_) {
    if (!b.shares_ambient(ambient_) || !b.is_subset_of(ambient_))
      throw std::invalid_argument("filter base element is not a subgroup of the group");
  }
  for (std::size_t i = labels_.size(); i < base_.size(); ++i) labels_.push_back("B" + std::to_string(i));
}

std::optional<std::size_t> FilterBase::witness(const FinGroup& h) const {
  for (std::size_t i = 0; i < base_.size(); ++i)
    if (base_[i].is_subset_of(h)) return i;
  return std::nullopt;
}

bool FilterBase::degenerate() const {
  return std::any_of(base_.begin(), base_.end(), [](const FinGroup& b) { return b.is_trivial(); });
}

std::optional<std::pair<std::size_t, std::size_t>> FilterBase::directedness_violation() const {
  for (std::size_t i = 0; i < base_.size(); ++i)
    for (std::size_t j = i + 1; j < base_.size(); ++j)
      if (!contains(base_[i].intersect(base_[j]))) return std::pair{i, j};
  return std::nullopt;
}

bool filter_contains(const FilterBase& filter, const FinGroup& h) { return filter.contains(h); }

// ---------------------------------------------------------------------------

SymSystem::SymSystem(std::shared_ptr<const FinPoset> poset, FinGroup group, std::vector<FinGroup> base,
                     std::vector<std::string> labels, Limits limits)
    : poset_(std::move(poset)),
      names_(std::make_unique<NameStore>(poset_, limits)),
      forcing_(std::make_unique<Forcing>(*names_)),
      group_(group),
      filter_(std::move(group), std::move(base), std::move(labels)),
      limits_(limits) {
  for (const auto& pi : group_.elements())
    if (pi.degree() != poset_->size()) throw std::invalid_argument("group does not act on the poset");
}

FinGroup SymSystem::sym(Name x) const {
  if (x.store() != names_.get()) throw std::invalid_argument("name belongs to another system");
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = sym_memo_.find(x.id()); it != sym_memo_.end()) return it->second;
  }
  FinGroup h = stabilizer(group_, x, *names_);
  std::lock_guard lock(memo_mutex_);
  return sym_memo_.try_emplace(x.id(), std::move(h)).first->second;
}

bool SymSystem::in_hs(Name x) const {
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = hs_memo_.find(x.id()); it != hs_memo_.end()) return it->second;
  }
  bool hs = filter_.contains(sym(x));
  if (hs) {
    for (const NameEntry& e : x.entries())
      if (!in_hs(e.name)) {
        hs = false;
        break;
      }
  }
  std::lock_guard lock(memo_mutex_);
  return hs_memo_.try_emplace(x.id(), hs).first->second;
}

// ---------------------------------------------------------------------------

NormalityResult is_normal(const FilterBase& filter) {
  NormalityResult out;
  for (const auto& pi : filter.ambient().elements()) {
    for (std::size_t b = 0; b < filter.base().size(); ++b) {
      FinGroup c = conjugate(pi, filter.base()[b]);
      if (!filter.contains(c)) {
        out.normal = false;
        out.witness = NormalityWitness{pi, b, std::move(c)};
        return out;
      }
    }
  }
  return out;
}

NormalityResult is_normal(const SymSystem& system) { return is_normal(system.filter()); }

bool in_hs(const SymSystem& system, Name x) { return system.in_hs(x); }

bool is_tenacious(const SymSystem& system, Cond p) {
  return system.filter().contains(condition_stabilizer(system.group(), p));
}

TenacityReport tenacity_report(const SymSystem& system) {
  const FinPoset& P = system.poset();
  TenacityReport out;
  out.tenacious = P.empty_set();
  for (Cond p : P.conditions()) {
    if (is_tenacious(system, p))
      out.tenacious.set(p.index);
    else
      out.non_tenacious.push_back(p);
  }
  out.dense = P.is_dense(out.tenacious);
  out.all = out.non_tenacious.empty();
  return out;
}

// ---------------------------------------------------------------------------

ConstructionResult seq_name(const SymSystem& system,
                            std::span<const std::pair<unsigned, Name>> entries) {
  NameStore& store = system.names();
  std::set<unsigned> seen;
  std::vector<Name> pairs;
  FinGroup h = system.group();
  std::string diagnostic;
  for (const auto& [index, y] : entries) {
    if (!seen.insert(index).second)
      throw std::invalid_argument("duplicate sequence index " + std::to_string(index));
    pairs.push_back(store.bullet_pair(store.check(HfSet::nat(index)), y));
    if (diagnostic.empty() && !system.in_hs(y))
      diagnostic = "entry " + std::to_string(index) + " is not hereditarily symmetric";
    h = h.intersect(system.sym(y));
  }
  ConstructionResult out{store.bullet_set(pairs), std::nullopt, {}};
  if (!h.is_subset_of(system.sym(out.name)))
    throw std::logic_error("sequence certificate does not stabilize the sequence name");
  if (!diagnostic.empty()) {
    out.diagnostic = diagnostic;
    return out;
  }
  if (auto w = system.filter().witness(h))
    out.certificate = Certificate{std::move(h), *w};
  else
    out.diagnostic = "intersection of entry stabilizers (order " + std::to_string(h.order()) +
                     ") contains no filter base element";
  return out;
}

ConstructionResult mix(const SymSystem& system, std::span<const std::pair<Cond, Name>> assignment) {
  const FinPoset& P = system.poset();
  std::vector<Cond> domain;
  for (const auto& [p, y] : assignment) domain.push_back(p);
  if (!P.is_antichain(domain).antichain) throw std::invalid_argument("mixing domain is not an antichain");

  std::vector<NameEntry> entries;
  FinGroup h = system.group();
  std::string diagnostic;
  for (const auto& [p, y] : assignment) {
    Name part = system.forcing().restrict(y, p);
    entries.insert(entries.end(), part.entries().begin(), part.entries().end());
    if (diagnostic.empty() && !system.in_hs(y))
      diagnostic = "name at " + P.label(p) + " is not hereditarily symmetric";
    if (diagnostic.empty() && !is_tenacious(system, p))
      diagnostic = "condition " + P.label(p) + " is not tenacious";
    h = h.intersect(system.sym(y)).intersect(condition_stabilizer(system.group(), p));
  }
  ConstructionResult out{system.names().make(std::move(entries)), std::nullopt, {}};
  if (!h.is_subset_of(system.sym(out.name)))
    throw std::logic_error("mixing certificate does not stabilize the mixed name");
  if (!diagnostic.empty()) {
    out.diagnostic = diagnostic;
    return out;
  }
  if (auto w = system.filter().witness(h))
    out.certificate = Certificate{std::move(h), *w};
  else
    out.diagnostic = "certificate subgroup (order " + std::to_string(h.order()) +
                     ") contains no filter base element";
  return out;
}

// ---------------------------------------------------------------------------

Cond ProductSystem::pair(Cond left, Cond right) const {
  if (left.index >= left_size_ || right.index >= right_size_)
    throw std::out_of_range("product component out of range");
  return Cond{static_cast<std::uint32_t>(left.index * right_size_ + right.index)};
}

bool ProductSystem::left_identity(std::size_t ambient_index) const {
  return left_is_identity_.at(ambient_index) != 0;
}

std::unique_ptr<ProductSystem> ProductSystem::make(const SymSystem& left, const SymSystem& right,
                                                   const Limits& limits) {
  const FinPoset& P1 = left.poset();
  const FinPoset& P2 = right.poset();
  const std::size_t n1 = P1.size(), n2 = P2.size();
  auto poset = std::make_shared<const FinPoset>(product_poset(P1, P2, limits));

  auto lift = [&](const Automorphism& a, const Automorphism& b) {
    std::vector<Cond> images(n1 * n2);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j)
        images[i * n2 + j] =
            Cond{static_cast<std::uint32_t>(a(P1.at(i)).index * n2 + b(P2.at(j)).index)};
    return Automorphism::from_images(*poset, std::move(images));
  };
  const Automorphism id1 = Automorphism::identity(P1), id2 = Automorphism::identity(P2);
  std::vector<Automorphism> gens;
  for (const auto& a : left.group().elements())
    if (!a.is_identity()) gens.push_back(lift(a, id2));
  for (const auto& b : right.group().elements())
    if (!b.is_identity()) gens.push_back(lift(id1, b));
  FinGroup group = FinGroup::generate(*poset, gens, limits.max_group);

  // Decode each element into its components via the rows through the tops.
  const std::size_t top1 = P1.top().index, top2 = P2.top().index;
  std::vector<std::pair<std::size_t, std::size_t>> parts;
  std::vector<char> left_id;
  for (std::size_t k = 0; k < group.ambient_order(); ++k) {
    const Automorphism& pi = group.ambient_element(k);
    std::vector<Cond> i1(n1), i2(n2);
    for (std::size_t i = 0; i < n1; ++i)
      i1[i] = Cond{static_cast<std::uint32_t>(pi(Cond{static_cast<std::uint32_t>(i * n2 + top2)}).index / n2)};
    for (std::size_t j = 0; j < n2; ++j)
      i2[j] = Cond{static_cast<std::uint32_t>(pi(Cond{static_cast<std::uint32_t>(top1 * n2 + j)}).index % n2)};
    Automorphism a = Automorphism::from_images(P1, std::move(i1));
    Automorphism b = Automorphism::from_images(P2, std::move(i2));
    auto ia = left.group().index_of(a);
    auto ib = right.group().index_of(b);
    if (!ia || !ib) throw std::logic_error("product element has components outside the factor groups");
    parts.emplace_back(*ia, *ib);
    left_id.push_back(a.is_identity() ? 1 : 0);
  }

  std::vector<FinGroup> base;
  std::vector<std::string> labels;
  auto add = [&](FinGroup h, std::string label) {
    if (std::find(base.begin(), base.end(), h) != base.end()) return;
    base.push_back(std::move(h));
    labels.push_back(std::move(label));
  };
  for (std::size_t b1 = 0; b1 < left.filter().base().size(); ++b1) {
    const auto& m1 = left.filter().base()[b1].mask();
    add(group.where_index([&](std::size_t k) { return m1.test(parts[k].first); }),
        left.filter().label(b1) + " x G2");
  }
  add(group, "G1 x G2");

  std::unique_ptr<ProductSystem> out(
      new ProductSystem(std::move(poset), std::move(group), std::move(base), std::move(labels), limits));
  out->left_size_ = n1;
  out->right_size_ = n2;
  out->parts_ = std::move(parts);
  out->left_is_identity_ = std::move(left_id);
  return out;
}

std::unique_ptr<ProductSystem> product_system(const SymSystem& left, const SymSystem& right,
                                              const Limits& limits) {
  return ProductSystem::make(left, right, limits);
}

std::unique_ptr<SymSystem> trivial_full_system(std::shared_ptr<const FinPoset> poset, const Limits& limits) {
  FinGroup group = automorphism_group(*poset, limits.max_group);
  std::vector<FinGroup> base{group};
  return std::make_unique<SymSystem>(std::move(poset), std::move(group), std::move(base),
                                     std::vector<std::string>{"aut(P)"}, limits);
}

}  // namespace symext
