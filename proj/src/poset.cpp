#include "symext/poset.hpp"

#include <functional>
#include <stdexcept>

namespace symext {

FinPoset::FinPoset(std::vector<std::string> labels, const Limits& limits)
    : labels_(std::move(labels)), limits_(limits) {
  if (labels_.empty()) throw std::invalid_argument("poset must be non-empty");
  if (labels_.size() > limits_.max_poset)
    throw CapExceeded("poset", labels_.size(), limits_.max_poset);
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    auto [it, fresh] = by_label_.emplace(labels_[i], static_cast<std::uint32_t>(i));
    if (!fresh) throw std::invalid_argument("duplicate condition label '" + labels_[i] + "'");
  }
  below_.assign(labels_.size(), ConditionSet(labels_.size()));
  above_.assign(labels_.size(), ConditionSet(labels_.size()));
}

void FinPoset::set_leq(std::size_t q, std::size_t p) {
  below_[p].set(q);
  above_[q].set(p);
}

void FinPoset::finish() {
  const std::size_t n = size();
  for (std::size_t p = 0; p < n; ++p) {
    if (!below_[p].test(p))
      throw std::invalid_argument("order is not reflexive at '" + labels_[p] + "'");
    for (std::size_t q = below_[p].find_first(); q != ConditionSet::npos; q = below_[p].find_next(q)) {
      if (q != p && below_[q].test(p))
        throw std::invalid_argument("order is not antisymmetric: '" + labels_[p] + "' and '" +
                                    labels_[q] + "'");
      if (!below_[q].is_subset_of(below_[p]))
        throw std::invalid_argument("order is not transitive below '" + labels_[p] + "'");
    }
  }
  std::optional<std::size_t> top;
  for (std::size_t p = 0; p < n; ++p) {
    if (below_[p].all()) {
      top = p;
      break;
    }
  }
  if (!top) throw std::invalid_argument("poset has no maximum element");
  top_ = Cond{static_cast<std::uint32_t>(*top)};
}

FinPoset FinPoset::from_covers(std::vector<std::string> labels,
                               std::span<const std::pair<std::size_t, std::size_t>> below,
                               const Limits& limits) {
  FinPoset poset(std::move(labels), limits);
  const std::size_t n = poset.size();
  for (std::size_t p = 0; p < n; ++p) poset.below_[p].set(p);
  for (auto [q, p] : below) {
    if (q >= n || p >= n) throw std::invalid_argument("cover refers to unknown condition");
    poset.below_[p].set(q);
  }
  // Warshall closure on down-sets.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t p = 0; p < n; ++p)
      if (poset.below_[p].test(k)) poset.below_[p] |= poset.below_[k];
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = poset.below_[p].find_first(); q != ConditionSet::npos;
         q = poset.below_[p].find_next(q))
      poset.above_[q].set(p);
  poset.finish();
  return poset;
}

void FinPoset::check(Cond p) const {
  if (p.index >= size())
    throw std::out_of_range("unknown condition #" + std::to_string(p.index));
}

Cond FinPoset::at(std::size_t index) const {
  if (index >= size()) throw std::out_of_range("unknown condition #" + std::to_string(index));
  return Cond{static_cast<std::uint32_t>(index)};
}

const std::string& FinPoset::label(Cond p) const {
  check(p);
  return labels_[p.index];
}

std::optional<Cond> FinPoset::find(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return Cond{it->second};
}

Cond FinPoset::lookup(std::string_view label) const {
  if (auto c = find(label)) return *c;
  throw std::invalid_argument("unknown condition '" + std::string(label) + "'");
}

std::vector<Cond> FinPoset::conditions() const {
  std::vector<Cond> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = Cond{static_cast<std::uint32_t>(i)};
  return out;
}

bool FinPoset::leq(Cond q, Cond p) const {
  check(q);
  check(p);
  return below_[p.index].test(q.index);
}

const ConditionSet& FinPoset::below(Cond p) const {
  check(p);
  return below_[p.index];
}

const ConditionSet& FinPoset::above(Cond p) const {
  check(p);
  return above_[p.index];
}

bool FinPoset::compatible(Cond p, Cond q) const {
  check(p);
  check(q);
  return below_[p.index].intersects(below_[q.index]);
}

bool FinPoset::is_dense(const ConditionSet& s, Cond below) const {
  check(below);
  return below_[below.index].is_subset_of(up_closure(s));
}

ConditionSet FinPoset::up_closure(const ConditionSet& s) const {
  ConditionSet out(size());
  for (std::size_t q = s.find_first(); q != ConditionSet::npos; q = s.find_next(q))
    out |= above_[q];
  return out;
}

ConditionSet FinPoset::interior(const ConditionSet& u) const {
  ConditionSet out(size());
  for (std::size_t p = 0; p < size(); ++p)
    if (below_[p].is_subset_of(u)) out.set(p);
  return out;
}

AntichainInfo FinPoset::is_antichain(std::span<const Cond> d) const {
  AntichainInfo info;
  for (Cond p : d) check(p);
  info.antichain = true;
  for (std::size_t i = 0; i < d.size() && info.antichain; ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j)
      if (d[i] == d[j] || compatible(d[i], d[j])) {
        info.antichain = false;
        break;
      }
  if (!info.antichain) return info;
  // Maximal iff the union of down-sets of members is dense.
  ConditionSet reach(size());
  for (Cond p : d) reach |= below_[p.index];
  info.maximal = !d.empty() && up_closure(reach).all();
  return info;
}

std::vector<Cond> FinPoset::minimal() const {
  std::vector<Cond> out;
  for (std::size_t p = 0; p < size(); ++p)
    if (below_[p].count() == 1) out.push_back(Cond{static_cast<std::uint32_t>(p)});
  return out;
}

std::vector<GenericFilter> FinPoset::generic_filters() const {
  std::vector<GenericFilter> out;
  for (Cond m : minimal()) out.push_back(GenericFilter{m, above_[m.index]});
  return out;
}

std::size_t FinPoset::antichain_width() const {
  // Dilworth: width = n - maximum matching in the strict comparability
  // bipartite graph (q -> p for q < p).
  const std::size_t n = size();
  std::vector<std::int64_t> match_right(n, -1);
  std::function<bool(std::size_t, std::vector<char>&)> augment =
      [&](std::size_t q, std::vector<char>& seen) {
        for (std::size_t p = above_[q].find_first(); p != ConditionSet::npos;
             p = above_[q].find_next(p)) {
          if (p == q || seen[p]) continue;
          seen[p] = 1;
          if (match_right[p] < 0 || augment(static_cast<std::size_t>(match_right[p]), seen)) {
            match_right[p] = static_cast<std::int64_t>(q);
            return true;
          }
        }
        return false;
      };
  std::size_t matching = 0;
  for (std::size_t q = 0; q < n; ++q) {
    std::vector<char> seen(n, 0);
    if (augment(q, seen)) ++matching;
  }
  return n - matching;
}

ConditionSet FinPoset::to_set(std::span<const Cond> conds) const {
  ConditionSet out(size());
  for (Cond p : conds) {
    check(p);
    out.set(p.index);
  }
  return out;
}

std::vector<Cond> FinPoset::members(const ConditionSet& s) const {
  std::vector<Cond> out;
  for (std::size_t q = s.find_first(); q != ConditionSet::npos; q = s.find_next(q))
    out.push_back(Cond{static_cast<std::uint32_t>(q)});
  return out;
}

FinPoset product_poset(const FinPoset& p1, const FinPoset& p2, const Limits& limits) {
  const std::size_t n1 = p1.size(), n2 = p2.size();
  if (n1 * n2 > limits.max_poset) throw CapExceeded("poset", n1 * n2, limits.max_poset);
  std::vector<std::string> labels;
  labels.reserve(n1 * n2);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j)
      labels.push_back("(" + p1.label(p1.at(i)) + "," + p2.label(p2.at(j)) + ")");
  return FinPoset::from_relation(
      std::move(labels),
      [&](std::size_t q, std::size_t p) {
        return p1.leq(p1.at(q / n2), p1.at(p / n2)) && p2.leq(p2.at(q % n2), p2.at(p % n2));
      },
      limits);
}

}  // namespace symext
