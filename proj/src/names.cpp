#include "symext/names.hpp"

#include <algorithm>
#include <stdexcept>

namespace symext {

namespace {

std::size_t hash_entries(const std::vector<NameEntry>& entries) {
  std::size_t h = 0xcbf29ce484222325ull;
  for (const auto& e : entries) {
    h ^= e.cond.index + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= e.name.id() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h ^ entries.size();
}

}  // namespace

NameStore::NameStore(std::shared_ptr<const FinPoset> poset, Limits limits)
    : poset_(std::move(poset)), limits_(limits), chunks_(new std::atomic<Node*>[kMaxChunks]) {
  if (!poset_) throw std::invalid_argument("name store needs a poset");
  for (std::size_t i = 0; i < kMaxChunks; ++i) chunks_[i].store(nullptr, std::memory_order_relaxed);
}

NameStore::~NameStore() {
  for (std::size_t i = 0; i < kMaxChunks; ++i) delete[] chunks_[i].load(std::memory_order_relaxed);
}

void NameStore::own(Name x) const {
  if (x.store() != this) throw std::invalid_argument("name belongs to a different poset");
  if (x.id() >= size()) throw std::out_of_range("unknown name id");
}

const NameStore::Node& NameStore::node(Name x) const {
  own(x);
  Node* chunk = chunks_[x.id() >> kChunkBits].load(std::memory_order_acquire);
  return chunk[x.id() & (kChunkSize - 1)];
}

std::size_t NameStore::rank(Name x) const { return node(x).rank; }

std::span<const NameEntry> NameStore::entries(Name x) const { return node(x).entries; }

Name NameStore::make(std::vector<NameEntry> raw) {
  std::uint32_t rank = 0;
  for (const auto& e : raw) {
    if (e.cond.index >= poset_->size())
      throw std::invalid_argument("entry condition #" + std::to_string(e.cond.index) +
                                  " is not in the poset");
    if (e.name.store() != this) throw std::invalid_argument("mixed-poset entries in name");
    rank = std::max<std::uint32_t>(rank, node(e.name).rank + 1);
  }
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  if (rank > limits_.rank_cap) throw CapExceeded("name rank", rank, limits_.rank_cap);
  if (raw.size() > limits_.max_entries)
    throw CapExceeded("name entries", raw.size(), limits_.max_entries);

  const std::size_t h = hash_entries(raw);
  std::lock_guard lock(insert_mutex_);
  const std::uint32_t n = count_.load(std::memory_order_relaxed);
  auto [lo, hi] = index_.equal_range(h);
  for (auto it = lo; it != hi; ++it) {
    const Node& candidate = chunks_[it->second >> kChunkBits].load(std::memory_order_relaxed)
                                [it->second & (kChunkSize - 1)];
    if (candidate.entries == raw) return Name(this, it->second);
  }
  const std::size_t chunk = n >> kChunkBits;
  if (chunk >= kMaxChunks) throw CapExceeded("name table", n, kMaxChunks * kChunkSize);
  Node* storage = chunks_[chunk].load(std::memory_order_relaxed);
  if (!storage) {
    storage = new Node[kChunkSize];
    chunks_[chunk].store(storage, std::memory_order_release);
  }
  Node& slot = storage[n & (kChunkSize - 1)];
  slot.entries = std::move(raw);
  slot.rank = rank;
  slot.hash = h;
  index_.emplace(h, n);
  count_.store(n + 1, std::memory_order_release);
  return Name(this, n);
}

Name NameStore::empty() { return make({}); }

Name NameStore::check(const HfSet& x) {
  std::vector<NameEntry> entries;
  entries.reserve(x.size());
  for (const HfSet& y : x.members()) entries.push_back({poset_->top(), check(y)});
  return make(std::move(entries));
}

Name NameStore::bullet_set(std::span<const Name> names) {
  std::vector<NameEntry> entries;
  entries.reserve(names.size());
  for (Name y : names) entries.push_back({poset_->top(), y});
  return make(std::move(entries));
}

Name NameStore::bullet_pair(Name x, Name y) {
  return bullet_set({bullet_set({x}), bullet_set({x, y})});
}

std::optional<HfSet> NameStore::as_check(Name x) const {
  std::vector<HfSet> members;
  for (const NameEntry& e : entries(x)) {
    if (e.cond != poset_->top()) return std::nullopt;
    auto inner = as_check(e.name);
    if (!inner) return std::nullopt;
    members.push_back(std::move(*inner));
  }
  return HfSet::of(std::move(members));
}

std::string NameStore::render_rec(Name x, std::unordered_map<std::uint32_t, std::string>& memo) const {
  if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
  std::string out;
  if (auto ground = as_check(x)) {
    out = "check " + ground->str();
  } else {
    std::vector<std::pair<std::uint32_t, std::string>> parts;
    for (const NameEntry& e : entries(x)) parts.emplace_back(e.cond.index, render_rec(e.name, memo));
    std::sort(parts.begin(), parts.end());
    out = "{";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out += ", ";
      out += "<" + poset_->label(Cond{parts[i].first}) + ", " + parts[i].second + ">";
    }
    out += "}";
  }
  memo.emplace(x.id(), out);
  return out;
}

std::string NameStore::render(Name x) const {
  std::unordered_map<std::uint32_t, std::string> memo;
  return render_rec(x, memo);
}

bool appears_in(Name y, Name x) {
  for (const NameEntry& e : x.entries())
    if (e.name == y) return true;
  return false;
}

bool condition_appears(Cond p, Name x) {
  for (const NameEntry& e : x.entries())
    if (e.cond == p) return true;
  return false;
}

std::vector<Name> appearing_names(Name x) {
  std::vector<Name> out;
  for (const NameEntry& e : x.entries())
    if (std::find(out.begin(), out.end(), e.name) == out.end()) out.push_back(e.name);
  return out;
}

}  // namespace symext
