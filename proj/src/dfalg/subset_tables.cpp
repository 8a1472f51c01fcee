#include "gbcurv/dfalg/subset_tables.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "gbcurv/common.hpp"

namespace gbcurv::dfalg {

namespace {

void check_np(int n, int p) {
  if (n < 0 || n > kMaxDim || p < 0 || p > n)
    throw DegreeError("subset table out of range: n=" + std::to_string(n) + " p=" + std::to_string(p));
}

template <typename T, typename Key, typename Make>
const T& cached(std::map<Key, std::unique_ptr<T>>& cache, std::mutex& mutex, const Key& key, Make make) {
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::unique_ptr<T>(make())).first;
  return *it->second;
}

}  // namespace

SubsetTable::SubsetTable(int n, int p) : n_(n), p_(p) {
  check_np(n, p);
  masks_.reserve(static_cast<std::size_t>(binomial(n, p)));
  // Lexicographic enumeration of sorted index tuples.
  std::vector<int> idx(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    std::uint32_t m = 0;
    for (int i : idx) m |= (1u << i);
    masks_.push_back(m);
    if (p == 0) break;
    int j = p - 1;
    while (j >= 0 && idx[static_cast<std::size_t>(j)] == n - p + j) --j;
    if (j < 0) break;
    ++idx[static_cast<std::size_t>(j)];
    for (int i = j + 1; i < p; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
  }
  rank_of_.assign(std::size_t(1) << n, -1);
  for (int r = 0; r < count(); ++r) rank_of_[masks_[static_cast<std::size_t>(r)]] = r;
}

const SubsetTable& SubsetTable::get(int n, int p) {
  static std::map<int, std::unique_ptr<SubsetTable>> cache;
  static std::mutex mutex;
  return cached(cache, mutex, (n << 8) | p, [&] { return new SubsetTable(n, p); });
}

SplitTable::SplitTable(int n, int p, int r) {
  const SubsetTable& full = SubsetTable::get(n, p + r);
  const SubsetTable& left = SubsetTable::get(n, p);
  const SubsetTable& right = SubsetTable::get(n, r);
  offsets_.assign(static_cast<std::size_t>(full.count()) + 1, 0);
  splits_.reserve(static_cast<std::size_t>(full.count()) * static_cast<std::size_t>(binomial(p + r, p)));
  for (int k = 0; k < full.count(); ++k) {
    const std::uint32_t km = full.mask(k);
    // Enumerate sub-masks of km with popcount p.
    std::uint32_t sub = km;
    for (;;) {
      if (__builtin_popcount(sub) == p) {
        const std::uint32_t rest = km ^ sub;
        splits_.push_back({left.rank(sub), right.rank(rest), interleave_sign(sub, rest)});
      }
      if (sub == 0) break;
      sub = (sub - 1) & km;
    }
    offsets_[static_cast<std::size_t>(k) + 1] = splits_.size();
  }
}

const SplitTable& SplitTable::get(int n, int p, int r) {
  check_np(n, p);
  check_np(n, r);
  if (p + r > n) throw DegreeError("split table degree overflow");
  static std::map<int, std::unique_ptr<SplitTable>> cache;
  static std::mutex mutex;
  return cached(cache, mutex, (n << 16) | (p << 8) | r, [&] { return new SplitTable(n, p, r); });
}

StarTable::StarTable(int n, int p) {
  const SubsetTable& tab = SubsetTable::get(n, p);
  const SubsetTable& comp = SubsetTable::get(n, n - p);
  const std::uint32_t all = (n == 32) ? ~0u : ((1u << n) - 1u);
  entries_.resize(static_cast<std::size_t>(tab.count()));
  for (int r = 0; r < tab.count(); ++r) {
    const std::uint32_t m = tab.mask(r);
    const std::uint32_t c = all ^ m;
    entries_[static_cast<std::size_t>(r)] = {comp.rank(c), interleave_sign(m, c)};
  }
}

const StarTable& StarTable::get(int n, int p) {
  check_np(n, p);
  static std::map<int, std::unique_ptr<StarTable>> cache;
  static std::mutex mutex;
  return cached(cache, mutex, (n << 8) | p, [&] { return new StarTable(n, p); });
}

}  // namespace gbcurv::dfalg
