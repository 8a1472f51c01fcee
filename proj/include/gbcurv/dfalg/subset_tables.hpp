#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gbcurv::dfalg {

// p-element subsets of {0,...,n-1} as bitmasks, ordered lexicographically as
// sorted index tuples. Tables are built once per (n,p) and shared read-only.
class SubsetTable {
 public:
  static const SubsetTable& get(int n, int p);

  int n() const { return n_; }
  int p() const { return p_; }
  int count() const { return static_cast<int>(masks_.size()); }
  std::uint32_t mask(int rank) const { return masks_[static_cast<std::size_t>(rank)]; }
  int rank(std::uint32_t mask) const { return rank_of_[mask]; }

 private:
  SubsetTable(int n, int p);
  int n_, p_;
  std::vector<std::uint32_t> masks_;
  std::vector<int> rank_of_;  // indexed by mask; -1 where popcount differs
};

struct Split {
  int left;     // rank in SubsetTable(n,p)
  int right;    // rank in SubsetTable(n,r)
  double sign;  // parity of interleaving the two blocks back into sorted order
};

// All ways of writing a (p+r)-subset K as an ordered disjoint pair (I, I')
// with |I| = p, |I'| = r. This is the exterior-product hot path.
class SplitTable {
 public:
  static const SplitTable& get(int n, int p, int r);

  std::span<const Split> splits(int rank_pr) const {
    return {splits_.data() + offsets_[static_cast<std::size_t>(rank_pr)],
            splits_.data() + offsets_[static_cast<std::size_t>(rank_pr) + 1]};
  }

 private:
  SplitTable(int n, int p, int r);
  std::vector<Split> splits_;
  std::vector<std::size_t> offsets_;
};

struct StarEntry {
  int comp;     // rank of the complement subset
  double sign;  // permutation sign of (I, I^c) relative to (0,...,n-1)
};

class StarTable {
 public:
  static const StarTable& get(int n, int p);
  StarEntry entry(int rank) const { return entries_[static_cast<std::size_t>(rank)]; }

 private:
  StarTable(int n, int p);
  std::vector<StarEntry> entries_;
};

// Sign of prepending element m to the sorted subset `mask`: (-1)^|{i in mask : i < m}|.
inline double prefix_sign(std::uint32_t mask, int m) {
  const std::uint32_t below = mask & ((1u << m) - 1u);
  return (__builtin_popcount(below) & 1) ? -1.0 : 1.0;
}

// Parity sign of merging two disjoint sorted blocks A, B into one sorted run.
inline double interleave_sign(std::uint32_t a, std::uint32_t b) {
  int inversions = 0;
  std::uint32_t rest = a;
  while (rest) {
    const int bit = __builtin_ctz(rest);
    rest &= rest - 1;
    inversions += __builtin_popcount(b & ((1u << bit) - 1u));
  }
  return (inversions & 1) ? -1.0 : 1.0;
}

}  // namespace gbcurv::dfalg
