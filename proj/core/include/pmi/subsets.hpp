#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace pmi {

// Exact C(n, k); throws std::overflow_error if the value does not fit in 64 bits.
std::uint64_t binomial(unsigned n, unsigned k);

/// All r-subsets of {1..n} in lexicographic order, with rank/unrank maps.
///
/// Subsets are handled in two interchangeable forms: sorted member lists
/// (1-based) and bitmasks (bit i-1 set means element i is present).
/// Lexicographic order compares member lists elementwise, e.g. for n=4, r=2:
/// {1,2} < {1,3} < {1,4} < {2,3} < {2,4} < {3,4}.
class SubsetIndexer {
 public:
  SubsetIndexer(int n, int r);

  int n() const { return n_; }
  int r() const { return r_; }
  std::size_t size() const { return masks_.size(); }

  const std::vector<std::uint32_t>& masks() const { return masks_; }
  std::uint32_t mask_at(std::size_t idx) const { return masks_[idx]; }

  // Members of the idx-th subset, ascending, 1-based.
  std::vector<int> subset_at(std::size_t idx) const;

  std::size_t index_of_mask(std::uint32_t mask) const;
  std::size_t index_of(const std::vector<int>& members) const;

  // Complement within {1..n} as a mask.
  std::uint32_t complement_mask(std::uint32_t mask) const {
    return ~mask & ((1u << n_) - 1);
  }

  friend bool operator==(const SubsetIndexer& a, const SubsetIndexer& b) {
    return a.n_ == b.n_ && a.r_ == b.r_;
  }

 private:
  int n_, r_;
  std::vector<std::uint32_t> masks_;        // lex order
  std::vector<std::uint32_t> mask_to_idx_;  // dense table of size 2^n
};

std::vector<int> mask_to_members(std::uint32_t mask);
std::uint32_t members_to_mask(const std::vector<int>& members);

}  // namespace pmi
