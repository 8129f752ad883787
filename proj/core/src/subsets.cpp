#include "pmi/subsets.hpp"

#include <limits>

namespace pmi {

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t acc = 1;
  for (unsigned i = 1; i <= k; ++i) {
    std::uint64_t num = n - k + i;
    // acc * num / i is always integral at this point; guard the product.
    if (acc > std::numeric_limits<std::uint64_t>::max() / num)
      throw std::overflow_error("binomial: value exceeds 64 bits");
    acc = acc * num / i;
  }
  return acc;
}

SubsetIndexer::SubsetIndexer(int n, int r) : n_(n), r_(r) {
  if (n < 1 || r < 0 || r > n || n > 24)
    throw std::invalid_argument("SubsetIndexer: need 0 <= r <= n <= 24");
  masks_.reserve(binomial(n, r));
  // Lex order on member lists: standard next-combination walk.
  std::vector<int> cur(r);
  for (int i = 0; i < r; ++i) cur[i] = i + 1;
  while (true) {
    std::uint32_t m = 0;
    for (int v : cur) m |= 1u << (v - 1);
    masks_.push_back(m);
    if (r == 0) break;
    int i = r - 1;
    while (i >= 0 && cur[i] == n - (r - 1 - i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < r; ++j) cur[j] = cur[j - 1] + 1;
  }
  mask_to_idx_.assign(std::size_t(1) << n, std::numeric_limits<std::uint32_t>::max());
  for (std::size_t i = 0; i < masks_.size(); ++i) mask_to_idx_[masks_[i]] = static_cast<std::uint32_t>(i);
}

std::vector<int> SubsetIndexer::subset_at(std::size_t idx) const {
  return mask_to_members(masks_.at(idx));
}

std::size_t SubsetIndexer::index_of_mask(std::uint32_t mask) const {
  if (mask >= mask_to_idx_.size() || mask_to_idx_[mask] == std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("SubsetIndexer: mask is not an r-subset of {1..n}");
  return mask_to_idx_[mask];
}

std::size_t SubsetIndexer::index_of(const std::vector<int>& members) const {
  return index_of_mask(members_to_mask(members));
}

std::vector<int> mask_to_members(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1) out.push_back(i + 1);
  return out;
}

std::uint32_t members_to_mask(const std::vector<int>& members) {
  std::uint32_t m = 0;
  for (int v : members) {
    if (v < 1 || v > 32) throw std::invalid_argument("members_to_mask: element out of range");
    m |= 1u << (v - 1);
  }
  return m;
}

}  // namespace pmi
