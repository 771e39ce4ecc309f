#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace ugraph {

// Disjoint sets with union by size and path halving.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }

  void reset() {
    std::iota(parent_.begin(), parent_.end(), 0u);
    std::fill(size_.begin(), size_.end(), 1u);
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  std::size_t size() const { return parent_.size(); }

  // Writes canonical labels: every node gets the smallest node id of its set.
  void canonical_labels(std::span<std::uint32_t> out) {
    constexpr std::uint32_t kUnset = ~0u;
    scratch_.assign(parent_.size(), kUnset);
    for (std::uint32_t u = 0; u < parent_.size(); ++u) {
      const std::uint32_t root = find(u);
      if (scratch_[root] == kUnset) scratch_[root] = u;
      out[u] = scratch_[root];
    }
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::vector<std::uint32_t> scratch_;
};

}  // namespace ugraph
