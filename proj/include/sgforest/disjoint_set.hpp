#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace sgforest {

// Union-find with union by rank and path halving.
class DisjointSet {
 public:
  explicit DisjointSet(int size) : parent_(size), rank_(size, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int size() const { return static_cast<int>(parent_.size()); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns false when x and y were already connected, i.e. the union
  // would close a cycle.
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    parent_[y] = x;
    if (rank_[x] == rank_[y]) ++rank_[x];
    return true;
  }

 private:
  std::vector<int> parent_;
  std::vector<std::uint8_t> rank_;
};

// Union by rank without path compression, so every union can be undone in
// LIFO order. Used by backtracking enumerators.
class RollbackDisjointSet {
 public:
  explicit RollbackDisjointSet(int size) : parent_(size), rank_(size, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    const bool bumped = rank_[x] == rank_[y];
    parent_[y] = x;
    if (bumped) ++rank_[x];
    history_.push_back({y, x, bumped});
    return true;
  }

  void undo() {
    const Step s = history_.back();
    history_.pop_back();
    parent_[s.child] = s.child;
    if (s.bumped) --rank_[s.root];
  }

 private:
  struct Step {
    int child;
    int root;
    bool bumped;
  };
  std::vector<int> parent_;
  std::vector<std::uint8_t> rank_;
  std::vector<Step> history_;
};

}  // namespace sgforest
