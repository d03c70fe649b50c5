#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lce/config.hpp"
#include "lce/rational.hpp"

namespace lce {

// Enumerates partitions of {0,...,n-1} by restricted-growth backtracking:
// each position joins an existing block or opens a new one. Blocks arrive
// ordered by minimal element, elements ascending, each partition exactly once.
template <typename F>
void for_each_partition_of_range(int n, F&& visit) {
  std::vector<std::vector<int>> blocks;
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == n) {
      visit(static_cast<const std::vector<std::vector<int>>&>(blocks));
      return;
    }
    // index loop: recursion grows and shrinks `blocks`, references would dangle
    std::size_t existing = blocks.size();
    for (std::size_t i = 0; i < existing; ++i) {
      blocks[i].push_back(pos);
      self(self, pos + 1);
      blocks[i].pop_back();
    }
    blocks.emplace_back(1, pos);
    self(self, pos + 1);
    blocks.pop_back();
  };
  rec(rec, 0);
}

// Partition of a finite label set into nonempty disjoint blocks, canonical
// form: blocks sorted by minimum element.
class SetPartition {
 public:
  explicit SetPartition(std::vector<std::vector<int>> blocks) : blocks_(std::move(blocks)) {
    for (auto& b : blocks_) {
      if (b.empty()) throw error("set partition with an empty block");
      std::sort(b.begin(), b.end());
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (const auto& b : blocks_) ground_.insert(ground_.end(), b.begin(), b.end());
    std::sort(ground_.begin(), ground_.end());
    if (std::adjacent_find(ground_.begin(), ground_.end()) != ground_.end())
      throw error("set partition blocks are not disjoint");
  }

  // 0-hat: all blocks singletons.
  static SetPartition finest(const std::vector<int>& ground) {
    std::vector<std::vector<int>> blocks;
    for (int x : ground) blocks.push_back({x});
    return SetPartition(std::move(blocks));
  }
  // 1-hat: a single block.
  static SetPartition coarsest(const std::vector<int>& ground) {
    if (ground.empty()) throw error("coarsest partition of an empty set");
    return SetPartition({ground});
  }

  const std::vector<int>& ground() const { return ground_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int size() const { return static_cast<int>(blocks_.size()); }

  friend bool operator==(const SetPartition& a, const SetPartition& b) {
    return a.blocks_ == b.blocks_;
  }
  friend bool operator!=(const SetPartition& a, const SetPartition& b) { return !(a == b); }
  friend bool operator<(const SetPartition& a, const SetPartition& b) {
    return a.blocks_ < b.blocks_;
  }

 private:
  std::vector<std::vector<int>> blocks_;
  std::vector<int> ground_;
};

// Streams every partition of `ground` (sorted, duplicate-free) in canonical
// order; the visited block lists carry the actual labels.
template <typename F>
void for_each_partition(const std::vector<int>& ground, F&& visit) {
  if (static_cast<int>(ground.size()) > partition_cap())
    throw error("ground set of size " + std::to_string(ground.size()) +
                " exceeds the partition cap " + std::to_string(partition_cap()));
  std::vector<std::vector<int>> labeled;
  for_each_partition_of_range(static_cast<int>(ground.size()), [&](const auto& blocks) {
    labeled.clear();
    labeled.reserve(blocks.size());
    for (const auto& b : blocks) {
      std::vector<int> lb;
      lb.reserve(b.size());
      for (int i : b) lb.push_back(ground[static_cast<std::size_t>(i)]);
      labeled.push_back(std::move(lb));
    }
    visit(static_cast<const std::vector<std::vector<int>>&>(labeled));
  });
}

inline std::vector<SetPartition> enumerate_partitions(const std::vector<int>& ground) {
  std::vector<SetPartition> out;
  for_each_partition(ground, [&](const std::vector<std::vector<int>>& blocks) {
    out.emplace_back(blocks);
  });
  return out;
}

// t <= u in refinement order: every block of t sits inside a block of u.
inline bool refines(const SetPartition& t, const SetPartition& u) {
  if (t.ground() != u.ground()) throw error("refines: partitions of different ground sets");
  std::map<int, int> owner;
  for (std::size_t i = 0; i < u.blocks().size(); ++i)
    for (int x : u.blocks()[i]) owner[x] = static_cast<int>(i);
  for (const auto& b : t.blocks()) {
    int o = owner.at(b.front());
    for (int x : b)
      if (owner.at(x) != o) return false;
  }
  return true;
}

// Closed-form Mobius function of the partition lattice:
// mu(x,t) = (-1)^{|x|+|t|} (n_1-1)! ... (n_k-1)!, n_i = #blocks of x inside T_i.
inline Rational mobius(const SetPartition& x, const SetPartition& t) {
  if (x.ground() != t.ground()) throw error("mobius: partitions of different ground sets");
  if (!refines(x, t)) return 0;
  std::map<int, int> owner;
  for (std::size_t i = 0; i < t.blocks().size(); ++i)
    for (int lbl : t.blocks()[i]) owner[lbl] = static_cast<int>(i);
  std::vector<int> counts(t.blocks().size(), 0);
  for (const auto& b : x.blocks()) ++counts[static_cast<std::size_t>(owner.at(b.front()))];
  BigInt prod = 1;
  for (int n : counts) prod *= factorial(static_cast<unsigned>(n - 1));
  int sign = ((x.size() + t.size()) % 2 == 0) ? 1 : -1;
  return Rational(BigInt(sign) * prod);
}

// mu(t, 1-hat) for a partition with k blocks.
inline Rational mobius_to_top(int num_blocks) {
  BigInt v = factorial(static_cast<unsigned>(num_blocks - 1));
  return Rational(num_blocks % 2 == 1 ? v : -v);
}

using IncidenceFunction = std::function<Rational(const SetPartition&, const SetPartition&)>;

inline IncidenceFunction zeta_function() {
  return [](const SetPartition& x, const SetPartition& y) { return refines(x, y) ? 1 : 0; };
}
inline IncidenceFunction delta_function() {
  return [](const SetPartition& x, const SetPartition& y) { return x == y ? 1 : 0; };
}
inline IncidenceFunction mobius_function() {
  return [](const SetPartition& x, const SetPartition& y) { return mobius(x, y); };
}

// (f * g)(x, y) = sum over x <= z <= y of f(x,z) g(z,y).
inline Rational incidence_convolve(const IncidenceFunction& f, const IncidenceFunction& g,
                                   const SetPartition& x, const SetPartition& y) {
  if (x.ground() != y.ground())
    throw error("incidence_convolve: partitions of different ground sets");
  Rational acc = 0;
  for_each_partition(x.ground(), [&](const std::vector<std::vector<int>>& blocks) {
    SetPartition z(blocks);
    if (refines(x, z) && refines(z, y)) acc += f(x, z) * g(z, y);
  });
  return acc;
}

}  // namespace lce
