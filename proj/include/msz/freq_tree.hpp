#pragma once

// Order-statistics binary search tree over the unique symbols of a multiset.
//
// Every node stores the total number of symbol occurrences in the branch it
// roots; a node's own count is its total minus its children's totals. That is
// enough to compute cumulative counts (c) and counts (p) on the way down, so a
// lookup and the matching insert/remove share a single root-to-node walk.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "msz/errors.hpp"
#include "msz/multiset.hpp"

namespace msz {

template <class Symbol, class Compare = std::less<Symbol>>
class FreqTree {
 public:
  struct Interval {
    std::uint64_t start;  // c: occurrences of all smaller symbols
    std::uint64_t freq;   // p: occurrences of this symbol

    bool operator==(const Interval&) const = default;
  };

  struct Hit {
    Symbol symbol;
    std::uint64_t start;
    std::uint64_t freq;
  };

  FreqTree() = default;

  /// Builds a depth-minimal tree: the shape is a complete binary tree whose
  /// last level is filled from the right, so depth = ceil(log2(M + 1)).
  static FreqTree build_balanced(const Multiset<Symbol>& m) {
    FreqTree t;
    const auto entries = m.entries();
    t.nodes_.reserve(entries.size());
    t.root_ = t.build(entries, 0, entries.size());
    t.size_ = entries.size();
    return t;
  }

  /// |M_n|
  std::uint64_t total() const noexcept { return branch(root_); }
  /// Number of unique symbols currently stored.
  std::size_t unique() const noexcept { return size_; }
  bool empty() const noexcept { return root_ == kNil; }

  /// x -> (c_x, p_x). Throws NotFoundError if x is absent.
  Interval forward_lookup(const Symbol& x) const {
    std::uint64_t start = 0;
    std::int32_t cur = root_;
    while (cur != kNil) {
      const Node& n = nodes_[cur];
      ++visits_;
      const std::uint64_t left = branch(n.left);
      if (less_(x, n.symbol)) {
        cur = n.left;
      } else if (less_(n.symbol, x)) {
        start += n.total - branch(n.right);
        cur = n.right;
      } else {
        return {start + left, n.total - left - branch(n.right)};
      }
    }
    throw NotFoundError("symbol not present in tree");
  }

  /// i -> (x, c_x, p_x) with i in [c_x, c_x + p_x). Requires i < total().
  Hit reverse_lookup(std::uint64_t index) const {
    check_index(index);
    std::uint64_t start = 0;
    std::int32_t cur = root_;
    for (;;) {
      const Node& n = nodes_[cur];
      ++visits_;
      const std::uint64_t left = branch(n.left);
      const std::uint64_t count = n.total - left - branch(n.right);
      if (index < left) {
        cur = n.left;
      } else if (index >= left + count) {
        index -= left + count;
        start += left + count;
        cur = n.right;
      } else {
        return {n.symbol, start + left, count};
      }
    }
  }

  /// reverse_lookup(i) fused with removal of one occurrence of the symbol
  /// found. Totals are decremented on the way down. The returned interval is
  /// the one before removal.
  Hit lookup_and_remove(std::uint64_t index) {
    check_index(index);
    std::uint64_t start = 0;
    std::int32_t* link = &root_;
    for (;;) {
      Node& n = nodes_[*link];
      ++visits_;
      const std::uint64_t left = branch(n.left);
      const std::uint64_t count = n.total - left - branch(n.right);
      --n.total;
      if (index < left) {
        link = &n.left;
      } else if (index >= left + count) {
        index -= left + count;
        start += left + count;
        link = &n.right;
      } else {
        Hit hit{n.symbol, start + left, count};
        if (count == 1) {
          erase(link);
        }
        return hit;
      }
    }
  }

  /// Inserts one occurrence of x and returns (c_x, p_x) after insertion.
  Interval insert_and_lookup(const Symbol& x) {
    std::uint64_t start = 0;
    std::int32_t parent = kNil;
    bool go_left = false;
    std::int32_t cur = root_;
    while (cur != kNil) {
      Node& n = nodes_[cur];
      ++visits_;
      const std::uint64_t left = branch(n.left);
      const std::uint64_t right = branch(n.right);
      const std::uint64_t count = n.total - left - right;
      ++n.total;
      if (less_(x, n.symbol)) {
        parent = cur;
        go_left = true;
        cur = n.left;
      } else if (less_(n.symbol, x)) {
        start += left + count;
        parent = cur;
        go_left = false;
        cur = n.right;
      } else {
        return {start + left, count + 1};
      }
    }
    const std::int32_t fresh = allocate(x);
    if (parent == kNil) {
      root_ = fresh;
    } else if (go_left) {
      nodes_[parent].left = fresh;
    } else {
      nodes_[parent].right = fresh;
    }
    ++size_;
    return {start, 1};
  }

  /// In-order traversal into canonical form.
  Multiset<Symbol> to_multiset() const {
    std::vector<typename Multiset<Symbol>::Entry> out;
    out.reserve(size_);
    std::vector<std::int32_t> stack;
    std::int32_t cur = root_;
    while (cur != kNil || !stack.empty()) {
      while (cur != kNil) {
        stack.push_back(cur);
        cur = nodes_[cur].left;
      }
      cur = stack.back();
      stack.pop_back();
      const Node& n = nodes_[cur];
      out.push_back({n.symbol, n.total - branch(n.left) - branch(n.right)});
      cur = n.right;
    }
    return Multiset<Symbol>(std::move(out));
  }

  /// Number of nodes on the longest root-to-leaf path (0 for an empty tree).
  std::size_t depth() const {
    std::size_t best = 0;
    std::vector<std::pair<std::int32_t, std::size_t>> stack;
    if (root_ != kNil) {
      stack.emplace_back(root_, 1);
    }
    while (!stack.empty()) {
      const auto [i, d] = stack.back();
      stack.pop_back();
      best = std::max(best, d);
      if (nodes_[i].left != kNil) stack.emplace_back(nodes_[i].left, d + 1);
      if (nodes_[i].right != kNil) stack.emplace_back(nodes_[i].right, d + 1);
    }
    return best;
  }

  /// Calls f(symbol, branch_total, depth) for every node in symbol order; the
  /// root has depth 1. In-order plus depth determines the tree shape.
  template <class F>
  void for_each_node(F&& f) const {
    std::vector<std::pair<std::int32_t, std::size_t>> stack;
    std::int32_t i = root_;
    std::size_t d = 1;
    while (i != kNil || !stack.empty()) {
      while (i != kNil) {
        stack.emplace_back(i, d);
        i = nodes_[i].left;
        ++d;
      }
      const auto [j, dj] = stack.back();
      stack.pop_back();
      f(nodes_[j].symbol, nodes_[j].total, dj);
      i = nodes_[j].right;
      d = dj + 1;
    }
  }

  /// Nodes dereferenced by lookups, inserts and removals since the last reset.
  std::uint64_t node_visits() const noexcept { return visits_; }
  void reset_node_visits() noexcept { visits_ = 0; }

 private:
  static constexpr std::int32_t kNil = -1;

  struct Node {
    Symbol symbol;
    std::uint64_t total;
    std::int32_t left = kNil;
    std::int32_t right = kNil;
  };

  std::uint64_t branch(std::int32_t i) const noexcept {
    return i == kNil ? 0 : nodes_[i].total;
  }

  void check_index(std::uint64_t index) const {
    if (index >= total()) {
      throw ContractError("index " + std::to_string(index) + " out of range for tree of total " +
                          std::to_string(total()));
    }
  }

  // Size of the left subtree for a complete tree of n nodes whose last level
  // is filled right to left.
  static std::size_t left_size(std::size_t n) {
    if (n <= 1) {
      return 0;
    }
    const auto depth = static_cast<std::size_t>(std::bit_width(n));
    const std::size_t upper = (std::size_t{1} << (depth - 1)) - 1;
    const std::size_t last_level = n - upper;
    const std::size_t half = std::size_t{1} << (depth - 2);
    const std::size_t right = (half - 1) + std::min(last_level, half);
    return n - 1 - right;
  }

  std::int32_t build(std::span<const typename Multiset<Symbol>::Entry> entries, std::size_t lo,
                     std::size_t hi) {
    if (lo == hi) {
      return kNil;
    }
    const std::size_t mid = lo + left_size(hi - lo);
    const std::int32_t left = build(entries, lo, mid);
    const std::int32_t right = build(entries, mid + 1, hi);
    const std::int32_t i = allocate(entries[mid].symbol);
    Node& n = nodes_[i];
    n.left = left;
    n.right = right;
    n.total = entries[mid].count + branch(left) + branch(right);
    return i;
  }

  std::int32_t allocate(const Symbol& x) {
    if (!free_.empty()) {
      const std::int32_t i = free_.back();
      free_.pop_back();
      nodes_[i] = Node{x, 1};
      return i;
    }
    nodes_.push_back(Node{x, 1});
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  void release(std::int32_t i) {
    nodes_[i].symbol = Symbol{};
    free_.push_back(i);
  }

  // Removes the node at *link, whose own count has dropped to zero. A node
  // with two children takes over its in-order successor's symbol and count.
  void erase(std::int32_t* link) {
    const std::int32_t i = *link;
    Node& n = nodes_[i];
    --size_;
    if (n.left == kNil || n.right == kNil) {
      *link = n.left == kNil ? n.right : n.left;
      release(i);
      return;
    }
    path_.clear();
    std::int32_t* succ_link = &n.right;
    while (nodes_[*succ_link].left != kNil) {
      path_.push_back(*succ_link);
      ++visits_;
      succ_link = &nodes_[*succ_link].left;
    }
    const std::int32_t s = *succ_link;
    ++visits_;
    Node& succ = nodes_[s];
    const std::uint64_t succ_count = succ.total - branch(succ.right);
    for (const std::int32_t p : path_) {
      nodes_[p].total -= succ_count;
    }
    *succ_link = succ.right;
    n.symbol = std::move(succ.symbol);
    release(s);
  }

  std::vector<Node> nodes_;
  std::vector<std::int32_t> free_;
  std::vector<std::int32_t> path_;
  std::int32_t root_ = kNil;
  std::size_t size_ = 0;
  mutable std::uint64_t visits_ = 0;
  [[no_unique_address]] Compare less_{};
};

}  // namespace msz
