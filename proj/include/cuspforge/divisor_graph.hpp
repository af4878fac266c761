#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cuspforge/bignat.hpp"

namespace cuspforge {

/// Chain [a_1, ..., a_r] with a_i = -(self-intersection).
class Chain {
 public:
  Chain() = default;
  explicit Chain(std::vector<std::int64_t> entries) : a_(std::move(entries)) {}

  /// One entry of chain notation: `value` repeated `count` times. count = -1
  /// is only legal for value 2 followed by an entry 3, and then the pair
  /// [a,(2)_{-1},3] collapses to [a+1] (or to nothing at the front).
  struct Run {
    std::int64_t value;
    std::int64_t count;
  };
  static Chain from_notation(const std::vector<Run>& runs);
  /// "[5,2,2]", "[(2)_3,4,1,(2)_2]" or the same without brackets.
  static Chain parse(std::string_view text);

  const std::vector<std::int64_t>& entries() const noexcept { return a_; }
  std::size_t size() const noexcept { return a_.size(); }
  bool empty() const noexcept { return a_.empty(); }
  std::int64_t operator[](std::size_t i) const { return a_[i]; }

  Chain reversed() const;
  std::string to_string() const;

  friend bool operator==(const Chain&, const Chain&) = default;

 private:
  std::vector<std::int64_t> a_;
};

/// Equality of chains up to reversal.
bool same_chain(const Chain& a, const Chain& b);

/// Weighted tree (or empty). Weights are self-intersection numbers; vertex
/// ids are dense 0..n-1 in creation order.
class WeightedTree {
 public:
  WeightedTree() = default;
  /// Throws InvalidArgument unless the edges form a tree on the vertices.
  WeightedTree(std::vector<std::int64_t> weights, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  static WeightedTree from_chain(const Chain& chain);

  std::size_t size() const noexcept { return w_.size(); }
  bool empty() const noexcept { return w_.empty(); }
  std::int64_t weight(std::size_t v) const { return w_.at(v); }
  const std::vector<std::int64_t>& weights() const noexcept { return w_; }
  /// Sorted neighbour ids.
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_.at(v); }
  std::size_t degree(std::size_t v) const { return adj_.at(v).size(); }
  bool adjacent(std::size_t u, std::size_t v) const;
  /// Edges (u, v) with u < v, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  std::vector<std::size_t> tips() const;
  std::vector<std::size_t> branching_vertices() const;
  bool is_chain() const;
  /// The chain read from the lowest-id tip, if the tree is a chain.
  std::optional<Chain> as_chain() const;
  /// Vertex ids of the path, starting at `start` (must be a tip of a chain).
  std::vector<std::size_t> path_from(std::size_t start) const;

  /// Induced subgraph on `vertices` (kept in the given order); throws unless
  /// it is connected.
  WeightedTree induced(const std::vector<std::size_t>& vertices) const;
  /// Connected components of the tree with v removed, each a sorted id list.
  std::vector<std::vector<std::size_t>> components_without(std::size_t v) const;

  WeightedTree with_weight(std::size_t v, std::int64_t w) const;

  friend bool operator==(const WeightedTree&, const WeightedTree&) = default;

 private:
  std::vector<std::int64_t> w_;
  std::vector<std::vector<std::size_t>> adj_;
};

/// Canonical form of a weighted tree up to isomorphism.
std::string canonical_form(const WeightedTree& t);
bool isomorphic(const WeightedTree& a, const WeightedTree& b);

/// d(T) = det(-intersection matrix), d(empty) = 1. Uses the tree recursion.
BigInt discriminant(const WeightedTree& t);
BigInt discriminant(const Chain& c);
/// Same value by dense fraction-free elimination; intended for cross-checks.
BigInt discriminant_dense(const WeightedTree& t);

/// Negated intersection matrix positive definite: every rooted-subtree
/// determinant in post-order is positive.
bool is_negative_definite(const WeightedTree& t);
/// Leading principal minors of the negated matrix in vertex order.
std::vector<BigInt> leading_minors(const WeightedTree& t);

/// A*B = [a_1, ..., a_{r-1}, a_r + b_1 - 1, b_2, ..., b_s]; both nonempty.
Chain star_concat(const Chain& a, const Chain& b);
/// A* = [(2)_{a_r - 1}] * ... * [(2)_{a_1 - 1}]; throws EntryBelowTwo.
Chain adjoint(const Chain& a);
/// [A, 1, B] as a chain.
Chain join_with_minus_one(const Chain& a, const Chain& b);

WeightedTree blow_up_outer(const WeightedTree& t, std::size_t site);
WeightedTree blow_up_inner(const WeightedTree& t, std::size_t u, std::size_t v);
/// Contracts a (-1)-vertex with at most two neighbours; the remaining
/// vertices keep their relative order. Throws NotContractible.
WeightedTree blow_down(const WeightedTree& t, std::size_t v);

struct ContractionResult {
  bool success = false;
  /// Original ids in contraction order.
  std::vector<std::size_t> order;
  /// What the greedy contraction ends with.
  WeightedTree remainder;
};

/// Repeatedly contracts the lowest-id contractible (-1)-vertex.
ContractionResult contract_greedily(const WeightedTree& t);
/// True iff contractions end in a single (-1)-vertex. `success` mirrors the
/// return value.
ContractionResult contracts_to_smooth_point_trace(const WeightedTree& t);
bool contracts_to_smooth_point(const WeightedTree& t);
bool contracts_to_zero_curve(const WeightedTree& t);

enum class FiberShape { nondegenerate, chain, special_fork, other };
std::string_view fiber_shape_name(FiberShape s) noexcept;

struct FiberReport {
  FiberShape shape = FiberShape::other;
  std::vector<BigNat> multiplicities;
  std::vector<std::size_t> minus_one_vertices;
  /// For a chain with a single interior (-1)-curve: the sides [U, 1, U*].
  std::optional<std::pair<Chain, Chain>> sides;
};

/// Primitive positive kernel vector of the intersection matrix. Throws
/// NotAFiber unless t contracts to a 0-curve with a 1-dimensional,
/// sign-definite kernel.
std::vector<BigNat> fiber_multiplicities(const WeightedTree& t);
FiberReport classify_fiber(const WeightedTree& t);

/// Graphviz text; `c_vertex` is drawn double-circled with a dashed edge to a
/// box node E.
std::string dot_export(const WeightedTree& t, std::optional<std::size_t> c_vertex = std::nullopt);

}  // namespace cuspforge
