// Copyright 2026 The pottstree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace pottstree {

using VertexId = std::size_t;

/// Upper bound on the number of vertices a FiniteTree may hold.
inline constexpr std::size_t kMaxTreeVertices = std::size_t{1} << 26;

/// The ball V_n of radius n around the root of a Cayley tree of order k.
///
/// Vertices are numbered 0, 1, ... in breadth-first order, so vertex 0 is the
/// root, every sphere W_m is a contiguous index range, and the children of a
/// vertex are contiguous as well. The root has k+1 children and every other
/// non-leaf vertex has k. Instances are immutable once built.
class FiniteTree {
 public:
  /// Throws InvalidArgument for k < 1 or depth < 0 and SizeError when the
  /// vertex count would exceed kMaxTreeVertices.
  static FiniteTree build(int k, int depth);

  int order() const noexcept { return order_; }
  int depth() const noexcept { return depth_; }
  std::size_t size() const noexcept { return parent_.size(); }
  std::size_t edge_count() const noexcept { return size() - 1; }

  /// Vertices of W_m in ascending index order.
  std::span<const VertexId> sphere(int m) const;
  std::size_t sphere_size(int m) const { return sphere(m).size(); }

  /// Direct descendants S(x); empty for leaves.
  std::span<const VertexId> children(VertexId x) const;
  std::optional<VertexId> parent(VertexId x) const;
  int generation(VertexId x) const;

  bool is_leaf(VertexId x) const { return children(x).empty(); }
  std::span<const VertexId> leaves() const { return sphere(depth_); }

 private:
  FiniteTree() = default;
  void check_vertex(VertexId x) const;

  int order_ = 0;
  int depth_ = 0;
  std::vector<VertexId> ids_;             // 0..size-1, backing store for spans
  std::vector<std::size_t> parent_;       // parent_[0] is unused
  std::vector<int> generation_;
  std::vector<std::size_t> child_begin_;  // [begin, end) into ids_; leaves hold size()
  std::vector<std::size_t> child_end_;
  std::vector<std::size_t> level_begin_;  // depth+2 entries
};

/// Number of vertices of V_n, or nullopt when it exceeds `limit`.
std::optional<std::size_t> ball_vertex_count(int k, int n,
                                             std::size_t limit = kMaxTreeVertices);

inline FiniteTree build_tree(int k, int n) { return FiniteTree::build(k, n); }

}  // namespace pottstree
