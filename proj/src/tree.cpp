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

#include "pottstree/tree.hpp"

#include <numeric>
#include <string>

#include "pottstree/error.hpp"

namespace pottstree {

std::optional<std::size_t> ball_vertex_count(int k, int n, std::size_t limit) {
  if (k < 1 || n < 0) return std::nullopt;
  std::size_t total = 1;
  std::size_t level = 1;
  for (int m = 1; m <= n; ++m) {
    const std::size_t branching = (m == 1) ? std::size_t(k) + 1 : std::size_t(k);
    if (level > limit / branching) return std::nullopt;
    level *= branching;
    if (total > limit - level) return std::nullopt;
    total += level;
  }
  return total;
}

FiniteTree FiniteTree::build(int k, int depth) {
  if (k < 1) throw InvalidArgument("tree order k must be >= 1, got " + std::to_string(k));
  if (depth < 0) throw InvalidArgument("tree depth must be >= 0, got " + std::to_string(depth));
  const auto count = ball_vertex_count(k, depth);
  if (!count) {
    throw SizeError("tree of order " + std::to_string(k) + " and depth " +
                    std::to_string(depth) + " exceeds " +
                    std::to_string(kMaxTreeVertices) + " vertices");
  }

  FiniteTree t;
  t.order_ = k;
  t.depth_ = depth;
  const std::size_t n = *count;
  t.ids_.resize(n);
  std::iota(t.ids_.begin(), t.ids_.end(), VertexId{0});
  t.parent_.assign(n, 0);
  t.generation_.assign(n, 0);
  t.child_begin_.assign(n, n);
  t.child_end_.assign(n, n);
  t.level_begin_.assign(std::size_t(depth) + 2, 0);

  // Breadth-first: the next free index is handed out to children in order.
  std::size_t next = 1;
  t.level_begin_[1] = 1;
  for (int m = 0; m < depth; ++m) {
    for (std::size_t x = t.level_begin_[m]; x < t.level_begin_[m + 1]; ++x) {
      const std::size_t branching = (x == 0) ? std::size_t(k) + 1 : std::size_t(k);
      t.child_begin_[x] = next;
      for (std::size_t c = 0; c < branching; ++c, ++next) {
        t.parent_[next] = x;
        t.generation_[next] = m + 1;
      }
      t.child_end_[x] = next;
    }
    t.level_begin_[m + 2] = next;
  }
  return t;
}

void FiniteTree::check_vertex(VertexId x) const {
  if (x >= size()) {
    throw InvalidArgument("vertex index " + std::to_string(x) + " out of range [0, " +
                          std::to_string(size()) + ")");
  }
}

std::span<const VertexId> FiniteTree::sphere(int m) const {
  if (m < 0 || m > depth_) {
    throw InvalidArgument("sphere radius " + std::to_string(m) + " outside [0, " +
                          std::to_string(depth_) + "]");
  }
  const auto b = level_begin_[std::size_t(m)];
  const auto e = level_begin_[std::size_t(m) + 1];
  return std::span<const VertexId>(ids_).subspan(b, e - b);
}

std::span<const VertexId> FiniteTree::children(VertexId x) const {
  check_vertex(x);
  const auto b = child_begin_[x];
  return std::span<const VertexId>(ids_).subspan(b, child_end_[x] - b);
}

std::optional<VertexId> FiniteTree::parent(VertexId x) const {
  check_vertex(x);
  if (x == 0) return std::nullopt;
  return parent_[x];
}

int FiniteTree::generation(VertexId x) const {
  check_vertex(x);
  return generation_[x];
}

}  // namespace pottstree
