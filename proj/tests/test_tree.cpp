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

#include <doctest.h>

#include <numeric>
#include <queue>
#include <vector>

#include "pottstree/error.hpp"
#include "pottstree/tree.hpp"

using namespace pottstree;

TEST_CASE("radius-zero ball is the root alone") {
  const auto t = build_tree(2, 0);
  CHECK(t.size() == 1);
  CHECK(t.edge_count() == 0);
  CHECK(t.sphere(0).size() == 1);
  CHECK(t.sphere(0)[0] == 0);
  CHECK_FALSE(t.parent(0).has_value());
  CHECK(t.is_leaf(0));
}

TEST_CASE("sphere sizes for small trees") {
  const auto t2 = build_tree(2, 2);
  CHECK(t2.sphere_size(1) == 3);
  CHECK(t2.sphere_size(2) == 6);
  CHECK(t2.size() == 10);

  const auto t3 = build_tree(3, 2);
  CHECK(t3.sphere_size(1) == 4);
  CHECK(t3.sphere_size(2) == 12);
  CHECK(t3.size() == 17);
}

TEST_CASE("structural invariants") {
  for (int k = 1; k <= 5; ++k) {
    for (int n = 0; n <= 5; ++n) {
      CAPTURE(k);
      CAPTURE(n);
      const auto t = build_tree(k, n);
      std::size_t expected = 1;
      std::size_t level = 1;
      CHECK(t.sphere_size(0) == 1);
      for (int m = 1; m <= n; ++m) {
        level = (m == 1) ? std::size_t(k + 1) : level * std::size_t(k);
        CHECK(t.sphere_size(m) == level);
        expected += level;
      }
      REQUIRE(t.size() == expected);
      CHECK(t.edge_count() == expected - 1);
      CHECK(ball_vertex_count(k, n, kMaxTreeVertices) == expected);

      for (VertexId x = 0; x < t.size(); ++x) {
        const int g = t.generation(x);
        const auto kids = t.children(x);
        if (g == n) {
          CHECK(kids.empty());
        } else {
          CHECK(kids.size() == std::size_t(x == 0 ? k + 1 : k));
        }
        for (VertexId c : kids) {
          CHECK(t.generation(c) == g + 1);
          CHECK(t.parent(c) == x);
        }
      }
    }
  }
}

TEST_CASE("tree is connected and acyclic") {
  const auto t = build_tree(3, 4);
  std::vector<int> seen(t.size(), 0);
  std::queue<VertexId> frontier;
  frontier.push(0);
  std::size_t edges = 0;
  while (!frontier.empty()) {
    const VertexId x = frontier.front();
    frontier.pop();
    ++seen[x];
    for (VertexId c : t.children(x)) {
      ++edges;
      frontier.push(c);
    }
  }
  CHECK(edges == t.size() - 1);
  CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
}

TEST_CASE("spheres list vertices of one generation in ascending order") {
  const auto t = build_tree(2, 3);
  CHECK(t.sphere(0).size() == 1);
  for (int m = 0; m <= 3; ++m) {
    const auto s = t.sphere(m);
    CHECK(std::is_sorted(s.begin(), s.end()));
    for (VertexId x : s) CHECK(t.generation(x) == m);
  }
  const auto leaves = t.leaves();
  CHECK(leaves.size() == 12);
}

TEST_CASE("invalid arguments are rejected") {
  CHECK_THROWS_AS(build_tree(0, 2), InvalidArgument);
  CHECK_THROWS_AS(build_tree(2, -1), InvalidArgument);
  CHECK_THROWS_AS(build_tree(10, 40), SizeError);
  CHECK_FALSE(ball_vertex_count(10, 40, kMaxTreeVertices).has_value());
  const auto t = build_tree(2, 2);
  CHECK_THROWS_AS(t.sphere(3), InvalidArgument);
  CHECK_THROWS_AS(t.sphere(-1), InvalidArgument);
  CHECK_THROWS(t.children(t.size()));
}
