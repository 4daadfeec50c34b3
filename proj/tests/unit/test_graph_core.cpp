#include <doctest.h>

#include <algorithm>
#include <random>

#include "embapprox/derivative.hpp"
#include "embapprox/instance_io.hpp"
#include "embapprox/normalize.hpp"
#include "support.hpp"

using namespace embapprox;
using namespace testing;

namespace {

const char* triangle_identity = R"(#target
edge 0 1
edge 1 2
edge 0 2
#domain
shape cycle
edge 0 1
edge 1 2
edge 2 0
#map
0 -> 0
1 -> 1
2 -> 2
)";

const char* two_winding = R"(% six vertices wrapped twice around a triangle
#target
edge 0 1
edge 1 2
edge 0 2
#rotation
rot 0 : 0-1 0-2
#domain
shape cycle
edge 0 1
edge 1 2
edge 2 3
edge 3 4
edge 4 5
edge 5 0
#map
0 -> 0
1 -> 1
2 -> 2
3 -> 0
4 -> 1
5 -> 2
)";

}  // namespace

TEST_CASE("parse identity on a triangle") {
  const auto inst = parse_instance(triangle_identity);
  CHECK(inst.map.domain().vertex_count() == 3);
  CHECK(inst.map.target().vertex_count() == 3);
  CHECK(inst.map.domain().shape() == Shape::cycle);
  CHECK(inst.map.nondegenerate());
  CHECK_FALSE(inst.second.has_value());
}

TEST_CASE("parse the 2-winding") {
  const auto inst = parse_instance(two_winding);
  CHECK(inst.map.domain().vertex_count() == 6);
  CHECK(inst.map.domain().edge_count() == 6);
  CHECK(inst.map.is_onto());
  CHECK(isomorphic(inst.map, standard_winding(2)));
}

TEST_CASE("non-adjacent images violate simpliciality") {
  const char* text = R"(#target
edge 0 1
edge 1 2
#domain
shape path
edge 0 1
#map
0 -> 0
1 -> 2
)";
  try {
    parse_instance(text);
    FAIL("accepted a non-simplicial map");
  } catch (const InvariantError& e) {
    CHECK(e.invariant() == "simplicial");
  }
}

TEST_CASE("syntax errors carry a position") {
  const char* text = "#target\nedge 0 1\nedgy 1 2\n";
  try {
    parse_instance(text);
    FAIL("accepted bad syntax");
  } catch (const InputError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() >= 1);
  }
}

TEST_CASE("dangling ids are rejected") {
  const char* text = R"(#target
edge 0 1
#domain
shape path
edge 0 1
#map
0 -> 0
1 -> 7
)";
  CHECK_THROWS_AS(parse_instance(text), InvariantError);
}

TEST_CASE("shape tags are validated") {
  const char* text = R"(#target
edge 0 1
edge 1 2
#domain
shape cycle
edge 0 1
edge 1 2
#map
0 -> 0
1 -> 1
2 -> 2
)";
  CHECK_THROWS_AS(parse_instance(text), InvariantError);
}

TEST_CASE("rotations must list the incident edges") {
  const char* text = R"(#target
edge 0 1
edge 0 2
edge 0 3
#rotation
rot 0 : 0-1 0-2
#domain
shape path
edge 0 1
#map
0 -> 0
1 -> 1
)";
  CHECK_THROWS_AS(parse_instance(text), InvariantError);
}

TEST_CASE("format and parse round trip") {
  std::mt19937_64 rng(11);
  for (const auto& name : catalog_names()) {
    const auto g = catalog_target(name);
    for (int i = 0; i < 20; ++i) {
      const bool closed = i % 2;
      const auto seq = random_walk(g, 3 + rng() % 6, rng, closed);
      const auto m = closed ? cycle_map(g, seq) : path_map(g, seq);
      const auto back = parse_instance(format_instance(m)).map;
      CHECK(back.vertex_image() == m.vertex_image());
      CHECK(back.domain().edges() == m.domain().edges());
      for (VertexId v = 0; v < g.vertex_count(); ++v) CHECK(back.target().rotation(v) == g.rotation(v));
    }
  }
  const auto [phi, psi] = link_pair();
  const auto pair = parse_instance(format_instance(Instance{phi, psi}));
  REQUIRE(pair.second.has_value());
  CHECK(pair.second->vertex_image() == psi.vertex_image());
}

TEST_CASE("contracting the degenerate middle edge of a path") {
  const auto g = catalog_target("C4");
  const auto m = path_map(g, {0, 1, 1, 2});
  const auto c = contract_edge(m, 1);
  CHECK(c.domain().vertex_count() == 3);
  CHECK(c.domain().shape() == Shape::path);
  CHECK(c.vertex_image() == std::vector<VertexId>{0, 1, 2});
  CHECK_THROWS_AS(contract_edge(m, 0), PreconditionError);
}

TEST_CASE("constant cycle contracts to a point") {
  const auto m = cycle_map(catalog_target("C3"), {1, 1, 1, 1});
  const auto n = normalize_nondegenerate(m);
  CHECK(n.domain().vertex_count() == 1);
  CHECK(n.domain().edge_count() == 0);
  CHECK(n.image(0) == 1);
}

TEST_CASE("one contraction keeps the derivative") {
  const auto g = catalog_target("C5");
  const auto m = cycle_map(g, {0, 1, 2, 2, 3, 4});
  const auto c = contract_edge(m, 2);
  CHECK(c.domain().vertex_count() == 5);
  CHECK(c.domain().shape() == Shape::cycle);
  const auto ra = reference_derivative(m);
  const auto rb = reference_derivative(c);
  CHECK(ra.label == rb.label);
  CHECK(ra.edges == rb.edges);
  const auto step = derive(c);
  CHECK(isomorphic(reference_map(ra, step.derived.target(), step.image_edges), step.derived, true));
}

TEST_CASE("normalizing leaves nondegenerate maps alone") {
  const auto m = cycle_map(catalog_target("C4"), {0, 1, 2, 3});
  const auto n = normalize_nondegenerate(m);
  CHECK(n.vertex_image() == m.vertex_image());
  CHECK(n.domain().edges() == m.domain().edges());
}

TEST_CASE("constant path normalizes to one vertex") {
  const auto n = normalize_nondegenerate(path_map(catalog_target("theta"), {3, 3, 3, 3, 3}));
  CHECK(n.domain().vertex_count() == 1);
  CHECK(n.domain().edge_count() == 0);
}

TEST_CASE("contraction order does not matter") {
  const auto g = catalog_target("theta");
  const auto m = path_map(g, {0, 0, 2, 1, 1, 3, 3, 0});
  std::vector<int> order{0, 1, 2};
  std::vector<SimplicialMap> results;
  do {
    SimplicialMap cur = m;
    // track the three degenerate edges by their vertex pairs
    std::vector<std::pair<VertexId, VertexId>> targets{{0, 1}, {3, 4}, {5, 6}};
    std::vector<VertexId> where(m.domain().vertex_count());
    std::iota(where.begin(), where.end(), 0);
    for (int idx : order) {
      const auto [a, b] = targets[idx];
      const VertexId x = where[a], y = where[b];
      EdgeId c = 0;
      for (; c < cur.domain().edge_count(); ++c) {
        const Edge& e = cur.domain().edge(c);
        if ((e.u == x && e.v == y) || (e.u == y && e.v == x)) break;
      }
      REQUIRE(c < cur.domain().edge_count());
      const VertexId keep = std::min(x, y), gone = std::max(x, y);
      cur = contract_edge(cur, c);
      for (auto& w : where) {
        if (w == gone) w = keep;
        else if (w > gone) --w;
      }
    }
    CHECK(cur.domain().vertex_count() == m.domain().vertex_count() - 3);
    results.push_back(cur);
  } while (std::next_permutation(order.begin(), order.end()));
  for (const auto& r : results) CHECK(isomorphic(r, results.front(), true));
  CHECK(isomorphic(normalize_nondegenerate(m), results.front(), true));
}

TEST_CASE("zero components") {
  SUBCASE("nondegenerate map is unchanged") {
    const auto m = cycle_map(catalog_target("C3"), {0, 1, 2, 0, 1, 2});
    const auto z = zero_components(m);
    CHECK(isomorphic(z.map, m, true));
    CHECK(z.classes.size() == 6);
  }
  SUBCASE("constant map on a connected graph") {
    const auto m = general_map(catalog_target("C4"), 4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}}, {2, 2, 2, 2});
    const auto z = zero_components(m);
    CHECK(z.map.domain().vertex_count() == 1);
    CHECK(z.map.domain().edge_count() == 0);
  }
  SUBCASE("path with one degenerate edge") {
    const auto m = path_map(catalog_target("C5"), {0, 0, 1, 2, 3});
    const auto z = zero_components(m);
    CHECK(z.map.domain().vertex_count() == 4);
    CHECK(z.map.domain().shape() == Shape::path);
    CHECK(z.classes.front() == std::vector<VertexId>{0, 1});
  }
  SUBCASE("parallel edges survive") {
    // two K-vertices over 0 joined to one over 1, glued by a degenerate edge
    const auto m = general_map(catalog_target("C3"), 3, {{0, 2}, {1, 2}, {0, 1}}, {0, 0, 1});
    const auto z = zero_components(m);
    CHECK(z.map.domain().vertex_count() == 2);
    CHECK(z.map.domain().edge_count() == 2);
  }
}

TEST_CASE("property: contraction then normalization is idempotent") {
  std::mt19937_64 rng(5);
  for (const auto& name : {"C3", "C6", "theta", "od5", "W4"}) {
    const auto g = catalog_target(name);
    for (int i = 0; i < 40; ++i) {
      const bool closed = i % 2;
      const auto seq = random_walk(g, 3 + rng() % 7, rng, closed);
      const auto m = closed ? cycle_map(g, seq) : path_map(g, seq);
      const auto n = normalize_nondegenerate(m);
      CHECK(n.nondegenerate());
      const auto again = normalize_nondegenerate(n);
      CHECK(again.vertex_image() == n.vertex_image());
      CHECK(again.domain().edges() == n.domain().edges());
      for (EdgeId c = 0; c < m.domain().edge_count(); ++c) {
        if (!m.is_degenerate(c)) continue;
        CHECK(isomorphic(normalize_nondegenerate(contract_edge(m, c)), n, true));
      }
    }
  }
}

TEST_CASE("property: normalization commutes with the derivative") {
  std::mt19937_64 rng(6);
  for (const auto& name : {"C4", "theta", "od5", "W4"}) {
    const auto g = catalog_target(name);
    for (int i = 0; i < 60; ++i) {
      const bool closed = i % 2;
      const auto seq = random_walk(g, 3 + rng() % 8, rng, closed);
      const auto m = closed ? cycle_map(g, seq) : path_map(g, seq);
      const auto n = normalize_nondegenerate(m);
      if (n.domain().edge_count() == 0) continue;
      const auto step = derive(n, false);
      const auto ref = reference_derivative(m);
      CHECK(isomorphic(reference_map(ref, step.derived.target(), step.image_edges), step.derived, true));
    }
  }
}

TEST_CASE("property: zero components of a nondegenerate map are the identity") {
  std::mt19937_64 rng(7);
  const auto g = catalog_target("W4");
  for (int i = 0; i < 50; ++i) {
    const auto n = normalize_nondegenerate(path_map(g, random_walk(g, 2 + rng() % 8, rng, false)));
    const auto z = zero_components(n);
    CHECK(z.map.vertex_image() == n.vertex_image());
    CHECK(z.map.domain().edge_count() == n.domain().edge_count());
  }
}
