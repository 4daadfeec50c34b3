#include <doctest.h>

#include <random>
#include <set>

#include "embapprox/normalize.hpp"
#include "embapprox/oracle.hpp"
#include "embapprox/transversal.hpp"
#include "embapprox/vankampen.hpp"
#include "support.hpp"

using namespace embapprox;
using namespace testing;

namespace {

Image img(std::vector<VertexId> vs, std::vector<EdgeId> es, std::vector<EdgeEnd> stubs = {}) {
  std::sort(vs.begin(), vs.end());
  std::sort(es.begin(), es.end());
  std::sort(stubs.begin(), stubs.end());
  return Image{vs, es, stubs};
}

/// Square 0..3 with a vertex 4 inside joined to 0 and 2, and a vertex 5
/// outside joined to 0 and 3.
PlaneGraph square_with_sides() {
  return plane_graph_from_coordinates({{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {2, 4}, {0, 5}, {3, 5}},
                                      {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}, {0, 0}, {3, 0}});
}

}  // namespace

TEST_CASE("two paths through the centre of a star") {
  const auto g = star(4);
  // rotation at 0 is e0 e1 e2 e3, edge i leading to leaf i+1
  CHECK(images_cross(g, img({0, 1, 3}, {0, 2}), img({0, 2, 4}, {1, 3})));
  CHECK_FALSE(images_cross(g, img({0, 1, 2}, {0, 1}), img({0, 3, 4}, {2, 3})));
  CHECK_FALSE(images_cross(g, img({0, 1, 4}, {0, 3}), img({0, 2, 3}, {1, 2})));
  // a path ending at the centre cannot separate
  CHECK_FALSE(images_cross(g, img({0, 1}, {0}), img({0, 2, 4}, {1, 3})));
  // disjoint images
  CHECK_FALSE(images_cross(g, img({1}, {}), img({2}, {})));
}

TEST_CASE("stubs count as private ports") {
  const auto g = star(4);
  CHECK(images_cross(g, img({0}, {}, {{0, 0}, {0, 2}}), img({0}, {}, {{0, 1}, {0, 3}})));
  CHECK_FALSE(images_cross(g, img({0}, {}, {{0, 0}, {0, 1}}), img({0}, {}, {{0, 2}, {0, 3}})));
  // a stub shared by both sides belongs to neither
  CHECK_FALSE(images_cross(g, img({0}, {}, {{0, 0}, {0, 2}}), img({0}, {}, {{0, 0}, {0, 1}, {0, 3}})));
}

TEST_CASE("shared edges merge into one common part") {
  const auto g = catalog_target("od5");
  const auto e = [&](VertexId a, VertexId b) { return *g.find_edge(a, b); };
  // both contain 0-1; A also leaves towards 2 and 4, B towards 3 and 5
  const auto a = img({0, 1, 2, 4}, {e(0, 1), e(0, 2), e(0, 4)});
  const auto b = img({0, 1, 3, 5}, {e(0, 1), e(0, 3), e(0, 5)});
  const auto d = find_crossing(g, a, b);
  REQUIRE(d.has_value());
  CHECK(d->sigma.vertices == std::vector<VertexId>{0, 1});
  CHECK(d->sigma.edges == std::vector<EdgeId>{e(0, 1)});
  CHECK_FALSE(d->annulus);
  CHECK_FALSE(images_cross(g, img({0, 1, 2, 3}, {e(0, 1), e(0, 2), e(0, 3)}), b));
}

TEST_CASE("annulus rule") {
  const auto g = square_with_sides();
  const auto e = [&](VertexId a, VertexId b) { return *g.find_edge(a, b); };
  const std::vector<EdgeId> cycle{e(0, 1), e(1, 2), e(2, 3), e(0, 3)};
  const auto a = img({0, 1, 2, 3}, cycle, {{0, e(0, 4)}, {0, e(0, 5)}});
  const auto b = img({0, 1, 2, 3}, cycle, {{2, e(2, 4)}, {3, e(3, 5)}});
  const auto d = find_crossing(g, a, b);
  REQUIRE(d.has_value());
  CHECK(d->annulus);
  // both on the inside only
  const auto c = img({0, 1, 2, 3}, cycle, {{2, e(2, 4)}});
  CHECK_FALSE(images_cross(g, a, c));
  // without the cycle there is no annulus
  const std::vector<EdgeId> arc{e(0, 1), e(1, 2), e(2, 3)};
  CHECK_FALSE(images_cross(g, img({0, 1, 2, 3}, arc, {{0, e(0, 4)}, {0, e(0, 5)}}),
                           img({0, 1, 2, 3}, arc, {{2, e(2, 4)}, {3, e(3, 5)}})));
}

TEST_CASE("walks through the centre of a star") {
  const auto g = star(4);
  // 1 0 3 then 3 0 2 then 2 0 4
  const auto m = path_map(g, {1, 0, 3, 0, 2, 0, 4});
  const auto w = has_transversal_self_intersection(m);
  REQUIRE(w.has_value());
  CHECK(w->sigma.vertices == std::vector<VertexId>{0});
  CHECK_FALSE(w->annulus);
  for (VertexId x : w->p.vertices) {
    CHECK(std::find(w->q.vertices.begin(), w->q.vertices.end(), x) == w->q.vertices.end());
  }
  CHECK(images_cross(g, image_of(m, w->p), image_of(m, w->q)));

  // 1 0 2 then 2 0 3 then 3 0 4 turns the same way each time
  CHECK_FALSE(has_transversal_self_intersection(path_map(g, {1, 0, 2, 0, 3, 0, 4})).has_value());
}

TEST_CASE("bowtie cycles") {
  CHECK_FALSE(has_transversal_self_intersection(bowtie_euler_cycle(false)).has_value());
  const auto w = has_transversal_self_intersection(bowtie_euler_cycle(true));
  REQUIRE(w.has_value());
  CHECK(w->sigma.vertices == std::vector<VertexId>{0});
}

TEST_CASE("windings have no transversal self-intersection") {
  for (int d = -4; d <= 4; ++d) {
    if (d == 0) continue;
    CHECK_FALSE(has_transversal_self_intersection(standard_winding(d)).has_value());
  }
}

TEST_CASE("arcs") {
  const auto m = path_map(catalog_target("C3"), {0, 1, 2, 0});
  const auto arcs = enumerate_arcs(m);
  for (const auto& a : arcs) {
    // vertex-simple and injective under phi
    std::set<VertexId> seen, images;
    for (VertexId x : a.vertices) {
      CHECK(seen.insert(x).second);
      CHECK(images.insert(m.image(x)).second);
    }
    CHECK(a.edges.size() + 1 == a.vertices.size());
  }
  // the whole path is not injective, so no arc has four vertices
  CHECK(std::none_of(arcs.begin(), arcs.end(), [](const WalkArc& a) { return a.vertices.size() == 4; }));
  CHECK(std::any_of(arcs.begin(), arcs.end(), [](const WalkArc& a) { return a.vertices.size() == 3; }));
  CHECK_THROWS_AS(has_transversal_self_intersection(path_map(catalog_target("C3"), {0, 0, 1})), PreconditionError);
}

TEST_CASE("triods") {
  const auto g = catalog_target("od5");
  const auto claw = general_map(g, 4, {{0, 1}, {0, 2}, {0, 3}}, {0, 1, 2, 3});
  CHECK(contains_simple_triod(claw));
  CHECK_FALSE(identifies_triods(claw));
  const auto folded = general_map(g, 4, {{0, 1}, {0, 2}, {0, 3}}, {0, 1, 2, 2});
  CHECK_FALSE(contains_simple_triod(folded));
  CHECK_FALSE(contains_simple_triod(path_map(g, {1, 0, 2, 0, 3})));

  const auto twins = general_map(g, 8, {{0, 1}, {0, 2}, {0, 3}, {4, 5}, {4, 6}, {4, 7}}, {0, 1, 2, 3, 0, 1, 2, 3});
  CHECK(identifies_triods(twins));
  // sharing a leaf is not disjoint
  const auto touching = general_map(g, 7, {{0, 1}, {0, 2}, {0, 3}, {4, 1}, {4, 5}, {4, 6}}, {0, 1, 2, 3, 0, 2, 3});
  CHECK_FALSE(identifies_triods(touching));
  // different images
  const auto apart = general_map(g, 8, {{0, 1}, {0, 2}, {0, 3}, {4, 5}, {4, 6}, {4, 7}}, {0, 1, 2, 3, 0, 1, 2, 4});
  CHECK_FALSE(identifies_triods(apart));
}

TEST_CASE("property: crossing is symmetric and mirror invariant") {
  std::mt19937_64 rng(31);
  for (const auto& name : {"od5", "W4", "theta", "linkgraph"}) {
    const auto g = catalog_target(name);
    const auto m = g.mirrored();
    for (int t = 0; t < 40; ++t) {
      const auto phi = path_map(g, random_walk(g, 3 + rng() % 6, rng, false));
      const auto n = normalize_nondegenerate(phi);
      if (n.domain().edge_count() == 0) continue;
      const auto arcs = enumerate_arcs(n);
      for (int s = 0; s < 20; ++s) {
        const auto& p = arcs[rng() % arcs.size()];
        const auto& q = arcs[rng() % arcs.size()];
        const auto a = image_of(n, p);
        const auto b = image_of(n, q);
        const bool ab = images_cross(g, a, b);
        CHECK(ab == images_cross(g, b, a));
        CHECK(ab == images_cross(m, a, b));
      }
      CHECK(has_transversal_self_intersection(n).has_value() ==
            has_transversal_self_intersection(mirrored(n)).has_value());
    }
  }
}

TEST_CASE("property: a transversal self-intersection rules out approximability") {
  std::mt19937_64 rng(32);
  std::size_t witnessed = 0;
  const auto od5 = catalog_target("od5");
  for (int t = 0; t < 400; ++t) {
    // leaves joined through the centre
    std::vector<VertexId> seq;
    const std::size_t legs = 3 + rng() % 3;
    for (std::size_t i = 0; i < legs; ++i) {
      if (i) seq.push_back(0);
      seq.push_back(static_cast<VertexId>(1 + rng() % 5));
    }
    const auto n = normalize_nondegenerate(path_map(od5, seq));
    if (!has_transversal_self_intersection(n)) continue;
    ++witnessed;
    const auto r = is_approximable_oracle(n);
    REQUIRE(r.approximable.has_value());
    CHECK_FALSE(*r.approximable);
  }
  for (const auto& name : {"W4", "theta", "C4"}) {
    const auto g = catalog_target(name);
    for (int t = 0; t < 60; ++t) {
      const bool closed = t % 2;
      const auto seq = random_walk(g, 3 + rng() % 7, rng, closed);
      const auto n = normalize_nondegenerate(closed ? cycle_map(g, seq) : path_map(g, seq));
      if (n.domain().edge_count() == 0) continue;
      if (!has_transversal_self_intersection(n)) continue;
      ++witnessed;
      const auto r = is_approximable_oracle(n);
      REQUIRE(r.approximable.has_value());
      CHECK_FALSE(*r.approximable);
    }
  }
  CHECK(witnessed >= 20);
}

TEST_CASE("property: identified triods make the obstruction nonzero") {
  std::mt19937_64 rng(33);
  const auto g = catalog_target("od5");
  for (int t = 0; t < 40; ++t) {
    // two claws over 0 with the same three leaves, plus some extra vertices
    std::vector<VertexId> leaves{1, 2, 3, 4, 5};
    std::shuffle(leaves.begin(), leaves.end(), rng);
    std::vector<VertexId> image{0, leaves[0], leaves[1], leaves[2], 0, leaves[0], leaves[1], leaves[2]};
    std::vector<Edge> edges{{0, 1}, {0, 2}, {0, 3}, {4, 5}, {4, 6}, {4, 7}};
    std::vector<std::size_t> deg{3, 1, 1, 1, 3, 1, 1, 1};
    const std::size_t extra = rng() % 3;
    for (std::size_t i = 0; i < extra; ++i) {
      const auto x = static_cast<VertexId>(image.size());
      image.push_back(static_cast<VertexId>(rng() % 6));
      deg.push_back(0);
      for (VertexId y = 0; y < x; ++y) {
        if (deg[y] >= 3 || deg[x] >= 3 || rng() % 2) continue;
        if (image[x] == image[y] || !g.adjacent(image[x], image[y])) continue;
        edges.push_back({y, x});
        ++deg[x];
        ++deg[y];
      }
    }
    const auto phi = general_map(g, image.size(), edges, image);
    REQUIRE(identifies_triods(phi));
    CHECK_FALSE(obstruction_vanishes(phi));
  }
}
