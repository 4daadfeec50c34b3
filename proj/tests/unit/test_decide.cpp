#include <doctest.h>

#include <random>

#include "embapprox/corpus.hpp"
#include "embapprox/decide.hpp"
#include "embapprox/derivative.hpp"
#include "embapprox/normalize.hpp"
#include "embapprox/oracle.hpp"
#include "support.hpp"

using namespace embapprox;
using namespace testing;

namespace {

bool is_decisive(EventKind k) {
  return k == EventKind::transversal_self_intersection || k == EventKind::forbidden_winding ||
         k == EventKind::obstruction_nonzero || k == EventKind::escalated;
}

std::size_t decisive_count(const Verdict& v) {
  return std::count_if(v.trace.begin(), v.trace.end(), [](const TraceEvent& e) { return is_decisive(e.kind); });
}

bool oracle_says(const SimplicialMap& m) {
  const auto r = is_approximable_oracle(normalize_nondegenerate(m));
  REQUIRE(r.approximable.has_value());
  return *r.approximable;
}

// A d-winding onto C3 plus a separate edge, as one general domain.
SimplicialMap winding_plus_edge(int d) {
  const auto w = standard_winding(d);
  auto edges = w.domain().edges();
  auto image = w.vertex_image();
  const auto n = static_cast<VertexId>(image.size());
  edges.push_back({n, n + 1});
  image.push_back(0);
  image.push_back(1);
  return general_map(w.target(), n + 2, edges, image);
}

}  // namespace

TEST_CASE("paths") {
  const auto g = catalog_target("W4");
  SUBCASE("injective") {
    const auto v = decide_path(path_map(g, {1, 2, 3, 0}));
    CHECK(v.approximable);
    CHECK(v.criterion == "path-derivatives");
    CHECK(decisive_count(v) == 0);
    CHECK_FALSE(v.trace.empty());
    CHECK(v.decisive() == nullptr);
  }
  SUBCASE("X-crossing") {
    const auto m = path_map(star(4), {1, 0, 3, 0, 2, 0, 4});
    const auto v = decide_path(m);
    CHECK_FALSE(v.approximable);
    REQUIRE(v.decisive() != nullptr);
    CHECK(v.decisive()->kind == EventKind::transversal_self_intersection);
    CHECK(v.decisive()->step == 0);
    CHECK(v.decisive()->witness.has_value());
    CHECK_FALSE(oracle_says(m));
    CHECK_FALSE(decide_path_via_vk(m).approximable);
  }
  SUBCASE("Euler path") {
    const auto m = path_map(catalog_target("theta"), {0, 2, 1, 3, 0, 4, 1});
    CHECK(decide_path(m).approximable);
    CHECK(decide_path_via_vk(m).approximable);
    CHECK(oracle_says(m));
  }
  SUBCASE("wrong shape") {
    CHECK_THROWS_AS(decide_path(standard_winding(1)), OutOfScopeError);
    CHECK_THROWS_AS(decide_path_via_vk(standard_winding(1)), OutOfScopeError);
  }
}

TEST_CASE("cycles") {
  CHECK(decide_cycle(standard_winding(1)).approximable);
  CHECK(decide_cycle(standard_winding(-1)).approximable);
  for (int d : {2, 3, -2, -3, 4}) {
    CAPTURE(d);
    const auto v = decide_cycle(standard_winding(d));
    CHECK_FALSE(v.approximable);
    CHECK(v.criterion == "cycle-derivatives");
    REQUIRE(v.decisive() != nullptr);
    CHECK(v.decisive()->kind == EventKind::forbidden_winding);
    CHECK(v.decisive()->degree == d);
    CHECK(v.decisive()->step == 0);
    CHECK(decisive_count(v) == 1);
  }
  CHECK(decide_cycle(bowtie_euler_cycle(false)).approximable);
  const auto crossing = decide_cycle(bowtie_euler_cycle(true));
  CHECK_FALSE(crossing.approximable);
  CHECK(crossing.decisive()->kind == EventKind::transversal_self_intersection);
  CHECK_THROWS_AS(decide_cycle(path_map(catalog_target("C3"), {0, 1})), OutOfScopeError);
}

TEST_CASE("a cycle whose derivatives run out") {
  // first cycle map on C4 whose k-th derivative has an empty domain
  std::optional<SimplicialMap> found;
  for (std::size_t k = 3; k <= 6 && !found; ++k) {
    for (const auto& inst : enumerate_cycle_maps(catalog_target("C4"), "C4", k)) {
      const auto records = iterate_derivative(inst.map, k, {true, true, false});
      const auto m = map_at_step(records, k);
      if (m && m->domain().edge_count() == 0 && normalize_nondegenerate(inst.map).domain().edge_count() > 0) {
        found = inst.map;
        break;
      }
    }
  }
  REQUIRE(found.has_value());
  const auto v = decide_cycle(*found);
  CHECK(v.approximable);
  CHECK(oracle_says(*found));
}

TEST_CASE("degree 3 into a circle") {
  const auto c3 = catalog_target("C3");
  SUBCASE("circle and path") {
    const auto m = general_map(c3, 5, {{0, 1}, {1, 2}, {2, 0}, {3, 4}}, {0, 1, 2, 0, 1});
    const auto v = decide_deg3_to_circle(m);
    CHECK(v.approximable);
    CHECK(v.criterion == "degree3-circle");
    CHECK(oracle_says(m));
    CHECK(decide(m).approximable);
  }
  SUBCASE("3-winding component") {
    const auto m = winding_plus_edge(3);
    const auto v = decide_deg3_to_circle(m);
    CHECK_FALSE(v.approximable);
    REQUIRE(v.decisive() != nullptr);
    CHECK(v.decisive()->kind == EventKind::forbidden_winding);
    CHECK(std::abs(v.decisive()->degree) == 3);
    CHECK(decisive_count(v) == 1);
    CHECK_FALSE(oracle_says(m));
  }
  SUBCASE("2-winding component") {
    const auto m = winding_plus_edge(2);
    const auto v = decide_deg3_to_circle(m);
    CHECK_FALSE(v.approximable);
    REQUIRE(v.decisive() != nullptr);
    CHECK(v.decisive()->kind == EventKind::obstruction_nonzero);
    CHECK_FALSE(oracle_says(m));
  }
  SUBCASE("theta over a triangle") {
    // two vertices of degree 3 joined by three paths
    const auto m = general_map(c3, 5, {{0, 1}, {0, 2}, {0, 3}, {4, 1}, {4, 2}, {4, 3}}, {0, 1, 2, 1, 0});
    CHECK(decide_deg3_to_circle(m).approximable == oracle_says(m));
  }
  SUBCASE("degree above 3") {
    const auto m = general_map(catalog_target("C4"), 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}, {0, 1, 3, 1, 3});
    CHECK_THROWS_AS(decide_deg3_to_circle(m), OutOfScopeError);
  }
  SUBCASE("target not a cycle") {
    const auto m = general_map(catalog_target("od5"), 4, {{0, 1}, {0, 2}, {0, 3}}, {0, 1, 2, 3});
    CHECK_THROWS_AS(decide_deg3_to_circle(m), OutOfScopeError);
    CHECK_THROWS_AS(decide(m), OutOfScopeError);
  }
}

TEST_CASE("dispatch") {
  CHECK(decide(path_map(catalog_target("C4"), {0, 1, 2})).criterion == "path-derivatives");
  CHECK(decide(standard_winding(1)).criterion == "cycle-derivatives");
  CHECK(decide(winding_plus_edge(1)).criterion == "degree3-circle");
}

TEST_CASE("property: contracting a degenerate edge keeps the verdict") {
  std::mt19937_64 rng(71);
  std::size_t contracted = 0;
  for (const auto& name : {"C3", "C4", "od5", "theta", "W4"}) {
    const auto g = catalog_target(name);
    for (int t = 0; t < 40; ++t) {
      const bool closed = t % 2;
      const auto seq = random_walk(g, 3 + rng() % 6, rng, closed);
      const auto m = closed ? cycle_map(g, seq) : path_map(g, seq);
      const auto base = decide(m).approximable;
      for (EdgeId c = 0; c < m.domain().edge_count(); ++c) {
        if (!m.is_degenerate(c)) continue;
        const auto smaller = contract_edge(m, c);
        if (smaller.domain().shape() != m.domain().shape()) continue;
        ++contracted;
        CHECK(decide(smaller).approximable == base);
      }
    }
  }
  CHECK(contracted > 50);
}

TEST_CASE("property: stabilization does not change verdicts") {
  std::mt19937_64 rng(72);
  for (const auto& name : {"C3", "C4", "C5", "theta"}) {
    const auto g = catalog_target(name);
    for (int t = 0; t < 60; ++t) {
      const bool closed = t % 2;
      const auto seq = random_walk(g, 3 + rng() % 6, rng, closed);
      const auto m = closed ? cycle_map(g, seq) : path_map(g, seq);
      const auto a = decide(m, {true});
      const auto b = decide(m, {false});
      CHECK(a.approximable == b.approximable);
    }
  }
  for (int d = -4; d <= 4; ++d) {
    CHECK(decide(standard_winding(d), {true}).approximable == decide(standard_winding(d), {false}).approximable);
  }
  for (const auto& inst : random_deg3_maps(catalog_target("C4"), "C4", 60, 8, 73)) {
    CHECK(decide(inst.map, {true}).approximable == decide(inst.map, {false}).approximable);
  }
}

TEST_CASE("property: negative verdicts have exactly one decisive event") {
  std::mt19937_64 rng(74);
  std::size_t negatives = 0;
  for (const auto& name : {"C3", "od5", "W4"}) {
    const auto g = catalog_target(name);
    for (int t = 0; t < 120; ++t) {
      const bool closed = t % 2;
      const auto seq = random_walk(g, 3 + rng() % 7, rng, closed);
      const auto v = decide(closed ? cycle_map(g, seq) : path_map(g, seq));
      if (v.approximable) {
        CHECK(decisive_count(v) == 0);
        CHECK_FALSE(v.trace.empty());
        continue;
      }
      ++negatives;
      CHECK(decisive_count(v) == 1);
      CHECK(v.decisive() == &v.trace.back());
    }
  }
  for (const auto& inst : random_deg3_maps(catalog_target("C3"), "C3", 100, 8, 75)) {
    const auto v = decide(inst.map);
    negatives += !v.approximable;
    CHECK(decisive_count(v) == (v.approximable ? 0u : 1u));
  }
  for (int d = -4; d <= 4; ++d) {
    const auto v = decide(standard_winding(d));
    negatives += !v.approximable;
    CHECK(decisive_count(v) == (v.approximable ? 0u : 1u));
  }
  CHECK(negatives >= 15);
}

TEST_CASE("property: decide agrees with the oracle on random walks") {
  std::mt19937_64 rng(76);
  for (const auto& name : {"C4", "od5", "W4", "theta"}) {
    const auto g = catalog_target(name);
    for (int t = 0; t < 80; ++t) {
      const bool closed = t % 2;
      const auto seq = random_walk(g, 3 + rng() % 6, rng, closed);
      const auto m = closed ? cycle_map(g, seq) : path_map(g, seq);
      const auto v = decide(m);
      if (v.needs_review) continue;
      CHECK(v.approximable == oracle_says(m));
    }
  }
}
