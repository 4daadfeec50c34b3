#include "embapprox/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace embapprox {

PlaneGraph plane_graph_from_coordinates(const std::vector<Edge>& edges,
                                        const std::vector<std::pair<double, double>>& coords) {
  const std::size_t n = coords.size();
  std::vector<std::vector<EdgeId>> rotation(n);
  for (EdgeId e = 0; e < edges.size(); ++e) {
    rotation[edges[e].u].push_back(e);
    rotation[edges[e].v].push_back(e);
  }
  for (VertexId v = 0; v < n; ++v) {
    auto angle = [&](EdgeId e) {
      const VertexId w = edges[e].other(v);
      return std::atan2(coords[w].second - coords[v].second, coords[w].first - coords[v].first);
    };
    std::sort(rotation[v].begin(), rotation[v].end(), [&](EdgeId a, EdgeId b) { return angle(a) < angle(b); });
  }
  return PlaneGraph(n, edges, std::move(rotation));
}

namespace {

PlaneGraph cycle_graph(std::size_t n) {
  std::vector<Edge> edges;
  std::vector<std::pair<double, double>> coords;
  for (VertexId i = 0; i < n; ++i) {
    edges.push_back({i, static_cast<VertexId>((i + 1) % n)});
    const double t = 2 * std::numbers::pi * i / n;
    coords.emplace_back(std::cos(t), std::sin(t));
  }
  return plane_graph_from_coordinates(edges, coords);
}

}  // namespace

PlaneGraph catalog_target(std::string_view name) {
  if (name.size() == 2 && name[0] == 'C' && name[1] >= '3' && name[1] <= '6') {
    return cycle_graph(static_cast<std::size_t>(name[1] - '0'));
  }
  if (name == "theta") {
    return plane_graph_from_coordinates({{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}},
                                        {{0, 2}, {0, -2}, {-1, 0}, {0, 0}, {1, 0}});
  }
  if (name == "W4") {
    return plane_graph_from_coordinates({{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}, {1, 4}},
                                        {{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  }
  if (name == "od5") {
    std::vector<Edge> edges;
    std::vector<std::pair<double, double>> coords{{0, 0}};
    for (VertexId i = 1; i <= 5; ++i) {
      edges.push_back({0, i});
      const double t = 2 * std::numbers::pi * (i - 1) / 5;
      coords.emplace_back(std::cos(t), std::sin(t));
    }
    return plane_graph_from_coordinates(edges, coords);
  }
  if (name == "linkgraph") {
    return plane_graph_from_coordinates({{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 5}},
                                        {{0, 0}, {2, 0}, {1, 1}, {1, -1}, {-1, 0}, {3, 0}});
  }
  throw PreconditionError("unknown catalog target '" + std::string(name) + "'");
}

std::vector<std::string> catalog_names() { return {"C3", "C4", "C5", "C6", "theta", "W4", "od5", "linkgraph"}; }

SimplicialMap path_map(const PlaneGraph& g, const std::vector<VertexId>& sequence) {
  std::vector<Edge> edges;
  for (VertexId i = 0; i + 1 < sequence.size(); ++i) edges.push_back({i, i + 1});
  return SimplicialMap(DomainGraph(sequence.size(), std::move(edges), Shape::path), g, sequence);
}

SimplicialMap cycle_map(const PlaneGraph& g, const std::vector<VertexId>& sequence) {
  std::vector<Edge> edges;
  const auto n = static_cast<VertexId>(sequence.size());
  for (VertexId i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return SimplicialMap(DomainGraph(n, std::move(edges), Shape::cycle), g, sequence);
}

SimplicialMap standard_winding(int d) {
  const PlaneGraph c3 = catalog_target("C3");
  if (d == 0) return cycle_map(c3, {0, 0, 0});
  const int n = 3 * std::abs(d);
  std::vector<VertexId> seq;
  for (int i = 0; i < n; ++i) seq.push_back(static_cast<VertexId>((((d > 0 ? i : -i) % 3) + 3) % 3));
  return cycle_map(c3, seq);
}

SimplicialMap bowtie_euler_cycle(bool crossing) {
  // v = 0, a = 1, b = 2, c = 3, d = 4; rotation at v: c a b d.
  const std::vector<Edge> edges{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}};
  std::vector<std::vector<EdgeId>> rotation(5);
  rotation[0] = {3, 0, 1, 4};
  const PlaneGraph g(5, edges, std::move(rotation));
  return crossing ? cycle_map(g, {0, 1, 2, 0, 3, 4}) : cycle_map(g, {0, 1, 2, 0, 4, 3});
}

std::pair<SimplicialMap, SimplicialMap> link_pair() {
  const PlaneGraph g = catalog_target("linkgraph");
  return {path_map(g, {0, 1, 2, 0, 1}), path_map(g, {4, 0, 1, 3, 0, 1, 5})};
}

}  // namespace embapprox
