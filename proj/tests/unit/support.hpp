#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "embapprox/catalog.hpp"
#include "embapprox/graph.hpp"

namespace testing {

using namespace embapprox;

/// Star with centre 0 and leaves 1..n; edge i-1 joins 0 and i, and the
/// rotation at the centre is e0 e1 ... in that order.
inline PlaneGraph star(std::size_t n) {
  std::vector<Edge> edges;
  std::vector<std::vector<EdgeId>> rot(n + 1);
  for (VertexId i = 1; i <= n; ++i) {
    edges.push_back({0, i});
    rot[0].push_back(i - 1);
  }
  return PlaneGraph(n + 1, edges, rot);
}

inline SimplicialMap general_map(const PlaneGraph& g, std::size_t n, const std::vector<Edge>& edges,
                                 const std::vector<VertexId>& image) {
  return SimplicialMap(DomainGraph::inferred(n, edges), g, image);
}

/// Random walk of length k in g (stay or step), as a vertex sequence.
inline std::vector<VertexId> random_walk(const PlaneGraph& g, std::size_t k, std::mt19937_64& rng, bool closed) {
  while (true) {
    std::vector<VertexId> seq{static_cast<VertexId>(rng() % g.vertex_count())};
    while (seq.size() < k) {
      std::vector<VertexId> next{seq.back()};
      for (EdgeId e : g.rotation(seq.back())) next.push_back(g.edge(e).other(seq.back()));
      seq.push_back(next[rng() % next.size()]);
    }
    if (!closed || seq.back() == seq.front() || g.adjacent(seq.back(), seq.front())) return seq;
  }
}

/// Union-find over 0..n-1.
struct Dsu {
  std::vector<std::size_t> p;
  explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  std::size_t find(std::size_t x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
};

/// The derivative's domain straight from the definition: one vertex per
/// connected component of the preimage of a closed target edge that maps
/// onto the edge, adjacent when two components share a K-vertex.
struct ReferenceDerivative {
  std::vector<EdgeId> label;
  std::vector<std::set<VertexId>> members;
  std::set<std::pair<std::size_t, std::size_t>> edges;
};

inline ReferenceDerivative reference_derivative(const SimplicialMap& phi) {
  const auto& k = phi.domain();
  const auto& g = phi.target();
  ReferenceDerivative r;
  for (EdgeId a = 0; a < g.edge_count(); ++a) {
    const Edge& ea = g.edge(a);
    Dsu d(k.vertex_count());
    for (const Edge& e : k.edges()) {
      if (ea.has(phi.image(e.u)) && ea.has(phi.image(e.v))) d.unite(e.u, e.v);
    }
    std::map<std::size_t, std::set<VertexId>> comps;
    for (VertexId x = 0; x < k.vertex_count(); ++x) {
      if (ea.has(phi.image(x))) comps[d.find(x)].insert(x);
    }
    for (auto& [root, verts] : comps) {
      bool onto = false;
      for (const Edge& e : k.edges()) {
        if (verts.count(e.u) && verts.count(e.v) && phi.image(e.u) != phi.image(e.v)) onto = true;
      }
      if (!onto) continue;
      r.label.push_back(a);
      r.members.push_back(verts);
    }
  }
  for (std::size_t i = 0; i < r.members.size(); ++i) {
    for (std::size_t j = i + 1; j < r.members.size(); ++j) {
      for (VertexId x : r.members[i]) {
        if (r.members[j].count(x)) r.edges.insert({i, j});
      }
    }
  }
  return r;
}

/// Faces of a rotation system, counted by tracing orbits of darts.
inline std::size_t face_count(const PlaneGraph& g) {
  std::set<std::pair<VertexId, EdgeId>> seen;  // dart leaving vertex along edge
  std::size_t faces = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    for (VertexId start : {g.edge(e).u, g.edge(e).v}) {
      if (seen.count({start, e})) continue;
      ++faces;
      VertexId v = start;
      EdgeId cur = e;
      while (!seen.count({v, cur})) {
        seen.insert({v, cur});
        const VertexId w = g.edge(cur).other(v);
        cur = g.next_ccw(w, cur);
        v = w;
      }
    }
  }
  return faces;
}

/// Genus zero: V - E + F = 2 per component with edges (isolated vertices
/// contribute 1 and no face).
inline bool is_planar_rotation(const PlaneGraph& g) {
  Dsu d(g.vertex_count());
  for (const Edge& e : g.edges()) d.unite(e.u, e.v);
  std::set<std::size_t> with_edges;
  for (const Edge& e : g.edges()) with_edges.insert(d.find(e.u));
  std::size_t isolated = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) isolated += g.degree(v) == 0;
  const long chi = static_cast<long>(g.vertex_count()) - static_cast<long>(g.edge_count()) +
                   static_cast<long>(face_count(g));
  return chi == static_cast<long>(2 * with_edges.size() + isolated);
}

/// The reference derivative as a map into `target`, whose vertex j stands
/// for the G-edge image_edges[j].
inline SimplicialMap reference_map(const ReferenceDerivative& r, const PlaneGraph& target,
                                   const std::vector<EdgeId>& image_edges) {
  std::vector<Edge> edges;
  for (auto [i, j] : r.edges) edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j)});
  std::vector<VertexId> image;
  for (EdgeId a : r.label) {
    image.push_back(static_cast<VertexId>(std::find(image_edges.begin(), image_edges.end(), a) - image_edges.begin()));
  }
  return SimplicialMap(DomainGraph::inferred(r.label.size(), edges), target, image);
}

inline bool vertex_injective(const SimplicialMap& phi) {
  std::set<VertexId> s(phi.vertex_image().begin(), phi.vertex_image().end());
  return s.size() == phi.vertex_image().size();
}

inline SimplicialMap mirrored(const SimplicialMap& phi) {
  return SimplicialMap(phi.domain(), phi.target().mirrored(), phi.vertex_image());
}

}  // namespace testing
