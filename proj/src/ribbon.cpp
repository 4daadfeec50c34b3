#include "embapprox/ribbon.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace embapprox {

bool BoundaryCircle::contains(const EdgeEnd& end) const {
  return std::any_of(ports.begin(), ports.end(), [&](const Port& p) { return p.end == end; });
}

namespace {

void require_connected(const PlaneGraph& g, const Subgraph& sigma) {
  if (sigma.vertices.empty()) throw PreconditionError("boundary_walks: empty subgraph");
  std::map<VertexId, VertexId> parent;
  for (VertexId v : sigma.vertices) {
    if (v >= g.vertex_count()) throw PreconditionError("boundary_walks: vertex out of range");
    parent[v] = v;
  }
  auto find = [&](VertexId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (EdgeId e : sigma.edges) {
    const Edge& ed = g.edge(e);
    if (!sigma.has_vertex(ed.u) || !sigma.has_vertex(ed.v)) {
      throw PreconditionError("boundary_walks: edge endpoint outside the subgraph");
    }
    const VertexId a = find(ed.u);
    const VertexId b = find(ed.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  const VertexId root = find(sigma.vertices.front());
  for (VertexId v : sigma.vertices) {
    if (find(v) != root) throw PreconditionError("boundary_walks: subgraph is disconnected");
  }
}

}  // namespace

std::vector<BoundaryCircle> boundary_walks(const PlaneGraph& g, const Subgraph& sigma) {
  require_connected(g, sigma);
  std::vector<BoundaryCircle> circles;
  if (sigma.vertices.size() == 1 && g.degree(sigma.vertices[0]) == 0) {
    circles.emplace_back();
    return circles;
  }
  std::map<EdgeEnd, bool> visited;
  for (VertexId v : sigma.vertices) {
    for (EdgeId e : g.rotation(v)) visited[{v, e}] = false;
  }
  for (auto& [start, seen] : visited) {
    if (seen) continue;
    BoundaryCircle circle;
    EdgeEnd cur = start;
    while (!visited[cur]) {
      visited[cur] = true;
      if (sigma.has_edge(cur.edge)) {
        const VertexId w = g.edge(cur.edge).other(cur.vertex);
        cur = {w, g.next_ccw(w, cur.edge)};
      } else {
        circle.ports.push_back({cur, 0});
        cur = {cur.vertex, g.next_ccw(cur.vertex, cur.edge)};
      }
    }
    circles.push_back(std::move(circle));
  }
  for (auto& c : circles) {
    if (c.ports.empty()) continue;
    auto first = std::min_element(c.ports.begin(), c.ports.end(),
                                  [](const Port& a, const Port& b) { return a.end < b.end; });
    std::rotate(c.ports.begin(), first, c.ports.end());
    for (std::size_t i = 0; i < c.ports.size(); ++i) c.ports[i].position = i;
  }
  std::sort(circles.begin(), circles.end(), [](const BoundaryCircle& a, const BoundaryCircle& b) {
    if (a.ports.empty() != b.ports.empty()) return a.ports.empty();
    return std::lexicographical_compare(a.ports.begin(), a.ports.end(), b.ports.begin(), b.ports.end(),
                                        [](const Port& x, const Port& y) { return x.end < y.end; });
  });
  return circles;
}

bool labels_interleave(const std::vector<int>& cyclic_labels) {
  int first = 0;
  int last = 0;
  int changes = 0;
  for (int l : cyclic_labels) {
    if (l == 0) continue;
    if (first == 0) first = l;
    if (last != 0 && l != last) ++changes;
    last = l;
  }
  if (first != 0 && last != first) ++changes;
  return changes >= 4;
}

bool interleaves(const BoundaryCircle& c, const std::vector<EdgeEnd>& a, const std::vector<EdgeEnd>& b) {
  for (const auto& x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) {
      throw PreconditionError("interleaves: port sets overlap");
    }
  }
  std::vector<int> labels;
  labels.reserve(c.ports.size());
  for (const auto& p : c.ports) {
    if (std::find(a.begin(), a.end(), p.end) != a.end()) {
      labels.push_back(1);
    } else if (std::find(b.begin(), b.end(), p.end) != b.end()) {
      labels.push_back(2);
    } else {
      labels.push_back(0);
    }
  }
  return labels_interleave(labels);
}

}  // namespace embapprox
