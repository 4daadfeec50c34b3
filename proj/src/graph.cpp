#include "embapprox/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace embapprox {

std::string_view to_string(Shape shape) {
  switch (shape) {
    case Shape::path:
      return "path";
    case Shape::cycle:
      return "cycle";
    case Shape::general:
      return "general";
  }
  return "general";
}

std::optional<Shape> parse_shape(std::string_view text) {
  if (text == "path") return Shape::path;
  if (text == "cycle") return Shape::cycle;
  if (text == "general") return Shape::general;
  return std::nullopt;
}

InputError::InputError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

InvariantError::InvariantError(std::string invariant, const std::string& what)
    : std::runtime_error("invariant '" + invariant + "' violated: " + what),
      invariant_(std::move(invariant)) {}

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

std::vector<std::vector<EdgeId>> build_incidence(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<EdgeId>> inc(n);
  for (EdgeId e = 0; e < edges.size(); ++e) {
    if (edges[e].u >= n || edges[e].v >= n) {
      throw InvariantError("dangling-id", "edge " + std::to_string(e) + " references a missing vertex");
    }
    inc[edges[e].u].push_back(e);
    inc[edges[e].v].push_back(e);
  }
  return inc;
}

bool connected(std::size_t n, const std::vector<Edge>& edges) {
  if (n == 0) return true;
  UnionFind uf(n);
  for (const auto& e : edges) uf.unite(e.u, e.v);
  for (std::size_t x = 0; x < n; ++x) {
    if (uf.find(x) != 0) return false;
  }
  return true;
}

}  // namespace

Shape classify_shape(std::size_t vertex_count, const std::vector<Edge>& edges) {
  if (vertex_count == 0) return edges.empty() ? Shape::path : Shape::general;
  if (!connected(vertex_count, edges)) return Shape::general;
  std::vector<std::size_t> deg(vertex_count, 0);
  for (const auto& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  const bool max2 = std::all_of(deg.begin(), deg.end(), [](std::size_t d) { return d <= 2; });
  if (!max2) return Shape::general;
  if (edges.size() + 1 == vertex_count) return Shape::path;
  if (edges.size() == vertex_count &&
      std::all_of(deg.begin(), deg.end(), [](std::size_t d) { return d == 2; })) {
    return Shape::cycle;
  }
  return Shape::general;
}

DomainGraph::DomainGraph(std::size_t vertex_count, std::vector<Edge> edges, Shape shape)
    : edges_(std::move(edges)), shape_(shape) {
  incidence_ = build_incidence(vertex_count, edges_);
  if (shape_ != Shape::general) {
    const Shape actual = classify_shape(vertex_count, edges_);
    if (actual != shape_) {
      throw InvariantError(std::string("shape-") + std::string(to_string(shape_)),
                           "domain edges do not form a " + std::string(to_string(shape_)));
    }
  }
}

DomainGraph DomainGraph::inferred(std::size_t vertex_count, std::vector<Edge> edges) {
  const Shape shape = classify_shape(vertex_count, edges);
  return DomainGraph(vertex_count, std::move(edges), shape);
}

std::vector<VertexId> DomainGraph::traversal() const {
  std::vector<VertexId> order;
  const std::size_t n = vertex_count();
  if (shape_ == Shape::general || n == 0) return order;
  VertexId start = 0;
  if (shape_ == Shape::path) {
    if (n == 1) return {0};
    for (VertexId x = 0; x < n; ++x) {
      if (degree(x) == 1) {
        start = x;
        break;
      }
    }
  }
  std::vector<bool> used(edges_.size(), false);
  order.push_back(start);
  VertexId cur = start;
  if (shape_ == Shape::cycle && n > 1) {
    // Step towards the smaller neighbour first.
    EdgeId best = incidence_[start][0];
    for (EdgeId e : incidence_[start]) {
      const VertexId w = edges_[e].other(start);
      const VertexId bw = edges_[best].other(start);
      if (w < bw || (w == bw && e < best)) best = e;
    }
    used[best] = true;
    cur = edges_[best].other(start);
    if (cur == start) return order;
    order.push_back(cur);
  }
  while (order.size() < n) {
    bool moved = false;
    for (EdgeId e : incidence_[cur]) {
      if (used[e]) continue;
      used[e] = true;
      cur = edges_[e].other(cur);
      order.push_back(cur);
      moved = true;
      break;
    }
    if (!moved) break;
  }
  return order;
}

std::vector<EdgeId> DomainGraph::traversal_edges() const {
  std::vector<EdgeId> result;
  const auto order = traversal();
  if (order.empty()) return result;
  std::vector<bool> used(edges_.size(), false);
  auto take = [&](VertexId a, VertexId b) {
    for (EdgeId e : incidence_[a]) {
      if (!used[e] && edges_[e].other(a) == b) {
        used[e] = true;
        result.push_back(e);
        return;
      }
    }
  };
  for (std::size_t i = 0; i + 1 < order.size(); ++i) take(order[i], order[i + 1]);
  if (shape_ == Shape::cycle) {
    if (order.size() == 1) {
      if (!edges_.empty()) result.push_back(0);
    } else {
      take(order.back(), order.front());
    }
  }
  return result;
}

std::vector<std::vector<VertexId>> DomainGraph::components() const {
  const std::size_t n = vertex_count();
  UnionFind uf(n);
  for (const auto& e : edges_) uf.unite(e.u, e.v);
  std::vector<std::vector<VertexId>> groups;
  std::vector<std::size_t> slot(n, static_cast<std::size_t>(-1));
  for (VertexId x = 0; x < n; ++x) {
    const std::size_t r = uf.find(x);
    if (slot[r] == static_cast<std::size_t>(-1)) {
      slot[r] = groups.size();
      groups.emplace_back();
    }
    groups[slot[r]].push_back(x);
  }
  return groups;
}

PlaneGraph::PlaneGraph(std::size_t vertex_count, std::vector<Edge> edges,
                       std::vector<std::vector<EdgeId>> rotation, std::vector<std::string> labels)
    : edges_(std::move(edges)), rotation_(std::move(rotation)), labels_(std::move(labels)) {
  rotation_.resize(vertex_count);
  const auto inc = build_incidence(vertex_count, edges_);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    if (edges_[e].is_loop()) {
      throw InvariantError("simple", "target edge " + std::to_string(e) + " is a loop");
    }
  }
  for (VertexId v = 0; v < vertex_count; ++v) {
    for (std::size_t i = 0; i < inc[v].size(); ++i) {
      for (std::size_t j = i + 1; j < inc[v].size(); ++j) {
        if (edges_[inc[v][i]].other(v) == edges_[inc[v][j]].other(v)) {
          throw InvariantError("simple", "parallel target edges at vertex " + std::to_string(v));
        }
      }
    }
    auto& rot = rotation_[v];
    if (rot.empty() && inc[v].size() <= 2) rot = inc[v];
    std::vector<EdgeId> sorted_rot = rot;
    std::sort(sorted_rot.begin(), sorted_rot.end());
    if (sorted_rot != inc[v]) {
      throw InvariantError("rotation-complete",
                           "rotation at vertex " + std::to_string(v) +
                               " must list each incident edge exactly once");
    }
  }
  end_index_.assign(2 * edges_.size(), 0);
  for (VertexId v = 0; v < vertex_count; ++v) {
    for (std::size_t i = 0; i < rotation_[v].size(); ++i) {
      const EdgeId e = rotation_[v][i];
      end_index_[2 * e + (edges_[e].u == v ? 0 : 1)] = i;
    }
  }
  if (!labels_.empty() && labels_.size() != vertex_count) {
    throw InvariantError("labels", "label count does not match vertex count");
  }
}

std::size_t PlaneGraph::rotation_index(VertexId v, EdgeId e) const {
  const Edge& ed = edges_.at(e);
  if (!ed.has(v)) throw PreconditionError("edge is not incident to vertex");
  return end_index_[2 * e + (ed.u == v ? 0 : 1)];
}

EdgeId PlaneGraph::next_ccw(VertexId v, EdgeId e) const {
  const auto& rot = rotation_.at(v);
  return rot[(rotation_index(v, e) + 1) % rot.size()];
}

std::optional<EdgeId> PlaneGraph::find_edge(VertexId a, VertexId b) const {
  if (a >= rotation_.size() || b >= rotation_.size()) return std::nullopt;
  const auto& ra = rotation_[a];
  const auto& rb = rotation_[b];
  const auto& scan = ra.size() <= rb.size() ? ra : rb;
  const VertexId from = ra.size() <= rb.size() ? a : b;
  const VertexId to = from == a ? b : a;
  for (EdgeId e : scan) {
    if (edges_[e].other(from) == to) return e;
  }
  return std::nullopt;
}

std::string PlaneGraph::label(VertexId v) const {
  if (labels_.empty()) return std::to_string(v);
  return labels_.at(v);
}

PlaneGraph PlaneGraph::mirrored() const {
  auto rot = rotation_;
  for (auto& r : rot) std::reverse(r.begin(), r.end());
  return PlaneGraph(vertex_count(), edges_, std::move(rot), labels_);
}

bool PlaneGraph::is_cycle() const {
  if (vertex_count() < 3 || edges_.size() != vertex_count()) return false;
  for (const auto& r : rotation_) {
    if (r.size() != 2) return false;
  }
  return connected(vertex_count(), edges_);
}

SimplicialMap::SimplicialMap(DomainGraph domain, PlaneGraph target, std::vector<VertexId> vertex_image)
    : domain_(std::move(domain)), target_(std::move(target)), vertex_image_(std::move(vertex_image)) {
  if (vertex_image_.size() != domain_.vertex_count()) {
    throw InvariantError("dangling-id", "vertex image size does not match the domain");
  }
  for (VertexId x = 0; x < vertex_image_.size(); ++x) {
    if (vertex_image_[x] >= target_.vertex_count()) {
      throw InvariantError("dangling-id", "domain vertex " + std::to_string(x) +
                                              " maps to missing target vertex " +
                                              std::to_string(vertex_image_[x]));
    }
  }
  edge_image_.reserve(domain_.edge_count());
  for (EdgeId e = 0; e < domain_.edge_count(); ++e) {
    const Edge& ed = domain_.edge(e);
    const VertexId a = vertex_image_[ed.u];
    const VertexId b = vertex_image_[ed.v];
    if (a == b) {
      edge_image_.emplace_back(std::nullopt);
      continue;
    }
    const auto img = target_.find_edge(a, b);
    if (!img) {
      std::ostringstream msg;
      msg << "domain edge " << ed.u << "-" << ed.v << " maps to non-adjacent target vertices " << a
          << " and " << b;
      throw InvariantError("simplicial", msg.str());
    }
    edge_image_.emplace_back(img);
  }
}

bool SimplicialMap::nondegenerate() const {
  return std::all_of(edge_image_.begin(), edge_image_.end(),
                     [](const std::optional<EdgeId>& e) { return e.has_value(); });
}

bool SimplicialMap::is_onto() const {
  std::vector<bool> hit_v(target_.vertex_count(), false);
  std::vector<bool> hit_e(target_.edge_count(), false);
  for (VertexId v : vertex_image_) hit_v[v] = true;
  for (const auto& e : edge_image_) {
    if (e) hit_e[*e] = true;
  }
  return std::all_of(hit_v.begin(), hit_v.end(), [](bool b) { return b; }) &&
         std::all_of(hit_e.begin(), hit_e.end(), [](bool b) { return b; });
}

SimplicialMap SimplicialMap::with_target(PlaneGraph target) const {
  return SimplicialMap(domain_, std::move(target), vertex_image_);
}

bool Subgraph::has_vertex(VertexId v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

bool Subgraph::has_edge(EdgeId e) const { return std::binary_search(edges.begin(), edges.end(), e); }

}  // namespace embapprox
