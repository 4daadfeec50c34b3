#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace embapprox {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  VertexId other(VertexId x) const { return x == u ? v : u; }
  bool is_loop() const { return u == v; }
  bool has(VertexId x) const { return u == x || v == x; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// An edge as seen from one of its endpoints. In a rotation system this is
/// one entry of the cyclic order at `vertex`.
struct EdgeEnd {
  VertexId vertex = 0;
  EdgeId edge = 0;
  friend auto operator<=>(const EdgeEnd&, const EdgeEnd&) = default;
};

enum class Shape { path, cycle, general };

std::string_view to_string(Shape shape);
std::optional<Shape> parse_shape(std::string_view text);

/// Malformed instance text. Carries a 1-based source position.
class InputError : public std::runtime_error {
 public:
  InputError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A structural invariant of a graph or map does not hold. `invariant()`
/// names the violated rule (e.g. "simplicial", "rotation-complete").
class InvariantError : public std::runtime_error {
 public:
  InvariantError(std::string invariant, const std::string& what);
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

/// An operation was called outside its documented domain.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Classifies a multigraph: `path` for a connected graph whose vertices have
/// degree <= 2 with no cycle (a single vertex counts), `cycle` for a connected
/// 2-regular graph (parallel edges and loops allowed, so lengths 1 and 2
/// occur after contractions), `general` otherwise. The empty graph is a path.
Shape classify_shape(std::size_t vertex_count, const std::vector<Edge>& edges);

/// Domain graph K of a simplicial map. Loops and parallel edges are allowed.
class DomainGraph {
 public:
  DomainGraph() = default;
  /// Throws InvariantError when `shape` does not match the edge structure.
  DomainGraph(std::size_t vertex_count, std::vector<Edge> edges, Shape shape);
  /// Shape is computed with classify_shape.
  static DomainGraph inferred(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const { return incidence_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  Shape shape() const { return shape_; }
  /// Incident edge ids in increasing order; a loop is listed twice.
  const std::vector<EdgeId>& incident(VertexId x) const { return incidence_.at(x); }
  std::size_t degree(VertexId x) const { return incidence_.at(x).size(); }

  /// Vertex sequence along a path or cycle. Paths start at the smaller
  /// endpoint; cycles start at vertex 0 and step towards the smaller
  /// neighbour. Empty for `general`.
  std::vector<VertexId> traversal() const;
  /// Edge sequence matching traversal(): edge i joins traversal()[i] and the
  /// next vertex (cyclically for cycles).
  std::vector<EdgeId> traversal_edges() const;

  /// Connected components as sorted vertex lists, ordered by smallest vertex.
  std::vector<std::vector<VertexId>> components() const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incidence_;
  Shape shape_ = Shape::path;
};

/// Simple graph with a rotation system: for each vertex the counterclockwise
/// cyclic order of its incident edges. This encodes an orientable thickening
/// (discs at vertices, strips along edges).
class PlaneGraph {
 public:
  PlaneGraph() = default;
  /// Validates simplicity and that every rotation lists exactly the incident
  /// edges of its vertex. An empty rotation entry for a vertex of degree <= 2
  /// is filled in with the incident edges in id order.
  PlaneGraph(std::size_t vertex_count, std::vector<Edge> edges,
             std::vector<std::vector<EdgeId>> rotation,
             std::vector<std::string> labels = {});

  std::size_t vertex_count() const { return rotation_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<EdgeId>& rotation(VertexId v) const { return rotation_.at(v); }
  std::size_t degree(VertexId v) const { return rotation_.at(v).size(); }
  /// Position of edge `e` in the rotation at `v`.
  std::size_t rotation_index(VertexId v, EdgeId e) const;
  /// Counterclockwise successor of `e` at `v`.
  EdgeId next_ccw(VertexId v, EdgeId e) const;
  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;
  bool adjacent(VertexId a, VertexId b) const { return find_edge(a, b).has_value(); }
  /// Display label of a vertex; defaults to its id.
  std::string label(VertexId v) const;
  const std::vector<std::string>& labels() const { return labels_; }

  /// The mirror image: every rotation reversed.
  PlaneGraph mirrored() const;
  /// True when the graph is connected, 2-regular and has >= 3 vertices.
  bool is_cycle() const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> rotation_;
  std::vector<std::size_t> end_index_;  // 2e: position at edge(e).u, 2e+1: at edge(e).v
  std::vector<std::string> labels_;
};

/// A vertex map V(K) -> V(G) that sends every edge of K to an edge of G or to
/// a single vertex (a degenerate edge).
class SimplicialMap {
 public:
  SimplicialMap() = default;
  /// Throws InvariantError("simplicial") if some edge of K has non-adjacent
  /// distinct images, or InvariantError("dangling-id") on out-of-range images.
  SimplicialMap(DomainGraph domain, PlaneGraph target, std::vector<VertexId> vertex_image);

  const DomainGraph& domain() const { return domain_; }
  const PlaneGraph& target() const { return target_; }
  const std::vector<VertexId>& vertex_image() const { return vertex_image_; }
  VertexId image(VertexId x) const { return vertex_image_.at(x); }
  /// Image edge of a domain edge; nullopt when the edge is degenerate.
  std::optional<EdgeId> edge_image(EdgeId e) const { return edge_image_.at(e); }
  bool is_degenerate(EdgeId e) const { return !edge_image_.at(e).has_value(); }
  bool nondegenerate() const;
  bool is_onto() const;

  SimplicialMap with_target(PlaneGraph target) const;

 private:
  DomainGraph domain_;
  PlaneGraph target_;
  std::vector<VertexId> vertex_image_;
  std::vector<std::optional<EdgeId>> edge_image_;
};

/// Alternating vertex/edge sequence in a graph. `edges[i]` joins
/// `vertices[i]` and `vertices[i + 1]` (the last edge of a closed walk joins
/// back to the first vertex). An arc may carry a partial edge at either end;
/// only the part next to the end vertex belongs to the arc.
struct WalkArc {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  bool closed = false;
  std::optional<EdgeId> head_stub;  // partial edge at vertices.front()
  std::optional<EdgeId> tail_stub;  // partial edge at vertices.back()

  friend auto operator<=>(const WalkArc&, const WalkArc&) = default;
};

/// A subgraph given by sorted vertex and edge id lists.
struct Subgraph {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  bool empty() const { return vertices.empty(); }
  bool has_vertex(VertexId v) const;
  bool has_edge(EdgeId e) const;
  friend bool operator==(const Subgraph&, const Subgraph&) = default;
};

}  // namespace embapprox
