#pragma once

#include <vector>

#include "embapprox/graph.hpp"

namespace embapprox {

/// An edge-end leaving a subgraph: `end.vertex` lies in the subgraph and
/// `end.edge` does not.
struct Port {
  EdgeEnd end;
  std::size_t position = 0;

  friend bool operator==(const Port& a, const Port& b) { return a.end == b.end; }
};

/// One boundary component of the regular neighbourhood of a subgraph, as the
/// cyclic sequence of ports met along it. May be empty (a cycle with nothing
/// attached on one side).
struct BoundaryCircle {
  std::vector<Port> ports;

  bool contains(const EdgeEnd& end) const;
};

/// Boundary circles of the neighbourhood of the connected subgraph `sigma`
/// (vertices plus edges between them). Each circle starts at its smallest
/// port; circles are sorted, empty ones first.
std::vector<BoundaryCircle> boundary_walks(const PlaneGraph& g, const Subgraph& sigma);

/// True iff some a1, a2 in A and b1, b2 in B occur in cyclic order
/// a1 b1 a2 b2 on the circle. Ports not on the circle are ignored.
bool interleaves(const BoundaryCircle& c, const std::vector<EdgeEnd>& a, const std::vector<EdgeEnd>& b);

/// Same test on a cyclic sequence of two-valued labels (0 = neither).
bool labels_interleave(const std::vector<int>& cyclic_labels);

}  // namespace embapprox
