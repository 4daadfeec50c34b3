#pragma once

#include <vector>

#include "embapprox/graph.hpp"

namespace embapprox {

/// Contracts the degenerate edge `c`: its larger endpoint is merged into the
/// smaller one, vertices above it shift down by one, and edges that become
/// loops are dropped. The shape tag is recomputed. Throws PreconditionError
/// when `c` is not degenerate.
SimplicialMap contract_edge(const SimplicialMap& phi, EdgeId c);

/// Repeatedly contracts the lowest-numbered degenerate edge.
SimplicialMap normalize_nondegenerate(const SimplicialMap& phi);

struct ZeroComponents {
  SimplicialMap map;                          // phi^c on K^c
  std::vector<std::vector<VertexId>> classes; // K-vertices of each 0-component
};

/// Quotient of K by the connected components of the preimages of points.
/// Components are numbered by their smallest K-vertex; every nondegenerate
/// edge of K survives, so parallel edges are kept.
ZeroComponents zero_components(const SimplicialMap& phi);

/// Isomorphism of maps: bijections of domain vertices and target vertices
/// commuting with the maps, preserving edge multiplicities and rotations.
/// With `same_target` the target bijection must be the identity.
bool isomorphic(const SimplicialMap& a, const SimplicialMap& b, bool same_target = false);

}  // namespace embapprox
