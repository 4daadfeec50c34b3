#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "embapprox/graph.hpp"

namespace embapprox {

/// Plane graph whose rotations come from straight-line vertex positions.
PlaneGraph plane_graph_from_coordinates(const std::vector<Edge>& edges,
                                        const std::vector<std::pair<double, double>>& coords);

/// Targets: C3 C4 C5 C6 (cycles), theta (K_{2,3}), W4 (wheel), od5 (5-od),
/// linkgraph (the six-vertex graph of the link-map pair example).
PlaneGraph catalog_target(std::string_view name);
std::vector<std::string> catalog_names();

/// Path k_0 ... k_{n-1} mapped along `sequence`.
SimplicialMap path_map(const PlaneGraph& g, const std::vector<VertexId>& sequence);
/// Closed walk along `sequence` (the last vertex is joined to the first).
SimplicialMap cycle_map(const PlaneGraph& g, const std::vector<VertexId>& sequence);

/// Standard d-winding onto C3 (a 3|d|-cycle, vertex i to sign(d) i mod 3);
/// d = 0 gives the constant map of a 3-cycle.
SimplicialMap standard_winding(int d);

/// Euler cycle of two triangles sharing a vertex. The planar variant turns
/// back at the shared vertex; the other one crosses itself there.
SimplicialMap bowtie_euler_cycle(bool crossing);

/// The two paths into linkgraph from the link-map example.
std::pair<SimplicialMap, SimplicialMap> link_pair();

}  // namespace embapprox
