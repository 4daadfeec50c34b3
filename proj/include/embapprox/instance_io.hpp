#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "embapprox/graph.hpp"

namespace embapprox {

/// A parsed instance file. `second` is present when the file carries a
/// `#domain2` / `#map2` pair into the same target.
struct Instance {
  SimplicialMap map;
  std::optional<SimplicialMap> second;
};

/// Parses the line-oriented instance format:
///
///   #target      edge <u> <v>
///   #rotation    rot <v> : <u-v> <u-v> ...     (counterclockwise)
///   #domain      shape path|cycle|general, then edge <x> <y>
///   #map         <x> -> <v>
///   #domain2 / #map2  optional second domain into the same target
///
/// `%` starts a comment. Rotation lines may be omitted for vertices of
/// degree <= 2. Throws InputError on syntax errors and InvariantError when a
/// parsed structure is invalid.
Instance parse_instance(std::string_view text);
Instance read_instance_file(const std::string& path);

/// Inverse of parse_instance; rotations are written for every vertex.
std::string format_instance(const SimplicialMap& map);
std::string format_instance(const Instance& instance);

std::string edge_name(const PlaneGraph& g, EdgeId e);

}  // namespace embapprox
