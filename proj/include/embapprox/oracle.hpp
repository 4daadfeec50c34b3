#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "embapprox/graph.hpp"
#include "embapprox/transversal.hpp"

namespace embapprox {

/// The multi-edge expansion: every target edge a is replaced by one parallel
/// copy per domain edge over a. Copy i of a sits at position i of a's block
/// in the rotation at edge(a).u and at position m-1-i at edge(a).v.
struct Expansion {
  SimplicialMap map;
  std::vector<std::vector<EdgeId>> strands;  // per target edge, domain edges over it (sorted)
  /// The 0-component (star) of each domain vertex; degenerate edges glue
  /// stars together inside a disc.
  std::vector<VertexId> star;
};

Expansion build_expansion(const SimplicialMap& phi);

/// lanes[a][i] = domain edge drawn on copy i of target edge a.
struct Lift {
  std::vector<std::vector<EdgeId>> lanes;
  friend auto operator<=>(const Lift&, const Lift&) = default;
};

/// Interleaving stars in some disc, or nullopt if the lift is an embedding.
/// The witness arcs are the two stars (a centre with two partial edges).
std::optional<CrossingWitness> lift_crossing_check(const Expansion& ex, const Lift& lift);

struct OracleOptions {
  std::uint64_t max_nodes = 0;  // 0 = unlimited
  std::optional<std::uint64_t> shuffle_seed;
  bool prune = true;
};

struct OracleResult {
  std::optional<bool> approximable;  // nullopt = budget exhausted
  std::optional<Lift> lift;
  std::uint64_t nodes = 0;  // partial lane assignments visited
  std::uint64_t lifts = 0;  // complete lifts examined
};

/// Exhaustive lane-order search. A lift is accepted when, in every disc, the
/// stars of distinct 0-components have pairwise non-interleaving ports.
/// Without shuffling, the accepted lift is the first in lexicographic order.
OracleResult is_approximable_oracle(const SimplicialMap& phi, OracleOptions options = {});

}  // namespace embapprox
