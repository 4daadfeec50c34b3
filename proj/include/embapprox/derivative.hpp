#pragma once

#include <optional>
#include <string>
#include <vector>

#include "embapprox/graph.hpp"
#include "embapprox/transversal.hpp"

namespace embapprox {

/// A connected component of the preimage of the closed edge `target_edge`
/// that is mapped onto it. `edges` includes degenerate edges at either end.
struct PhiComponent {
  EdgeId target_edge = 0;
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
};

/// Components ordered by target edge, then by smallest K-vertex.
std::vector<PhiComponent> phi_components(const SimplicialMap& phi);

/// Two K-vertices over the same target vertex whose pairs of image edges
/// interleave in the rotation there.
struct ChordConflict {
  VertexId target_vertex = 0;
  VertexId x = 0;
  VertexId y = 0;
  std::pair<EdgeId, EdgeId> x_chord;
  std::pair<EdgeId, EdgeId> y_chord;
};

std::optional<ChordConflict> find_chord_conflict(const SimplicialMap& phi);

struct DerivativeStep {
  SimplicialMap source;
  std::vector<PhiComponent> components;
  /// phi' : K'_phi -> G'_phi. Vertex i of K' is components[i]; vertex j of
  /// G' is the G-edge image_edges[j].
  SimplicialMap derived;
  std::vector<EdgeId> image_edges;
  bool terminal_approximable = false;
  /// False when a chord conflict leaves the derived thickening undefined;
  /// the rotation is still filled in by the same rule.
  bool embedding_defined = true;
  std::optional<ChordConflict> conflict;
};

/// Raised by derive() when the source has a transversal self-intersection.
class DerivePreconditionError : public PreconditionError {
 public:
  explicit DerivePreconditionError(CrossingWitness w);
  const CrossingWitness& witness() const { return witness_; }

 private:
  CrossingWitness witness_;
};

/// The derivative of a nondegenerate map. With `check_crossings` the
/// transversal search runs first and a witness aborts with
/// DerivePreconditionError.
DerivativeStep derive(const SimplicialMap& phi, bool check_crossings = true);

/// Rotation of G'_phi at each vertex a' (a = xy): the neighbours b' with
/// b through x in counterclockwise order at x after a, then the neighbours
/// c' with c through y in counterclockwise order at y after a.
std::vector<std::vector<EdgeId>> derived_rotation(const PlaneGraph& g, const std::vector<EdgeId>& image_edges,
                                                  const std::vector<Edge>& derived_edges);

enum class StepStatus {
  clean,                  // derived further
  empty_domain,           // nothing left to derive
  terminal_approximable,  // two components covering a circle
  crossing,               // transversal self-intersection found
  chord_conflict,         // derivative thickening undefined
  stabilized,             // next map is isomorphic to this one
  budget,                 // reached max_steps
};

std::string_view to_string(StepStatus s);

struct IterationRecord {
  std::size_t index = 0;
  SimplicialMap map;  // phi^(index), normalized
  StepStatus status = StepStatus::clean;
  std::optional<CrossingWitness> witness;
  std::optional<ChordConflict> conflict;
};

struct IterateOptions {
  bool check_crossings = true;
  bool detect_stabilization = true;
  bool stop_at_terminal = true;
};

/// phi^(0) = normalize(phi), phi^(i+1) = normalize(derive(phi^(i))), for
/// i < max_steps. Every record except the last has status `clean`.
std::vector<IterationRecord> iterate_derivative(const SimplicialMap& phi, std::size_t max_steps,
                                                IterateOptions options = {});

/// The map at step `k` of an iteration, following a stabilized tail.
/// nullopt if the iteration stopped before `k` for another reason.
std::optional<SimplicialMap> map_at_step(const std::vector<IterationRecord>& records, std::size_t k);

struct WindingComponent {
  std::vector<VertexId> vertices;
  bool is_circle = false;
  bool is_winding = false;
  int degree = 0;
  Subgraph image;
};

struct WindingReport {
  std::vector<WindingComponent> components;

  /// Every component is a winding and there is at least one.
  bool is_standard_winding() const;
};

/// Per domain component: whether phi is a standard winding of a circle onto
/// a cycle of G, and its signed degree. Orientations: the domain circle runs
/// from its smallest vertex towards its smaller neighbour, the image cycle
/// likewise from its smallest vertex.
WindingReport winding_report(const SimplicialMap& phi);

/// Points of K whose image has at least two preimages.
Subgraph singular_set(const SimplicialMap& phi);

std::string to_dot(const SimplicialMap& phi, const std::string& name);
std::string to_dot(const DerivativeStep& step, const std::string& name);

}  // namespace embapprox
