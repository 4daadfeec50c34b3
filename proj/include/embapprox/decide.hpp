#pragma once

#include <optional>
#include <string>
#include <vector>

#include "embapprox/graph.hpp"
#include "embapprox/transversal.hpp"

namespace embapprox {

/// The input lies outside every implemented decision procedure.
class OutOfScopeError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

enum class EventKind {
  transversal_self_intersection,
  forbidden_winding,
  obstruction_nonzero,
  empty_domain,
  terminal_approximable,
  clean_pass,
  stabilized,
  escalated,
  note,
};

std::string_view to_string(EventKind kind);

struct TraceEvent {
  std::size_t step = 0;
  EventKind kind = EventKind::note;
  std::string detail;
  std::optional<CrossingWitness> witness;
  int degree = 0;
};

struct Verdict {
  bool approximable = false;
  std::string criterion;
  std::vector<TraceEvent> trace;
  /// Set when a derivative could not be formed for a reason no disjoint
  /// arcs witness and the oracle decided instead.
  bool needs_review = false;

  /// The event that decided a negative verdict.
  const TraceEvent* decisive() const;
};

struct DecideOptions {
  bool detect_stabilization = true;
};

/// Derivatives phi^(0..k) of a path must all be free of transversal
/// self-intersections, k the number of vertices.
Verdict decide_path(const SimplicialMap& phi, DecideOptions options = {});

/// As decide_path, and no phi^(i) may be a standard winding of degree
/// |d| >= 2.
Verdict decide_cycle(const SimplicialMap& phi, DecideOptions options = {});

/// Degree <= 3 domain into a cycle: the van Kampen obstruction must vanish
/// and phi^(k) may contain no standard winding of odd degree |d| >= 3.
Verdict decide_deg3_to_circle(const SimplicialMap& phi, DecideOptions options = {});

/// Paths only: approximable iff the van Kampen obstruction vanishes.
Verdict decide_path_via_vk(const SimplicialMap& phi);

/// Dispatches on the domain shape.
Verdict decide(const SimplicialMap& phi, DecideOptions options = {});

std::string describe(const CrossingWitness& w);

}  // namespace embapprox
