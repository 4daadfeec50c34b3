#include "embapprox/decide.hpp"

#include <sstream>

#include "embapprox/derivative.hpp"
#include "embapprox/normalize.hpp"
#include "embapprox/oracle.hpp"
#include "embapprox/vankampen.hpp"

namespace embapprox {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::transversal_self_intersection:
      return "transversal-self-intersection";
    case EventKind::forbidden_winding:
      return "forbidden-winding";
    case EventKind::obstruction_nonzero:
      return "obstruction-nonzero";
    case EventKind::empty_domain:
      return "empty-domain";
    case EventKind::terminal_approximable:
      return "terminal-approximable";
    case EventKind::clean_pass:
      return "clean-pass";
    case EventKind::stabilized:
      return "stabilized";
    case EventKind::escalated:
      return "escalated";
    case EventKind::note:
      return "note";
  }
  return "note";
}

const TraceEvent* Verdict::decisive() const {
  if (approximable) return nullptr;
  for (const auto& e : trace) {
    if (e.kind == EventKind::transversal_self_intersection || e.kind == EventKind::forbidden_winding ||
        e.kind == EventKind::obstruction_nonzero || e.kind == EventKind::escalated) {
      return &e;
    }
  }
  return nullptr;
}

std::string describe(const CrossingWitness& w) {
  std::ostringstream out;
  auto arc = [&](const WalkArc& a) {
    out << "[";
    if (a.head_stub) out << "~e" << *a.head_stub << " ";
    for (std::size_t i = 0; i < a.vertices.size(); ++i) out << (i ? " " : "") << a.vertices[i];
    if (a.tail_stub) out << " ~e" << *a.tail_stub;
    out << "]";
  };
  arc(w.p);
  out << " x ";
  arc(w.q);
  out << " at {";
  for (std::size_t i = 0; i < w.sigma.vertices.size(); ++i) out << (i ? "," : "") << w.sigma.vertices[i];
  out << "}";
  if (w.annulus) out << " (annulus)";
  return out.str();
}

namespace {

void require_shape(const SimplicialMap& phi, Shape shape, const char* who) {
  if (phi.domain().shape() != shape) {
    throw OutOfScopeError(std::string(who) + ": domain shape is " + std::string(to_string(phi.domain().shape())));
  }
}

std::optional<int> forbidden_cycle_winding(const SimplicialMap& m) {
  const auto rep = winding_report(m);
  if (!rep.is_standard_winding()) return std::nullopt;
  for (const auto& c : rep.components) {
    if (std::abs(c.degree) >= 2) return c.degree;
  }
  return std::nullopt;
}

Verdict run_iteration(const SimplicialMap& phi, bool cycle, DecideOptions options) {
  Verdict v;
  v.criterion = cycle ? "cycle-derivatives" : "path-derivatives";
  const std::size_t k = phi.domain().vertex_count();
  const auto records = iterate_derivative(phi, k, {true, options.detect_stabilization});
  for (const auto& rec : records) {
    if (rec.status == StepStatus::crossing) {
      v.approximable = false;
      v.trace.push_back({rec.index, EventKind::transversal_self_intersection, describe(*rec.witness), rec.witness, 0});
      return v;
    }
    if (cycle) {
      if (auto d = forbidden_cycle_winding(rec.map)) {
        v.approximable = false;
        v.trace.push_back({rec.index, EventKind::forbidden_winding, "degree " + std::to_string(*d), std::nullopt, *d});
        return v;
      }
    }
    switch (rec.status) {
      case StepStatus::clean:
      case StepStatus::budget:
        v.trace.push_back({rec.index, EventKind::clean_pass, "", std::nullopt, 0});
        break;
      case StepStatus::empty_domain:
        v.trace.push_back({rec.index, EventKind::empty_domain, "", std::nullopt, 0});
        break;
      case StepStatus::terminal_approximable:
        v.trace.push_back({rec.index, EventKind::clean_pass, "", std::nullopt, 0});
        v.trace.push_back({rec.index, EventKind::terminal_approximable, "", std::nullopt, 0});
        break;
      case StepStatus::stabilized:
        v.trace.push_back({rec.index, EventKind::clean_pass, "", std::nullopt, 0});
        v.trace.push_back({rec.index, EventKind::stabilized, "later derivatives are isomorphic", std::nullopt, 0});
        break;
      case StepStatus::chord_conflict: {
        const auto oracle = is_approximable_oracle(rec.map);
        v.approximable = oracle.approximable.value_or(false);
        v.needs_review = true;
        std::ostringstream msg;
        msg << "derivative undefined at target vertex " << rec.conflict->target_vertex << " (vertices "
            << rec.conflict->x << ", " << rec.conflict->y << "); oracle decided";
        v.trace.push_back({rec.index, EventKind::escalated, msg.str(), std::nullopt, 0});
        return v;
      }
      case StepStatus::crossing:
        break;
    }
  }
  v.approximable = true;
  return v;
}

}  // namespace

Verdict decide_path(const SimplicialMap& phi, DecideOptions options) {
  require_shape(phi, Shape::path, "decide_path");
  return run_iteration(phi, false, options);
}

Verdict decide_cycle(const SimplicialMap& phi, DecideOptions options) {
  require_shape(phi, Shape::cycle, "decide_cycle");
  return run_iteration(phi, true, options);
}

Verdict decide_path_via_vk(const SimplicialMap& phi) {
  require_shape(phi, Shape::path, "decide_path_via_vk");
  Verdict v;
  v.criterion = "van-kampen";
  const auto rep = obstruction_report(phi);
  v.approximable = rep.vanishes();
  if (v.approximable) {
    v.trace.push_back({0, EventKind::clean_pass, "obstruction vanishes", std::nullopt, 0});
  } else {
    std::size_t cells = 0;
    for (auto c : rep.gf2.certificate) cells += c;
    v.trace.push_back({0, EventKind::obstruction_nonzero,
                       "certificate of " + std::to_string(cells) + " cells", std::nullopt, 0});
  }
  return v;
}

Verdict decide_deg3_to_circle(const SimplicialMap& phi, DecideOptions options) {
  if (!phi.target().is_cycle()) throw OutOfScopeError("decide_deg3_to_circle: the target is not a cycle");
  const auto& k = phi.domain();
  for (VertexId x = 0; x < k.vertex_count(); ++x) {
    if (k.degree(x) > 3) {
      throw OutOfScopeError("decide_deg3_to_circle: vertex " + std::to_string(x) + " has degree " +
                            std::to_string(k.degree(x)));
    }
  }
  Verdict v;
  v.criterion = "degree3-circle";
  const bool general = classify_shape(k.vertex_count(), k.edges()) == Shape::general;
  if (general && !phi.nondegenerate()) {
    v.trace.push_back({0, EventKind::note,
                       "degenerate edges contracted; contraction only preserves non-approximability here",
                       std::nullopt, 0});
  }
  const auto rep = obstruction_report(phi);
  if (!rep.vanishes()) {
    std::size_t cells = 0;
    for (auto c : rep.gf2.certificate) cells += c;
    v.approximable = false;
    v.trace.push_back({0, EventKind::obstruction_nonzero, "certificate of " + std::to_string(cells) + " cells",
                       std::nullopt, 0});
    return v;
  }
  v.trace.push_back({0, EventKind::clean_pass, "obstruction vanishes", std::nullopt, 0});
  const std::size_t steps = k.vertex_count();
  const auto records = iterate_derivative(phi, steps, {false, options.detect_stabilization});
  const auto last = map_at_step(records, steps);
  if (last) {
    for (const auto& c : winding_report(*last).components) {
      if (c.is_winding && std::abs(c.degree) >= 3 && std::abs(c.degree) % 2 == 1) {
        v.approximable = false;
        v.trace.push_back({steps, EventKind::forbidden_winding, "degree " + std::to_string(c.degree), std::nullopt,
                           c.degree});
        return v;
      }
    }
  }
  const auto& tail = records.back();
  if (tail.status == StepStatus::empty_domain) {
    v.trace.push_back({tail.index, EventKind::empty_domain, "", std::nullopt, 0});
  } else if (tail.status == StepStatus::terminal_approximable) {
    v.trace.push_back({tail.index, EventKind::terminal_approximable, "", std::nullopt, 0});
  } else if (tail.status == StepStatus::stabilized) {
    v.trace.push_back({tail.index, EventKind::stabilized, "later derivatives are isomorphic", std::nullopt, 0});
  }
  v.trace.push_back({steps, EventKind::clean_pass, "no odd winding of degree >= 3", std::nullopt, 0});
  v.approximable = true;
  return v;
}

Verdict decide(const SimplicialMap& phi, DecideOptions options) {
  switch (phi.domain().shape()) {
    case Shape::path:
      return decide_path(phi, options);
    case Shape::cycle:
      return decide_cycle(phi, options);
    case Shape::general:
      return decide_deg3_to_circle(phi, options);
  }
  throw OutOfScopeError("decide: unknown shape");
}

}  // namespace embapprox
