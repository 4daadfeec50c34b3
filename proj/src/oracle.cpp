#include "embapprox/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>

#include "embapprox/normalize.hpp"

namespace embapprox {

namespace {

constexpr EdgeId unassigned = static_cast<EdgeId>(-1);

struct Slot {
  EdgeId target_edge;
  std::size_t lane;
};

// True when the labels (0 = skip) form a non-crossing partition.
bool non_crossing(const std::vector<VertexId>& labels, std::vector<char>& state, std::vector<VertexId>& stack) {
  // state: 0 unseen, 1 open (on stack), 2 closed
  stack.clear();
  bool ok = true;
  for (VertexId l : labels) {
    if (l == unassigned) continue;
    if (!stack.empty() && stack.back() == l) continue;
    if (state[l] == 2) {
      ok = false;
      break;
    }
    if (state[l] == 1) {
      while (stack.back() != l) {
        state[stack.back()] = 2;
        stack.pop_back();
      }
      continue;
    }
    state[l] = 1;
    stack.push_back(l);
  }
  for (VertexId l : labels) {
    if (l != unassigned) state[l] = 0;
  }
  return ok;
}

class Search {
 public:
  Search(const Expansion& ex, OracleOptions options) : ex_(ex), options_(options) {
    const auto& g = ex.map.target();
    slots_.resize(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      for (EdgeId a : g.rotation(v)) {
        const std::size_t m = ex.strands[a].size();
        const bool low = g.edge(a).u == v;
        for (std::size_t p = 0; p < m; ++p) slots_[v].push_back({a, low ? p : m - 1 - p});
      }
    }
    lanes_.resize(g.edge_count());
    for (EdgeId a = 0; a < g.edge_count(); ++a) {
      lanes_[a].assign(ex.strands[a].size(), unassigned);
      if (!ex.strands[a].empty()) order_.push_back(a);
    }
    state_.assign(ex.map.domain().vertex_count(), 0);
    if (options_.shuffle_seed) rng_.seed(*options_.shuffle_seed);
  }

  OracleResult run() {
    OracleResult r;
    const bool found = dfs(0, 0);
    r.nodes = nodes_;
    r.lifts = lifts_;
    if (aborted_) return r;
    r.approximable = found;
    if (found) r.lift = Lift{lanes_};
    return r;
  }

  bool vertex_ok(VertexId v) {
    labels_.clear();
    const auto& k = ex_.map.domain();
    for (const auto& s : slots_[v]) {
      const EdgeId e = lanes_[s.target_edge][s.lane];
      if (e == unassigned) {
        labels_.push_back(unassigned);
        continue;
      }
      const Edge& ed = k.edge(e);
      const VertexId x = ex_.map.image(ed.u) == v ? ed.u : ed.v;
      labels_.push_back(ex_.star[x]);
    }
    return non_crossing(labels_, state_, stack_);
  }

 private:
  bool dfs(std::size_t edge_pos, std::size_t lane) {
    if (edge_pos == order_.size()) {
      ++lifts_;
      if (!options_.prune) {
        for (VertexId v = 0; v < slots_.size(); ++v) {
          if (!vertex_ok(v)) return false;
        }
      }
      return true;
    }
    const EdgeId a = order_[edge_pos];
    const auto& strands = ex_.strands[a];
    if (lane == strands.size()) return dfs(edge_pos + 1, 0);
    std::vector<EdgeId> choices;
    for (EdgeId s : strands) {
      if (std::find(lanes_[a].begin(), lanes_[a].begin() + lane, s) == lanes_[a].begin() + lane) choices.push_back(s);
    }
    if (options_.shuffle_seed) std::shuffle(choices.begin(), choices.end(), rng_);
    const auto& g = ex_.map.target();
    for (EdgeId s : choices) {
      if (options_.max_nodes && nodes_ >= options_.max_nodes) {
        aborted_ = true;
        return false;
      }
      ++nodes_;
      lanes_[a][lane] = s;
      const bool ok = !options_.prune || (vertex_ok(g.edge(a).u) && vertex_ok(g.edge(a).v));
      if (ok && dfs(edge_pos, lane + 1)) return true;
      lanes_[a][lane] = unassigned;
      if (aborted_) return false;
    }
    return false;
  }

  const Expansion& ex_;
  OracleOptions options_;
  std::vector<std::vector<Slot>> slots_;
  std::vector<std::vector<EdgeId>> lanes_;
  std::vector<EdgeId> order_;
  std::vector<VertexId> labels_;
  std::vector<char> state_;
  std::vector<VertexId> stack_;
  std::mt19937_64 rng_;
  std::uint64_t nodes_ = 0;
  std::uint64_t lifts_ = 0;
  bool aborted_ = false;
};

// Path inside one 0-component between two of its vertices, through
// degenerate edges.
WalkArc star_path(const SimplicialMap& phi, VertexId from, VertexId to) {
  const auto& k = phi.domain();
  std::vector<EdgeId> via(k.vertex_count(), unassigned);
  std::vector<bool> seen(k.vertex_count(), false);
  std::queue<VertexId> q;
  q.push(from);
  seen[from] = true;
  while (!q.empty()) {
    const VertexId x = q.front();
    q.pop();
    for (EdgeId e : k.incident(x)) {
      if (!phi.is_degenerate(e)) continue;
      const VertexId y = k.edge(e).other(x);
      if (seen[y]) continue;
      seen[y] = true;
      via[y] = e;
      q.push(y);
    }
  }
  WalkArc arc;
  for (VertexId x = to;;) {
    arc.vertices.push_back(x);
    if (x == from) break;
    arc.edges.push_back(via[x]);
    x = k.edge(via[x]).other(x);
  }
  std::reverse(arc.vertices.begin(), arc.vertices.end());
  std::reverse(arc.edges.begin(), arc.edges.end());
  return arc;
}

}  // namespace

Expansion build_expansion(const SimplicialMap& phi) {
  Expansion ex;
  ex.map = phi;
  const auto& k = phi.domain();
  ex.strands.resize(phi.target().edge_count());
  for (EdgeId e = 0; e < k.edge_count(); ++e) {
    if (auto a = phi.edge_image(e)) ex.strands[*a].push_back(e);
  }
  const auto zc = zero_components(phi);
  ex.star.resize(k.vertex_count());
  for (VertexId c = 0; c < zc.classes.size(); ++c) {
    for (VertexId x : zc.classes[c]) ex.star[x] = c;
  }
  return ex;
}

std::optional<CrossingWitness> lift_crossing_check(const Expansion& ex, const Lift& lift) {
  const auto& g = ex.map.target();
  const auto& k = ex.map.domain();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    struct Port {
      EdgeId strand;
      VertexId x;
      EdgeId target_edge;
    };
    std::vector<Port> ports;
    for (EdgeId a : g.rotation(v)) {
      const auto& lanes = lift.lanes.at(a);
      const bool low = g.edge(a).u == v;
      for (std::size_t p = 0; p < lanes.size(); ++p) {
        const EdgeId s = lanes[low ? p : lanes.size() - 1 - p];
        const Edge& ed = k.edge(s);
        ports.push_back({s, ex.map.image(ed.u) == v ? ed.u : ed.v, a});
      }
    }
    const std::size_t n = ports.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const VertexId sx = ex.star[ports[i].x];
        const VertexId sy = ex.star[ports[j].x];
        if (sx == sy) continue;
        for (std::size_t l = j + 1; l < n; ++l) {
          if (ex.star[ports[l].x] != sx) continue;
          for (std::size_t m = l + 1; m < n; ++m) {
            if (ex.star[ports[m].x] != sy) continue;
            CrossingWitness w;
            w.p = star_path(ex.map, ports[i].x, ports[l].x);
            w.p.head_stub = ports[i].strand;
            w.p.tail_stub = ports[l].strand;
            w.q = star_path(ex.map, ports[j].x, ports[m].x);
            w.q.head_stub = ports[j].strand;
            w.q.tail_stub = ports[m].strand;
            w.sigma.vertices = {v};
            w.p_ports = {{v, ports[i].target_edge}, {v, ports[l].target_edge}};
            w.q_ports = {{v, ports[j].target_edge}, {v, ports[m].target_edge}};
            return w;
          }
        }
      }
    }
  }
  return std::nullopt;
}

OracleResult is_approximable_oracle(const SimplicialMap& phi, OracleOptions options) {
  const Expansion ex = build_expansion(phi);
  return Search(ex, options).run();
}

}  // namespace embapprox
