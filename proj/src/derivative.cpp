#include "embapprox/derivative.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "embapprox/normalize.hpp"
#include "embapprox/ribbon.hpp"

namespace embapprox {

namespace {

struct Dsu {
  explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0u); }
  VertexId find(VertexId x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
  std::vector<VertexId> p;
};

std::string compose_label(const PlaneGraph& g, EdgeId a) {
  auto part = [&](VertexId v) {
    std::string s = g.label(v);
    return s.find('-') == std::string::npos ? s : "(" + s + ")";
  };
  const auto [u, v] = std::minmax(g.edge(a).u, g.edge(a).v);
  return part(u) + "-" + part(v);
}

bool chords_interleave(const PlaneGraph& g, VertexId v, std::pair<EdgeId, EdgeId> c, std::pair<EdgeId, EdgeId> d) {
  if (c.first == d.first || c.first == d.second || c.second == d.first || c.second == d.second) return false;
  std::vector<int> labels(g.degree(v), 0);
  labels[g.rotation_index(v, c.first)] = 1;
  labels[g.rotation_index(v, c.second)] = 1;
  labels[g.rotation_index(v, d.first)] = 2;
  labels[g.rotation_index(v, d.second)] = 2;
  return labels_interleave(labels);
}

}  // namespace

std::vector<PhiComponent> phi_components(const SimplicialMap& phi) {
  const auto& k = phi.domain();
  const auto& g = phi.target();
  std::vector<std::vector<EdgeId>> over(g.edge_count());
  for (EdgeId e = 0; e < k.edge_count(); ++e) {
    if (auto a = phi.edge_image(e)) over[*a].push_back(e);
  }
  std::vector<std::vector<EdgeId>> degenerate_at(g.vertex_count());
  for (EdgeId e = 0; e < k.edge_count(); ++e) {
    if (phi.is_degenerate(e)) degenerate_at[phi.image(k.edge(e).u)].push_back(e);
  }
  std::vector<PhiComponent> out;
  Dsu dsu(k.vertex_count());
  for (EdgeId a = 0; a < g.edge_count(); ++a) {
    if (over[a].empty()) continue;
    const VertexId u = g.edge(a).u;
    const VertexId w = g.edge(a).v;
    std::vector<EdgeId> local = over[a];
    local.insert(local.end(), degenerate_at[u].begin(), degenerate_at[u].end());
    local.insert(local.end(), degenerate_at[w].begin(), degenerate_at[w].end());
    for (EdgeId e : local) dsu.unite(k.edge(e).u, k.edge(e).v);
    std::map<VertexId, PhiComponent> groups;
    for (EdgeId e : over[a]) groups[dsu.find(k.edge(e).u)].target_edge = a;
    for (EdgeId e : local) {
      auto it = groups.find(dsu.find(k.edge(e).u));
      if (it == groups.end()) continue;
      it->second.edges.push_back(e);
      it->second.vertices.push_back(k.edge(e).u);
      it->second.vertices.push_back(k.edge(e).v);
    }
    for (auto& [root, c] : groups) {
      std::sort(c.edges.begin(), c.edges.end());
      std::sort(c.vertices.begin(), c.vertices.end());
      c.vertices.erase(std::unique(c.vertices.begin(), c.vertices.end()), c.vertices.end());
      out.push_back(std::move(c));
    }
    for (EdgeId e : local) {
      dsu.p[k.edge(e).u] = k.edge(e).u;
      dsu.p[k.edge(e).v] = k.edge(e).v;
    }
  }
  return out;
}

std::optional<ChordConflict> find_chord_conflict(const SimplicialMap& phi) {
  const auto& k = phi.domain();
  const auto& g = phi.target();
  std::vector<std::vector<VertexId>> fibre(g.vertex_count());
  for (VertexId x = 0; x < k.vertex_count(); ++x) fibre[phi.image(x)].push_back(x);
  auto chords_of = [&](VertexId x) {
    std::vector<EdgeId> imgs;
    for (EdgeId e : k.incident(x)) {
      if (auto a = phi.edge_image(e)) imgs.push_back(*a);
    }
    std::sort(imgs.begin(), imgs.end());
    imgs.erase(std::unique(imgs.begin(), imgs.end()), imgs.end());
    std::vector<std::pair<EdgeId, EdgeId>> chords;
    for (std::size_t i = 0; i < imgs.size(); ++i) {
      for (std::size_t j = i + 1; j < imgs.size(); ++j) chords.emplace_back(imgs[i], imgs[j]);
    }
    return chords;
  };
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) < 4) continue;
    const auto& xs = fibre[v];
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto ci = chords_of(xs[i]);
      for (std::size_t j = i + 1; j < xs.size(); ++j) {
        for (const auto& c : ci) {
          for (const auto& d : chords_of(xs[j])) {
            if (chords_interleave(g, v, c, d)) return ChordConflict{v, xs[i], xs[j], c, d};
          }
        }
      }
    }
  }
  return std::nullopt;
}

DerivePreconditionError::DerivePreconditionError(CrossingWitness w)
    : PreconditionError("derive: the map has a transversal self-intersection"), witness_(std::move(w)) {}

std::vector<std::vector<EdgeId>> derived_rotation(const PlaneGraph& g, const std::vector<EdgeId>& image_edges,
                                                  const std::vector<Edge>& derived_edges) {
  std::map<EdgeId, VertexId> index;
  for (VertexId i = 0; i < image_edges.size(); ++i) index[image_edges[i]] = i;
  std::map<std::pair<VertexId, VertexId>, EdgeId> lookup;
  for (EdgeId e = 0; e < derived_edges.size(); ++e) {
    lookup[std::minmax(derived_edges[e].u, derived_edges[e].v)] = e;
  }
  std::vector<std::vector<EdgeId>> rotation(image_edges.size());
  for (VertexId i = 0; i < image_edges.size(); ++i) {
    const EdgeId a = image_edges[i];
    for (VertexId end : {g.edge(a).u, g.edge(a).v}) {
      for (EdgeId b = g.next_ccw(end, a); b != a; b = g.next_ccw(end, b)) {
        auto j = index.find(b);
        if (j == index.end()) continue;
        auto e = lookup.find(std::minmax(i, j->second));
        if (e != lookup.end()) rotation[i].push_back(e->second);
      }
    }
  }
  return rotation;
}

DerivativeStep derive(const SimplicialMap& phi, bool check_crossings) {
  if (!phi.nondegenerate()) throw PreconditionError("derive: the map has degenerate edges");
  if (check_crossings) {
    if (auto w = has_transversal_self_intersection(phi)) throw DerivePreconditionError(std::move(*w));
  }
  const auto& g = phi.target();
  const auto& k = phi.domain();
  DerivativeStep step;
  step.source = phi;
  step.components = phi_components(phi);
  const auto& comps = step.components;

  for (const auto& c : comps) step.image_edges.push_back(c.target_edge);
  step.image_edges.erase(std::unique(step.image_edges.begin(), step.image_edges.end()), step.image_edges.end());
  std::map<EdgeId, VertexId> index;
  for (VertexId i = 0; i < step.image_edges.size(); ++i) index[step.image_edges[i]] = i;

  std::vector<Edge> kd_edges;
  std::vector<Edge> gd_edges;
  std::size_t max_shared = 0;
  for (VertexId i = 0; i < comps.size(); ++i) {
    for (VertexId j = i + 1; j < comps.size(); ++j) {
      std::vector<VertexId> shared;
      std::set_intersection(comps[i].vertices.begin(), comps[i].vertices.end(), comps[j].vertices.begin(),
                            comps[j].vertices.end(), std::back_inserter(shared));
      if (shared.empty()) continue;
      max_shared = std::max(max_shared, shared.size());
      kd_edges.push_back({i, j});
      const auto [p, q] = std::minmax(index[comps[i].target_edge], index[comps[j].target_edge]);
      gd_edges.push_back({p, q});
    }
  }
  std::sort(gd_edges.begin(), gd_edges.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  gd_edges.erase(std::unique(gd_edges.begin(), gd_edges.end()), gd_edges.end());

  std::vector<std::string> labels;
  for (EdgeId a : step.image_edges) labels.push_back(compose_label(g, a));
  auto rotation = derived_rotation(g, step.image_edges, gd_edges);
  PlaneGraph gd(step.image_edges.size(), gd_edges, std::move(rotation), std::move(labels));

  std::vector<VertexId> image;
  for (const auto& c : comps) image.push_back(index[c.target_edge]);
  step.derived = SimplicialMap(DomainGraph::inferred(comps.size(), std::move(kd_edges)), std::move(gd),
                               std::move(image));

  step.terminal_approximable =
      classify_shape(k.vertex_count(), k.edges()) == Shape::cycle && comps.size() == 2 && max_shared == 2;
  step.conflict = find_chord_conflict(phi);
  step.embedding_defined = !step.conflict.has_value();
  return step;
}

std::string_view to_string(StepStatus s) {
  switch (s) {
    case StepStatus::clean:
      return "clean";
    case StepStatus::empty_domain:
      return "empty-domain";
    case StepStatus::terminal_approximable:
      return "terminal-approximable";
    case StepStatus::crossing:
      return "transversal-self-intersection";
    case StepStatus::chord_conflict:
      return "chord-conflict";
    case StepStatus::stabilized:
      return "stabilized";
    case StepStatus::budget:
      return "budget";
  }
  return "clean";
}

std::vector<IterationRecord> iterate_derivative(const SimplicialMap& phi, std::size_t max_steps,
                                                IterateOptions options) {
  std::vector<IterationRecord> records;
  SimplicialMap cur = normalize_nondegenerate(phi);
  for (std::size_t i = 0;; ++i) {
    IterationRecord rec{i, cur, StepStatus::clean, std::nullopt, std::nullopt};
    if (cur.domain().edge_count() == 0) {
      rec.status = StepStatus::empty_domain;
      records.push_back(std::move(rec));
      break;
    }
    if (options.check_crossings) {
      if (auto w = has_transversal_self_intersection(cur)) {
        rec.status = StepStatus::crossing;
        rec.witness = std::move(w);
        records.push_back(std::move(rec));
        break;
      }
    }
    if (i == max_steps) {
      rec.status = StepStatus::budget;
      records.push_back(std::move(rec));
      break;
    }
    auto step = derive(cur, false);
    if (step.terminal_approximable && options.stop_at_terminal) {
      rec.status = StepStatus::terminal_approximable;
      records.push_back(std::move(rec));
      break;
    }
    if (!step.embedding_defined) {
      rec.status = StepStatus::chord_conflict;
      rec.conflict = step.conflict;
      records.push_back(std::move(rec));
      break;
    }
    SimplicialMap next = normalize_nondegenerate(step.derived);
    if (options.detect_stabilization && isomorphic(next, cur)) {
      rec.status = StepStatus::stabilized;
      records.push_back(std::move(rec));
      break;
    }
    records.push_back(std::move(rec));
    cur = std::move(next);
  }
  return records;
}

std::optional<SimplicialMap> map_at_step(const std::vector<IterationRecord>& records, std::size_t k) {
  if (records.empty()) return std::nullopt;
  if (k < records.size()) return records[k].map;
  const auto& last = records.back();
  if (last.status == StepStatus::stabilized) return last.map;
  if (last.status == StepStatus::empty_domain) {
    return SimplicialMap(DomainGraph(0, {}, Shape::path), PlaneGraph(0, {}, {}), {});
  }
  return std::nullopt;
}

bool WindingReport::is_standard_winding() const {
  return !components.empty() &&
         std::all_of(components.begin(), components.end(), [](const WindingComponent& c) { return c.is_winding; });
}

WindingReport winding_report(const SimplicialMap& phi) {
  const auto& k = phi.domain();
  const auto& g = phi.target();
  WindingReport report;
  for (const auto& verts : k.components()) {
    WindingComponent wc;
    wc.vertices = verts;
    std::vector<EdgeId> edges;
    for (VertexId x : verts) {
      for (EdgeId e : k.incident(x)) {
        if (k.edge(e).u == x) edges.push_back(e);
      }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    wc.is_circle = !edges.empty() && edges.size() == verts.size() &&
                   std::all_of(verts.begin(), verts.end(), [&](VertexId x) { return k.degree(x) == 2; });
    for (VertexId x : verts) wc.image.vertices.push_back(phi.image(x));
    for (EdgeId e : edges) {
      if (auto a = phi.edge_image(e)) wc.image.edges.push_back(*a);
    }
    auto& iv = wc.image.vertices;
    auto& ie = wc.image.edges;
    std::sort(iv.begin(), iv.end());
    iv.erase(std::unique(iv.begin(), iv.end()), iv.end());
    std::sort(ie.begin(), ie.end());
    ie.erase(std::unique(ie.begin(), ie.end()), ie.end());

    bool ultra = wc.is_circle;
    for (std::size_t i = 0; ultra && i < verts.size(); ++i) {
      const auto& inc = k.incident(verts[i]);
      ultra = phi.edge_image(inc[0]) && phi.edge_image(inc[1]) && phi.edge_image(inc[0]) != phi.edge_image(inc[1]);
    }
    bool image_cycle = ie.size() == iv.size() && iv.size() >= 3;
    std::map<VertexId, std::vector<VertexId>> image_adj;
    for (EdgeId a : ie) {
      image_adj[g.edge(a).u].push_back(g.edge(a).v);
      image_adj[g.edge(a).v].push_back(g.edge(a).u);
    }
    for (VertexId v : iv) image_cycle = image_cycle && image_adj[v].size() == 2;
    wc.is_winding = ultra && image_cycle && edges.size() % ie.size() == 0;
    if (wc.is_winding) {
      std::vector<VertexId> order{iv.front()};
      VertexId prev = iv.front();
      VertexId next = std::min(image_adj[prev][0], image_adj[prev][1]);
      while (next != iv.front()) {
        order.push_back(next);
        const auto& nb = image_adj[next];
        const VertexId after = nb[0] == prev ? nb[1] : nb[0];
        prev = next;
        next = after;
      }
      std::map<VertexId, std::size_t> pos;
      for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
      const VertexId x0 = verts.front();
      const auto& inc = k.incident(x0);
      const VertexId x1 = std::min(k.edge(inc[0]).other(x0), k.edge(inc[1]).other(x0));
      const bool forward = pos[phi.image(x1)] == (pos[phi.image(x0)] + 1) % order.size();
      const int d = static_cast<int>(edges.size() / ie.size());
      wc.degree = forward ? d : -d;
    }
    report.components.push_back(std::move(wc));
  }
  return report;
}

Subgraph singular_set(const SimplicialMap& phi) {
  const auto& k = phi.domain();
  std::map<EdgeId, int> edge_count;
  std::map<VertexId, int> vertex_count;
  for (EdgeId e = 0; e < k.edge_count(); ++e) {
    if (auto a = phi.edge_image(e)) ++edge_count[*a];
  }
  for (VertexId x = 0; x < k.vertex_count(); ++x) ++vertex_count[phi.image(x)];
  Subgraph s;
  for (EdgeId e = 0; e < k.edge_count(); ++e) {
    auto a = phi.edge_image(e);
    if (a && edge_count[*a] >= 2) {
      s.edges.push_back(e);
      s.vertices.push_back(k.edge(e).u);
      s.vertices.push_back(k.edge(e).v);
    }
  }
  for (VertexId x = 0; x < k.vertex_count(); ++x) {
    if (vertex_count[phi.image(x)] >= 2) s.vertices.push_back(x);
  }
  std::sort(s.vertices.begin(), s.vertices.end());
  s.vertices.erase(std::unique(s.vertices.begin(), s.vertices.end()), s.vertices.end());
  return s;
}

namespace {

void dot_body(std::ostringstream& out, const SimplicialMap& phi, const std::vector<std::string>& domain_labels) {
  const auto& k = phi.domain();
  const auto& g = phi.target();
  out << "  subgraph cluster_domain {\n    label=\"K\";\n";
  for (VertexId x = 0; x < k.vertex_count(); ++x) {
    out << "    k" << x << " [label=\"" << domain_labels[x] << "\"];\n";
  }
  for (const auto& e : k.edges()) out << "    k" << e.u << " -- k" << e.v << ";\n";
  out << "  }\n  subgraph cluster_target {\n    label=\"G\";\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    out << "    g" << v << " [label=\"" << g.label(v) << "\"];";
    out << "  // rot:";
    for (EdgeId e : g.rotation(v)) out << " g" << g.edge(e).other(v);
    out << "\n";
  }
  for (const auto& e : g.edges()) out << "    g" << e.u << " -- g" << e.v << ";\n";
  out << "  }\n";
  for (VertexId x = 0; x < k.vertex_count(); ++x) {
    out << "  k" << x << " -- g" << phi.image(x) << " [style=dotted, constraint=false];\n";
  }
}

}  // namespace

std::string to_dot(const SimplicialMap& phi, const std::string& name) {
  std::ostringstream out;
  out << "graph \"" << name << "\" {\n";
  std::vector<std::string> labels;
  for (VertexId x = 0; x < phi.domain().vertex_count(); ++x) labels.push_back(std::to_string(x));
  dot_body(out, phi, labels);
  out << "}\n";
  return out.str();
}

std::string to_dot(const DerivativeStep& step, const std::string& name) {
  std::ostringstream out;
  out << "graph \"" << name << "\" {\n";
  std::vector<std::string> labels;
  for (const auto& c : step.components) {
    std::string s = "e" + std::to_string(c.target_edge) + " {";
    for (std::size_t i = 0; i < c.vertices.size(); ++i) s += (i ? "," : "") + std::to_string(c.vertices[i]);
    labels.push_back(s + "}");
  }
  dot_body(out, step.derived, labels);
  if (step.terminal_approximable) out << "  // terminal-approximable\n";
  if (!step.embedding_defined) out << "  // derived thickening undefined (chord conflict)\n";
  out << "}\n";
  return out.str();
}

}  // namespace embapprox
