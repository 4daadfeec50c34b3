#include "embapprox/normalize.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace embapprox {

SimplicialMap contract_edge(const SimplicialMap& phi, EdgeId c) {
  const auto& k = phi.domain();
  if (c >= k.edge_count()) throw PreconditionError("contract_edge: no such edge");
  if (!phi.is_degenerate(c)) throw PreconditionError("contract_edge: edge is not degenerate");
  const auto [keep, gone] = std::minmax(k.edge(c).u, k.edge(c).v);
  auto renumber = [&](VertexId x) -> VertexId {
    if (keep == gone) return x;
    if (x == gone) x = keep;
    return x > gone ? x - 1 : x;
  };
  const std::size_t n = keep == gone ? k.vertex_count() : k.vertex_count() - 1;
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < k.edge_count(); ++e) {
    if (e == c) continue;
    Edge ne{renumber(k.edge(e).u), renumber(k.edge(e).v)};
    if (ne.is_loop()) continue;
    edges.push_back(ne);
  }
  std::vector<VertexId> image;
  image.reserve(n);
  for (VertexId x = 0; x < k.vertex_count(); ++x) {
    if (x != gone || keep == gone) image.push_back(phi.image(x));
  }
  return SimplicialMap(DomainGraph::inferred(n, std::move(edges)), phi.target(), std::move(image));
}

SimplicialMap normalize_nondegenerate(const SimplicialMap& phi) {
  SimplicialMap cur = phi;
  for (;;) {
    std::optional<EdgeId> c;
    for (EdgeId e = 0; e < cur.domain().edge_count(); ++e) {
      if (cur.is_degenerate(e)) {
        c = e;
        break;
      }
    }
    if (!c) return cur;
    cur = contract_edge(cur, *c);
  }
}

ZeroComponents zero_components(const SimplicialMap& phi) {
  const auto& k = phi.domain();
  const std::size_t n = k.vertex_count();
  std::vector<VertexId> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<VertexId(VertexId)> find = [&](VertexId x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (EdgeId e = 0; e < k.edge_count(); ++e) {
    if (!phi.is_degenerate(e)) continue;
    const VertexId a = find(k.edge(e).u);
    const VertexId b = find(k.edge(e).v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<VertexId> index(n);
  ZeroComponents out;
  std::vector<VertexId> image;
  for (VertexId x = 0; x < n; ++x) {
    const VertexId r = find(x);
    if (r == x) {
      index[x] = static_cast<VertexId>(out.classes.size());
      out.classes.push_back({});
      image.push_back(phi.image(x));
    }
    index[x] = index[r];
    out.classes[index[x]].push_back(x);
  }
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < k.edge_count(); ++e) {
    if (phi.is_degenerate(e)) continue;
    edges.push_back({index[k.edge(e).u], index[k.edge(e).v]});
  }
  out.map = SimplicialMap(DomainGraph::inferred(out.classes.size(), std::move(edges)), phi.target(),
                          std::move(image));
  return out;
}

namespace {

using PairCount = std::map<std::pair<VertexId, VertexId>, int>;

PairCount multiplicities(const DomainGraph& k) {
  PairCount m;
  for (const auto& e : k.edges()) ++m[std::minmax(e.u, e.v)];
  return m;
}

int count_of(const PairCount& m, VertexId a, VertexId b) {
  auto it = m.find(std::minmax(a, b));
  return it == m.end() ? 0 : it->second;
}

bool cyclic_equal(const std::vector<EdgeId>& a, const std::vector<EdgeId>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  auto it = std::find(b.begin(), b.end(), a[0]);
  if (it == b.end()) return false;
  const std::size_t off = static_cast<std::size_t>(it - b.begin());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[(off + i) % b.size()]) return false;
  }
  return true;
}

class MapMatcher {
 public:
  MapMatcher(const SimplicialMap& a, const SimplicialMap& b, bool same_target)
      : a_(a), b_(b), same_target_(same_target), ma_(multiplicities(a.domain())), mb_(multiplicities(b.domain())) {}

  bool run() {
    const auto& ka = a_.domain();
    const auto& kb = b_.domain();
    const auto& ga = a_.target();
    const auto& gb = b_.target();
    if (ka.vertex_count() != kb.vertex_count() || ka.edge_count() != kb.edge_count()) return false;
    if (ga.vertex_count() != gb.vertex_count() || ga.edge_count() != gb.edge_count()) return false;
    f_.assign(ka.vertex_count(), none);
    finv_.assign(kb.vertex_count(), none);
    g_.assign(ga.vertex_count(), none);
    ginv_.assign(gb.vertex_count(), none);
    if (same_target_) {
      for (VertexId v = 0; v < ga.vertex_count(); ++v) g_[v] = ginv_[v] = v;
    }
    order_ = search_order();
    return assign_domain(0);
  }

 private:
  static constexpr VertexId none = static_cast<VertexId>(-1);

  std::vector<VertexId> search_order() const {
    const auto& k = a_.domain();
    std::vector<VertexId> order;
    std::vector<bool> seen(k.vertex_count(), false);
    for (VertexId s = 0; s < k.vertex_count(); ++s) {
      if (seen[s]) continue;
      seen[s] = true;
      std::size_t head = order.size();
      order.push_back(s);
      while (head < order.size()) {
        const VertexId x = order[head++];
        for (EdgeId e : k.incident(x)) {
          const VertexId y = k.edge(e).other(x);
          if (!seen[y]) {
            seen[y] = true;
            order.push_back(y);
          }
        }
      }
    }
    return order;
  }

  bool assign_domain(std::size_t depth) {
    if (depth == order_.size()) return assign_target(0);
    const VertexId x = order_[depth];
    const auto& ka = a_.domain();
    const auto& kb = b_.domain();
    const VertexId gx = a_.image(x);
    for (VertexId y = 0; y < kb.vertex_count(); ++y) {
      if (finv_[y] != none || kb.degree(y) != ka.degree(x)) continue;
      const VertexId gy = b_.image(y);
      const bool fresh = g_[gx] == none;
      if (fresh ? ginv_[gy] != none : g_[gx] != gy) continue;
      bool ok = true;
      f_[x] = y;
      finv_[y] = x;
      for (EdgeId e : ka.incident(x)) {
        const VertexId z = ka.edge(e).other(x);
        if (f_[z] == none) continue;
        if (count_of(ma_, x, z) != count_of(mb_, y, f_[z])) {
          ok = false;
          break;
        }
      }
      if (ok) {
        if (fresh) {
          g_[gx] = gy;
          ginv_[gy] = gx;
        }
        if (assign_domain(depth + 1)) return true;
        if (fresh) {
          g_[gx] = none;
          ginv_[gy] = none;
        }
      }
      f_[x] = none;
      finv_[y] = none;
    }
    return false;
  }

  bool assign_target(VertexId v) {
    const auto& ga = a_.target();
    if (v == ga.vertex_count()) return check_target();
    if (g_[v] != none) return assign_target(v + 1);
    for (VertexId w = 0; w < b_.target().vertex_count(); ++w) {
      if (ginv_[w] != none || b_.target().degree(w) != ga.degree(v)) continue;
      g_[v] = w;
      ginv_[w] = v;
      if (assign_target(v + 1)) return true;
      g_[v] = none;
      ginv_[w] = none;
    }
    return false;
  }

  bool check_target() const {
    const auto& ga = a_.target();
    const auto& gb = b_.target();
    std::vector<EdgeId> h(ga.edge_count());
    for (EdgeId e = 0; e < ga.edge_count(); ++e) {
      const auto img = gb.find_edge(g_[ga.edge(e).u], g_[ga.edge(e).v]);
      if (!img) return false;
      h[e] = *img;
    }
    for (VertexId v = 0; v < ga.vertex_count(); ++v) {
      if (ga.degree(v) != gb.degree(g_[v])) return false;
      if (ga.degree(v) <= 2) continue;
      std::vector<EdgeId> mapped;
      for (EdgeId e : ga.rotation(v)) mapped.push_back(h[e]);
      if (!cyclic_equal(mapped, gb.rotation(g_[v]))) return false;
    }
    return true;
  }

  const SimplicialMap& a_;
  const SimplicialMap& b_;
  bool same_target_;
  PairCount ma_;
  PairCount mb_;
  std::vector<VertexId> order_;
  std::vector<VertexId> f_, finv_, g_, ginv_;
};

}  // namespace

bool isomorphic(const SimplicialMap& a, const SimplicialMap& b, bool same_target) {
  if (same_target && a.target().edges() != b.target().edges()) return false;
  return MapMatcher(a, b, same_target).run();
}

}  // namespace embapprox
