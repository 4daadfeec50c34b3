#include "embapprox/transversal.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <boost/dynamic_bitset.hpp>

#include "embapprox/ribbon.hpp"

namespace embapprox {

namespace {

template <class T>
bool contains(const std::vector<T>& sorted, const T& x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

template <class T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// 1 = A owns the port, 2 = B owns it, 0 = neither.
int owner(const Image& a, const Image& b, const EdgeEnd& port) {
  const bool a_full = contains(a.edges, port.edge);
  const bool b_full = contains(b.edges, port.edge);
  if (a_full) return 1;
  if (b_full) return 2;
  const bool a_stub = contains(a.stubs, port);
  const bool b_stub = contains(b.stubs, port);
  if (a_stub && !b_stub) return 1;
  if (b_stub && !a_stub) return 2;
  return 0;
}

}  // namespace

Image image_of(const Subgraph& s) { return Image{s.vertices, s.edges, {}}; }

Image image_of(const SimplicialMap& phi, const WalkArc& arc) {
  Image img;
  for (VertexId x : arc.vertices) img.vertices.push_back(phi.image(x));
  for (EdgeId e : arc.edges) {
    if (auto a = phi.edge_image(e)) img.edges.push_back(*a);
  }
  if (arc.head_stub && !arc.vertices.empty()) {
    if (auto a = phi.edge_image(*arc.head_stub)) img.stubs.push_back({phi.image(arc.vertices.front()), *a});
  }
  if (arc.tail_stub && !arc.vertices.empty()) {
    if (auto a = phi.edge_image(*arc.tail_stub)) img.stubs.push_back({phi.image(arc.vertices.back()), *a});
  }
  sort_unique(img.vertices);
  sort_unique(img.edges);
  sort_unique(img.stubs);
  img.stubs.erase(std::remove_if(img.stubs.begin(), img.stubs.end(),
                                 [&](const EdgeEnd& s) { return contains(img.edges, s.edge); }),
                  img.stubs.end());
  return img;
}

std::optional<CrossingDetail> find_crossing(const PlaneGraph& g, const Image& a, const Image& b) {
  std::vector<VertexId> common;
  std::set_intersection(a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(),
                        std::back_inserter(common));
  if (common.empty()) return std::nullopt;
  std::vector<EdgeId> shared;
  std::set_intersection(a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end(),
                        std::back_inserter(shared));

  std::vector<std::size_t> parent(common.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto idx = [&](VertexId v) {
    return static_cast<std::size_t>(std::lower_bound(common.begin(), common.end(), v) - common.begin());
  };
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (EdgeId e : shared) {
    const std::size_t p = find(idx(g.edge(e).u));
    const std::size_t q = find(idx(g.edge(e).v));
    if (p != q) parent[std::max(p, q)] = std::min(p, q);
  }
  std::map<std::size_t, Subgraph> parts;
  for (std::size_t i = 0; i < common.size(); ++i) parts[find(i)].vertices.push_back(common[i]);
  for (EdgeId e : shared) parts[find(idx(g.edge(e).u))].edges.push_back(e);

  for (auto& [root, sigma] : parts) {
    const auto circles = boundary_walks(g, sigma);
    std::size_t both = 0;
    std::vector<EdgeEnd> annulus_a;
    std::vector<EdgeEnd> annulus_b;
    for (const auto& c : circles) {
      std::vector<int> labels;
      std::vector<EdgeEnd> pa;
      std::vector<EdgeEnd> pb;
      for (const auto& p : c.ports) {
        const int o = owner(a, b, p.end);
        labels.push_back(o);
        if (o == 1) pa.push_back(p.end);
        if (o == 2) pb.push_back(p.end);
      }
      if (labels_interleave(labels)) return CrossingDetail{sigma, pa, pb, false};
      if (!pa.empty() && !pb.empty()) {
        ++both;
        annulus_a.insert(annulus_a.end(), pa.begin(), pa.end());
        annulus_b.insert(annulus_b.end(), pb.begin(), pb.end());
      }
    }
    if (sigma.edges.size() >= sigma.vertices.size() && both >= 2) {
      return CrossingDetail{sigma, annulus_a, annulus_b, true};
    }
  }
  return std::nullopt;
}

bool images_cross(const PlaneGraph& g, const Image& a, const Image& b) {
  return find_crossing(g, a, b).has_value();
}

bool images_cross(const PlaneGraph& g, const Subgraph& a, const Subgraph& b) {
  return images_cross(g, image_of(a), image_of(b));
}

std::vector<WalkArc> enumerate_arcs(const SimplicialMap& phi) {
  const auto& k = phi.domain();
  const std::size_t n = k.vertex_count();
  std::vector<WalkArc> out;
  std::vector<bool> on_path(n, false);
  std::vector<bool> image_used(phi.target().vertex_count(), false);
  WalkArc cur;

  auto stub_options = [&](VertexId end) {
    std::vector<std::optional<EdgeId>> opts{std::nullopt};
    for (EdgeId f : k.incident(end)) {
      if (std::find(cur.edges.begin(), cur.edges.end(), f) != cur.edges.end()) continue;
      const auto img = phi.edge_image(f);
      if (!img) continue;
      bool dup = false;
      for (EdgeId e : cur.edges) dup = dup || phi.edge_image(e) == img;
      for (const auto& o : opts) dup = dup || (o && phi.edge_image(*o) == img);
      if (!dup) opts.push_back(f);
    }
    return opts;
  };

  auto emit = [&]() {
    if (cur.vertices.size() == 1) {
      const auto opts = stub_options(cur.vertices[0]);
      for (std::size_t i = 0; i < opts.size(); ++i) {
        for (std::size_t j = i == 0 ? 0 : i + 1; j < opts.size(); ++j) {
          if (i == 0 && j == 0) {
            out.push_back(cur);
            continue;
          }
          WalkArc w = cur;
          w.head_stub = i == 0 ? opts[j] : opts[i];
          if (i != 0) w.tail_stub = opts[j];
          out.push_back(std::move(w));
        }
      }
      return;
    }
    if (cur.vertices.front() > cur.vertices.back()) return;
    const auto heads = stub_options(cur.vertices.front());
    const auto tails = stub_options(cur.vertices.back());
    for (const auto& h : heads) {
      for (const auto& t : tails) {
        WalkArc w = cur;
        w.head_stub = h;
        w.tail_stub = t;
        out.push_back(std::move(w));
      }
    }
  };

  auto extend = [&](auto&& self, VertexId x) -> void {
    emit();
    for (EdgeId e : k.incident(x)) {
      const VertexId y = k.edge(e).other(x);
      if (y == x || on_path[y] || image_used[phi.image(y)]) continue;
      on_path[y] = true;
      image_used[phi.image(y)] = true;
      cur.vertices.push_back(y);
      cur.edges.push_back(e);
      self(self, y);
      cur.vertices.pop_back();
      cur.edges.pop_back();
      on_path[y] = false;
      image_used[phi.image(y)] = false;
    }
  };

  for (VertexId s = 0; s < n; ++s) {
    cur = WalkArc{};
    cur.vertices.push_back(s);
    on_path[s] = true;
    image_used[phi.image(s)] = true;
    extend(extend, s);
    on_path[s] = false;
    image_used[phi.image(s)] = false;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<CrossingWitness> has_transversal_self_intersection(const SimplicialMap& phi) {
  if (!phi.nondegenerate()) throw PreconditionError("transversal search needs a nondegenerate map");
  const auto arcs = enumerate_arcs(phi);
  const auto& g = phi.target();
  const std::size_t n = phi.domain().vertex_count();

  std::map<Image, std::size_t> image_index;
  std::vector<Image> images;
  std::vector<std::vector<std::size_t>> members;
  std::vector<boost::dynamic_bitset<>> vsets;
  std::vector<boost::dynamic_bitset<>> gsets;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    Image img = image_of(phi, arcs[i]);
    auto [it, fresh] = image_index.emplace(img, images.size());
    if (fresh) {
      boost::dynamic_bitset<> gs(g.vertex_count());
      for (VertexId v : img.vertices) gs.set(v);
      gsets.push_back(std::move(gs));
      images.push_back(std::move(img));
      members.emplace_back();
    }
    members[it->second].push_back(i);
    boost::dynamic_bitset<> vs(n);
    for (VertexId x : arcs[i].vertices) vs.set(x);
    vsets.push_back(std::move(vs));
  }

  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t a = 0; a < images.size(); ++a) {
    for (std::size_t b = a + 1; b < images.size(); ++b) {
      if (!gsets[a].intersects(gsets[b])) continue;
      std::optional<std::pair<std::size_t, std::size_t>> pair;
      for (std::size_t i : members[a]) {
        for (std::size_t j : members[b]) {
          if (vsets[i].intersects(vsets[j])) continue;
          const std::pair<std::size_t, std::size_t> cand{std::min(i, j), std::max(i, j)};
          if (!pair || cand < *pair) pair = cand;
        }
      }
      if (!pair || (best && *best < *pair)) continue;
      if (!find_crossing(g, images[a], images[b])) continue;
      best = pair;
    }
  }
  if (!best) return std::nullopt;
  const auto& p = arcs[best->first];
  const auto& q = arcs[best->second];
  auto detail = find_crossing(g, image_of(phi, p), image_of(phi, q));
  return CrossingWitness{p, q, detail->sigma, detail->a_ports, detail->b_ports, detail->annulus};
}

bool contains_simple_triod(const SimplicialMap& phi) {
  const auto& k = phi.domain();
  for (VertexId x = 0; x < k.vertex_count(); ++x) {
    std::vector<EdgeId> imgs;
    for (EdgeId e : k.incident(x)) {
      if (auto a = phi.edge_image(e)) imgs.push_back(*a);
    }
    sort_unique(imgs);
    if (imgs.size() >= 3) return true;
  }
  return false;
}

bool identifies_triods(const SimplicialMap& phi) {
  const auto& k = phi.domain();
  struct Triod {
    std::vector<EdgeId> image;
    boost::dynamic_bitset<> vertices;
  };
  std::vector<Triod> triods;
  for (VertexId x = 0; x < k.vertex_count(); ++x) {
    const auto& inc = k.incident(x);
    for (std::size_t i = 0; i < inc.size(); ++i) {
      for (std::size_t j = i + 1; j < inc.size(); ++j) {
        for (std::size_t l = j + 1; l < inc.size(); ++l) {
          std::vector<EdgeId> img;
          for (EdgeId e : {inc[i], inc[j], inc[l]}) {
            if (auto a = phi.edge_image(e)) img.push_back(*a);
          }
          sort_unique(img);
          if (img.size() != 3) continue;
          Triod t{img, boost::dynamic_bitset<>(k.vertex_count())};
          t.vertices.set(x);
          for (EdgeId e : {inc[i], inc[j], inc[l]}) t.vertices.set(k.edge(e).other(x));
          triods.push_back(std::move(t));
        }
      }
    }
  }
  for (std::size_t i = 0; i < triods.size(); ++i) {
    for (std::size_t j = i + 1; j < triods.size(); ++j) {
      if (triods[i].image == triods[j].image && !triods[i].vertices.intersects(triods[j].vertices)) return true;
    }
  }
  return false;
}

}  // namespace embapprox
