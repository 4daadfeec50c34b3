#include "embapprox/vankampen.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <boost/dynamic_bitset.hpp>

#include "embapprox/normalize.hpp"

namespace embapprox {

namespace {

constexpr std::size_t no_cell = static_cast<std::size_t>(-1);
constexpr int max_rejitter = 64;

bool images_disjoint(const PlaneGraph& g, std::optional<EdgeId> a, std::optional<EdgeId> b) {
  const Edge& x = g.edge(*a);
  const Edge& y = g.edge(*b);
  return !x.has(y.u) && !x.has(y.v);
}

template <class Keep>
DeletedProductComplex build_complex(const SimplicialMap& phi, Keep keep) {
  if (!phi.nondegenerate()) throw PreconditionError("deleted product needs a nondegenerate map");
  const auto& k = phi.domain();
  const auto& g = phi.target();
  DeletedProductComplex c;
  for (EdgeId s = 0; s < k.edge_count(); ++s) {
    for (EdgeId t = s + 1; t < k.edge_count(); ++t) {
      const Edge& es = k.edge(s);
      const Edge& et = k.edge(t);
      if (es.has(et.u) || es.has(et.v) || !keep(s, t)) continue;
      c.cells2.push_back({s, t, images_disjoint(g, phi.edge_image(s), phi.edge_image(t))});
    }
  }
  std::vector<Cell1> ones;
  for (const auto& cell : c.cells2) {
    const Edge& es = k.edge(cell.s);
    const Edge& et = k.edge(cell.t);
    ones.push_back({es.u, cell.t});
    ones.push_back({es.v, cell.t});
    ones.push_back({et.u, cell.s});
    ones.push_back({et.v, cell.s});
  }
  std::sort(ones.begin(), ones.end());
  ones.erase(std::unique(ones.begin(), ones.end()), ones.end());
  for (auto& one : ones) {
    const Edge& img = g.edge(*phi.edge_image(one.t));
    one.red = !img.has(phi.image(one.x));
  }
  c.cells1 = std::move(ones);
  auto index1 = [&](VertexId x, EdgeId t) {
    return static_cast<std::size_t>(std::lower_bound(c.cells1.begin(), c.cells1.end(), Cell1{x, t, false}) -
                                    c.cells1.begin());
  };
  for (const auto& cell : c.cells2) {
    const Edge& es = k.edge(cell.s);
    const Edge& et = k.edge(cell.t);
    c.boundary.push_back({index1(es.u, cell.t), index1(es.v, cell.t), index1(et.u, cell.s), index1(et.v, cell.s)});
  }
  return c;
}

using Int = __int128;

struct HPoint {
  Int x, y, w;
};

int orientation(const HPoint& a, const HPoint& b, const HPoint& c) {
  const Int det = a.x * (b.y * c.w - c.y * b.w) - a.y * (b.x * c.w - c.x * b.w) + a.w * (b.x * c.y - c.x * b.y);
  return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

struct Branch {
  EdgeId strand;
  VertexId centre;  // domain vertex
  std::size_t slot;
};

}  // namespace

std::optional<std::size_t> DeletedProductComplex::find2(EdgeId s, EdgeId t) const {
  if (s > t) std::swap(s, t);
  auto it = std::lower_bound(cells2.begin(), cells2.end(), std::pair(s, t),
                             [](const Cell2& c, const std::pair<EdgeId, EdgeId>& k) { return std::pair(c.s, c.t) < k; });
  if (it == cells2.end() || it->s != s || it->t != t) return std::nullopt;
  return static_cast<std::size_t>(it - cells2.begin());
}

DeletedProductComplex build_deleted_product(const SimplicialMap& phi) {
  return build_complex(phi, [](EdgeId, EdgeId) { return true; });
}

DeletedProductComplex build_pair_complex(const SimplicialMap& joined, std::size_t split) {
  return build_complex(joined, [split](EdgeId s, EdgeId t) { return s < split && t >= split; });
}

DrawingModel canonical_drawing(const SimplicialMap& phi) {
  DrawingModel m;
  m.lanes.resize(phi.target().edge_count());
  for (EdgeId e = 0; e < phi.domain().edge_count(); ++e) {
    if (auto a = phi.edge_image(e)) m.lanes[*a].push_back(e);
  }
  return m;
}

DrawingModel random_drawing(const SimplicialMap& phi, std::mt19937_64& rng) {
  DrawingModel m = canonical_drawing(phi);
  for (auto& l : m.lanes) std::shuffle(l.begin(), l.end(), rng);
  m.seed = rng();
  return m;
}

std::vector<std::uint8_t> intersection_cochain(const SimplicialMap& phi, const DeletedProductComplex& complex,
                                               const DrawingModel& drawing) {
  const auto& k = phi.domain();
  const auto& g = phi.target();
  std::vector<std::uint8_t> value(complex.cells2.size(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::vector<Branch> branches;
    for (EdgeId a : g.rotation(v)) {
      const auto& lanes = drawing.lanes.at(a);
      const bool low = g.edge(a).u == v;
      for (std::size_t p = 0; p < lanes.size(); ++p) {
        const EdgeId s = lanes[low ? p : lanes.size() - 1 - p];
        const Edge& es = k.edge(s);
        branches.push_back({s, phi.image(es.u) == v ? es.u : es.v, branches.size()});
      }
    }
    if (branches.size() < 2) continue;
    const std::size_t hull = std::max<std::size_t>(branches.size(), 3);
    std::vector<HPoint> port(hull);
    for (std::size_t i = 0; i < hull; ++i) port[i] = {Int(i), Int(i * i), 1};
    std::vector<VertexId> centres;
    for (const auto& b : branches) centres.push_back(b.centre);
    std::sort(centres.begin(), centres.end());
    centres.erase(std::unique(centres.begin(), centres.end()), centres.end());

    bool placed = false;
    for (int attempt = 0; attempt < max_rejitter && !placed; ++attempt) {
      std::mt19937_64 rng(drawing.seed * 0x9E3779B97F4A7C15ull + v * 1000003ull + static_cast<unsigned>(attempt));
      std::uniform_int_distribution<int> weight(1, 997);
      std::map<VertexId, HPoint> centre;
      for (VertexId x : centres) {
        HPoint c{0, 0, 0};
        for (std::size_t i = 0; i < hull; ++i) {
          const int w = weight(rng);
          c.x += w * port[i].x;
          c.y += w * port[i].y;
          c.w += w;
        }
        centre[x] = c;
      }
      std::vector<std::pair<std::size_t, std::size_t>> crossings;
      bool degenerate = false;
      for (std::size_t i = 0; i < branches.size() && !degenerate; ++i) {
        for (std::size_t j = i + 1; j < branches.size(); ++j) {
          const auto& b1 = branches[i];
          const auto& b2 = branches[j];
          if (b1.centre == b2.centre) continue;
          const HPoint& c1 = centre[b1.centre];
          const HPoint& p1 = port[b1.slot];
          const HPoint& c2 = centre[b2.centre];
          const HPoint& p2 = port[b2.slot];
          const int o1 = orientation(c1, p1, c2);
          const int o2 = orientation(c1, p1, p2);
          const int o3 = orientation(c2, p2, c1);
          const int o4 = orientation(c2, p2, p1);
          if (o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0) {
            degenerate = true;
            break;
          }
          if (o1 != o2 && o3 != o4) crossings.emplace_back(i, j);
        }
      }
      if (degenerate) continue;
      placed = true;
      for (const auto& [i, j] : crossings) {
        if (auto cell = complex.find2(branches[i].strand, branches[j].strand)) value[*cell] ^= 1;
      }
    }
    if (!placed) throw InvariantError("drawing-general-position", "no generic centre placement found");
  }
  for (std::size_t i = 0; i < complex.cells2.size(); ++i) {
    if (complex.cells2[i].red && value[i]) {
      throw InvariantError("red-soundness", "odd crossing count on a cell with disjoint images");
    }
  }
  return value;
}

Gf2Result solve_coboundary(const DeletedProductComplex& complex, const std::vector<std::uint8_t>& v) {
  std::vector<std::size_t> var(complex.cells1.size(), no_cell);
  std::size_t nvars = 0;
  for (std::size_t i = 0; i < complex.cells1.size(); ++i) {
    if (!complex.cells1[i].red) var[i] = nvars++;
  }
  std::vector<std::size_t> eq_cell;
  for (std::size_t i = 0; i < complex.cells2.size(); ++i) {
    if (!complex.cells2[i].red) eq_cell.push_back(i);
  }
  const std::size_t neq = eq_cell.size();
  std::vector<boost::dynamic_bitset<>> rows(neq, boost::dynamic_bitset<>(nvars + 1));
  std::vector<boost::dynamic_bitset<>> combo(neq, boost::dynamic_bitset<>(neq));
  for (std::size_t r = 0; r < neq; ++r) {
    for (std::size_t one : complex.boundary[eq_cell[r]]) {
      if (var[one] != no_cell) rows[r].flip(var[one]);
    }
    if (v[eq_cell[r]]) rows[r].set(nvars);
    combo[r].set(r);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < nvars && rank < neq; ++col) {
    std::size_t p = rank;
    while (p < neq && !rows[p].test(col)) ++p;
    if (p == neq) continue;
    std::swap(rows[p], rows[rank]);
    std::swap(combo[p], combo[rank]);
    for (std::size_t r = 0; r < neq; ++r) {
      if (r != rank && rows[r].test(col)) {
        rows[r] ^= rows[rank];
        combo[r] ^= combo[rank];
      }
    }
    pivot_col.push_back(col);
    ++rank;
  }
  Gf2Result res;
  for (std::size_t r = rank; r < neq; ++r) {
    if (rows[r].test(nvars)) {
      res.solvable = false;
      res.certificate.assign(complex.cells2.size(), 0);
      for (std::size_t q = 0; q < neq; ++q) {
        if (combo[r].test(q)) res.certificate[eq_cell[q]] = 1;
      }
      return res;
    }
  }
  res.solvable = true;
  res.solution.assign(complex.cells1.size(), 0);
  std::vector<std::size_t> cell_of_var(nvars);
  for (std::size_t i = 0; i < complex.cells1.size(); ++i) {
    if (var[i] != no_cell) cell_of_var[var[i]] = i;
  }
  for (std::size_t r = 0; r < rank; ++r) {
    if (rows[r].test(nvars)) res.solution[cell_of_var[pivot_col[r]]] = 1;
  }
  return res;
}

VkReport obstruction_report(const SimplicialMap& phi, std::optional<std::uint64_t> drawing_seed) {
  VkReport rep;
  rep.map = normalize_nondegenerate(phi);
  rep.complex = build_deleted_product(rep.map);
  if (drawing_seed) {
    std::mt19937_64 rng(*drawing_seed);
    rep.drawing = random_drawing(rep.map, rng);
  } else {
    rep.drawing = canonical_drawing(rep.map);
  }
  rep.cochain = intersection_cochain(rep.map, rep.complex, rep.drawing);
  rep.gf2 = solve_coboundary(rep.complex, rep.cochain);
  return rep;
}

bool obstruction_vanishes(const SimplicialMap& phi, std::optional<std::uint64_t> drawing_seed) {
  return obstruction_report(phi, drawing_seed).vanishes();
}

std::vector<std::uint8_t> CutReport::vector() const {
  std::vector<std::uint8_t> out;
  for (const auto& c : components) out.push_back(c.sum);
  return out;
}

CutReport path_cut_components(const SimplicialMap& phi, std::optional<std::uint64_t> drawing_seed) {
  if (phi.domain().shape() != Shape::path) throw PreconditionError("path_cut_components: domain is not a path");
  CutReport rep;
  rep.base = obstruction_report(phi, drawing_seed);
  const auto& c = rep.base.complex;
  std::vector<std::vector<std::size_t>> adjacent(c.cells1.size());
  for (std::size_t i = 0; i < c.cells2.size(); ++i) {
    for (std::size_t one : c.boundary[i]) adjacent[one].push_back(i);
  }
  std::vector<std::size_t> parent(c.cells2.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t one = 0; one < c.cells1.size(); ++one) {
    if (c.cells1[one].red) continue;
    for (std::size_t j = 1; j < adjacent[one].size(); ++j) {
      const std::size_t a = find(adjacent[one][0]);
      const std::size_t b = find(adjacent[one][j]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<std::size_t, CutComponent> groups;
  std::map<std::size_t, bool> qualifies;
  for (std::size_t i = 0; i < c.cells2.size(); ++i) {
    if (c.cells2[i].red) continue;
    const std::size_t r = find(i);
    groups[r].cells.push_back(i);
    groups[r].sum ^= rep.base.cochain[i];
    qualifies.emplace(r, true);
    for (std::size_t one : c.boundary[i]) {
      if (!c.cells1[one].red && adjacent[one].size() == 1) qualifies[r] = false;
    }
  }
  for (auto& [r, comp] : groups) {
    if (qualifies[r]) rep.components.push_back(std::move(comp));
  }
  return rep;
}

bool PairReport::all_even() const {
  return std::all_of(cochain.begin(), cochain.end(), [](std::uint8_t x) { return x == 0; });
}

std::optional<DrawingModel> find_even_drawing(const SimplicialMap& phi, const DeletedProductComplex& complex,
                                              std::size_t max_drawings, std::uint64_t seeds) {
  DrawingModel d = canonical_drawing(phi);
  std::vector<EdgeId> multi;
  for (EdgeId a = 0; a < d.lanes.size(); ++a) {
    if (d.lanes[a].size() > 1) multi.push_back(a);
  }
  std::size_t tried = 0;
  while (true) {
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
      if (tried++ >= max_drawings) return std::nullopt;
      d.seed = seed;
      const auto v = intersection_cochain(phi, complex, d);
      if (std::all_of(v.begin(), v.end(), [](std::uint8_t x) { return x == 0; })) return d;
    }
    std::size_t i = 0;
    for (; i < multi.size(); ++i) {
      auto& l = d.lanes[multi[i]];
      if (std::next_permutation(l.begin(), l.end())) break;
    }
    if (i == multi.size()) return std::nullopt;
  }
}

SimplicialMap join_maps(const SimplicialMap& phi, const SimplicialMap& psi) {
  const auto& g = phi.target();
  const auto& h = psi.target();
  bool same = g.vertex_count() == h.vertex_count() && g.edges() == h.edges();
  for (VertexId v = 0; same && v < g.vertex_count(); ++v) same = g.rotation(v) == h.rotation(v);
  if (!same) throw PreconditionError("pair_obstruction: the maps have different targets");
  const auto offset = static_cast<VertexId>(phi.domain().vertex_count());
  std::vector<Edge> edges = phi.domain().edges();
  for (const auto& e : psi.domain().edges()) edges.push_back({e.u + offset, e.v + offset});
  std::vector<VertexId> image = phi.vertex_image();
  image.insert(image.end(), psi.vertex_image().begin(), psi.vertex_image().end());
  DomainGraph k(image.size(), std::move(edges), Shape::general);
  return SimplicialMap(std::move(k), g, std::move(image));
}

PairReport pair_obstruction(const SimplicialMap& phi, const SimplicialMap& psi,
                            std::optional<std::uint64_t> drawing_seed) {
  PairReport rep;
  const auto a = normalize_nondegenerate(phi);
  const auto b = normalize_nondegenerate(psi);
  rep.joined = join_maps(a, b);
  rep.split = a.domain().edge_count();
  rep.complex = build_pair_complex(rep.joined, rep.split);
  if (drawing_seed) {
    std::mt19937_64 rng(*drawing_seed);
    rep.drawing = random_drawing(rep.joined, rng);
  } else {
    rep.drawing = find_even_drawing(rep.joined, rep.complex).value_or(canonical_drawing(rep.joined));
  }
  rep.cochain = intersection_cochain(rep.joined, rep.complex, rep.drawing);
  rep.gf2 = solve_coboundary(rep.complex, rep.cochain);
  return rep;
}

}  // namespace embapprox
