#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "embapprox/graph.hpp"

namespace embapprox {

/// 2-cell {s, t}: two disjoint domain edges (s < t).
struct Cell2 {
  EdgeId s = 0;
  EdgeId t = 0;
  bool red = false;
};

/// 1-cell {x, t}: a vertex and an edge not containing it.
struct Cell1 {
  VertexId x = 0;
  EdgeId t = 0;
  bool red = false;
  friend auto operator<=>(const Cell1& a, const Cell1& b) {
    return std::pair(a.x, a.t) <=> std::pair(b.x, b.t);
  }
  friend bool operator==(const Cell1& a, const Cell1& b) { return a.x == b.x && a.t == b.t; }
};

/// Unordered deleted product of a graph (or the product part K x L of a
/// disjoint union), with cells painted red when their images are disjoint.
struct DeletedProductComplex {
  std::vector<Cell2> cells2;
  std::vector<Cell1> cells1;
  /// Four 1-cell indices per 2-cell: {x,t}, {y,t}, {s,z}, {s,w} for s = xy, t = zw.
  std::vector<std::array<std::size_t, 4>> boundary;

  std::optional<std::size_t> find2(EdgeId s, EdgeId t) const;
};

DeletedProductComplex build_deleted_product(const SimplicialMap& phi);

/// Cells s x t with s among the first `split` domain edges and t among the
/// rest; used for a pair of maps joined into one map on K + L.
DeletedProductComplex build_pair_complex(const SimplicialMap& joined, std::size_t split);

/// A drawing near the map: lane order of the strands in every strip (lane i
/// at position i of the block at edge(a).u, reversed at edge(a).v), and a
/// seed placing the star centres inside each disc. Ports sit on a convex
/// arc in rotation order; every piece of the drawing has integer
/// homogeneous coordinates, so crossing counts are exact.
struct DrawingModel {
  std::vector<std::vector<EdgeId>> lanes;
  std::uint64_t seed = 0;
};

/// Lanes sorted by edge id, seed 0.
DrawingModel canonical_drawing(const SimplicialMap& phi);
DrawingModel random_drawing(const SimplicialMap& phi, std::mt19937_64& rng);

/// Parity of crossings between every pair of disjoint edges in the drawing;
/// indexed like complex.cells2. Throws InvariantError if a red cell gets an
/// odd value.
std::vector<std::uint8_t> intersection_cochain(const SimplicialMap& phi, const DeletedProductComplex& complex,
                                               const DrawingModel& drawing);

struct Gf2Result {
  bool solvable = false;
  std::vector<std::uint8_t> solution;     // per 1-cell when solvable
  std::vector<std::uint8_t> certificate;  // per 2-cell when not
};

/// Solves delta(w) = v on non-red cells, with w zero on red 1-cells.
Gf2Result solve_coboundary(const DeletedProductComplex& complex, const std::vector<std::uint8_t>& v);

struct VkReport {
  SimplicialMap map;  // normalized map the complex is built on
  DeletedProductComplex complex;
  DrawingModel drawing;
  std::vector<std::uint8_t> cochain;
  Gf2Result gf2;
  bool vanishes() const { return gf2.solvable; }
};

/// The mod 2 van Kampen obstruction of phi (after contracting degenerate
/// edges). Without a seed the canonical drawing is used; otherwise the lanes
/// and centres are drawn from the seed.
VkReport obstruction_report(const SimplicialMap& phi, std::optional<std::uint64_t> drawing_seed = std::nullopt);
bool obstruction_vanishes(const SimplicialMap& phi, std::optional<std::uint64_t> drawing_seed = std::nullopt);

struct CutComponent {
  std::vector<std::size_t> cells;  // indices into cells2
  std::uint8_t sum = 0;
};

struct CutReport {
  VkReport base;
  std::vector<CutComponent> components;  // qualifying components only
  std::vector<std::uint8_t> vector() const;
};

/// For a path: the non-red cells split along red 1-cells; a component
/// qualifies when every 1-cell on its boundary is red.
CutReport path_cut_components(const SimplicialMap& phi, std::optional<std::uint64_t> drawing_seed = std::nullopt);

struct PairReport {
  SimplicialMap joined;
  std::size_t split = 0;  // first edge of the second domain
  DeletedProductComplex complex;
  DrawingModel drawing;
  std::vector<std::uint8_t> cochain;
  Gf2Result gf2;
  bool vanishes() const { return gf2.solvable; }
  bool all_even() const;
};

/// First drawing on which every cell of the complex has even parity. Lane
/// permutations are stepped like an odometer (lowest target edge fastest);
/// each one is tried with centre seeds 0..seeds-1.
std::optional<DrawingModel> find_even_drawing(const SimplicialMap& phi, const DeletedProductComplex& complex,
                                              std::size_t max_drawings = 4096, std::uint64_t seeds = 16);

/// Disjoint union of two maps into the same target.
SimplicialMap join_maps(const SimplicialMap& phi, const SimplicialMap& psi);

/// Without a seed the drawing is the first even one found by
/// find_even_drawing, or the canonical one when there is none.
PairReport pair_obstruction(const SimplicialMap& phi, const SimplicialMap& psi,
                            std::optional<std::uint64_t> drawing_seed = std::nullopt);

}  // namespace embapprox
