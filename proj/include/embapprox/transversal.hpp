#pragma once

#include <optional>
#include <vector>

#include "embapprox/graph.hpp"

namespace embapprox {

/// Image of an arc in G: whole vertices and edges plus partial edges
/// (`stubs`) hanging off a vertex. All three lists are sorted.
struct Image {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  std::vector<EdgeEnd> stubs;

  friend auto operator<=>(const Image&, const Image&) = default;
};

Image image_of(const Subgraph& s);
Image image_of(const SimplicialMap& phi, const WalkArc& arc);

struct CrossingDetail {
  Subgraph sigma;
  std::vector<EdgeEnd> a_ports;
  std::vector<EdgeEnd> b_ports;
  bool annulus = false;
};

/// Looks for a component of A and B's common part where the two images
/// cross: their private ports interleave on one boundary circle, or the
/// component carries a cycle and two boundary circles each see ports of both.
std::optional<CrossingDetail> find_crossing(const PlaneGraph& g, const Image& a, const Image& b);
bool images_cross(const PlaneGraph& g, const Image& a, const Image& b);
bool images_cross(const PlaneGraph& g, const Subgraph& a, const Subgraph& b);

struct CrossingWitness {
  WalkArc p;
  WalkArc q;
  Subgraph sigma;
  std::vector<EdgeEnd> p_ports;
  std::vector<EdgeEnd> q_ports;
  bool annulus = false;
};

/// Arcs searched for witnesses: vertex-simple walks of K on which phi is
/// injective, optionally extended by a partial edge at either end. A walk
/// and its reverse are listed once.
std::vector<WalkArc> enumerate_arcs(const SimplicialMap& phi);

/// First pair of vertex-disjoint arcs (in enumerate_arcs order) whose images
/// cross. Requires a nondegenerate map.
std::optional<CrossingWitness> has_transversal_self_intersection(const SimplicialMap& phi);

/// A vertex of K with three incident edges of pairwise distinct images.
bool contains_simple_triod(const SimplicialMap& phi);

/// Two vertex-disjoint simple triods of K with the same image.
bool identifies_triods(const SimplicialMap& phi);

}  // namespace embapprox
