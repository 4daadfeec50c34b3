#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "embapprox/graph.hpp"

namespace embapprox {

struct CorpusInstance {
  std::string id;
  SimplicialMap map;
};

/// Every vertex sequence of length k whose consecutive entries are equal or
/// adjacent in g, read as a path map.
std::vector<CorpusInstance> enumerate_path_maps(const PlaneGraph& g, const std::string& target, std::size_t k);
/// As above with the last entry also equal or adjacent to the first (k >= 3).
std::vector<CorpusInstance> enumerate_cycle_maps(const PlaneGraph& g, const std::string& target, std::size_t k);

/// `count` random walks of length k (each step stays or moves to a
/// neighbour), closed up into cycles when `closed` is set.
std::vector<CorpusInstance> random_walk_maps(const PlaneGraph& g, const std::string& target, std::size_t k,
                                             std::size_t count, bool closed, std::uint64_t seed);

/// Random nondegenerate maps of simple graphs with maximum degree 3 and at
/// most `max_vertices` vertices into the cycle `target`.
std::vector<CorpusInstance> random_deg3_maps(const PlaneGraph& target, const std::string& name, std::size_t count,
                                             std::size_t max_vertices, std::uint64_t seed);

enum class CorpusMode { path, cycle, deg3 };

struct CorpusRow {
  std::string id;
  std::string map;
  std::string decide;
  std::string oracle;
  std::string vk;      // paths only, "-" elsewhere
  std::string lemma;   // cycles only: "ok", "violated" or "-"
  bool needs_review = false;
  bool agree = false;
};

/// Cycle maps only: if the iteration reaches step k without a crossing or an
/// undefined derivative, step k must have an empty domain or be a standard
/// winding. nullopt when the iteration did not complete.
std::optional<bool> lemma_terminal_holds(const SimplicialMap& phi);

CorpusRow run_instance(const CorpusInstance& inst, CorpusMode mode);

/// Runs every instance on `jobs` worker threads; rows come back in input order.
std::vector<CorpusRow> run_corpus(const std::vector<CorpusInstance>& instances, CorpusMode mode, unsigned jobs,
                                  const std::function<void(std::size_t)>& progress = {});

std::string tsv_header();
std::string to_tsv(const CorpusRow& row);

/// Compact one-line form of a map: domain edges and vertex images.
std::string compact(const SimplicialMap& phi);

}  // namespace embapprox
