#include "embapprox/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>

#include "embapprox/catalog.hpp"
#include "embapprox/decide.hpp"
#include "embapprox/derivative.hpp"
#include "embapprox/oracle.hpp"
#include "embapprox/vankampen.hpp"

namespace embapprox {

namespace {

bool adjacent_or_equal(const PlaneGraph& g, VertexId a, VertexId b) { return a == b || g.find_edge(a, b).has_value(); }

std::string make_id(const char* kind, const std::string& target, std::size_t k, std::size_t index) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s/%s/k%02zu/%06zu", kind, target.c_str(), k, index);
  return buf;
}

template <class Emit>
void walks(const PlaneGraph& g, std::size_t k, std::vector<VertexId>& seq, Emit& emit) {
  if (seq.size() == k) {
    emit(seq);
    return;
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!seq.empty() && !adjacent_or_equal(g, seq.back(), v)) continue;
    seq.push_back(v);
    walks(g, k, seq, emit);
    seq.pop_back();
  }
}

const char* verdict(bool b) { return b ? "approximable" : "not-approximable"; }

}  // namespace

std::vector<CorpusInstance> enumerate_path_maps(const PlaneGraph& g, const std::string& target, std::size_t k) {
  std::vector<CorpusInstance> out;
  std::vector<VertexId> seq;
  auto emit = [&](const std::vector<VertexId>& s) {
    out.push_back({make_id("path", target, k, out.size()), path_map(g, s)});
  };
  walks(g, k, seq, emit);
  return out;
}

std::vector<CorpusInstance> enumerate_cycle_maps(const PlaneGraph& g, const std::string& target, std::size_t k) {
  std::vector<CorpusInstance> out;
  std::vector<VertexId> seq;
  auto emit = [&](const std::vector<VertexId>& s) {
    if (!adjacent_or_equal(g, s.back(), s.front())) return;
    out.push_back({make_id("cycle", target, k, out.size()), cycle_map(g, s)});
  };
  walks(g, k, seq, emit);
  return out;
}

std::vector<CorpusInstance> random_walk_maps(const PlaneGraph& g, const std::string& target, std::size_t k,
                                             std::size_t count, bool closed, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusInstance> out;
  const char* kind = closed ? "cycle" : "path";
  while (out.size() < count) {
    std::vector<VertexId> seq{std::uniform_int_distribution<VertexId>(0, g.vertex_count() - 1)(rng)};
    while (seq.size() < k) {
      std::vector<VertexId> next{seq.back()};
      for (EdgeId e : g.rotation(seq.back())) next.push_back(g.edge(e).other(seq.back()));
      seq.push_back(next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)]);
    }
    if (closed && !adjacent_or_equal(g, seq.back(), seq.front())) continue;
    out.push_back({make_id(kind, target, k, out.size()), closed ? cycle_map(g, seq) : path_map(g, seq)});
  }
  return out;
}

std::vector<CorpusInstance> random_deg3_maps(const PlaneGraph& target, const std::string& name, std::size_t count,
                                             std::size_t max_vertices, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusInstance> out;
  while (out.size() < count) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, max_vertices)(rng);
    std::vector<VertexId> image(n);
    for (auto& v : image) v = std::uniform_int_distribution<VertexId>(0, target.vertex_count() - 1)(rng);
    std::vector<Edge> candidates;
    for (VertexId x = 0; x < n; ++x) {
      for (VertexId y = x + 1; y < n; ++y) {
        if (image[x] != image[y] && target.find_edge(image[x], image[y])) candidates.push_back({x, y});
      }
    }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    const double keep = std::uniform_real_distribution<double>(0.5, 1.0)(rng);
    std::vector<int> degree(n, 0);
    std::vector<Edge> edges;
    for (const auto& e : candidates) {
      if (degree[e.u] >= 3 || degree[e.v] >= 3) continue;
      if (std::uniform_real_distribution<double>(0, 1)(rng) > keep) continue;
      ++degree[e.u];
      ++degree[e.v];
      edges.push_back(e);
    }
    if (edges.empty()) continue;
    DomainGraph k = DomainGraph::inferred(n, std::move(edges));
    out.push_back({make_id("deg3", name, n, out.size()), SimplicialMap(std::move(k), target, std::move(image))});
  }
  return out;
}

std::optional<bool> lemma_terminal_holds(const SimplicialMap& phi) {
  const std::size_t k = phi.domain().vertex_count();
  const auto records = iterate_derivative(phi, k, {true, true, false});
  const auto& last = records.back();
  if (last.status == StepStatus::crossing || last.status == StepStatus::chord_conflict) return std::nullopt;
  const auto m = map_at_step(records, k);
  if (!m) return std::nullopt;
  if (m->domain().edge_count() == 0) return true;
  const auto rep = winding_report(*m);
  return rep.is_standard_winding() &&
         std::all_of(rep.components.begin(), rep.components.end(), [](const auto& c) { return c.degree != 0; });
}

CorpusRow run_instance(const CorpusInstance& inst, CorpusMode mode) {
  CorpusRow row;
  row.id = inst.id;
  row.map = compact(inst.map);
  row.vk = "-";
  row.lemma = "-";
  const auto oracle = is_approximable_oracle(inst.map);
  row.oracle = oracle.approximable ? verdict(*oracle.approximable) : "inconclusive";
  Verdict v;
  switch (mode) {
    case CorpusMode::path:
      v = decide_path(inst.map);
      row.vk = verdict(decide_path_via_vk(inst.map).approximable);
      break;
    case CorpusMode::cycle: {
      v = decide_cycle(inst.map);
      const auto lemma = lemma_terminal_holds(inst.map);
      row.lemma = lemma ? (*lemma ? "ok" : "violated") : "-";
      break;
    }
    case CorpusMode::deg3:
      v = decide_deg3_to_circle(inst.map);
      break;
  }
  row.decide = verdict(v.approximable);
  row.needs_review = v.needs_review;
  row.agree = row.decide == row.oracle && (row.vk == "-" || row.vk == row.decide) && row.lemma != "violated";
  return row;
}

std::vector<CorpusRow> run_corpus(const std::vector<CorpusInstance>& instances, CorpusMode mode, unsigned jobs,
                                  const std::function<void(std::size_t)>& progress) {
  std::vector<CorpusRow> rows(instances.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  auto work = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      rows[i] = run_instance(instances[i], mode);
      const std::size_t d = ++done;
      if (progress) progress(d);
    }
  };
  jobs = std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

std::string tsv_header() { return "id\tmap\tdecide\toracle\tvk\tlemma\treview\tagree"; }

std::string to_tsv(const CorpusRow& row) {
  std::ostringstream out;
  out << row.id << '\t' << row.map << '\t' << row.decide << '\t' << row.oracle << '\t' << row.vk << '\t'
      << row.lemma << '\t' << (row.needs_review ? "review" : "-") << '\t' << (row.agree ? "yes" : "NO");
  return out.str();
}

std::string compact(const SimplicialMap& phi) {
  std::ostringstream out;
  const auto& k = phi.domain();
  for (EdgeId e = 0; e < k.edge_count(); ++e) out << (e ? "," : "") << k.edge(e).u << "-" << k.edge(e).v;
  out << ";";
  for (VertexId x = 0; x < k.vertex_count(); ++x) out << (x ? "," : "") << phi.image(x);
  return out.str();
}

}  // namespace embapprox
