#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "embapprox/catalog.hpp"
#include "embapprox/corpus.hpp"
#include "embapprox/decide.hpp"
#include "embapprox/derivative.hpp"
#include "embapprox/normalize.hpp"
#include "embapprox/oracle.hpp"
#include "embapprox/vankampen.hpp"

namespace embapprox::cli {

namespace fs = std::filesystem;

namespace {

std::string reason(const TraceEvent& e) {
  switch (e.kind) {
    case EventKind::forbidden_winding:
      return "forbidden-winding(" + std::to_string(e.degree) + ")";
    default:
      return std::string(to_string(e.kind));
  }
}

std::size_t odd_cells(const std::vector<std::uint8_t>& v) { return std::count(v.begin(), v.end(), 1); }

std::size_t red_cells(const DeletedProductComplex& c) {
  return std::count_if(c.cells2.begin(), c.cells2.end(), [](const Cell2& x) { return x.red; });
}

std::string domain_edge(const SimplicialMap& m, EdgeId e) {
  const Edge& ed = m.domain().edge(e);
  return std::to_string(ed.u) + "-" + std::to_string(ed.v);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ull;
  return h;
}

}  // namespace

int check(const Instance& inst, bool trace, std::ostream& out) {
  const Verdict v = decide(inst.map);
  if (v.approximable) {
    out << "approximable  criterion=" << v.criterion << "\n";
  } else {
    const TraceEvent* d = v.decisive();
    out << "not-approximable  reason=" << (d ? reason(*d) : "none") << " step=" << (d ? d->step : 0)
        << "  criterion=" << v.criterion << "\n";
  }
  if (v.needs_review) out << "review: the oracle decided this instance\n";
  if (trace) {
    for (const auto& e : v.trace) {
      out << "  step " << e.step << "  " << reason(e);
      if (!e.detail.empty()) out << "  " << e.detail;
      out << "\n";
    }
  }
  return v.approximable ? Exit::approximable : Exit::not_approximable;
}

int derive(const Instance& inst, std::optional<std::size_t> steps, const std::string& dot_dir, std::ostream& out) {
  const auto& phi = inst.map;
  if (phi.domain().shape() == Shape::general && !phi.target().is_cycle()) {
    out << "derivative undefined under in-scope constructions (general domain, target not a cycle)\n";
    return Exit::out_of_scope;
  }
  const std::size_t k = steps.value_or(phi.domain().vertex_count());
  const bool general = phi.domain().shape() == Shape::general;
  const auto records = iterate_derivative(phi, k, {!general, true});
  if (!dot_dir.empty()) fs::create_directories(dot_dir);
  for (const auto& rec : records) {
    out << "step " << rec.index << "  vertices=" << rec.map.domain().vertex_count()
        << " edges=" << rec.map.domain().edge_count() << " target-vertices=" << rec.map.target().vertex_count()
        << "  " << to_string(rec.status);
    if (rec.witness) out << "  " << describe(*rec.witness);
    if (rec.conflict) out << "  at target vertex " << rec.conflict->target_vertex;
    out << "\n";
    if (!dot_dir.empty()) {
      std::ofstream f(fs::path(dot_dir) / ("step" + std::to_string(rec.index) + ".dot"));
      f << to_dot(rec.map, "step" + std::to_string(rec.index));
    }
  }
  return Exit::approximable;
}

namespace {

void cell_table(const DeletedProductComplex& c, const std::vector<std::uint8_t>& v,
                const std::function<std::string(EdgeId)>& name, std::ostream& out) {
  for (std::size_t i = 0; i < c.cells2.size(); ++i) {
    out << "cell\t" << name(c.cells2[i].s) << "\t" << name(c.cells2[i].t) << "\t"
        << (c.cells2[i].red ? "red" : "open") << "\t" << int(v[i]) << "\n";
  }
}

void witness(const DeletedProductComplex& c, const Gf2Result& r, const std::function<std::string(EdgeId)>& name,
             const std::function<std::string(VertexId)>& vertex, std::ostream& out) {
  if (r.solvable) {
    out << "solution";
    for (std::size_t i = 0; i < r.solution.size(); ++i) {
      if (r.solution[i]) out << "\t{" << vertex(c.cells1[i].x) << "," << name(c.cells1[i].t) << "}";
    }
  } else {
    out << "certificate";
    for (std::size_t i = 0; i < r.certificate.size(); ++i) {
      if (r.certificate[i]) out << "\t{" << name(c.cells2[i].s) << "," << name(c.cells2[i].t) << "}";
    }
  }
  out << "\n";
}

}  // namespace

int vk(const Instance& inst, std::optional<std::uint64_t> seed, std::ostream& out) {
  if (inst.second) {
    const auto rep = pair_obstruction(inst.map, *inst.second, seed);
    const auto offset = static_cast<VertexId>(rep.joined.domain().vertex_count() -
                                              normalize_nondegenerate(*inst.second).domain().vertex_count());
    auto vertex = [&](VertexId x) { return x < offset ? "K" + std::to_string(x) : "L" + std::to_string(x - offset); };
    auto name = [&](EdgeId e) {
      const Edge& ed = rep.joined.domain().edge(e);
      return vertex(ed.u) + "-" + vertex(ed.v);
    };
    out << "# pair cells=" << rep.complex.cells2.size() << " red=" << red_cells(rep.complex)
        << " odd=" << odd_cells(rep.cochain) << " all-even=" << (rep.all_even() ? "yes" : "no") << "\n";
    cell_table(rep.complex, rep.cochain, name, out);
    out << "verdict\t" << (rep.vanishes() ? "v = 0" : "v != 0") << "\n";
    witness(rep.complex, rep.gf2, name, vertex, out);
    return rep.vanishes() ? Exit::approximable : Exit::not_approximable;
  }
  const auto rep = obstruction_report(inst.map, seed);
  auto name = [&](EdgeId e) { return domain_edge(rep.map, e); };
  auto vertex = [](VertexId x) { return std::to_string(x); };
  out << "# cells=" << rep.complex.cells2.size() << " red=" << red_cells(rep.complex)
      << " odd=" << odd_cells(rep.cochain) << "\n";
  cell_table(rep.complex, rep.cochain, name, out);
  if (inst.map.domain().shape() == Shape::path) {
    out << "components";
    for (auto x : path_cut_components(inst.map, seed).vector()) out << "\t" << int(x);
    out << "\n";
  }
  out << "verdict\t" << (rep.vanishes() ? "v = 0" : "v != 0") << "\n";
  witness(rep.complex, rep.gf2, name, vertex, out);
  return rep.vanishes() ? Exit::approximable : Exit::not_approximable;
}

int oracle(const Instance& inst, std::uint64_t max_lifts, bool witness, std::optional<std::uint64_t> seed,
           std::ostream& out) {
  OracleOptions opts;
  opts.max_nodes = max_lifts;
  opts.shuffle_seed = seed;
  const auto r = is_approximable_oracle(inst.map, opts);
  if (!r.approximable) {
    out << "inconclusive  lane-assignments=" << r.nodes << "\n";
    return Exit::inconclusive;
  }
  out << (*r.approximable ? "approximable" : "not-approximable") << "  lane-assignments=" << r.nodes
      << " complete-lifts=" << r.lifts << "\n";
  if (witness && r.lift) {
    const auto ex = build_expansion(inst.map);
    const auto& g = ex.map.target();
    for (EdgeId a = 0; a < g.edge_count(); ++a) {
      if (r.lift->lanes[a].empty()) continue;
      out << "  lane " << edge_name(g, a) << ":";
      for (EdgeId e : r.lift->lanes[a]) out << " " << domain_edge(ex.map, e);
      out << "\n";
    }
  }
  return *r.approximable ? Exit::approximable : Exit::not_approximable;
}

int winding(const Instance& inst, std::ostream& out) {
  const auto rep = winding_report(inst.map);
  for (std::size_t i = 0; i < rep.components.size(); ++i) {
    const auto& c = rep.components[i];
    out << "component " << i << "  vertices=" << c.vertices.size() << "  ";
    if (c.is_winding) {
      out << "winding d=" << c.degree;
    } else {
      out << (c.is_circle ? "circle, not a winding" : "not a circle");
    }
    out << "\n";
  }
  out << "standard-winding=" << (rep.is_standard_winding() ? "yes" : "no") << "\n";
  return Exit::approximable;
}

int corpus(const CorpusArgs& args, std::ostream& out, std::ostream& log) {
  std::vector<std::string> shapes = args.shapes;
  if (shapes.empty()) shapes = {"path", "cycle", "deg3"};
  std::vector<CorpusRow> rows;
  for (const auto& shape : shapes) {
    CorpusMode mode;
    if (shape == "path") {
      mode = CorpusMode::path;
    } else if (shape == "cycle") {
      mode = CorpusMode::cycle;
    } else if (shape == "deg3") {
      mode = CorpusMode::deg3;
    } else {
      log << "unknown shape '" << shape << "'\n";
      return Exit::input_error;
    }
    std::vector<std::string> targets = args.targets;
    if (targets.empty()) {
      targets = mode == CorpusMode::deg3 ? std::vector<std::string>{"C3", "C4", "C5"}
                                         : std::vector<std::string>{"C3", "C4", "C5", "C6", "theta", "od5"};
    }
    std::vector<CorpusInstance> instances;
    for (const auto& t : targets) {
      const PlaneGraph g = catalog_target(t);
      const std::uint64_t salt = fnv1a(shape + "/" + t);
      if (mode == CorpusMode::deg3) {
        if (!g.is_cycle()) {
          log << "deg3 corpora need a cycle target, got " << t << "\n";
          return Exit::input_error;
        }
        auto batch = random_deg3_maps(g, t, args.count, args.max_vertices, args.seed ^ salt);
        std::move(batch.begin(), batch.end(), std::back_inserter(instances));
        continue;
      }
      const bool closed = mode == CorpusMode::cycle;
      for (std::size_t k = std::max<std::size_t>(args.k_min, closed ? 3 : 1); k <= args.k_max; ++k) {
        auto batch = args.mode == "exhaustive"
                         ? (closed ? enumerate_cycle_maps(g, t, k) : enumerate_path_maps(g, t, k))
                         : random_walk_maps(g, t, k, args.count, closed, args.seed ^ salt ^ (k * 0x9E3779B97F4A7C15ull));
        std::move(batch.begin(), batch.end(), std::back_inserter(instances));
      }
    }
    auto batch_rows = run_corpus(instances, mode, args.jobs);
    std::move(batch_rows.begin(), batch_rows.end(), std::back_inserter(rows));
  }
  std::sort(rows.begin(), rows.end(), [](const CorpusRow& a, const CorpusRow& b) { return a.id < b.id; });

  std::ofstream file;
  std::ostream* sink = &out;
  if (!args.out.empty()) {
    file.open(args.out);
    sink = &file;
  }
  if (!args.quiet || !args.out.empty()) {
    *sink << tsv_header() << "\n";
    for (const auto& r : rows) *sink << to_tsv(r) << "\n";
  }
  std::size_t disagree = 0, review = 0, lemma_bad = 0, inconclusive = 0, approx = 0;
  for (const auto& r : rows) {
    disagree += !r.agree;
    review += r.needs_review;
    lemma_bad += r.lemma == "violated";
    inconclusive += r.oracle == "inconclusive";
    approx += r.oracle == "approximable";
  }
  log << "instances=" << rows.size() << " approximable=" << approx << " disagreements=" << disagree
      << " lemma-violations=" << lemma_bad << " review=" << review << " inconclusive=" << inconclusive << "\n";
  return disagree ? Exit::not_approximable : Exit::approximable;
}

std::string fixture_output(const std::string& command, const Instance& inst) {
  std::ostringstream out;
  int code = 0;
  if (command == "check") {
    code = check(inst, true, out);
  } else if (command == "vk") {
    code = vk(inst, std::nullopt, out);
  } else if (command == "winding") {
    code = winding(inst, out);
  } else if (command == "oracle") {
    code = oracle(inst, 0, true, std::nullopt, out);
  } else if (command == "derive") {
    code = derive(inst, std::nullopt, "", out);
  } else {
    throw std::invalid_argument("unknown fixture command '" + command + "'");
  }
  out << "exit " << code << "\n";
  return out.str();
}

int replay_fixtures(const std::string& dir, std::ostream& log) {
  std::vector<fs::path> expected;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".expected") expected.push_back(entry.path());
  }
  std::sort(expected.begin(), expected.end());
  std::size_t failed = 0;
  for (const auto& path : expected) {
    const std::string stem = path.stem().string();  // NAME.command
    const auto dot = stem.rfind('.');
    const std::string name = stem.substr(0, dot);
    const std::string command = stem.substr(dot + 1);
    std::ifstream in(path, std::ios::binary);
    const std::string want((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::string got;
    try {
      got = fixture_output(command, read_instance_file((fs::path(dir) / (name + ".inst")).string()));
    } catch (const std::exception& e) {
      got = std::string("error: ") + e.what() + "\n";
    }
    const bool ok = got == want;
    failed += !ok;
    log << (ok ? "ok    " : "FAIL  ") << name << " " << command << "\n";
    if (!ok) log << "--- expected\n" << want << "--- got\n" << got;
  }
  log << expected.size() - failed << "/" << expected.size() << " fixtures match\n";
  return failed || expected.empty() ? Exit::not_approximable : Exit::approximable;
}

int run_on_file(const std::string& path, std::ostream& err, const std::function<int(const Instance&)>& body) {
  try {
    return body(read_instance_file(path));
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return Exit::input_error;
  } catch (const InvariantError& e) {
    err << "invalid instance: " << e.what() << "\n";
    return Exit::input_error;
  } catch (const PreconditionError& e) {
    err << "out of scope: " << e.what() << "\n";
    return Exit::out_of_scope;
  }
}

}  // namespace embapprox::cli
