#include "embapprox/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace embapprox {

namespace {

struct Token {
  std::string_view text;
  std::size_t column = 0;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

enum class Section { none, target, rotation, domain, map, domain2, map2 };

struct DomainDraft {
  std::optional<Shape> shape;
  std::vector<Edge> edges;
  std::map<VertexId, VertexId> image;
  std::size_t vertex_count = 0;
  bool present = false;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Instance run() {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      const std::size_t nl = text_.find('\n', pos);
      std::string_view line = text_.substr(pos, nl == std::string_view::npos ? text_.npos : nl - pos);
      ++line_no;
      if (const auto pct = line.find('%'); pct != std::string_view::npos) line = line.substr(0, pct);
      handle(line_no, tokenize(line));
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    return finish();
  }

 private:
  VertexId number(std::size_t line, const Token& t) {
    VertexId v = 0;
    const auto* end = t.text.data() + t.text.size();
    auto [p, ec] = std::from_chars(t.text.data(), end, v);
    if (ec != std::errc() || p != end) {
      throw InputError(line, t.column, "expected a non-negative integer, got '" + std::string(t.text) + "'");
    }
    return v;
  }

  void expect_count(std::size_t line, const std::vector<Token>& toks, std::size_t n, const char* form) {
    if (toks.size() != n) {
      const std::size_t col = toks.size() > n ? toks[n].column : toks.back().column + toks.back().text.size();
      throw InputError(line, col, std::string("expected '") + form + "'");
    }
  }

  void handle(std::size_t line, const std::vector<Token>& toks) {
    if (toks.empty()) return;
    const auto& head = toks[0];
    if (head.text.starts_with('#')) {
      if (toks.size() != 1) throw InputError(line, toks[1].column, "unexpected text after section header");
      if (head.text == "#target") {
        section_ = Section::target;
        seen_target_ = true;
      } else if (head.text == "#rotation") {
        section_ = Section::rotation;
      } else if (head.text == "#domain") {
        section_ = Section::domain;
        first_.present = true;
      } else if (head.text == "#map") {
        section_ = Section::map;
      } else if (head.text == "#domain2") {
        section_ = Section::domain2;
        second_.present = true;
      } else if (head.text == "#map2") {
        section_ = Section::map2;
      } else {
        throw InputError(line, head.column, "unknown section '" + std::string(head.text) + "'");
      }
      return;
    }
    switch (section_) {
      case Section::none:
        throw InputError(line, head.column, "content before the first section header");
      case Section::target:
        if (head.text == "edge") {
          expect_count(line, toks, 3, "edge <u> <v>");
          const VertexId u = number(line, toks[1]);
          const VertexId v = number(line, toks[2]);
          if (u == v) throw InvariantError("simple", "target loop at vertex " + std::to_string(u));
          const auto key = std::minmax(u, v);
          if (!target_keys_.emplace(key, static_cast<EdgeId>(target_edges_.size())).second) {
            throw InvariantError("simple", "duplicate target edge " + std::to_string(key.first) + "-" +
                                               std::to_string(key.second));
          }
          target_edges_.push_back({u, v});
          target_n_ = std::max<std::size_t>(target_n_, std::max(u, v) + 1);
        } else if (head.text == "vertices") {
          expect_count(line, toks, 2, "vertices <n>");
          target_n_ = std::max<std::size_t>(target_n_, number(line, toks[1]));
        } else {
          throw InputError(line, head.column, "expected 'edge' in #target");
        }
        return;
      case Section::rotation: {
        if (head.text != "rot") throw InputError(line, head.column, "expected 'rot' in #rotation");
        if (toks.size() < 3 || toks[2].text != ":") {
          throw InputError(line, toks.size() < 3 ? head.column : toks[2].column, "expected 'rot <v> : <edges>'");
        }
        const VertexId v = number(line, toks[1]);
        if (rotation_lines_.count(v)) throw InputError(line, toks[1].column, "rotation given twice");
        std::vector<std::pair<Token, std::pair<VertexId, VertexId>>> ends;
        for (std::size_t i = 3; i < toks.size(); ++i) {
          const auto dash = toks[i].text.find('-');
          if (dash == std::string_view::npos) {
            throw InputError(line, toks[i].column, "expected an edge name 'u-v'");
          }
          Token a{toks[i].text.substr(0, dash), toks[i].column};
          Token b{toks[i].text.substr(dash + 1), toks[i].column + dash + 1};
          ends.push_back({toks[i], {number(line, a), number(line, b)}});
        }
        rotation_lines_[v] = {line, std::move(ends)};
        return;
      }
      case Section::domain:
      case Section::domain2: {
        auto& d = section_ == Section::domain ? first_ : second_;
        if (head.text == "shape") {
          expect_count(line, toks, 2, "shape path|cycle|general");
          d.shape = parse_shape(toks[1].text);
          if (!d.shape) throw InputError(line, toks[1].column, "unknown shape '" + std::string(toks[1].text) + "'");
        } else if (head.text == "edge") {
          expect_count(line, toks, 3, "edge <x> <y>");
          const VertexId x = number(line, toks[1]);
          const VertexId y = number(line, toks[2]);
          d.edges.push_back({x, y});
          d.vertex_count = std::max<std::size_t>(d.vertex_count, std::max(x, y) + 1);
        } else if (head.text == "vertices") {
          expect_count(line, toks, 2, "vertices <n>");
          d.vertex_count = std::max<std::size_t>(d.vertex_count, number(line, toks[1]));
        } else {
          throw InputError(line, head.column, "expected 'shape' or 'edge' in a domain section");
        }
        return;
      }
      case Section::map:
      case Section::map2: {
        auto& d = section_ == Section::map ? first_ : second_;
        expect_count(line, toks, 3, "<x> -> <v>");
        if (toks[1].text != "->") throw InputError(line, toks[1].column, "expected '->'");
        const VertexId x = number(line, toks[0]);
        const VertexId v = number(line, toks[2]);
        if (!d.image.emplace(x, v).second) throw InputError(line, toks[0].column, "vertex mapped twice");
        d.vertex_count = std::max<std::size_t>(d.vertex_count, x + 1);
        return;
      }
    }
  }

  SimplicialMap build_map(const DomainDraft& d, const PlaneGraph& g, const char* which) {
    if (!d.shape) throw InputError(0, 0, std::string("missing 'shape' line in ") + which);
    std::vector<VertexId> image(d.vertex_count);
    for (VertexId x = 0; x < d.vertex_count; ++x) {
      auto it = d.image.find(x);
      if (it == d.image.end()) {
        throw InvariantError("dangling-id", std::string(which) + " vertex " + std::to_string(x) + " has no image");
      }
      image[x] = it->second;
    }
    return SimplicialMap(DomainGraph(d.vertex_count, d.edges, *d.shape), g, std::move(image));
  }

  Instance finish() {
    if (!seen_target_) throw InputError(0, 0, "missing #target section");
    if (!first_.present) throw InputError(0, 0, "missing #domain section");
    std::vector<std::vector<EdgeId>> rotation(target_n_);
    for (const auto& [v, entry] : rotation_lines_) {
      const auto& [line, ends] = entry;
      if (v >= target_n_) {
        throw InvariantError("dangling-id", "rotation for unknown target vertex " + std::to_string(v));
      }
      for (const auto& [tok, uv] : ends) {
        auto it = target_keys_.find(std::minmax(uv.first, uv.second));
        if (it == target_keys_.end()) {
          throw InvariantError("dangling-id", "line " + std::to_string(line) + ": unknown edge '" +
                                                  std::string(tok.text) + "'");
        }
        rotation[v].push_back(it->second);
      }
    }
    PlaneGraph g(target_n_, target_edges_, std::move(rotation));
    Instance inst{build_map(first_, g, "#domain"), std::nullopt};
    if (second_.present) inst.second = build_map(second_, g, "#domain2");
    return inst;
  }

  std::string_view text_;
  Section section_ = Section::none;
  bool seen_target_ = false;
  std::vector<Edge> target_edges_;
  std::map<std::pair<VertexId, VertexId>, EdgeId> target_keys_;
  std::size_t target_n_ = 0;
  std::map<VertexId, std::pair<std::size_t, std::vector<std::pair<Token, std::pair<VertexId, VertexId>>>>>
      rotation_lines_;
  DomainDraft first_;
  DomainDraft second_;
};

void write_domain(std::ostringstream& out, const SimplicialMap& m, const char* domain_header,
                  const char* map_header) {
  const auto& k = m.domain();
  out << domain_header << "\nshape " << to_string(k.shape()) << "\n";
  std::vector<bool> touched(k.vertex_count(), false);
  for (const auto& e : k.edges()) {
    out << "edge " << e.u << " " << e.v << "\n";
    touched[e.u] = touched[e.v] = true;
  }
  if (!k.vertex_count() || !touched[k.vertex_count() - 1]) out << "vertices " << k.vertex_count() << "\n";
  out << map_header << "\n";
  for (VertexId x = 0; x < k.vertex_count(); ++x) out << x << " -> " << m.image(x) << "\n";
}

}  // namespace

Instance parse_instance(std::string_view text) { return Parser(text).run(); }

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(0, 0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string edge_name(const PlaneGraph& g, EdgeId e) {
  const auto [a, b] = std::minmax(g.edge(e).u, g.edge(e).v);
  return std::to_string(a) + "-" + std::to_string(b);
}

std::string format_instance(const Instance& instance) {
  const auto& g = instance.map.target();
  std::ostringstream out;
  out << "#target\n";
  for (const auto& e : g.edges()) out << "edge " << e.u << " " << e.v << "\n";
  std::vector<bool> touched(g.vertex_count(), false);
  for (const auto& e : g.edges()) touched[e.u] = touched[e.v] = true;
  if (g.vertex_count() && !touched[g.vertex_count() - 1]) out << "vertices " << g.vertex_count() << "\n";
  out << "#rotation\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    out << "rot " << v << " :";
    for (EdgeId e : g.rotation(v)) out << " " << edge_name(g, e);
    out << "\n";
  }
  write_domain(out, instance.map, "#domain", "#map");
  if (instance.second) write_domain(out, *instance.second, "#domain2", "#map2");
  return out.str();
}

std::string format_instance(const SimplicialMap& map) { return format_instance(Instance{map, std::nullopt}); }

}  // namespace embapprox
