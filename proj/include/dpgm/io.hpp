// Copyright 2026 The dpgm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Line-oriented dataset format:
//
//   t # <graph-id>    starts a graph
//   v <idx> <label>   vertex; indices are 0..V-1 in order
//   e <u> <v>         undirected edge
//
// Blank lines are skipped and lines starting with '#' are comments.

#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dpgm/canonical.hpp"
#include "dpgm/graph.hpp"

namespace dpgm {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(what + " at line " + std::to_string(line)), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool parse_index(std::string_view tok, VertexId& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace detail

inline GraphDataset parse_dataset(std::istream& in) {
  std::vector<LabeledGraph> graphs;
  std::string line;
  std::size_t lineno = 0;
  bool in_graph = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = detail::split_ws(line);
    if (tok.empty() || tok[0].front() == '#') continue;
    if (tok[0] == "t") {
      if (tok.size() != 3 || tok[1] != "#") throw ParseError(lineno, "malformed graph header");
      graphs.emplace_back();
      in_graph = true;
    } else if (tok[0] == "v") {
      if (!in_graph) throw ParseError(lineno, "vertex before graph header");
      VertexId idx = 0;
      if (tok.size() != 3 || !detail::parse_index(tok[1], idx)) {
        throw ParseError(lineno, "malformed vertex line");
      }
      if (!is_label_token(tok[2])) throw ParseError(lineno, "invalid label");
      LabeledGraph& g = graphs.back();
      if (idx < g.vertex_count()) throw ParseError(lineno, "duplicate vertex index");
      if (idx > g.vertex_count()) throw ParseError(lineno, "non-contiguous vertex index");
      g.add_vertex(Label::of(tok[2]));
    } else if (tok[0] == "e") {
      if (!in_graph) throw ParseError(lineno, "edge before graph header");
      VertexId a = 0, b = 0;
      // A trailing edge label column is tolerated and ignored.
      if (tok.size() < 3 || tok.size() > 4 || !detail::parse_index(tok[1], a) ||
          !detail::parse_index(tok[2], b)) {
        throw ParseError(lineno, "malformed edge line");
      }
      LabeledGraph& g = graphs.back();
      if (a >= g.vertex_count() || b >= g.vertex_count()) {
        throw ParseError(lineno, "edge references unknown vertex");
      }
      if (a == b) throw ParseError(lineno, "self-loop");
      if (g.has_edge(a, b)) throw ParseError(lineno, "multi-edge");
      g.add_edge(a, b);
    } else {
      throw ParseError(lineno, "unknown record '" + std::string(tok[0]) + "'");
    }
  }
  return GraphDataset(std::move(graphs));
}

inline GraphDataset parse_dataset(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dataset(in);
}

inline GraphDataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset '" + path + "'");
  return parse_dataset(in);
}

inline void write_graph(std::ostream& out, const LabeledGraph& g, std::size_t id) {
  out << "t # " << id << '\n';
  for (VertexId v = 0; v < g.vertex_count(); ++v) out << "v " << v << ' ' << g.label(v).name() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << '\n';
}

inline void write_dataset(std::ostream& out, const GraphDataset& d) {
  for (std::size_t gid = 0; gid < d.size(); ++gid) write_graph(out, d.graph(gid), gid);
}

inline std::string dataset_to_text(const GraphDataset& d) {
  std::ostringstream out;
  write_dataset(out, d);
  return out.str();
}

// Dataset-format text of a single pattern; vertices and edges follow the
// canonical DFS order, so isomorphic patterns serialize identically.
inline std::string serialize_pattern(const Pattern& p) {
  std::ostringstream out;
  write_graph(out, p.graph(), 0);
  return out.str();
}

inline nlohmann::json pattern_to_json(const Pattern& p) {
  nlohmann::json vertices = nlohmann::json::array();
  for (VertexId v = 0; v < p.vertex_count(); ++v) {
    vertices.push_back({std::to_string(v), std::string(p.graph().label(v).name())});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : p.graph().edges()) edges.push_back({e.u, e.v});
  return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}, {"code", p.code()}};
}

inline Pattern pattern_from_json(const nlohmann::json& j) {
  LabeledGraph g;
  for (const auto& v : j.at("vertices")) {
    const auto idx = std::stoul(v.at(0).get<std::string>());
    if (idx != g.vertex_count()) throw std::runtime_error("pattern JSON: vertex indices out of order");
    g.add_vertex(Label::of(v.at(1).get<std::string>()));
  }
  for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<VertexId>(), e.at(1).get<VertexId>());
  Pattern p = Pattern::from_graph(g);
  if (j.contains("code") && j.at("code").get<std::string>() != p.code()) {
    throw std::runtime_error("pattern JSON: code does not match graph");
  }
  return p;
}

}  // namespace dpgm
