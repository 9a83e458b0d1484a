#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "genspec.hpp"
#include "graph.hpp"

namespace gromov {

inline constexpr int kEdgeListVersion = 1;
inline constexpr std::string_view kEdgeListFormat = "gromov-edgelist";

// Edge-list text file:
//
//   # {"format":"gromov-edgelist","model":{...},"n":7,"version":1}
//   0 1
//   0 2
//
// One metadata line (compact JSON after "# "), then `u v` lines with u < v,
// sorted lexicographically, newline-terminated. The model record is the
// GenSpec field map, absent for graphs that did not come from a generator.
struct EdgeListFile {
  Graph graph;
  std::optional<GenSpec> model;
};

inline nlohmann::json edge_list_header(std::size_t n, const std::optional<GenSpec>& model) {
  nlohmann::json h;
  h["format"] = kEdgeListFormat;
  h["version"] = kEdgeListVersion;
  h["n"] = n;
  if (model) h["model"] = to_json(*model);
  return h;
}

inline std::string write_edge_list(const Graph& g, const std::optional<GenSpec>& model = std::nullopt) {
  std::string out = "# " + edge_list_header(g.n(), model).dump() + "\n";
  out.reserve(out.size() + g.edge_count() * 12);
  char buf[32];
  for (Vertex u = 0; u < g.n(); ++u) {
    for (Vertex v : g.neighbors(u)) {
      if (v <= u) continue;
      out.append(buf, std::to_chars(buf, buf + sizeof buf, u).ptr);
      out.push_back(' ');
      out.append(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
      out.push_back('\n');
    }
  }
  return out;
}

inline EdgeListFile read_edge_list(std::string_view text) {
  EdgeListFile file;
  std::optional<std::uint64_t> n;
  std::vector<Edge> edges;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos)
      throw InputError("edge list line " + std::to_string(line_no + 1) + " is not newline-terminated");
    const auto line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const auto where = "edge list line " + std::to_string(line_no) + ": ";
    if (!line.empty() && line[0] == '#') {
      if (header_seen || !edges.empty())
        throw InputError(where + "only a single leading metadata line is allowed");
      header_seen = true;
      nlohmann::json h;
      try {
        h = nlohmann::json::parse(line.substr(1));
      } catch (const nlohmann::json::exception& e) {
        throw InputError(where + "bad metadata record: " + e.what());
      }
      if (!h.is_object() || h.value("format", "") != kEdgeListFormat)
        throw InputError(where + "not a gromov edge list");
      if (h.value("version", 0) != kEdgeListVersion)
        throw InputError(where + "unsupported edge list version");
      if (!h.contains("n") || !h["n"].is_number_unsigned())
        throw InputError(where + "metadata lacks vertex count n");
      n = h["n"].get<std::uint64_t>();
      if (h.contains("model")) file.model = genspec_from_json(h["model"]);
      continue;
    }
    const auto space = line.find(' ');
    if (space == std::string_view::npos) throw InputError(where + "expected 'u v'");
    std::uint64_t u = 0, v = 0;
    const char* a = line.data();
    auto r1 = std::from_chars(a, a + space, u);
    auto r2 = std::from_chars(a + space + 1, a + line.size(), v);
    if (r1.ec != std::errc{} || r1.ptr != a + space || r2.ec != std::errc{} ||
        r2.ptr != a + line.size() || space == 0)
      throw InputError(where + "expected two decimal vertex ids");
    if (u >= v) throw InputError(where + "edges must be written with u < v");
    if (v > 0xFFFFFFFEu) throw InputError(where + "vertex id too large");
    const Edge e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
    if (!edges.empty() && !(edges.back() < e))
      throw InputError(where + "edges must be sorted and unique");
    edges.push_back(e);
  }
  if (!header_seen) throw InputError("edge list has no metadata line");
  for (const auto& [u, v] : edges)
    if (v >= *n) throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") exceeds n");
  file.graph = graph_from_edges(*n, edges);
  return file;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": file not found");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(path + ": cannot open for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InputError(path + ": write failed");
}

inline EdgeListFile load_edge_list(const std::string& path) { return read_edge_list(read_text_file(path)); }

}  // namespace gromov
