#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include <nlohmann/json.hpp>

#include "error.hpp"

namespace gromov {

enum class Family { KSW, RT, RT_F, RRT, RBT };
enum class GKind { EXP_RING, POW_RING, LCA_HEIGHT };
// Span bound for RT(k, f): CONST -> c, LOG2 -> floor(c * log2 n), POW -> floor(n^c).
enum class FKind { CONST, LOG2, POW };

inline constexpr int kGenSpecVersion = 1;

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::KSW: return "ksw";
    case Family::RT: return "rt";
    case Family::RT_F: return "rt_f";
    case Family::RRT: return "rrt";
    case Family::RBT: return "rbt";
  }
  return "?";
}

inline std::string_view to_string(GKind g) {
  switch (g) {
    case GKind::EXP_RING: return "exp_ring";
    case GKind::POW_RING: return "pow_ring";
    case GKind::LCA_HEIGHT: return "lca_height";
  }
  return "?";
}

inline std::string_view to_string(FKind f) {
  switch (f) {
    case FKind::CONST: return "const";
    case FKind::LOG2: return "log2";
    case FKind::POW: return "pow";
  }
  return "?";
}

inline Family parse_family(std::string_view s) {
  for (Family f : {Family::KSW, Family::RT, Family::RT_F, Family::RRT, Family::RBT})
    if (to_string(f) == s) return f;
  throw InputError("unknown family '" + std::string(s) + "'");
}

inline GKind parse_g_kind(std::string_view s) {
  for (GKind g : {GKind::EXP_RING, GKind::POW_RING, GKind::LCA_HEIGHT})
    if (to_string(g) == s) return g;
  throw InputError("unknown g_kind '" + std::string(s) + "'");
}

inline FKind parse_f_kind(std::string_view s) {
  for (FKind f : {FKind::CONST, FKind::LOG2, FKind::POW})
    if (to_string(f) == s) return f;
  throw InputError("unknown f_kind '" + std::string(s) + "'");
}

// Shortest decimal text that parses back to the same double.
inline std::string format_real(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

inline double parse_real(std::string_view s, std::string_view key) {
  double x = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(x))
    throw InputError("bad real value for " + std::string(key) + ": '" + std::string(s) + "'");
  return x;
}

inline std::uint64_t parse_uint(std::string_view s, std::string_view key) {
  std::uint64_t x = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty())
    throw InputError("bad unsigned value for " + std::string(key) + ": '" + std::string(s) + "'");
  return x;
}

inline bool parse_bool(std::string_view s, std::string_view key) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw InputError("bad boolean value for " + std::string(key) + ": '" + std::string(s) + "'");
}

// Exact integer d-th root of n, if one exists.
inline std::optional<std::uint64_t> integer_root(std::uint64_t n, unsigned d) {
  if (d == 0) return std::nullopt;
  const auto guess = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / d)));
  for (std::uint64_t side = guess > 0 ? guess - 1 : 0; side <= guess + 1; ++side) {
    std::uint64_t p = 1;
    bool overflow = false;
    for (unsigned i = 0; i < d && !overflow; ++i) {
      if (side != 0 && p > n / side) overflow = true;
      p *= side;
    }
    if (!overflow && p == n) return side;
  }
  return std::nullopt;
}

// Full description of one generative model instance.
struct GenSpec {
  Family family = Family::RT;
  std::uint64_t n = 0;  // KSW vertex count
  unsigned k = 0;       // level count for the tree families
  unsigned d = 1;       // KSW grid dimension
  double gamma = 0.0;   // KSW exponent
  GKind g_kind = GKind::EXP_RING;
  double alpha = 1.0;
  FKind f_kind = FKind::LOG2;
  double f_param = 1.0;
  bool wrap = true;
  unsigned edges_per_node = 1;
  bool independent = false;
  std::uint64_t seed = 0;

  friend bool operator==(const GenSpec&, const GenSpec&) = default;

  // Vertex count of the generated graph.
  std::uint64_t vertex_count() const {
    return family == Family::KSW ? n : (std::uint64_t{1} << k) - 1;
  }

  bool randomized() const { return family != Family::RT; }
  bool uses_alpha() const { return family == Family::RRT || family == Family::RBT; }

  void validate() const {
    if (edges_per_node < 1) throw InputError("edges_per_node must be >= 1");
    switch (family) {
      case Family::KSW: {
        if (d < 1) throw InputError("KSW requires d >= 1");
        if (!(gamma >= 0.0)) throw InputError("KSW requires gamma >= 0");
        const auto side = integer_root(n, d);
        if (!side)
          throw InputError("KSW requires n^(1/d) to be an integer (n=" + std::to_string(n) +
                           ", d=" + std::to_string(d) + ")");
        if (*side < 2) throw InputError("KSW requires grid side >= 2");
        if (n > 0xFFFFFFFEu) throw InputError("KSW n exceeds 32-bit id space");
        break;
      }
      case Family::RT:
        if (k < 1) throw InputError("RT requires k >= 1");
        break;
      case Family::RT_F:
        if (k < 2) throw InputError("RT_F requires k >= 2");
        if (!(f_param >= 0.0)) throw InputError("RT_F requires f_param >= 0");
        break;
      case Family::RRT:
      case Family::RBT:
        if (k < 2) throw InputError(std::string(to_string(family)) + " requires k >= 2");
        if (!(alpha > 0.0)) throw InputError("alpha must be > 0");
        break;
    }
    if (family != Family::KSW && k > 31) throw InputError("k must be <= 31");
  }
};

// Flat key=value document; keys that do not apply to the family are omitted.
//
//   genspec_version=1
//   family=ksw|rt|rt_f|rrt|rbt
//   n, d, gamma, wrap           (ksw)
//   k                           (rt, rt_f, rrt, rbt)
//   f_kind, f_param             (rt_f)
//   g_kind, alpha               (rrt, rbt)
//   edges_per_node, independent (all but rt; rt_f ignores independent)
//   seed                        (all but rt)
inline std::map<std::string, std::string> to_fields(const GenSpec& s) {
  std::map<std::string, std::string> f;
  f["family"] = to_string(s.family);
  switch (s.family) {
    case Family::KSW:
      f["n"] = std::to_string(s.n);
      f["d"] = std::to_string(s.d);
      f["gamma"] = format_real(s.gamma);
      f["wrap"] = s.wrap ? "true" : "false";
      break;
    case Family::RT_F:
      f["f_kind"] = to_string(s.f_kind);
      f["f_param"] = format_real(s.f_param);
      [[fallthrough]];
    case Family::RT:
      f["k"] = std::to_string(s.k);
      break;
    case Family::RRT:
    case Family::RBT:
      f["k"] = std::to_string(s.k);
      f["g_kind"] = to_string(s.g_kind);
      f["alpha"] = format_real(s.alpha);
      break;
  }
  if (s.randomized()) {
    f["edges_per_node"] = std::to_string(s.edges_per_node);
    if (s.family != Family::RT_F) f["independent"] = s.independent ? "true" : "false";
    f["seed"] = std::to_string(s.seed);
  }
  return f;
}

inline GenSpec from_fields(const std::map<std::string, std::string>& fields) {
  GenSpec s;
  auto it = fields.find("family");
  if (it == fields.end()) throw InputError("genspec is missing 'family'");
  s.family = parse_family(it->second);
  for (const auto& [key, value] : fields) {
    if (key == "family" || key == "genspec_version") continue;
    if (key == "n") s.n = parse_uint(value, key);
    else if (key == "k") s.k = static_cast<unsigned>(parse_uint(value, key));
    else if (key == "d") s.d = static_cast<unsigned>(parse_uint(value, key));
    else if (key == "gamma") s.gamma = parse_real(value, key);
    else if (key == "g_kind") s.g_kind = parse_g_kind(value);
    else if (key == "alpha") s.alpha = parse_real(value, key);
    else if (key == "f_kind") s.f_kind = parse_f_kind(value);
    else if (key == "f_param") s.f_param = parse_real(value, key);
    else if (key == "wrap") s.wrap = parse_bool(value, key);
    else if (key == "edges_per_node") s.edges_per_node = static_cast<unsigned>(parse_uint(value, key));
    else if (key == "independent") s.independent = parse_bool(value, key);
    else if (key == "seed") s.seed = parse_uint(value, key);
    else throw InputError("unknown genspec key '" + key + "'");
  }
  s.validate();
  return s;
}

inline std::string write_genspec(const GenSpec& s) {
  std::ostringstream out;
  out << "genspec_version=" << kGenSpecVersion << '\n';
  const auto fields = to_fields(s);
  out << "family=" << fields.at("family") << '\n';
  for (const auto& [key, value] : fields)
    if (key != "family") out << key << '=' << value << '\n';
  return out.str();
}

inline GenSpec read_genspec(std::string_view text) {
  std::map<std::string, std::string> fields;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("genspec line " + std::to_string(line_no) + ": expected key=value");
    auto key = line.substr(0, eq);
    if (!fields.emplace(key, line.substr(eq + 1)).second)
      throw InputError("genspec line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
  }
  auto v = fields.find("genspec_version");
  if (v == fields.end()) throw InputError("genspec is missing 'genspec_version'");
  if (parse_uint(v->second, "genspec_version") != kGenSpecVersion)
    throw InputError("unsupported genspec_version " + v->second);
  return from_fields(fields);
}

inline nlohmann::json to_json(const GenSpec& s) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, value] : to_fields(s)) j[key] = value;
  return j;
}

inline GenSpec genspec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("genspec record must be an object");
  std::map<std::string, std::string> fields;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string()) throw InputError("genspec field '" + key + "' must be a string");
    fields[key] = value.get<std::string>();
  }
  return from_fields(fields);
}

}  // namespace gromov
