#include "causal_locus_cli/spec_file.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "causal_locus/catalog.hpp"
#include "causal_locus/cksolver.hpp"
#include "causal_locus/errors.hpp"

namespace causal::cli {

namespace {

bool is_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void reject_unknown(const std::map<std::string, SpecValue>& table, const std::string& name,
                    const std::set<std::string>& allowed) {
  for (const auto& [key, v] : table)
    if (!allowed.count(key)) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      throw ValidationError("unknown key '" + key + "' in [" + name + "] at line " +
                            std::to_string(v.line) + " (allowed: " + list + ")");
    }
}

bool is_component_key(const std::string& k) {
  return k.size() == 3 && k[0] == 'g' && std::isdigit(static_cast<unsigned char>(k[1])) &&
         std::isdigit(static_cast<unsigned char>(k[2]));
}

}  // namespace

SpecTables parse_spec_text(std::string_view text) {
  SpecTables tables;
  tables[""];
  std::string current;
  std::size_t pos = 0;
  int line = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    const std::size_t line_start = pos;
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;

    // Strip comments outside quotes.
    bool in_str = false;
    std::size_t cut = raw.size();
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') in_str = !in_str;
      if (raw[i] == '#' && !in_str) {
        cut = i;
        break;
      }
    }
    std::string_view body = raw.substr(0, cut);
    std::string s = trim(body);
    if (s.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t lead = body.find_first_not_of(" \t\r");
    const std::size_t at = line_start + lead;

    if (s.front() == '[') {
      if (s.back() != ']')
        throw ParseError("line " + std::to_string(line) + ": table header is missing ']'", at + s.size());
      current = trim(std::string_view(s).substr(1, s.size() - 2));
      if (current.empty() || !std::all_of(current.begin(), current.end(), is_key_char))
        throw ParseError("line " + std::to_string(line) + ": invalid table name", at);
      if (tables.count(current) && !tables[current].empty())
        throw ParseError("line " + std::to_string(line) + ": table [" + current + "] repeated", at);
      tables[current];
    } else {
      const std::size_t eq = s.find('=');
      if (eq == std::string::npos)
        throw ParseError("line " + std::to_string(line) + ": expected 'key = value'", at);
      std::string key = trim(std::string_view(s).substr(0, eq));
      std::string val = trim(std::string_view(s).substr(eq + 1));
      if (key.empty() || !std::all_of(key.begin(), key.end(), is_key_char))
        throw ParseError("line " + std::to_string(line) + ": invalid key '" + key + "'", at);
      SpecValue v;
      v.line = line;
      if (!val.empty() && val.front() == '"') {
        if (val.size() < 2 || val.back() != '"')
          throw ParseError("line " + std::to_string(line) + ": unterminated string", at + eq + 1);
        v.text = val.substr(1, val.size() - 2);
        v.quoted = true;
      } else {
        if (val.empty())
          throw ParseError("line " + std::to_string(line) + ": missing value for '" + key + "'",
                           at + eq + 1);
        v.text = val;
      }
      auto& table = tables[current];
      if (table.count(key))
        throw ParseError("line " + std::to_string(line) + ": duplicate key '" + key + "'", at);
      table[key] = v;
    }
    if (end == text.size()) break;
  }
  return tables;
}

double parse_number(const SpecValue& v, const std::string& key) {
  const char* b = v.text.c_str();
  char* e = nullptr;
  const double x = std::strtod(b, &e);
  if (e == b || *e != '\0')
    throw ParseError("value of '" + key + "' is not a number: '" + v.text + "'",
                     static_cast<std::size_t>(e - b));
  return x;
}

std::vector<double> parse_point(std::string_view text) {
  std::vector<double> out;
  std::string s(text);
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',' ||
                            s[i] == '(' || s[i] == ')'))
      ++i;
    if (i >= s.size()) break;
    const char* b = s.c_str() + i;
    char* e = nullptr;
    const double x = std::strtod(b, &e);
    if (e == b) throw ParseError("malformed point '" + s + "'", i);
    out.push_back(x);
    i += static_cast<std::size_t>(e - b);
  }
  if (out.empty()) throw ParseError("empty point", 0);
  return out;
}

SurfaceSpec surface_spec_from_tables(const SpecTables& t) {
  for (const auto& [name, table] : t)
    if (name != "" && name != "surface" && name != "metric" && name != "params")
      throw ValidationError("unknown table [" + name + "] (allowed: surface, metric, params)");
  SurfaceSpec s;
  auto get = [&](const std::string& table) -> const std::map<std::string, SpecValue>& {
    static const std::map<std::string, SpecValue> empty;
    auto it = t.find(table);
    return it == t.end() ? empty : it->second;
  };
  const auto& top = get("");
  reject_unknown(top, "top level", {"name"});
  if (top.count("name")) s.name = top.at("name").text;

  const auto& surf = get("surface");
  reject_unknown(surf, "surface", {"n", "f", "series", "example"});
  int sources = 0;
  if (surf.count("f")) s.f = surf.at("f").text, ++sources;
  if (surf.count("series")) s.series_path = surf.at("series").text, ++sources;
  if (surf.count("example")) s.example = surf.at("example").text, ++sources;
  if (sources != 1)
    throw ValidationError("[surface] needs exactly one of f, series, example");
  if (surf.count("n")) {
    const double n = parse_number(surf.at("n"), "n");
    if (n != static_cast<int>(n) || n < 1 || n + 1 > kMaxDim)
      throw ValidationError("n must be an integer between 1 and " + std::to_string(kMaxDim - 1));
    s.n = static_cast<int>(n);
  }
  if (!s.example.empty()) {
    const CatalogEntry& e = catalog_entry(s.example);
    s.n = e.n;
    s.metric_kind = e.ambient;
  }

  const auto& met = get("metric");
  for (const auto& [key, v] : met)
    if (key != "kind" && key != "eps" && !is_component_key(key))
      throw ValidationError("unknown key '" + key + "' in [metric] at line " +
                            std::to_string(v.line) + " (allowed: kind, eps, gij)");
  for (const auto& [key, v] : met)
    if (is_component_key(key)) s.components.emplace_back(key, v.text);
  if (met.count("kind")) {
    s.metric_kind = met.at("kind").text;
  } else if (!s.components.empty()) {
    s.metric_kind = "components";
  }
  if (s.metric_kind != "minkowski" && s.metric_kind != "perturbed" && s.metric_kind != "components")
    throw ValidationError("metric kind must be minkowski, perturbed or components, got '" +
                          s.metric_kind + "'");
  if (s.metric_kind != "components" && !s.components.empty())
    throw ValidationError("metric components given but kind is '" + s.metric_kind + "'");
  if (met.count("eps")) s.metric_eps = parse_number(met.at("eps"), "eps");

  const auto& par = get("params");
  reject_unknown(par, "params",
                 {"point", "tol", "step", "half_length", "eps", "fd_step", "t_max", "order",
                  "length"});
  s.params = par;
  return s;
}

SurfaceSpec load_surface_spec(const std::string& path) {
  SurfaceSpec s = surface_spec_from_tables(parse_spec_text(read_file(path)));
  if (!s.series_path.empty()) {
    std::filesystem::path p(s.series_path);
    if (p.is_relative()) p = std::filesystem::path(path).parent_path() / p;
    s.series_path = p.string();
  }
  return s;
}

SurfaceSpec example_spec(std::string_view id) {
  SpecTables t;
  t["surface"]["example"] = SpecValue{std::string(id), true, 0};
  return surface_spec_from_tables(t);
}

MetricChart make_metric(const SurfaceSpec& s) {
  if (s.metric_kind == "perturbed") {
    if (s.n != 2) throw ValidationError("the perturbed metric is defined for n = 2");
    return perturbed_metric(s.metric_eps);
  }
  if (s.metric_kind == "components") return MetricChart::from_strings(s.n, s.components);
  return MetricChart::minkowski(s.n);
}

GraphSurface make_surface(const SurfaceSpec& s) {
  if (!s.example.empty()) return catalog_surface(catalog_entry(s.example));
  MetricChart g = make_metric(s);
  if (!s.series_path.empty()) {
    SeriesSurface ser = series_from_json(read_file(s.series_path));
    if (ser.n != s.n)
      throw ValidationError("series file has n=" + std::to_string(ser.n) + ", spec says n=" +
                            std::to_string(s.n));
    return GraphSurface(HeightFunction::series(std::move(ser)), g);
  }
  return GraphSurface(HeightFunction::parse(s.n, s.f), g);
}

}  // namespace causal::cli
