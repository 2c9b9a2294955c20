#include "coast/io.hpp"

#include "coast/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace coast {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

std::string fmt17(double v) {
  if (!std::isfinite(v)) throw NumericalError("non-finite coordinate in layout");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

constexpr const char* kAxes[] = {"x", "y", "z"};

}  // namespace

Graph read_matrix_market(std::istream& in, const MatrixMarketOptions& options) {
  std::string line;
  long lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty file", 1);
  ++lineno;
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket") throw ParseError("missing %%MatrixMarket banner", lineno);
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") throw ParseError("unsupported object '" + object + "'", lineno);
  if (format != "coordinate") throw ParseError("only coordinate format is supported", lineno);
  if (field != "real" && field != "integer" && field != "pattern" && field != "complex")
    throw ParseError("unknown field '" + field + "'", lineno);
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric" && symmetry != "hermitian")
    throw ParseError("unknown symmetry '" + symmetry + "'", lineno);
  const bool has_values = field != "pattern";
  const bool use_values = options.values_as_lengths && has_values;

  long rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    if (!(ss >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0)
      throw ParseError("bad size line", lineno);
    break;
  }
  if (rows < 0) throw ParseError("missing size line", lineno + 1);

  struct Entry {
    long i, j;
    double value;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(nnz));
  while (static_cast<long>(entries.size()) < nnz && std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    Entry e{0, 0, 1.0};
    if (!(ss >> e.i >> e.j)) throw ParseError("bad entry", lineno);
    if (has_values && !(ss >> e.value)) throw ParseError("missing value", lineno);
    if (e.i < 1 || e.i > rows || e.j < 1 || e.j > cols) throw ParseError("index out of range", lineno);
    if (use_values && !(std::abs(e.value) > 0.0))
      throw ParseError("zero entry cannot be used as an edge length", lineno);
    --e.i;
    --e.j;
    entries.push_back(e);
  }
  if (static_cast<long>(entries.size()) < nnz)
    throw ParseError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(entries.size()),
                     lineno + 1);

  bool undirected = rows == cols && symmetry != "general";
  if (rows == cols && !undirected) {
    std::set<std::pair<long, long>> pattern;
    for (const auto& e : entries)
      if (e.i != e.j) pattern.emplace(e.i, e.j);
    undirected = std::all_of(pattern.begin(), pattern.end(),
                             [&](const auto& p) { return pattern.count({p.second, p.first}) > 0; });
  }

  BuildOptions build;
  build.num_vertices = undirected ? rows : rows + cols;
  std::vector<RawEdge> raw;
  raw.reserve(entries.size());
  for (const auto& e : entries) {
    RawEdge r;
    r.u = e.i;
    r.v = undirected ? e.j : rows + e.j;
    if (r.u == r.v) continue;
    if (use_values) r.length = std::abs(e.value);
    raw.push_back(r);
  }
  if (raw.empty()) throw ParseError("matrix has no off-diagonal entries", lineno);
  return build_graph(raw, build);
}

Graph read_matrix_market(const std::filesystem::path& path, const MatrixMarketOptions& options) {
  auto in = open_in(path);
  return read_matrix_market(in, options);
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  long lineno = 0;
  std::vector<RawEdge> raw;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    long u = 0, v = 0;
    if (!(ss >> u)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError("expected vertex id", lineno);
    }
    if (!(ss >> v)) throw ParseError("expected two vertex ids", lineno);
    if (u < 0 || v < 0) throw ParseError("negative vertex id", lineno);
    RawEdge r;
    r.u = u;
    r.v = v;
    double length = 0;
    if (ss >> length) {
      if (!(length > 0.0) || !std::isfinite(length)) throw ParseError("edge length must be positive", lineno);
      r.length = length;
    } else if (!ss.eof()) {
      throw ParseError("bad edge length", lineno);
    }
    std::string rest;
    if (ss >> rest) throw ParseError("trailing text '" + rest + "'", lineno);
    raw.push_back(r);
  }
  if (raw.empty()) throw ParseError("no edges", lineno);
  return build_graph(raw);
}

Graph read_edge_list(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_edge_list(in);
}

void write_layout_json(const Layout& layout, std::ostream& out) {
  if (layout.dim() > 3) throw InputError("layout JSON holds at most 3 coordinates");
  if (!layout.ids.empty() && static_cast<Index>(layout.ids.size()) != layout.size())
    throw InputError("layout id list does not match its rows");
  std::vector<Index> rows(static_cast<std::size_t>(layout.size()));
  std::iota(rows.begin(), rows.end(), Index{0});
  std::sort(rows.begin(), rows.end(), [&](Index a, Index b) { return layout.id(a) < layout.id(b); });

  out << "{\n  \"algorithm\": " << nlohmann::json(layout.algorithm).dump() << ",\n  \"params\": {";
  bool first = true;
  for (const auto& [key, value] : layout.params) {
    out << (first ? "" : ",") << "\n    " << nlohmann::json(key).dump() << ": " << fmt17(value);
    first = false;
  }
  out << (first ? "}" : "\n  }") << ",\n  \"nodes\": [";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Index row = rows[r];
    out << (r ? "," : "") << "\n    {\"id\": " << layout.id(row);
    for (Index c = 0; c < layout.dim(); ++c) out << ", \"" << kAxes[c] << "\": " << fmt17(layout.positions(row, c));
    out << '}';
  }
  out << (rows.empty() ? "]" : "\n  ]") << "\n}\n";
}

void write_layout_json(const Layout& layout, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_layout_json(layout, out);
  finish(out, path);
}

Layout read_layout_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 1);
  }
  try {
    Layout layout;
    layout.algorithm = doc.value("algorithm", std::string{});
    if (doc.contains("params"))
      for (const auto& [key, value] : doc.at("params").items()) layout.params[key] = value.get<double>();
    const auto& nodes = doc.at("nodes");
    Index dim = 0;
    if (!nodes.empty())
      for (Index c = 0; c < 3; ++c)
        if (nodes.front().contains(kAxes[c])) dim = c + 1;
    layout.positions.resize(static_cast<Index>(nodes.size()), dim);
    bool identity = true;
    for (std::size_t r = 0; r < nodes.size(); ++r) {
      const auto& node = nodes[r];
      const Index id = node.at("id").get<Index>();
      identity = identity && id == static_cast<Index>(r);
      layout.ids.push_back(id);
      for (Index c = 0; c < dim; ++c) layout.positions(static_cast<Index>(r), c) = node.at(kAxes[c]).get<double>();
    }
    if (identity) layout.ids.clear();
    return layout;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad layout document: ") + e.what(), 1);
  }
}

Layout read_layout_json(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_layout_json(in);
}

std::string edge_color(double ratio) {
  const double s = std::clamp(ratio - 0.5, 0.0, 1.0);  // 0 red, 0.5 green, 1 blue
  double r = 0, gr = 0, b = 0;
  if (s <= 0.5) {
    r = 1.0 - 2.0 * s;
    gr = 2.0 * s;
  } else {
    gr = 2.0 - 2.0 * s;
    b = 2.0 * s - 1.0;
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(255 * r)),
                static_cast<int>(std::lround(255 * gr)), static_cast<int>(std::lround(255 * b)));
  return buf;
}

void render_svg(const Graph& g, const Layout& layout, const RenderStyle& style, std::ostream& out) {
  if (layout.dim() != 2) throw InputError("SVG rendering needs a 2-D layout");
  if (layout.size() != g.num_vertices()) throw InputError("layout and graph vertex counts differ");
  const Eigen::MatrixXd& p = layout.positions;
  const Index n = layout.size();

  Eigen::RowVector2d lo = Eigen::RowVector2d::Zero(), hi = Eigen::RowVector2d::Zero();
  if (n > 0) {
    lo = p.colwise().minCoeff();
    hi = p.colwise().maxCoeff();
  }
  double extent = std::max(hi(0) - lo(0), hi(1) - lo(1));
  if (!(extent > 0.0)) extent = 1.0;
  const double margin = 0.05 * extent;
  const double width = std::max(hi(0) - lo(0), 0.0) + 2 * margin;
  const double height = std::max(hi(1) - lo(1), 0.0) + 2 * margin;
  const double radius = style.node_radius > 0 ? style.node_radius : 0.004 * extent;
  const double stroke = style.stroke_width > 0 ? style.stroke_width : 0.002 * extent;

  std::vector<double> ratio(static_cast<std::size_t>(g.num_edges()));
  for (Index e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    const double len = (p.row(ed.u) - p.row(ed.v)).norm();
    ratio[static_cast<std::size_t>(e)] = style.relative_to_target ? len / ed.length : len;
  }
  if (!ratio.empty()) {
    std::vector<double> sorted = ratio;
    const std::size_t mid = sorted.size() / 2;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid), sorted.end());
    double median = sorted[mid];
    if (sorted.size() % 2 == 0)
      median = 0.5 * (median + *std::max_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid)));
    for (auto& r : ratio) r = median > 0 ? r / median : 1.0;
  }

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt6(lo(0) - margin) << ' '
      << fmt6(lo(1) - margin) << ' ' << fmt6(width) << ' ' << fmt6(height) << "\">\n";
  out << "<g stroke-width=\"" << fmt6(stroke) << "\" stroke-linecap=\"round\">\n";
  for (Index e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    out << "<line x1=\"" << fmt6(p(ed.u, 0)) << "\" y1=\"" << fmt6(p(ed.u, 1)) << "\" x2=\"" << fmt6(p(ed.v, 0))
        << "\" y2=\"" << fmt6(p(ed.v, 1)) << "\" stroke=\"" << edge_color(ratio[static_cast<std::size_t>(e)])
        << "\"/>\n";
  }
  out << "</g>\n<g fill=\"#333333\">\n";
  for (Index v = 0; v < n; ++v)
    out << "<circle cx=\"" << fmt6(p(v, 0)) << "\" cy=\"" << fmt6(p(v, 1)) << "\" r=\"" << fmt6(radius) << "\"/>\n";
  out << "</g>\n</svg>\n";
}

void render_svg(const Graph& g, const Layout& layout, const RenderStyle& style, const std::filesystem::path& path) {
  auto out = open_out(path);
  render_svg(g, layout, style, out);
  finish(out, path);
}

}  // namespace coast
