#pragma once

#include "coast/graph.hpp"
#include "coast/layout.hpp"

#include <filesystem>
#include <istream>
#include <ostream>

namespace coast {

struct MatrixMarketOptions {
  /// Use |value| of each entry as the edge length (real/integer fields).
  bool values_as_lengths = false;
};

/// Coordinate-format Matrix Market. Square matrices with a symmetric banner
/// or a symmetric pattern become undirected graphs; anything else becomes a
/// bipartite graph on rows (0..R-1) and columns (R..R+C-1). Diagonal entries
/// and repeated pairs are dropped.
Graph read_matrix_market(std::istream& in, const MatrixMarketOptions& options = {});
Graph read_matrix_market(const std::filesystem::path& path, const MatrixMarketOptions& options = {});

/// Lines "i j [length]" with 0-based ids; '#' starts a comment.
Graph read_edge_list(std::istream& in);
Graph read_edge_list(const std::filesystem::path& path);

/// {"algorithm", "params", "nodes": [{"id", "x", "y"}, ...]} with 17
/// significant digits. Nodes are written in increasing id.
void write_layout_json(const Layout& layout, std::ostream& out);
void write_layout_json(const Layout& layout, const std::filesystem::path& path);
Layout read_layout_json(std::istream& in);
Layout read_layout_json(const std::filesystem::path& path);

struct RenderStyle {
  /// Both in layout units; 0 picks a size from the drawing extent.
  double node_radius = 0;
  double stroke_width = 0;
  /// Color by realized/target length instead of realized/median realized.
  bool relative_to_target = false;
};

/// Edge color for a length ratio: red at or below 0.5, green at 1, blue at or
/// above 1.5, linear in between. Returns "#rrggbb".
std::string edge_color(double ratio);

/// 2-D drawing with the viewBox fitted to the bounding box plus a 5% margin.
void render_svg(const Graph& g, const Layout& layout, const RenderStyle& style, std::ostream& out);
void render_svg(const Graph& g, const Layout& layout, const RenderStyle& style, const std::filesystem::path& path);

}  // namespace coast
