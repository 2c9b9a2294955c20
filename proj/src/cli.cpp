#include "coast/cli.hpp"

#include "coast/errors.hpp"
#include "coast/io.hpp"
#include "coast/metrics.hpp"
#include "coast/pipeline.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace coast {

namespace {

struct InputArgs {
  std::string path;
  std::string format = "auto";
  bool use_values = false;
};

void add_input(CLI::App* app, InputArgs& in) {
  app->add_option("--input", in.path, "Graph file")->required();
  app->add_option("--format", in.format, "mm, edges or auto (by extension)")
      ->check(CLI::IsMember({"auto", "mm", "edges"}));
  app->add_flag("--use-values", in.use_values, "Matrix Market: use |value| as edge length");
}

Graph load_graph(const InputArgs& in) {
  std::string format = in.format;
  if (format == "auto") {
    const auto ext = std::filesystem::path(in.path).extension().string();
    format = (ext == ".mtx" || ext == ".mm") ? "mm" : "edges";
  }
  if (format == "mm") return read_matrix_market(std::filesystem::path(in.path), {in.use_values});
  return read_edge_list(std::filesystem::path(in.path));
}

/// Layout rows reordered to the vertex order of the graph's largest
/// component; every component vertex must appear exactly once.
Eigen::MatrixXd align(const ComponentExtraction& comp, const Layout& layout) {
  const Index n = comp.graph.num_vertices();
  if (layout.size() != n)
    throw InputError("layout has " + std::to_string(layout.size()) + " nodes, graph component has " +
                     std::to_string(n));
  Eigen::MatrixXd p(n, layout.dim());
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Index r = 0; r < layout.size(); ++r) {
    const Index id = layout.id(r);
    if (id < 0 || id >= static_cast<Index>(comp.old_to_new.size()) || comp.old_to_new[static_cast<std::size_t>(id)] < 0)
      throw InputError("layout node " + std::to_string(id) + " is not in the graph's largest component");
    const Index v = comp.old_to_new[static_cast<std::size_t>(id)];
    if (seen[static_cast<std::size_t>(v)]++) throw InputError("layout node " + std::to_string(id) + " repeated");
    p.row(v) = layout.positions.row(r);
  }
  return p;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename F>
void with_output(const std::string& path, std::ostream& stdout_stream, F&& f) {
  if (path == "-") {
    f(stdout_stream);
    return;
  }
  std::ofstream file(path);
  if (!file) throw IoError("cannot open " + path + " for writing");
  f(file);
  file.flush();
  if (!file) throw IoError("failed writing " + path);
}

std::vector<Index> parse_k_list(const std::string& text) {
  std::vector<Index> ks;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      const long k = std::stol(item, &used);
      if (used != item.size() || k < 1) throw std::invalid_argument(item);
      ks.push_back(k);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--precision", "bad K list '" + text + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return ks;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"COAST graph layout and evaluation"};
  app.require_subcommand(1);

  // layout
  auto* layout_cmd = app.add_subcommand("layout", "Compute a layout and write it as JSON");
  InputArgs layout_in;
  add_input(layout_cmd, layout_in);
  std::string algorithm = "coast";
  RunOptions run;
  std::string layout_out;
  std::string sqlp_out;
  std::optional<double> lambda;
  Index pivots = 0;
  layout_cmd->add_option("--algorithm", algorithm)->check(CLI::IsMember({"coast", "pivotmds", "pivotmds1", "fsm"}));
  layout_cmd->add_option("--k", run.coast.model.k, "Number of Laplacian eigenvectors")->check(CLI::PositiveNumber);
  layout_cmd->add_option("--t", run.coast.model.t, "Dispersion weight")->check(CLI::NonNegativeNumber);
  layout_cmd->add_option("--lambda", lambda, "Override the term-balance factor")->check(CLI::PositiveNumber);
  layout_cmd->add_option("--dim", run.dim, "Embedding dimension (the tool supports 2)");
  layout_cmd->add_option("--pivots", pivots, "PivotMDS pivot count (0: min(50, n))")->check(CLI::NonNegativeNumber);
  layout_cmd->add_option("--seed", run.seed);
  layout_cmd->add_option("--max-iters", run.coast.solver.max_iters, "Solver iteration cap")
      ->check(CLI::PositiveNumber);
  layout_cmd->add_option("--max-n", run.full.max_vertices, "All-pairs guard for fsm");
  layout_cmd->add_option("--sqlp", sqlp_out, "Also export the conic reformulation (coast)");
  layout_cmd->add_option("--out", layout_out, "Output JSON ('-' for stdout)")->required();

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "Evaluate a layout");
  InputArgs metrics_in;
  add_input(metrics_cmd, metrics_in);
  std::string metrics_layout;
  bool want_stress = false;
  std::string chart_out;
  std::optional<double> bin_width;
  std::vector<std::string> precision_args;
  Index max_n = kMetricGuard;
  metrics_cmd->add_option("--layout", metrics_layout)->required();
  metrics_cmd->add_flag("--stress", want_stress, "Print the full stress after optimal rescaling");
  metrics_cmd->add_option("--error-chart", chart_out, "Error chart CSV");
  metrics_cmd->add_option("--bin-width", bin_width)->check(CLI::PositiveNumber);
  metrics_cmd->add_option("--precision", precision_args, "K list and CSV path, e.g. 5,10,20 out.csv")
      ->expected(2);
  metrics_cmd->add_option("--max-n", max_n, "All-pairs guard");

  // render
  auto* render_cmd = app.add_subcommand("render", "Draw a layout as SVG");
  InputArgs render_in;
  add_input(render_cmd, render_in);
  std::string render_layout, render_out, color_by = "realized";
  RenderStyle style;
  render_cmd->add_option("--layout", render_layout)->required();
  render_cmd->add_option("--out", render_out)->required();
  render_cmd->add_option("--color-by", color_by)->check(CLI::IsMember({"realized", "target"}));
  render_cmd->add_option("--node-radius", style.node_radius)->check(CLI::NonNegativeNumber);
  render_cmd->add_option("--stroke-width", style.stroke_width)->check(CLI::NonNegativeNumber);

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "Run several algorithms and tabulate stress and time");
  InputArgs compare_in;
  add_input(compare_cmd, compare_in);
  std::vector<std::string> algorithms{"pivotmds", "pivotmds1", "coast", "fsm"};
  RunOptions compare_run;
  std::string compare_out = "-";
  Index compare_max_n = kMetricGuard;
  compare_cmd->add_option("--algorithms", algorithms)
      ->delimiter(',')
      ->check(CLI::IsMember({"coast", "pivotmds", "pivotmds1", "fsm"}));
  compare_cmd->add_option("--k", compare_run.coast.model.k)->check(CLI::PositiveNumber);
  compare_cmd->add_option("--t", compare_run.coast.model.t)->check(CLI::NonNegativeNumber);
  compare_cmd->add_option("--pivots", compare_run.pivot.num_pivots)->check(CLI::NonNegativeNumber);
  compare_cmd->add_option("--seed", compare_run.seed);
  compare_cmd->add_option("--max-n", compare_max_n, "All-pairs guard for stress and fsm");
  compare_cmd->add_option("--out", compare_out, "CSV path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*layout_cmd) {
      if (run.dim != 2) throw CLI::ValidationError("--dim", "only 2-D layouts are supported");
      if (!sqlp_out.empty() && algorithm != "coast")
        throw CLI::ValidationError("--sqlp", "only applies to --algorithm coast");
      run.algorithm = parse_algorithm(algorithm);
      run.pivot.num_pivots = pivots;
      run.coast.model.lambda = lambda;
      if (!sqlp_out.empty()) run.coast.sqlp_path = sqlp_out;
      const Graph g = load_graph(layout_in);
      const auto result = run_layout(g, run);
      for (const auto& [phase, seconds] : result.timings.phases)
        err << "coast: " << phase << ' ' << fmt(seconds) << " s\n";
      with_output(layout_out, out, [&](std::ostream& s) { write_layout_json(result.layout, s); });
      return kExitOk;
    }

    if (*metrics_cmd) {
      if (!want_stress && chart_out.empty() && precision_args.empty())
        throw CLI::ValidationError("metrics", "choose at least one of --stress, --error-chart, --precision");
      std::vector<Index> ks;
      if (!precision_args.empty()) ks = parse_k_list(precision_args[0]);
      const auto comp = largest_component(load_graph(metrics_in));
      const Eigen::MatrixXd p = align(comp, read_layout_json(std::filesystem::path(metrics_layout)));
      if (want_stress) out << fmt(scaled_stress(comp.graph, p, max_n)) << '\n';
      if (!chart_out.empty()) {
        const auto chart = error_chart(comp.graph, p, bin_width, max_n);
        with_output(chart_out, out, [&](std::ostream& s) { write_error_chart_csv(chart, s); });
      }
      if (!precision_args.empty()) {
        const auto curve = precision_curve(comp.graph, p, ks, max_n);
        with_output(precision_args[1], out, [&](std::ostream& s) { write_precision_csv(curve, s); });
      }
      return kExitOk;
    }

    if (*render_cmd) {
      style.relative_to_target = color_by == "target";
      const auto comp = largest_component(load_graph(render_in));
      Layout layout = read_layout_json(std::filesystem::path(render_layout));
      layout.positions = align(comp, layout);
      layout.ids.clear();
      render_svg(comp.graph, layout, style, std::filesystem::path(render_out));
      return kExitOk;
    }

    if (*compare_cmd) {
      const Graph g = load_graph(compare_in);
      const auto comp = largest_component(g);
      compare_run.full.max_vertices = compare_max_n;
      std::vector<std::pair<std::string, std::pair<double, double>>> rows;
      for (const auto& name : algorithms) {
        compare_run.algorithm = parse_algorithm(name);
        const auto started = std::chrono::steady_clock::now();
        const auto result = run_layout(g, compare_run);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        rows.push_back({name, {scaled_stress(comp.graph, align(comp, result.layout), compare_max_n), seconds}});
      }
      with_output(compare_out, out, [&](std::ostream& s) {
        s << "algorithm,stress,seconds\n";
        for (const auto& [name, vals] : rows) s << name << ',' << fmt(vals.first) << ',' << fmt(vals.second) << '\n';
      });
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    err << "coast: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LimitError& e) {
    err << "coast: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "coast: " << e.what() << '\n';
    return kExitInput;
  } catch (const IoError& e) {
    err << "coast: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalError& e) {
    err << "coast: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "coast: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace coast
