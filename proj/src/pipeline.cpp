#include "coast/pipeline.hpp"

#include "coast/errors.hpp"

#include <chrono>
#include <iostream>
#include <sstream>

namespace coast {

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(Timings& t) : timings_(t), start_(std::chrono::steady_clock::now()) {}

  void lap(const std::string& phase) {
    const auto now = std::chrono::steady_clock::now();
    timings_.phases.emplace_back(phase, std::chrono::duration<double>(now - start_).count());
    start_ = now;
  }

  void reset() { start_ = std::chrono::steady_clock::now(); }

 private:
  Timings& timings_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

Algorithm parse_algorithm(const std::string& name) {
  if (name == "coast") return Algorithm::coast;
  if (name == "pivotmds") return Algorithm::pivotmds;
  if (name == "pivotmds1") return Algorithm::pivotmds1;
  if (name == "fsm") return Algorithm::fsm;
  throw InputError("unknown algorithm '" + name + "'");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::coast:
      return "coast";
    case Algorithm::pivotmds:
      return "pivotmds";
    case Algorithm::pivotmds1:
      return "pivotmds1";
    case Algorithm::fsm:
      return "fsm";
  }
  return "unknown";
}

double Timings::total() const {
  double s = 0.0;
  for (const auto& p : phases) s += p.second;
  return s;
}

double Timings::get(const std::string& phase) const {
  double s = 0.0;
  for (const auto& p : phases)
    if (p.first == phase) s += p.second;
  return s;
}

CoastRun run_coast(const Graph& g, const CoastOptions& options) {
  const Index n = g.num_vertices();
  const Index dim = options.model.dim;
  if (dim < 1) throw InputError("dimension must be positive");
  CoastRun run;
  run.t = options.model.t;
  run.layout.algorithm = "coast";
  run.layout.positions = Eigen::MatrixXd::Zero(n, dim);
  if (n <= 1) return run;

  Stopwatch clock(run.timings);
  EigenOptions eig = options.eigen;
  eig.k = std::min(options.model.k, n - 1);
  const auto basis = smallest_k_eigenpairs<double>(build_laplacian<double>(g), eig);
  run.k = basis.size();
  clock.lap("eigenbasis");

  ModelParams params = options.model;
  params.k = run.k;
  for (int attempt = 0;; ++attempt) {
    const auto form = assemble<double>(g, basis, params);
    clock.lap("assemble");
    if (attempt == 0 && options.sqlp_path) {
      export_sqlp(assemble_sqlp(form), *options.sqlp_path);
      clock.lap("sqlp");
    }
    try {
      run.solution = minimize(form, options.solver);
      clock.lap("solve");
      break;
    } catch (const UnboundedError&) {
      clock.lap("solve");
      if (attempt >= options.max_halvings) {
        std::ostringstream msg;
        msg << "objective unbounded below at t = " << params.t;
        throw UnboundedError(msg.str());
      }
      std::clog << "coast: warning: objective unbounded at t = " << params.t << ", retrying with t = "
                << params.t / 2 << '\n';
      params.t /= 2;
    }
  }
  run.t = params.t;

  const Index used = std::min(dim, run.k);
  const Layout recovered = recover_positions(basis, run.solution, used);
  run.layout.positions.leftCols(used) = recovered.positions;
  run.layout.params = {{"k", static_cast<double>(run.k)},
                       {"t", run.t},
                       {"iterations", static_cast<double>(run.solution.iterations)},
                       {"seed", static_cast<double>(options.eigen.seed)}};
  clock.lap("recover");
  return run;
}

RunResult run_layout(const Graph& g, const RunOptions& options) {
  RunResult result;
  Stopwatch clock(result.timings);
  const auto comp = largest_component(g);
  result.dropped_vertices = comp.dropped_vertices;
  if (comp.dropped_vertices > 0)
    std::clog << "coast: warning: laying out the largest component, " << comp.dropped_vertices
              << " vertices dropped\n";
  const Graph& h = comp.graph;
  clock.lap("component");

  PivotMdsOptions pivot = options.pivot;
  pivot.dim = options.dim;
  pivot.seed = options.seed;

  switch (options.algorithm) {
    case Algorithm::coast: {
      CoastOptions co = options.coast;
      co.model.dim = options.dim;
      co.eigen.seed = options.seed;
      co.solver.seed = options.seed;
      auto run = run_coast(h, co);
      result.layout = run.layout;
      for (const auto& p : run.timings.phases) result.timings.phases.push_back(p);
      result.coast = std::move(run);
      clock.reset();
      break;
    }
    case Algorithm::pivotmds:
      result.layout = pivot_mds(h, pivot);
      clock.lap("pivotmds");
      break;
    case Algorithm::pivotmds1: {
      const Layout init = pivot_mds(h, pivot);
      clock.lap("pivotmds");
      result.layout = sparse_stress_majorization(h, init, options.sparse).layout;
      clock.lap("sparse_stress");
      break;
    }
    case Algorithm::fsm: {
      if (h.num_vertices() > options.full.max_vertices)
        throw LimitError("full stress majorization on " + std::to_string(h.num_vertices()) +
                         " vertices exceeds the guard of " + std::to_string(options.full.max_vertices) +
                         "; use PivotMDS for large graphs");
      const Layout init = pivot_mds(h, pivot);
      clock.lap("pivotmds");
      result.layout = full_stress_majorization(h, init, options.full).layout;
      clock.lap("full_stress");
      break;
    }
  }
  result.layout.ids = comp.new_to_old;
  return result;
}

}  // namespace coast
