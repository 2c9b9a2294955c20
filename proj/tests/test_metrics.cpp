#include "coast/errors.hpp"
#include "coast/generators.hpp"
#include "coast/metrics.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

using namespace coast;
using Eigen::MatrixXd;

namespace {

MatrixXd line(Index n) {
  MatrixXd p = MatrixXd::Zero(n, 2);
  for (Index i = 0; i < n; ++i) p(i, 0) = double(i);
  return p;
}

MatrixXd grid_positions(Index rows, Index cols) {
  MatrixXd p(rows * cols, 2);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) p.row(r * cols + c) << double(c), double(r);
  return p;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("full stress examples") {
  CHECK(full_stress(generators::path(3), line(3)) == 0.0);
  MatrixXd p(2, 2);
  p << 0, 0, 2, 0;
  CHECK(full_stress(generators::path(2), p) == 1.0);
  CHECK_THROWS_AS(full_stress(generators::path(3), line(3), 2), LimitError);
  CHECK_THROWS_AS(full_stress(generators::path(3), line(4)), InputError);
  Graph split(4, {{0, 1, 1, 1}, {2, 3, 1, 1}});
  CHECK_THROWS_AS(full_stress(split, line(4)), InputError);
}

TEST_CASE("full stress matches pair enumeration and ignores rigid motions") {
  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = testing::random_graph(30, 20, seed, seed % 2 == 0);
    MatrixXd p = oracle::random_layout(30, 2, rng);
    const double s = full_stress(g, p);
    CHECK(std::abs(s - oracle::stress(g, p)) <= 1e-10 * std::max(1.0, s));
    const double theta = 0.37 * double(seed + 1);
    Eigen::Matrix2d rot;
    rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    MatrixXd moved = p * rot.transpose();
    moved.rowwise() += Eigen::RowVector2d(3.5, -1.25);
    CHECK(std::abs(full_stress(g, moved) - s) <= 1e-10 * s);
  }
}

TEST_CASE("optimal scale") {
  CHECK(std::abs(optimal_scale(generators::path(6), line(6)) - 1) <= 1e-10);
  std::mt19937_64 rng(5);
  Graph g = testing::random_graph(25, 20, 3, true);
  MatrixXd p = oracle::random_layout(25, 2, rng);
  const double s = optimal_scale(g, p);
  CHECK(optimal_scale(g, 2 * p) == doctest::Approx(s / 2).epsilon(1e-12));
  CHECK(s == doctest::Approx(oracle::best_scale(g, p)).epsilon(1e-12));
  const double best = full_stress(g, s * p);
  std::uniform_real_distribution<double> u(0.01, 5 * s);
  for (int i = 0; i < 100; ++i) CHECK(best <= full_stress(g, u(rng) * p) + 1e-12);
  const double h = 1e-6 * s;
  const double slope = (full_stress(g, (s + h) * p) - full_stress(g, (s - h) * p)) / (2 * h);
  CHECK(std::abs(slope) <= 1e-8 * std::max(1.0, best / s));
  CHECK(scaled_stress(g, p) == doctest::Approx(best).epsilon(1e-12));
  CHECK_THROWS_AS(optimal_scale(g, MatrixXd::Zero(25, 2)), NumericalError);
}

TEST_CASE("quantiles") {
  CHECK(sorted_quantile({1, 2, 3, 4}, 0.5) == 2.5);
  CHECK(sorted_quantile({1, 2, 3, 4}, 0.25) == 1.75);
  CHECK(sorted_quantile({7}, 0.75) == 7);
  CHECK_THROWS_AS(sorted_quantile({}, 0.5), InputError);
}

TEST_CASE("error chart of exact embeddings is zero") {
  auto chart = error_chart(generators::path(8), line(8));
  CHECK(chart.bin_width == 1);
  CHECK(chart.bins.size() == 7);
  for (const auto& b : chart.bins) {
    CHECK(std::abs(b.median) <= 1e-12);
    CHECK(std::abs(b.min) <= 1e-12);
    CHECK(std::abs(b.max) <= 1e-12);
  }
  CHECK(chart.total_pairs() == 28);
}

TEST_CASE("error chart of K2") {
  MatrixXd p(2, 2);
  p << 0, 0, 3, 0;
  auto chart = error_chart(generators::path(2), p);
  REQUIRE(chart.bins.size() == 1);
  CHECK(chart.bins[0].count == 1);
  CHECK(chart.bins[0].graph_distance == 1);
  // Optimal rescaling makes the single pair exact.
  CHECK(std::abs(chart.bins[0].median) <= 1e-12);
}

TEST_CASE("error chart matches a sort-based oracle") {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const bool weighted = seed % 2 == 1;
    Graph g = testing::random_graph(40, 25, seed, weighted);
    MatrixXd p = oracle::random_layout(40, 2, rng);
    auto chart = error_chart(g, p);
    const double width = weighted ? chart.bin_width : 1.0;
    if (weighted) CHECK(chart.bin_width == oracle::all_pairs(g).maxCoeff() / 50);
    auto ref = oracle::error_bins(g, p, width);
    REQUIRE(chart.bins.size() == ref.size());
    for (std::size_t b = 0; b < ref.size(); ++b) {
      CHECK(chart.bins[b].graph_distance == double(ref[b].index) * width);
      CHECK(chart.bins[b].count == ref[b].count);
      CHECK(std::abs(chart.bins[b].median - ref[b].median) <= 1e-10);
      CHECK(std::abs(chart.bins[b].q25 - ref[b].q25) <= 1e-10);
      CHECK(std::abs(chart.bins[b].q75 - ref[b].q75) <= 1e-10);
      CHECK(std::abs(chart.bins[b].min - ref[b].min) <= 1e-10);
      CHECK(std::abs(chart.bins[b].max - ref[b].max) <= 1e-10);
      CHECK(chart.bins[b].min <= chart.bins[b].q25);
      CHECK(chart.bins[b].q25 <= chart.bins[b].median);
      CHECK(chart.bins[b].median <= chart.bins[b].q75);
      CHECK(chart.bins[b].q75 <= chart.bins[b].max);
    }
    CHECK(chart.total_pairs() == 40 * 39 / 2);
  }
}

TEST_CASE("explicit bin width") {
  auto chart = error_chart(generators::path(10), line(10), 2.0);
  CHECK(chart.bin_width == 2);
  CHECK(chart.bins.front().graph_distance == 2);
  CHECK(chart.total_pairs() == 45);
  CHECK_THROWS_AS(error_chart(generators::path(10), line(10), 0.0), InputError);
}

TEST_CASE("precision of exact embeddings") {
  for (Index k : {1, 2, 5, 10}) CHECK(neighborhood_precision(generators::path(20), line(20), k) == 1.0);
  CHECK(neighborhood_precision(generators::grid(5, 5), grid_positions(5, 5), 4) == 1.0);
  CHECK_THROWS_AS(neighborhood_precision(generators::path(5), line(5), 5), InputError);
  CHECK_THROWS_AS(neighborhood_precision(generators::path(5), line(5), 0), InputError);
}

TEST_CASE("precision of random cycle layouts is near chance") {
  std::mt19937_64 rng(12);
  const Index n = 201;
  double total = 0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) total += neighborhood_precision(generators::cycle(n), oracle::random_layout(n, 2, rng), 1);
  const double mean = total / trials;
  CHECK(mean >= 0.005);
  CHECK(mean <= 0.02);
}

TEST_CASE("precision matches a brute-force oracle") {
  std::mt19937_64 rng(13);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Graph g = testing::random_graph(35, 10 + 5 * static_cast<Index>(seed), seed, seed % 2 == 0);
    MatrixXd p = oracle::random_layout(35, 2, rng);
    for (Index k : {1, 3, 7, 20}) {
      const double ours = neighborhood_precision(g, p, k);
      CHECK(ours == oracle::precision(g, p, k));
      CHECK(ours >= 0);
      CHECK(ours <= 1);
    }
  }
}

TEST_CASE("precision curve") {
  std::mt19937_64 rng(1);
  Graph g = testing::random_graph(30, 10, 4);
  MatrixXd p = oracle::random_layout(30, 2, rng);
  auto curve = precision_curve(g, p, kDefaultPrecisionK);
  REQUIRE(curve.size() == 5);
  CHECK(curve.back().k == 20);
  for (const auto& pt : curve) CHECK(pt.precision == neighborhood_precision(g, p, pt.k));
}

TEST_CASE("csv output") {
  auto chart = error_chart(generators::path(3), line(3));
  std::ostringstream ss;
  write_error_chart_csv(chart, ss);
  const std::string text = ss.str();
  CHECK(text.rfind("bin,median,q25,q75,min,max,count\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  CHECK(text.find("\n2,") != std::string::npos);
  CHECK(text.substr(text.size() - 3) == ",1\n");
  std::ostringstream pc;
  write_precision_csv({{5, 0.25}, {10, 1}}, pc);
  CHECK(pc.str() == "K,precision\n5,0.25\n10,1\n");
}

}
