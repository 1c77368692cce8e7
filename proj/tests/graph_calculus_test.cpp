#include <cmath>

#include "doctest.h"
#include "genus0/graph_calculus.hpp"
#include "support/fixtures.hpp"

using namespace genus0;
namespace tt = genus0::testing;

TEST_CASE("skeleton shares the triangulation edge order") {
  auto oct = tt::octahedron();
  Graph g = skeleton(*oct);
  CHECK(g.n_vertices == 6);
  REQUIRE(g.edges.size() == oct->edges.size());
  for (size_t e = 0; e < g.edges.size(); ++e) CHECK(g.edges[e] == oct->edges[e]);
  for (int v = 0; v < 6; ++v) CHECK(g.adjacency[v].size() == 4);
}

TEST_CASE("induced subgraph of a triangle from K4") {
  Graph k4 = make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  InducedSubgraph s = induced_subgraph(k4, {0, 1, 3});
  CHECK(s.graph.n_vertices == 3);
  CHECK(s.graph.edges.size() == 3);
  CHECK(s.vertex_map == std::vector<int>{0, 1, 3});
  for (size_t e = 0; e < s.graph.edges.size(); ++e) {
    auto [a, b] = s.graph.edges[e];
    auto [pa, pb] = k4.edges[s.edge_map[e]];
    CHECK(s.vertex_map[a] == pa);
    CHECK(s.vertex_map[b] == pb);
  }
}

TEST_CASE("gradient, divergence and laplacian on a path") {
  Graph p3 = make_graph(3, {{0, 1}, {1, 2}});
  EdgeWeight eta{2.0, 3.0};
  std::vector<double> x{1.0, 4.0, 9.0};

  Flow f = gradient(p3, eta, x);
  CHECK(f[0] == 6.0);   // 2 (4 - 1)
  CHECK(f[1] == 15.0);  // 3 (9 - 4)

  std::vector<double> d = divergence(p3, f);
  CHECK(d[0] == 6.0);
  CHECK(d[1] == 9.0);  // -6 + 15
  CHECK(d[2] == -15.0);

  std::vector<double> lap = laplacian_apply(p3, eta, x);
  CHECK(lap == d);  // same expression, same bits
}

TEST_CASE("laplacian matrix agrees with the composed operator") {
  auto oct = tt::octahedron();
  Graph g = skeleton(*oct);
  EdgeWeight eta(g.edges.size());
  for (size_t e = 0; e < eta.size(); ++e) eta[e] = 0.5 + 0.1 * e;
  std::vector<double> x(g.n_vertices);
  for (int v = 0; v < g.n_vertices; ++v) x[v] = std::sin(1.0 + v);

  std::vector<double> applied = laplacian_apply(g, eta, x);
  Eigen::VectorXd xv = Eigen::Map<const Eigen::VectorXd>(x.data(), x.size());
  Eigen::VectorXd mv = laplacian_matrix(g, eta) * xv;
  for (int v = 0; v < g.n_vertices; ++v)
    CHECK(std::abs(applied[v] - mv[v]) < 1e-12);
}

TEST_CASE("laplacian annihilates constants") {
  auto oct = tt::octahedron();
  Graph g = skeleton(*oct);
  EdgeWeight eta(g.edges.size(), 1.75);
  std::vector<double> ones(g.n_vertices, 1.0);
  for (double v : laplacian_apply(g, eta, ones)) CHECK(v == 0.0);
  Eigen::VectorXd mv =
      laplacian_matrix(g, eta) * Eigen::VectorXd::Ones(g.n_vertices);
  for (int v = 0; v < g.n_vertices; ++v) CHECK(std::abs(mv[v]) < 1e-12);
}

namespace {

Eigen::SparseMatrix<double> tridiagonal_spd(int n) {
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < n; ++i) {
    trip.emplace_back(i, i, 2.0 + 0.01 * i);
    if (i + 1 < n) {
      trip.emplace_back(i, i + 1, -1.0);
      trip.emplace_back(i + 1, i, -1.0);
    }
  }
  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(trip.begin(), trip.end());
  return a;
}

}  // namespace

TEST_CASE("solve_spd dense and iterative paths") {
  const int n = 40;
  Eigen::SparseMatrix<double> a = tridiagonal_spd(n);
  Eigen::VectorXd x_true(n);
  for (int i = 0; i < n; ++i) x_true[i] = std::cos(0.3 * i);
  Eigen::VectorXd b = a * x_true;

  SolveOptions dense;  // n < default threshold: dense Cholesky
  Eigen::VectorXd xd = solve_spd(a, b, dense);
  CHECK((a * xd - b).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + b.cwiseAbs().maxCoeff()));
  CHECK((xd - x_true).cwiseAbs().maxCoeff() < 1e-8);

  SolveOptions iterative;
  iterative.dense_threshold = 4;  // force conjugate gradients
  Eigen::VectorXd xi = solve_spd(a, b, iterative);
  CHECK((a * xi - b).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + b.cwiseAbs().maxCoeff()));
  CHECK((xi - x_true).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("solve_spd rejects indefinite and singular input") {
  Eigen::SparseMatrix<double> bad(2, 2);
  std::vector<Eigen::Triplet<double>> trip{{0, 0, 1.0}, {1, 1, -1.0}};
  bad.setFromTriplets(trip.begin(), trip.end());
  CHECK_THROWS_AS(solve_spd(bad, Eigen::VectorXd::Ones(2)), Error);

  // a graph laplacian is singular: constants are in its kernel
  auto oct = tt::octahedron();
  Graph g = skeleton(*oct);
  Eigen::SparseMatrix<double> lap =
      -laplacian_matrix(g, EdgeWeight(g.edges.size(), 1.0));
  bool rejected = false;
  try {
    solve_spd(lap, Eigen::VectorXd::Ones(g.n_vertices));
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::NotPositiveDefinite;
  }
  CHECK(rejected);
}

TEST_CASE("isoperimetric constants by exhaustive enumeration") {
  SUBCASE("complete graph on four vertices") {
    Graph k4 = make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    double c = isoperimetric_constant(k4, std::vector<double>(6, 1.0));
    CHECK(c == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("triangle") {
    Graph t = make_graph(3, {{0, 1}, {0, 2}, {1, 2}});
    double c = isoperimetric_constant(t, std::vector<double>(3, 1.0));
    CHECK(c == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("two-edge path") {
    Graph p3 = make_graph(3, {{0, 1}, {1, 2}});
    double c = isoperimetric_constant(p3, std::vector<double>(2, 1.0));
    CHECK(c == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("single edge") {
    Graph e = make_graph(2, {{0, 1}});
    CHECK(isoperimetric_constant(e, {1.0}) == 0.0);
  }
  SUBCASE("weighted path") {
    // edges (0,1) l=1 and (1,2) l=2: subset {1,2} holds length^2 4 of 5,
    // min(4, 1) = 1 over cut 1^2
    Graph p3 = make_graph(3, {{0, 1}, {1, 2}});
    double c = isoperimetric_constant(p3, {1.0, 2.0});
    CHECK(c == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sampled isoperimetric mode lower-bounds the exhaustive value") {
  Graph k4 = make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  std::vector<double> l(6, 1.0);
  IsoperimetricOptions sampled;
  sampled.mode = IsoperimetricMode::Sampled;
  double cs = isoperimetric_constant(k4, l, sampled);
  double ce = isoperimetric_constant(k4, l);
  CHECK(cs <= ce + 1e-15);
  CHECK(cs > 0.0);
}

TEST_CASE("exhaustive mode is capped") {
  auto oct = tt::octahedron();
  Graph g = skeleton(*oct);
  IsoperimetricOptions opts;
  opts.exhaustive_vertex_cap = 4;
  bool rejected = false;
  try {
    isoperimetric_constant(g, std::vector<double>(g.edges.size(), 1.0), opts);
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::TooLargeForExhaustive;
  }
  CHECK(rejected);
}

TEST_CASE("elliptic ratio") {
  // max |u| = 3, max l = 2, sqrt(sum l^2) = sqrt(4) = 2
  CHECK(elliptic_ratio({3.0, -1.0}, {2.0}) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(elliptic_ratio({}, {1.0}) == 0.0);
}
