#include "genus0/graph_calculus.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>

namespace genus0 {

Graph make_graph(int n_vertices, std::vector<std::array<int, 2>> edges) {
  if (n_vertices <= 0) fail(ErrorCode::OutOfRange, "graph needs vertices");
  for (auto& e : edges) {
    if (e[0] > e[1]) std::swap(e[0], e[1]);
    if (e[0] < 0 || e[1] >= n_vertices || e[0] == e[1])
      fail(ErrorCode::OutOfRange, "edge endpoints out of range");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    fail(ErrorCode::OutOfRange, "duplicate edge");

  Graph g;
  g.n_vertices = n_vertices;
  g.edges = std::move(edges);
  g.adjacency.assign(n_vertices, {});
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto [i, j] = g.edges[e];
    g.adjacency[i].push_back({j, static_cast<int>(e)});
    g.adjacency[j].push_back({i, static_cast<int>(e)});
  }
  for (auto& row : g.adjacency) std::sort(row.begin(), row.end());
  return g;
}

Graph skeleton(const Triangulation& tri) {
  return make_graph(tri.n_vertices, tri.edges);
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& keep) {
  std::vector<int> to_sub(g.n_vertices, -1);
  InducedSubgraph s;
  s.vertex_map = keep;
  for (size_t i = 0; i < keep.size(); ++i) {
    int v = keep[i];
    if (v < 0 || v >= g.n_vertices || to_sub[v] >= 0)
      fail(ErrorCode::OutOfRange, "bad vertex subset");
    to_sub[v] = static_cast<int>(i);
  }
  std::vector<std::array<int, 2>> edges;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    int a = to_sub[g.edges[e][0]], b = to_sub[g.edges[e][1]];
    if (a >= 0 && b >= 0) {
      edges.push_back({std::min(a, b), std::max(a, b)});
      s.edge_map.push_back(static_cast<int>(e));
    }
  }
  // make_graph sorts edges; sort edge_map along with them
  std::vector<size_t> order(edges.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return edges[a] < edges[b]; });
  std::vector<std::array<int, 2>> sorted_edges(edges.size());
  std::vector<int> sorted_map(edges.size());
  for (size_t i = 0; i < order.size(); ++i) {
    sorted_edges[i] = edges[order[i]];
    sorted_map[i] = s.edge_map[order[i]];
  }
  s.edge_map = std::move(sorted_map);
  s.graph = make_graph(static_cast<int>(keep.size()), std::move(sorted_edges));
  return s;
}

Flow gradient(const Graph& g, const EdgeWeight& eta, const std::vector<double>& x) {
  Flow f(g.edges.size());
  for (size_t e = 0; e < g.edges.size(); ++e)
    f[e] = eta[e] * (x[g.edges[e][1]] - x[g.edges[e][0]]);
  return f;
}

std::vector<double> divergence(const Graph& g, const Flow& f) {
  std::vector<double> d(g.n_vertices, 0.0);
  for (size_t e = 0; e < g.edges.size(); ++e) {
    d[g.edges[e][0]] += f[e];
    d[g.edges[e][1]] -= f[e];
  }
  return d;
}

std::vector<double> laplacian_apply(const Graph& g, const EdgeWeight& eta,
                                    const std::vector<double>& x) {
  return divergence(g, gradient(g, eta, x));
}

Eigen::SparseMatrix<double> laplacian_matrix(const Graph& g, const EdgeWeight& eta) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(g.edges.size() * 4);
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto [i, j] = g.edges[e];
    double w = eta[e];
    trip.emplace_back(i, j, w);
    trip.emplace_back(j, i, w);
    trip.emplace_back(i, i, -w);
    trip.emplace_back(j, j, -w);
  }
  Eigen::SparseMatrix<double> m(g.n_vertices, g.n_vertices);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

namespace {

double inf_norm(const Eigen::VectorXd& v) {
  return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

double inf_norm(const Eigen::SparseMatrix<double>& a) {
  Eigen::VectorXd row = Eigen::VectorXd::Zero(a.rows());
  for (int k = 0; k < a.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, k); it; ++it)
      row[it.row()] += std::abs(it.value());
  return row.size() ? row.maxCoeff() : 0.0;
}

}  // namespace

Eigen::VectorXd solve_spd(const Eigen::SparseMatrix<double>& a,
                          const Eigen::VectorXd& b, const SolveOptions& opts) {
  const auto n = a.rows();
  if (n != a.cols() || n != b.size())
    fail(ErrorCode::OutOfRange, "system dimensions do not match");
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(a.coeff(i, i) > 0.0))
      fail(ErrorCode::NotPositiveDefinite,
           "nonpositive diagonal entry at row " + std::to_string(i));

  const double target = 1e-10 * (1.0 + inf_norm(b));
  Eigen::VectorXd x;

  if (n <= opts.dense_threshold) {
    Eigen::MatrixXd dense(a);
    Eigen::LLT<Eigen::MatrixXd> llt(dense);
    if (llt.info() != Eigen::Success)
      fail(ErrorCode::NotPositiveDefinite, "Cholesky factorization failed");
    // A singular matrix can slip through with a roundoff-scale last pivot.
    Eigen::VectorXd piv = llt.matrixLLT().diagonal();
    const double eps = std::numeric_limits<double>::epsilon();
    if (!(piv.minCoeff() > std::sqrt(1e3 * static_cast<double>(n) * eps) * piv.maxCoeff()))
      fail(ErrorCode::NotPositiveDefinite,
           "Cholesky pivot collapse: matrix is numerically singular");
    x = llt.solve(b);
    for (int step = 0; step < opts.max_refinement_steps; ++step) {
      Eigen::VectorXd r = b - a * x;
      if (inf_norm(r) <= target) break;
      x += llt.solve(r).eval();
    }
  } else {
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>,
                             Eigen::Lower | Eigen::Upper>
        cg;
    cg.setTolerance(opts.cg_relative_residual);
    cg.setMaxIterations(20 * n);
    cg.compute(a);
    x = cg.solve(b);
    for (int step = 0; step < opts.max_refinement_steps; ++step) {
      Eigen::VectorXd r = b - a * x;
      if (inf_norm(r) <= target) break;
      x += cg.solve(r).eval();
    }
  }

  Eigen::VectorXd r = b - a * x;
  // The computed residual certifies nothing once eps ||A|| ||x|| reaches the
  // target: a wildly amplified x can round b - A x to zero.
  const double verification_floor =
      std::numeric_limits<double>::epsilon() * inf_norm(a) * inf_norm(x);
  if (!(inf_norm(r) <= target) || !(verification_floor <= target) || !x.allFinite())
    fail(ErrorCode::NotPositiveDefinite,
         "residual target not reached; matrix is not positive definite "
         "or is numerically singular");
  return x;
}

double isoperimetric_constant(const Graph& g, const std::vector<double>& l,
                              const IsoperimetricOptions& opts) {
  if (l.size() != g.edges.size())
    fail(ErrorCode::OutOfRange, "one length per edge required");
  for (double x : l)
    if (!(x > 0.0)) fail(ErrorCode::OutOfRange, "lengths must be positive");

  {  // connectivity is assumed by the definition; check it up front
    std::vector<char> seen(g.n_vertices, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [u, e] : g.adjacency[v])
        if (!seen[u]) {
          seen[u] = 1;
          ++visited;
          stack.push_back(u);
        }
    }
    if (visited != g.n_vertices)
      fail(ErrorCode::HypothesisViolated, "graph must be connected");
  }

  double total = 0.0;
  for (double x : l) total += x * x;

  if (opts.mode == IsoperimetricMode::Exhaustive) {
    if (g.n_vertices > opts.exhaustive_vertex_cap)
      fail(ErrorCode::TooLargeForExhaustive,
           "exhaustive enumeration capped at " +
               std::to_string(opts.exhaustive_vertex_cap) + " vertices");
    const int n = g.n_vertices;
    const uint64_t full = (n == 64) ? ~0ull : ((1ull << n) - 1);
    double best = 0.0;
    for (uint64_t mask = 1; mask < full; ++mask) {
      double inside = 0.0, cut = 0.0;
      for (size_t e = 0; e < g.edges.size(); ++e) {
        bool a = (mask >> g.edges[e][0]) & 1;
        bool b = (mask >> g.edges[e][1]) & 1;
        if (a && b)
          inside += l[e] * l[e];
        else if (a != b)
          cut += l[e];
      }
      if (cut <= 0.0) continue;  // unreachable on a connected graph
      best = std::max(best, std::min(inside, total - inside) / (cut * cut));
    }
    return best;
  }

  // Sampled: grow balls in breadth-first order from random seeds and score
  // each prefix together with its complement. Lower bound only.
  std::mt19937_64 rng(opts.rng_seed);
  std::uniform_int_distribution<int> pick(0, g.n_vertices - 1);
  double best = 0.0;
  std::vector<char> inside_set(g.n_vertices);
  for (int trial = 0; trial < opts.sample_seeds; ++trial) {
    int seed = pick(rng);
    std::fill(inside_set.begin(), inside_set.end(), 0);
    std::queue<int> q;
    q.push(seed);
    std::vector<char> queued(g.n_vertices, 0);
    queued[seed] = 1;
    double inside = 0.0, cut_l = 0.0, cut_sq = 0.0;
    int count = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (auto [u, e] : g.adjacency[v]) {
        if (inside_set[u]) {
          cut_l -= l[e];
          cut_sq -= l[e] * l[e];
          inside += l[e] * l[e];
        } else {
          cut_l += l[e];
          cut_sq += l[e] * l[e];
        }
        if (!queued[u]) {
          queued[u] = 1;
          q.push(u);
        }
      }
      inside_set[v] = 1;
      ++count;
      if (count == g.n_vertices || cut_l <= 0.0) break;
      best = std::max(best, std::min(inside, total - inside) / (cut_l * cut_l));
      double comp_inside = total - inside - cut_sq;
      best = std::max(best,
                      std::min(comp_inside, total - comp_inside) / (cut_l * cut_l));
    }
  }
  return best;
}

double elliptic_ratio(const std::vector<double>& u, const std::vector<double>& l) {
  double umax = 0.0;
  for (double x : u) umax = std::max(umax, std::abs(x));
  double lmax = 0.0, sq = 0.0;
  for (double x : l) {
    lmax = std::max(lmax, x);
    sq += x * x;
  }
  if (lmax <= 0.0 || sq <= 0.0) return 0.0;
  return umax / (lmax * std::sqrt(sq));
}

}  // namespace genus0
