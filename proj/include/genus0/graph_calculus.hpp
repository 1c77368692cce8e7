#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <array>
#include <vector>

#include "genus0/error.hpp"
#include "genus0/tri_mesh.hpp"

namespace genus0 {

// Weighted graph carrier for the discrete calculus. Edges are canonical
// sorted pairs in lexicographic order (matching Triangulation edge indexing
// when built by skeleton()).
struct Graph {
  int n_vertices = 0;
  std::vector<std::array<int, 2>> edges;
  // adjacency[v] = (neighbor, edge index), sorted by neighbor
  std::vector<std::vector<std::array<int, 2>>> adjacency;
};

Graph make_graph(int n_vertices, std::vector<std::array<int, 2>> edges);

// 1-skeleton of a triangulation; shares its edge indexing, so per-edge
// vectors carry over unchanged.
Graph skeleton(const Triangulation& tri);

// Subgraph induced on `keep` (parent vertex ids). vertex_map/edge_map relate
// sub indices back to parent indices.
struct InducedSubgraph {
  Graph graph;
  std::vector<int> vertex_map;  // sub vertex -> parent vertex
  std::vector<int> edge_map;    // sub edge -> parent edge
};
InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& keep);

// Per-edge values x_ij for the canonical orientation i < j; the reverse
// orientation is -x_ij. Functions on vertices are plain vectors.
using Flow = std::vector<double>;
using EdgeWeight = std::vector<double>;

// (grad x)_ij = eta_ij (x_j - x_i), stored on the canonical orientation.
Flow gradient(const Graph& g, const EdgeWeight& eta, const std::vector<double>& x);

// (div F)_i = sum over neighbors j of F_ij.
std::vector<double> divergence(const Graph& g, const Flow& f);

// Laplacian as the literal composition divergence(gradient(.)): the two
// always agree to the bit because they are the same expression.
std::vector<double> laplacian_apply(const Graph& g, const EdgeWeight& eta,
                                    const std::vector<double>& x);

// Same operator assembled as a sparse matrix (for building linear systems).
Eigen::SparseMatrix<double> laplacian_matrix(const Graph& g, const EdgeWeight& eta);

struct SolveOptions {
  // At or below this many unknowns the solve is a dense Cholesky
  // factorization; above it, conjugate gradients.
  int dense_threshold = 5000;
  double cg_relative_residual = 1e-12;
  int max_refinement_steps = 4;
};

// Solves A x = b for symmetric positive definite A. The returned x satisfies
// ||A x - b||_inf <= 1e-10 (1 + ||b||_inf); iterative refinement runs until
// that holds. Raises NotPositiveDefinite when the factorization or the
// iteration exposes an indefinite or singular matrix, including when the
// conditioning is too poor for the residual bound to be certified at all.
Eigen::VectorXd solve_spd(const Eigen::SparseMatrix<double>& a,
                          const Eigen::VectorXd& b,
                          const SolveOptions& opts = {});

enum class IsoperimetricMode { Exhaustive, Sampled };

struct IsoperimetricOptions {
  IsoperimetricMode mode = IsoperimetricMode::Exhaustive;
  int exhaustive_vertex_cap = 22;
  int sample_seeds = 8;
  unsigned long long rng_seed = 20260816ull;
};

// Smallest C with min{|V0|_l, |V|_l - |V0|_l} <= C |bd V0|_l^2 over vertex
// subsets V0, where |V0|_l sums l^2 over edges with both ends in V0 and
// |bd V0|_l sums l over cut edges. Exhaustive mode enumerates every proper
// subset (vertex count capped); sampled mode grows balls from random seeds
// and sweeps their complements, which yields a lower bound on C.
double isoperimetric_constant(const Graph& g, const std::vector<double>& l,
                              const IsoperimetricOptions& opts = {});

// Diagnostic ratio ||u||_inf / (max_e l_e * sqrt(sum_e l_e^2)); reported by
// the solver as a scale-free measure of how large the update was.
double elliptic_ratio(const std::vector<double>& u, const std::vector<double>& l);

}  // namespace genus0
