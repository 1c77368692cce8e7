#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "genus0/graph_calculus.hpp"
#include "genus0/tri_mesh.hpp"

namespace genus0 {

// Vertex scaling of Euclidean lengths: l'_ij = exp((u_i + u_j)/2) l_ij.
// Pure formula; admissibility of the result is the caller's concern.
std::vector<double> scale_euclidean(const Triangulation& tri,
                                    const std::vector<double>& l,
                                    const std::vector<double>& u);

// Vertex scaling of spherical lengths through half-chord coordinates:
// sin(l'/2) = exp((u_i + u_j)/2) sin(l/2). Raises OutOfRange when the scaled
// half-chord reaches 1 (no spherical length exists); never clamps.
std::vector<double> scale_spherical(const Triangulation& tri,
                                    const std::vector<double>& l,
                                    const std::vector<double>& u);

// Cotangent weights of a Euclidean mesh: eta_ij = (cot a_k + cot a_k')/2 on
// interior edges (angles opposite the edge), half of a single cotangent on
// boundary edges. Negative entries mean the edge violates the Delaunay
// condition.
EdgeWeight cotangent_weights(const MetricMesh& m);

// Derivative of the curvature map u -> K(u * l) at u: the negated graph
// Laplacian with weights eta(u * l). Rows sum to zero; the matrix is
// symmetric.
Eigen::SparseMatrix<double> curvature_jacobian(const MetricMesh& m,
                                               const std::vector<double>& u);

// Central-difference verification of curvature_jacobian. Returns
// max_{ij} |analytic_ij - fd_ij| / (1 + |analytic_ij|) over the full dense
// index range; intended for small meshes.
double fd_jacobian_check(const MetricMesh& m, const std::vector<double>& u,
                         double h = 1e-5);

}  // namespace genus0
