#pragma once

#include <memory>
#include <string>
#include <vector>

#include "genus0/graph_calculus.hpp"
#include "genus0/stereo_bridge.hpp"
#include "genus0/tri_mesh.hpp"

namespace genus0 {

// A closed spherical mesh with three marked vertices. The computed map sends
// x to infinity (the north pole), y to 1 and z to 0 under stereographic
// projection.
struct UniformizationProblem {
  MetricMesh mesh;  // spherical flavor, closed sphere topology
  int x = -1, y = -1, z = -1;
};
UniformizationProblem make_problem(MetricMesh mesh, int x, int y, int z);

struct SolverOptions {
  enum class Method { Newton, Continuation };
  Method method = Method::Newton;
  double tolerance = 1e-10;      // on ||K_interior||_inf
  int max_iterations = 100;      // Newton steps per target
  int max_halvings = 30;         // line search
  int continuation_steps = 10;   // implicit Euler steps
  SolveOptions linear;           // inner SPD solver
};

// Boundary values for the punctured problem: for every neighbor i of the
// removed vertex, u_i = log 2 - 2 log(2 sin(l_ix / 2)), expressed on disk
// indices (interior entries are zero).
std::vector<double> dirichlet_data(const UniformizationProblem& problem,
                                   const StarRemoval& removal);

// Admissible starting factor with the prescribed boundary values: discrete
// harmonic extension in the cotangent weights at u = 0, blended toward the
// constant mean boundary value until the scaled mesh is admissible.
std::vector<double> initial_guess(const std::shared_ptr<const Triangulation>& disk,
                                  const std::vector<double>& l,
                                  const std::vector<double>& dirichlet);

struct BvpResult {
  std::vector<double> u;  // disk indices; boundary pinned to the Dirichlet data
  int iterations = 0;
  double residual = 0.0;  // final ||K_interior||_inf
  double min_delaunay_margin = 0.0;
  double min_boundary_curvature = 0.0;
  double update_ratio = 0.0;  // elliptic_ratio of u - u_start
};

// Solves K_interior(u * l) = 0 with u pinned on the boundary. Newton mode
// iterates the linearized system (D - L_interior) delta = -K with a
// backtracking line search that keeps the scaled mesh admissible, keeps
// every interior Delaunay margin positive and reduces the l2 residual
// (termination is on the max norm).
// Continuation mode walks K(u(t)) = (1 - t) K(u_0) in implicit Euler steps,
// each corrected by the same Newton iteration.
BvpResult solve_curvature_bvp(const std::shared_ptr<const Triangulation>& disk,
                              const std::vector<double>& l,
                              const std::vector<double>& dirichlet,
                              const SolverOptions& opts = {});

// Isometric development of a flat disk into the plane. Seed face = the face
// with the lexicographically smallest vertex triple, its lowest vertex at 0,
// the edge toward its smaller neighbor on the positive real axis; faces keep
// their combinatorial orientation (counterclockwise).
struct FlatLayout {
  PlanarLayout layout;
  double consistency_residual;  // max position spread across incident faces
  double diameter;              // max pairwise distance (boundary vertices)
};
FlatLayout layout_flat(const std::shared_ptr<const Triangulation>& disk,
                       const std::vector<double>& l);

// Orientation-preserving similarity sending z_mark to 0 and y_mark to 1.
// Returns the transformed layout and log |g(y) - g(z)| (the scale shift that
// the conformal factor has to absorb).
struct NormalizedLayout {
  PlanarLayout layout;
  double log_dist_yz;
};
NormalizedLayout normalize_layout(const PlanarLayout& q, int y_vertex, int z_vertex);

// Final conformal factor on the parent mesh. Interior and boundary vertices
// take u_i = u_tilde_i - w'_i with w'_i = log((|g_i|^2 + 1)/2); the removed
// apex recovers its value from each neighbor, and those candidates must
// agree to 1e-8. Every parent edge is checked against the chord dictionary
// of the lifted polyhedron (1e-8 relative).
struct AssembledFactor {
  std::vector<double> u;  // parent indices
  double apex_spread;
  double max_dictionary_gap;
};
AssembledFactor assemble_factor(const std::vector<double>& u_tilde,
                                const PlanarLayout& normalized,
                                const InscribedPolyhedron& lifted,
                                const UniformizationProblem& problem,
                                const StarRemoval& removal);

struct UniformizationDiagnostics {
  std::string method;
  int solver_iterations = 0;
  double interior_curvature_residual = 0.0;
  double min_delaunay_margin = 0.0;       // scaled disk, interior edges
  double min_boundary_curvature = 0.0;    // scaled disk boundary
  double layout_consistency_residual = 0.0;
  double layout_diameter = 0.0;
  double apex_spread = 0.0;
  double max_dictionary_gap = 0.0;        // chords vs scaled lengths, relative
  double min_lift_dihedral_margin = 0.0;
  double min_lift_circumcircle_margin = 0.0;
  double min_origin_offset = 0.0;
  double mark_y_error = 0.0;              // |stereo(psi(y)) - 1|
  double mark_z_error = 0.0;              // |stereo(psi(z))|
  double update_ratio = 0.0;
};

struct UniformizationResult {
  std::vector<double> u;            // parent indices
  std::vector<Vec3> sphere_position;  // parent indices; x at the north pole
  InscribedPolyhedron polyhedron;   // disk indices plus apex (last)
  StarRemoval removal;
  UniformizationDiagnostics diag;
};

// Full pipeline: puncture at x, chord lengths, Dirichlet data, curvature
// solve, flat layout, normalization, lift, assembly. Stage failures are
// rethrown with the stage name attached.
UniformizationResult uniformize(const UniformizationProblem& problem,
                                const SolverOptions& opts = {});

}  // namespace genus0
