#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "genus0/stereo_bridge.hpp"
#include "genus0/tri_mesh.hpp"
#include "genus0/uniformizer.hpp"

namespace genus0 {

// Smooth conformal factor evaluated at unit-sphere points. Test surfaces
// carry the metric e^{2 phi} g_round with marks at the north pole, (1,0,0)
// and the south pole; the exact uniformization factor is then -phi.
using SmoothFactor = std::function<double(const Vec3&)>;

struct SpherePoints {
  std::shared_ptr<const Triangulation> tri;
  std::vector<Vec3> position;  // unit vectors
};

// Midpoint subdivision with central projection back to the sphere. Original
// vertices keep their indices; midpoints are appended in edge order.
SpherePoints subdivide_projected(const SpherePoints& base);

// Octahedron subdivided `level` times and projected to the unit sphere:
// 4 * 4^level + 2 vertices; (0,0,+-1) and (+-1,0,0), (0,+-1,0) are vertices
// at every level.
SpherePoints octasphere(int level);

// Indices of the conventional marks north pole, (1,0,0), south pole.
std::array<int, 3> canonical_marks(const SpherePoints& s);

enum class LengthMode { VertexScaled, Integrated };
struct LengthOptions {
  LengthMode mode = LengthMode::VertexScaled;
  int samples = 8;  // midpoint-rule panels for Integrated
};

// Spherical edge lengths of the metric e^{2 phi} g_round. VertexScaled uses
// l = e^{(phi_i + phi_j)/2} * arc(i, j); Integrated integrates e^{phi} along
// the round great-circle arc with a composite midpoint rule. Both are cubic
// approximations of the true geodesic distance.
std::vector<double> metric_lengths(const SpherePoints& s, const SmoothFactor& phi,
                                   const LengthOptions& opts = {});

// Exact factor for the test surface: -phi at each vertex. Requires the three
// conventional marks to exist as vertices.
std::vector<double> ground_truth_factor(const SpherePoints& s, const SmoothFactor& phi);

struct ConvergenceRow {
  int level = 0;
  double max_arc = 0.0;      // |l|: longest round edge arc
  double regularity = 0.0;   // epsilon of the spherical mesh
  double err_inf = 0.0;      // ||u - u_exact||_inf
  double ratio = 0.0;        // err / previous err (NaN on the first row)
  double slope = 0.0;        // least-squares slope of log err vs log |l| so far
  double curvature_residual = 0.0;
  double min_dihedral_margin = 0.0;
  double min_circumcircle_margin = 0.0;
  double min_origin_offset = 0.0;
  int iterations = 0;
};

struct ConvergenceOptions {
  LengthOptions lengths;
  SolverOptions solver;
  int jobs = 1;  // levels are independent and may run on separate threads
  ConvergenceOptions() { solver.linear.dense_threshold = 2000; }
};

// Uniformizes the test surface across ascending octasphere levels and
// reports the error against the exact factor together with the solver and
// certificate diagnostics of each run.
std::vector<ConvergenceRow> convergence_experiment(const SmoothFactor& phi,
                                                   const std::vector<int>& levels,
                                                   const ConvergenceOptions& opts = {});

}  // namespace genus0
