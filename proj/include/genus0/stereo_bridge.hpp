#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <vector>

#include "genus0/tri_mesh.hpp"

namespace genus0 {

using Vec3 = Eigen::Vector3d;
using Complex = std::complex<double>;

// Stereographic projection from the north pole (0,0,1) to the equatorial
// plane read as C: p -> (x + iy) / (1 - z). Raises AtPole near the pole.
Complex stereo_project(const Vec3& p);

// Inverse: z -> (2 Re z, 2 Im z, |z|^2 - 1) / (|z|^2 + 1). Always lands on
// the unit sphere; 0 maps to the south pole, infinity would map to the north.
Vec3 stereo_unproject(const Complex& z);

// p / |p|. Raises ZeroVector for vanishing input.
Vec3 central_project(const Vec3& p);

// Per-vertex log scale picked up by stereographic projection:
// w_i = log(2 / |p_i - N|^2) = log((|stereo(p_i)|^2 + 1) / 2).
// Projected plane distances factor as |z_i - z_j| = e^{(w_i+w_j)/2} |p_i - p_j|.
std::vector<double> projection_factor(const std::vector<Vec3>& positions);

// Convex triangular polyhedron inscribed in the unit sphere, vertices on the
// sphere, origin strictly inside. Construction only checks unit norms (to
// 1e-10); convexity is certified separately by verify_inscribed.
struct InscribedPolyhedron {
  std::shared_ptr<const Triangulation> tri;  // closed sphere
  std::vector<Vec3> position;                // unit vectors
  std::vector<double> chord_length;          // per edge, |p_i - p_j|
};
InscribedPolyhedron make_inscribed(std::shared_ptr<const Triangulation> tri,
                                   std::vector<Vec3> position);

// Disk triangulation drawn in the plane.
struct PlanarLayout {
  std::shared_ptr<const Triangulation> tri;  // disk
  std::vector<Complex> position;
  std::vector<double> plane_length;  // per edge, |z_i - z_j|
};
PlanarLayout make_layout(std::shared_ptr<const Triangulation> tri,
                         std::vector<Complex> position);

// Signed certificates for membership in the inscribed-convex class. All
// margins are Euclidean distances; "pass" means every strict margin clears
// the degeneracy band and the identities hold to their stated tolerances.
struct InscribedCertificates {
  double max_unit_deviation;       // max | |p_i| - 1 |
  double min_dihedral_margin;      // opposite vertex depth below face plane
  double min_circumcircle_margin;  // all non-face vertices below face plane
  double max_chord_arc_gap;        // |chord - 2 sin(arc/2)|
  double min_origin_offset;        // face plane distance from origin (winding normals)

  bool pass(double band = 1e-12) const {
    return max_unit_deviation <= 1e-10 && min_dihedral_margin > band &&
           min_circumcircle_margin > band && max_chord_arc_gap <= 1e-10 &&
           min_origin_offset > band;
  }
};
InscribedCertificates verify_inscribed(const InscribedPolyhedron& p);

// Stereographic flattening of an inscribed polyhedron with a vertex at the
// north pole: remove that vertex's star, project the rest. Projection from
// the pole reverses orientation, so the stored coordinate is the conjugate
// of the raw projection and layout faces stay counterclockwise. The returned
// w (per disk vertex) satisfies plane_length = e^{(w_i+w_j)/2} chord_length
// on every disk edge to 1e-10 relative.
struct FlattenResult {
  PlanarLayout layout;
  std::vector<double> w;
  StarRemoval removal;  // disk indices <-> polyhedron indices
};
FlattenResult flatten_polyhedron(const InscribedPolyhedron& p, int north_vertex);

// Inverse construction: unproject a strictly Delaunay layout (conjugating,
// matching flatten_polyhedron) whose boundary is strictly convex and which
// covers the origin, then cone the boundary to the north pole. The apex is
// appended as the last vertex of the closed mesh. The result is certified
// before it is returned.
InscribedPolyhedron lift_to_polyhedron(const PlanarLayout& q);

// Intersection angle of the circumcircles of two triangles sharing edge ij,
// measured so that the Delaunay margin of the shared edge is reproduced:
// plane pairs satisfy theta = 2 pi - 2 (a_k + a_k'), sphere pairs satisfy
// theta = (four adjacent angles) - (two opposite angles). Stereographic
// projection preserves the value.
struct SharedEdgeLengths {
  double l_ij;
  double l_ik, l_jk;    // triangle (i, j, k)
  double l_ikp, l_jkp;  // triangle (i, j, k')
};
double circumcircle_intersection_angle(const SharedEdgeLengths& s, Flavor flavor);
double circumcircle_intersection_angle_plane(const Complex& zi, const Complex& zj,
                                             const Complex& zk, const Complex& zkp);
double circumcircle_intersection_angle_sphere(const Vec3& pi, const Vec3& pj,
                                              const Vec3& pk, const Vec3& pkp);

}  // namespace genus0
