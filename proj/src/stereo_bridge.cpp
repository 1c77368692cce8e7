#include "genus0/stereo_bridge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace genus0 {

namespace {

constexpr double kBand = 1e-12;  // degeneracy band for signed predicates

double cross2(const Complex& a, const Complex& b) {
  return a.real() * b.imag() - a.imag() * b.real();
}

// Circumcenter of a nondegenerate plane triangle.
Complex circumcenter(const Complex& a, const Complex& b, const Complex& c) {
  Complex bb = b - a, cc = c - a;
  double d = 2.0 * cross2(bb, cc);
  double scale = std::max({std::abs(bb), std::abs(cc), std::abs(bb - cc)});
  if (std::abs(d) <= kBand * scale * scale)
    fail(ErrorCode::InadmissibleLengths, "triangle too flat for a circumcircle");
  double nb = std::norm(bb), nc = std::norm(cc);
  double ux = (cc.imag() * nb - bb.imag() * nc) / d;
  double uy = (bb.real() * nc - cc.real() * nb) / d;
  return a + Complex(ux, uy);
}

}  // namespace

Complex stereo_project(const Vec3& p) {
  double denom = 1.0 - p.z();
  if (std::abs(denom) < 1e-14)
    fail(ErrorCode::AtPole, "stereographic projection undefined at the north pole");
  return Complex(p.x() / denom, p.y() / denom);
}

Vec3 stereo_unproject(const Complex& z) {
  double n = std::norm(z);
  return Vec3(2.0 * z.real(), 2.0 * z.imag(), n - 1.0) / (n + 1.0);
}

Vec3 central_project(const Vec3& p) {
  double n = p.norm();
  if (n < 1e-14) fail(ErrorCode::ZeroVector, "cannot project the origin");
  return p / n;
}

std::vector<double> projection_factor(const std::vector<Vec3>& positions) {
  std::vector<double> w(positions.size());
  const Vec3 north(0.0, 0.0, 1.0);
  for (size_t i = 0; i < positions.size(); ++i) {
    double d2 = (positions[i] - north).squaredNorm();
    if (d2 < 1e-14)
      fail(ErrorCode::AtPole, "projection factor undefined at the north pole");
    w[i] = std::log(2.0 / d2);
  }
  return w;
}

InscribedPolyhedron make_inscribed(std::shared_ptr<const Triangulation> tri,
                                   std::vector<Vec3> position) {
  if (!tri || tri->topology != TopologyClass::ClosedSphere)
    fail(ErrorCode::NotClosed, "inscribed polyhedron needs a closed sphere");
  if (position.size() != static_cast<size_t>(tri->n_vertices))
    fail(ErrorCode::NotInscribed, "one position per vertex required");
  for (size_t i = 0; i < position.size(); ++i)
    if (std::abs(position[i].norm() - 1.0) > 1e-10)
      fail(ErrorCode::NotInscribed,
           "vertex " + std::to_string(i) + " is not on the unit sphere");
  InscribedPolyhedron p;
  p.chord_length.resize(tri->edges.size());
  for (size_t e = 0; e < tri->edges.size(); ++e)
    p.chord_length[e] = (position[tri->edges[e][0]] - position[tri->edges[e][1]]).norm();
  p.tri = std::move(tri);
  p.position = std::move(position);
  return p;
}

PlanarLayout make_layout(std::shared_ptr<const Triangulation> tri,
                         std::vector<Complex> position) {
  if (!tri || tri->topology != TopologyClass::Disk)
    fail(ErrorCode::UnsupportedTopology, "planar layout needs a disk");
  if (position.size() != static_cast<size_t>(tri->n_vertices))
    fail(ErrorCode::OutOfRange, "one position per vertex required");
  PlanarLayout q;
  q.plane_length.resize(tri->edges.size());
  for (size_t e = 0; e < tri->edges.size(); ++e)
    q.plane_length[e] = std::abs(position[tri->edges[e][0]] - position[tri->edges[e][1]]);
  q.tri = std::move(tri);
  q.position = std::move(position);
  return q;
}

InscribedCertificates verify_inscribed(const InscribedPolyhedron& p) {
  const Triangulation& tri = *p.tri;
  const int nf = static_cast<int>(tri.faces.size());

  InscribedCertificates c;
  c.max_unit_deviation = 0.0;
  for (const Vec3& q : p.position)
    c.max_unit_deviation = std::max(c.max_unit_deviation, std::abs(q.norm() - 1.0));

  // Face planes with normals taken from the winding order. For an outward
  // oriented polyhedron containing the origin every offset is positive.
  std::vector<Vec3> normal(nf);
  std::vector<double> offset(nf);
  c.min_origin_offset = std::numeric_limits<double>::infinity();
  for (int f = 0; f < nf; ++f) {
    const auto& fc = tri.faces[f];
    Vec3 n = (p.position[fc[1]] - p.position[fc[0]])
                 .cross(p.position[fc[2]] - p.position[fc[0]]);
    double len = n.norm();
    if (len < 1e-14) {
      // Degenerate face: report as failed convexity rather than erroring.
      c.min_origin_offset = -std::numeric_limits<double>::infinity();
      normal[f] = Vec3::Zero();
      offset[f] = 0.0;
      continue;
    }
    normal[f] = n / len;
    offset[f] = normal[f].dot(p.position[fc[0]] + p.position[fc[1]] +
                              p.position[fc[2]]) / 3.0;
    c.min_origin_offset = std::min(c.min_origin_offset, offset[f]);
  }

  // Local convexity across every edge: the opposite vertex of the other face
  // must lie strictly below this face's plane (origin side).
  c.min_dihedral_margin = std::numeric_limits<double>::infinity();
  for (size_t e = 0; e < tri.edges.size(); ++e) {
    for (int side = 0; side < 2; ++side) {
      int f = tri.edge_faces[e][side];
      int g = tri.edge_faces[e][1 - side];
      int opposite = -1;
      for (int cidx = 0; cidx < 3; ++cidx)
        if (tri.face_edges[g][cidx] == static_cast<int>(e)) opposite = tri.faces[g][cidx];
      double margin = offset[f] - normal[f].dot(p.position[opposite]);
      c.min_dihedral_margin = std::min(c.min_dihedral_margin, margin);
    }
  }

  // Global empty circumcircle: every vertex not on the face lies strictly
  // below its plane. (The spherical circumcircle of a face is the sphere
  // cut by the face plane, so plane depth is the right margin.)
  c.min_circumcircle_margin = std::numeric_limits<double>::infinity();
  for (int f = 0; f < nf; ++f) {
    const auto& fc = tri.faces[f];
    for (int v = 0; v < tri.n_vertices; ++v) {
      if (v == fc[0] || v == fc[1] || v == fc[2]) continue;
      double margin = offset[f] - normal[f].dot(p.position[v]);
      c.min_circumcircle_margin = std::min(c.min_circumcircle_margin, margin);
    }
  }

  // Chord/arc dictionary on every edge.
  c.max_chord_arc_gap = 0.0;
  for (size_t e = 0; e < tri.edges.size(); ++e) {
    const Vec3& a = p.position[tri.edges[e][0]];
    const Vec3& b = p.position[tri.edges[e][1]];
    double arc = 2.0 * std::atan2((a - b).norm(), (a + b).norm());
    double gap = std::abs(p.chord_length[e] - 2.0 * std::sin(0.5 * arc));
    c.max_chord_arc_gap = std::max(c.max_chord_arc_gap, gap);
  }
  return c;
}

FlattenResult flatten_polyhedron(const InscribedPolyhedron& p, int north_vertex) {
  const Triangulation& tri = *p.tri;
  if (north_vertex < 0 || north_vertex >= tri.n_vertices)
    fail(ErrorCode::OutOfRange, "north vertex out of range");
  if ((p.position[north_vertex] - Vec3(0, 0, 1)).norm() > 1e-10)
    fail(ErrorCode::PoleNotVertex,
         "vertex " + std::to_string(north_vertex) + " does not sit at the north pole");
  InscribedCertificates certs = verify_inscribed(p);
  if (!certs.pass())
    fail(ErrorCode::NotInscribed, "input fails the inscribed-convex certificates");

  FlattenResult r{.layout = {}, .w = {}, .removal = remove_open_star(tri, north_vertex)};
  const int n = r.removal.disk.n_vertices;
  std::vector<Complex> z(n);
  std::vector<Vec3> disk_pos(n);
  for (int i = 0; i < n; ++i) {
    disk_pos[i] = p.position[r.removal.to_parent[i]];
    // Projection from the pole turns outward-oriented faces clockwise;
    // conjugating keeps layouts counterclockwise like every other layout
    // in the library. lift_to_polyhedron conjugates back.
    z[i] = std::conj(stereo_project(disk_pos[i]));
  }
  r.w = projection_factor(disk_pos);
  r.layout = make_layout(std::make_shared<Triangulation>(r.removal.disk), std::move(z));

  // l_plane = e^{(w_i+w_j)/2} l_chord is an algebraic identity of the
  // projection; verify it held numerically.
  for (size_t e = 0; e < r.layout.tri->edges.size(); ++e) {
    auto [a, b] = r.layout.tri->edges[e];
    int pe = tri.edge_index(r.removal.to_parent[a], r.removal.to_parent[b]);
    double predicted = std::exp(0.5 * (r.w[a] + r.w[b])) * p.chord_length[pe];
    if (std::abs(predicted - r.layout.plane_length[e]) >
        1e-10 * std::max(1.0, r.layout.plane_length[e]))
      fail(ErrorCode::CertificateFailure,
           "projection factor identity violated on edge " + std::to_string(e));
  }
  return r;
}

InscribedPolyhedron lift_to_polyhedron(const PlanarLayout& q) {
  const Triangulation& disk = *q.tri;

  // Metric gates: faces must be genuinely Delaunay and positively oriented,
  // the boundary strictly convex.
  MetricMesh flat(q.tri, q.plane_length, Flavor::Euclidean);
  CornerAngles angles = corner_angles(flat);
  std::vector<double> margins = delaunay_margins(disk, angles);
  for (size_t e = 0; e < margins.size(); ++e) {
    if (disk.edge_on_boundary[e]) continue;
    if (!(margins[e] > kBand))
      fail(ErrorCode::NotDelaunay,
           margins[e] < -kBand
               ? "edge " + std::to_string(e) + " violates the Delaunay condition"
               : "edge " + std::to_string(e) + " is cocircular (degenerate)");
  }
  for (size_t f = 0; f < disk.faces.size(); ++f) {
    const auto& fc = disk.faces[f];
    double orient = cross2(q.position[fc[1]] - q.position[fc[0]],
                           q.position[fc[2]] - q.position[fc[0]]);
    if (!(orient > 0.0))
      fail(ErrorCode::NotDelaunay,
           "face " + std::to_string(f) + " is not positively oriented");
  }
  std::vector<double> curvature = discrete_curvature(disk, angles);
  for (int v = 0; v < disk.n_vertices; ++v)
    if (disk.vertex_on_boundary[v] && !(curvature[v] > kBand))
      fail(ErrorCode::BoundaryNotConvex,
           "boundary vertex " + std::to_string(v) + " has curvature " +
               std::to_string(curvature[v]));

  // The origin must be covered: at an interior vertex or strictly inside a
  // face, otherwise the lifted surface cannot wrap the origin.
  bool covered = false;
  for (int v = 0; v < disk.n_vertices && !covered; ++v) {
    if (std::abs(q.position[v]) <= kBand) {
      if (disk.vertex_on_boundary[v])
        fail(ErrorCode::CertificateFailure, "origin sits on the layout boundary");
      covered = true;
    }
  }
  for (size_t f = 0; f < disk.faces.size() && !covered; ++f) {
    const auto& fc = disk.faces[f];
    double s0 = cross2(q.position[fc[1]] - q.position[fc[0]], -q.position[fc[0]]);
    double s1 = cross2(q.position[fc[2]] - q.position[fc[1]], -q.position[fc[1]]);
    double s2 = cross2(q.position[fc[0]] - q.position[fc[2]], -q.position[fc[2]]);
    double total = s0 + s1 + s2;
    if (total > 0.0 && std::min({s0, s1, s2}) > kBand * total) covered = true;
  }
  if (!covered)
    fail(ErrorCode::CertificateFailure,
         "origin is not strictly inside the layout");

  // Unproject, then cone the boundary to the pole. The apex becomes the last
  // vertex; fan faces run against the boundary orientation so the closed
  // mesh stays consistently oriented.
  const int apex = disk.n_vertices;
  std::vector<Vec3> position(disk.n_vertices + 1);
  for (int v = 0; v < disk.n_vertices; ++v)
    position[v] = stereo_unproject(std::conj(q.position[v]));
  position[apex] = Vec3(0, 0, 1);

  std::vector<std::array<int, 3>> faces = disk.faces;
  const auto& loop = disk.boundary_loop;
  for (size_t t = 0; t < loop.size(); ++t) {
    int x = loop[t], y = loop[(t + 1) % loop.size()];
    faces.push_back({apex, y, x});
  }
  auto closed = std::make_shared<Triangulation>(build_triangulation(faces));
  InscribedPolyhedron p = make_inscribed(std::move(closed), std::move(position));

  InscribedCertificates certs = verify_inscribed(p);
  if (!certs.pass())
    fail(ErrorCode::CertificateFailure,
         "lift failed certification: min dihedral margin " +
             std::to_string(certs.min_dihedral_margin) + ", min circumcircle margin " +
             std::to_string(certs.min_circumcircle_margin) + ", min origin offset " +
             std::to_string(certs.min_origin_offset));
  return p;
}

double circumcircle_intersection_angle_plane(const Complex& zi, const Complex& zj,
                                             const Complex& zk, const Complex& zkp) {
  Complex c1 = circumcenter(zi, zj, zk);
  Complex c2 = circumcenter(zi, zj, zkp);
  double s = cross2(zj - zi, zk - zi) > 0.0 ? 1.0 : -1.0;
  Complex u1 = zi - c1, u2 = zi - c2;
  double ang = std::atan2(cross2(u1, u2), u1.real() * u2.real() + u1.imag() * u2.imag());
  return -2.0 * s * ang;
}

double circumcircle_intersection_angle_sphere(const Vec3& pi, const Vec3& pj,
                                              const Vec3& pk, const Vec3& pkp) {
  auto circle_radial = [&](const Vec3& a, const Vec3& b, const Vec3& c) {
    Vec3 n = (b - a).cross(c - a);
    double len = n.norm();
    if (len < 1e-14)
      fail(ErrorCode::InadmissibleLengths, "spherical triangle too flat");
    n /= len;
    Vec3 center = n.dot(a) * n;  // Euclidean center of the circumcircle
    Vec3 u = a - center;
    return (u - u.dot(a) * a).eval();  // radial direction in the tangent plane
  };
  Vec3 u1 = circle_radial(pi, pj, pk);
  Vec3 u2 = circle_radial(pi, pj, pkp);
  double s = pi.dot(pj.cross(pk)) > 0.0 ? 1.0 : -1.0;
  double ang = std::atan2(u1.cross(u2).dot(pi), u1.dot(u2));
  return -2.0 * s * ang;
}

double circumcircle_intersection_angle(const SharedEdgeLengths& s, Flavor flavor) {
  std::array<double, 3> a1, a2;
  // Corner order (i, j, k): side 0 opposite i is l_jk, side 1 is l_ik,
  // side 2 (opposite k) is the shared edge l_ij.
  std::array<double, 3> t1{s.l_jk, s.l_ik, s.l_ij};
  std::array<double, 3> t2{s.l_jkp, s.l_ikp, s.l_ij};
  if (!try_triangle_angles(t1, flavor, a1) || !try_triangle_angles(t2, flavor, a2))
    fail(ErrorCode::InadmissibleLengths, "triangles must be admissible");

  if (flavor == Flavor::Euclidean) {
    Complex zi(0, 0), zj(s.l_ij, 0);
    double xk = (s.l_ik * s.l_ik + s.l_ij * s.l_ij - s.l_jk * s.l_jk) / (2.0 * s.l_ij);
    double yk = std::sqrt(std::max(s.l_ik * s.l_ik - xk * xk, 0.0));
    double xp = (s.l_ikp * s.l_ikp + s.l_ij * s.l_ij - s.l_jkp * s.l_jkp) / (2.0 * s.l_ij);
    double yp = std::sqrt(std::max(s.l_ikp * s.l_ikp - xp * xp, 0.0));
    return circumcircle_intersection_angle_plane(zi, zj, Complex(xk, yk),
                                                 Complex(xp, -yp));
  }

  // Spherical layout: i at the pole, j at azimuth 0, k and k' on opposite
  // sides; a1[0]/a2[0] are the angles at corner i.
  Vec3 pi(0, 0, 1);
  Vec3 pj(std::sin(s.l_ij), 0.0, std::cos(s.l_ij));
  auto place = [&](double arc, double azimuth, double side) {
    return Vec3(std::sin(arc) * std::cos(azimuth),
                side * std::sin(arc) * std::sin(azimuth), std::cos(arc));
  };
  Vec3 pk = place(s.l_ik, a1[0], +1.0);
  Vec3 pkp = place(s.l_ikp, a2[0], -1.0);
  return circumcircle_intersection_angle_sphere(pi, pj, pk, pkp);
}

}  // namespace genus0
