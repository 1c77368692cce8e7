#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "genus0/error.hpp"

namespace genus0 {

enum class TopologyClass { ClosedSphere, Disk };

// Oriented simplicial surface, combinatorics only. Built once by
// build_triangulation, immutable afterwards; everything else is derived from
// the face list. Vertices are dense indices [0, n_vertices). Edges are stored
// as sorted pairs in lexicographic order, so edge indices are canonical for a
// given face list.
struct Triangulation {
  int n_vertices = 0;
  std::vector<std::array<int, 3>> faces;

  std::vector<std::array<int, 2>> edges;       // (i,j) with i < j, lex order
  std::vector<std::array<int, 2>> edge_faces;  // incident faces, [1] = -1 on boundary
  std::vector<bool> edge_on_boundary;
  std::vector<bool> vertex_on_boundary;

  // face_edges[f][c] = index of the edge opposite corner c of face f,
  // i.e. the edge joining the other two vertices of the face.
  std::vector<std::array<int, 3>> face_edges;

  // Neighbors of each vertex in rotational order. Interior vertex: a cycle
  // (first entry not repeated at the end). Boundary vertex: a path from one
  // boundary neighbor to the other.
  std::vector<std::vector<int>> vertex_ring;
  // Incident faces in the same rotational order; face ring_faces[v][i] spans
  // the corner from vertex_ring[v][i] to vertex_ring[v][i+1 (mod)].
  std::vector<std::vector<int>> ring_faces;

  TopologyClass topology = TopologyClass::ClosedSphere;
  // For disks: boundary vertices in cycle order, following the orientation
  // induced by the faces.
  std::vector<int> boundary_loop;

  int euler_characteristic() const {
    return n_vertices - static_cast<int>(edges.size()) +
           static_cast<int>(faces.size());
  }
  int degree(int v) const { return static_cast<int>(ring_faces[v].size()); }

  // Edge index for the vertex pair {i, j}, or -1 if not an edge.
  int edge_index(int i, int j) const;

 private:
  // neighbor -> edge index, sorted by neighbor; backs edge_index lookups
  std::vector<std::vector<std::array<int, 2>>> edge_lookup_;
  friend Triangulation build_triangulation(const std::vector<std::array<int, 3>>&);
};

// Validates and indexes a face list. Faces must be consistently oriented
// triangles over dense vertex indices; the surface must be connected and
// either a closed sphere or a disk.
Triangulation build_triangulation(const std::vector<std::array<int, 3>>& faces);

enum class Flavor { Euclidean, Spherical };

// A triangulation with one length per edge. Every face must satisfy the
// strict triangle inequality; spherical lengths are minor arcs (< pi per
// edge) with face perimeter < 2*pi, so each face is a valid spherical
// triangle.
struct MetricMesh {
  MetricMesh(std::shared_ptr<const Triangulation> tri, std::vector<double> length,
             Flavor flavor);

  const Triangulation& tri() const { return *tri_; }
  const std::shared_ptr<const Triangulation>& tri_ptr() const { return tri_; }
  const std::vector<double>& length() const { return length_; }
  Flavor flavor() const { return flavor_; }

 private:
  std::shared_ptr<const Triangulation> tri_;
  std::vector<double> length_;
  Flavor flavor_;
};

// Angles at the three corners of each face; angles[f][c] sits at vertex
// faces[f][c], opposite the edge face_edges[f][c].
using CornerAngles = std::vector<std::array<double, 3>>;

// Angles of a single triangle from its side lengths; side s[i] is opposite
// corner i. Returns false if the lengths are inadmissible for the flavor
// (law-of-cosines argument outside [-1 - 1e-9, 1 + 1e-9], nonpositive or,
// for spherical, an edge >= pi). Arguments within the 1e-9 slack are
// clamped.
bool try_triangle_angles(const std::array<double, 3>& s, Flavor flavor,
                         std::array<double, 3>& angles);

// Same gate applied to a whole mesh without throwing; used by line searches
// to probe candidate lengths cheaply.
bool try_face_angles(const Triangulation& tri, const std::vector<double>& length,
                     Flavor flavor, CornerAngles& angles);

// Corner angles of every face by the law of cosines (plane or sphere).
// Raises InadmissibleLengths if any face fails the angle gate.
CornerAngles corner_angles(const MetricMesh& m);

// K_i = 2*pi - (angle sum) at interior vertices, pi - (angle sum) at boundary
// vertices. Summed over a closed mesh this is 4*pi exactly in exact
// arithmetic (angle sums telescope against Euler's formula).
std::vector<double> discrete_curvature(const MetricMesh& m);
std::vector<double> discrete_curvature(const Triangulation& tri,
                                       const CornerAngles& angles);

// Per-edge Delaunay margin: (sum of the four angles adjacent to the edge)
// minus (sum of the two angles opposite it). Positive on every interior edge
// means strictly Delaunay. Boundary edges carry +infinity (no constraint).
std::vector<double> delaunay_margins(const MetricMesh& m);
std::vector<double> delaunay_margins(const Triangulation& tri,
                                     const CornerAngles& angles);

// Regularity of the mesh: min over all corner angles and over all interior
// edges of (pi - opposite-angle sum). Nonnegative iff Delaunay with angle
// bounds; the larger the value the better conditioned the mesh.
double regularity(const MetricMesh& m);
double regularity(const Triangulation& tri, const CornerAngles& angles);

// --- single-triangle comparison reports -----------------------------------

// Effect of a relative length perturbation on a Euclidean triangle whose
// angles are all >= epsilon. delta is the max per-edge relative change and
// must stay below epsilon^2/48 for the stated bounds to apply.
struct PerturbationReport {
  double delta;             // max_e |l'_e - l_e| / l_e
  double epsilon;           // angle lower bound assumed for l
  double max_angle_change;  // max over corners of |A' - A|
  double angle_bound;       // 24 delta / epsilon
  double area_change;       // | |D'| - |D| | / |D|
  double area_bound;        // 576 delta / epsilon^2
  bool angle_within_bound;
  bool area_within_bound;
};
PerturbationReport angle_perturbation_bound(const std::array<double, 3>& l,
                                            const std::array<double, 3>& lp,
                                            double epsilon);

// Singular values of the affine map between the two Euclidean triangles with
// side lengths l and lp (corners matched by index). lambda_max * lambda_min
// equals the area ratio |D'|/|D|.
struct MapSingularValues {
  double lambda_max;
  double lambda_min;
  double area_ratio;
};
MapSingularValues singular_values_of_map(const std::array<double, 3>& l,
                                         const std::array<double, 3>& lp);

// Corner-angle gap between the spherical and Euclidean triangles sharing the
// same side lengths. Valid for small triangles (every side < pi/3); the gap
// is bounded by 2 * perimeter^2.
struct AngleGapReport {
  std::array<double, 3> euclidean_angles;
  std::array<double, 3> spherical_angles;
  double max_gap;
  double bound;  // 2 (a+b+c)^2
  bool within_bound;
};
AngleGapReport spherical_euclidean_angle_gap(const std::array<double, 3>& l);

// --- surgery ----------------------------------------------------------------

// Result of deleting one vertex and its incident faces from a closed sphere.
// The disk keeps all other vertices; indices are compacted by the canonical
// shift (ids below the removed vertex unchanged, ids above shifted down by
// one) and the two maps record the correspondence.
struct StarRemoval {
  Triangulation disk;
  int removed_vertex = -1;          // index in the parent mesh
  std::vector<int> to_parent;       // disk vertex -> parent vertex
  std::vector<int> from_parent;     // parent vertex -> disk vertex, -1 for removed
};
StarRemoval remove_open_star(const Triangulation& tri, int v);

// Restricts parent-mesh edge lengths to the disk (disk edge order).
std::vector<double> restrict_lengths(const StarRemoval& removal,
                                     const Triangulation& parent,
                                     const std::vector<double>& length);

// --- diagnostics ------------------------------------------------------------

// Exhaustive search for a vertex cut of size <= max_size whose removal
// disconnects the 1-skeleton. Returns the first cut found, or nullopt if the
// graph is (max_size+1)-vertex-connected. Only offered for small meshes;
// raises TooLargeForExhaustive above the vertex cap.
std::optional<std::vector<int>> find_small_vertex_cut(const Triangulation& tri,
                                                      int max_size = 3,
                                                      int max_vertices = 200);

}  // namespace genus0
