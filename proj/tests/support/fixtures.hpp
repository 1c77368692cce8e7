#pragma once

#include <array>
#include <memory>
#include <random>
#include <vector>

#include "genus0/stereo_bridge.hpp"
#include "genus0/tri_mesh.hpp"

namespace genus0::testing {

// Canonical combinatorics. Faces are oriented outward (counterclockwise seen
// from outside), matching the library's convention everywhere.
std::shared_ptr<const Triangulation> tetrahedron();
std::shared_ptr<const Triangulation> octahedron();
std::shared_ptr<const Triangulation> icosahedron();

// Unit-sphere embeddings of the same fixtures, index-aligned with the
// builders above.
std::vector<Vec3> tetrahedron_positions();
std::vector<Vec3> octahedron_positions();
std::vector<Vec3> icosahedron_positions();

// Euclidean edge lengths read off a planar or spatial embedding, in the
// triangulation's canonical edge order.
std::vector<double> lengths_from_positions(const Triangulation& tri,
                                           const std::vector<Complex>& z);
std::vector<double> lengths_from_positions(const Triangulation& tri,
                                           const std::vector<Vec3>& p);

// Jittered triangular-lattice disk: 20..100 vertices, Euclidean metric with
// regularity >= 0.1. Deterministic for a given generator state.
struct DiskSample {
  std::shared_ptr<const Triangulation> tri;
  std::vector<Complex> position;
  std::vector<double> length;
  double regularity = 0.0;
};
DiskSample lattice_disk(std::mt19937_64& rng);

// Random per-vertex factor whose scaled mesh stays admissible with a strict
// Delaunay-style margin; amplitude is halved until that holds.
std::vector<double> admissible_factor(const MetricMesh& m, std::mt19937_64& rng,
                                      double amplitude = 0.3);

// Random strictly Delaunay planar layout with strictly convex boundary and
// an interior vertex at the origin: a fan or a two-ring disk around 0,
// jittered, then rotated and scaled. Suitable input for lift_to_polyhedron.
PlanarLayout random_delaunay_layout(std::mt19937_64& rng);

// Random closed Euclidean metric: octasphere combinatorics with positions
// pushed along jittered rays, lengths from the embedding.
MetricMesh jittered_sphere_metric(std::mt19937_64& rng);

// Side lengths of a random Euclidean triangle whose angles are all
// >= min_angle, scaled by a random similarity in [scale_lo, scale_hi].
std::array<double, 3> regular_triangle_sides(std::mt19937_64& rng, double min_angle,
                                             double scale_lo = 0.5,
                                             double scale_hi = 2.0);

}  // namespace genus0::testing
