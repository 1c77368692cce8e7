#include "support/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "genus0/surface_lab.hpp"

namespace genus0::testing {

namespace {

constexpr double kPi = std::numbers::pi;

std::shared_ptr<const Triangulation> shared(std::vector<std::array<int, 3>> faces) {
  return std::make_shared<const Triangulation>(build_triangulation(faces));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

std::shared_ptr<const Triangulation> tetrahedron() {
  return shared({{0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {2, 0, 3}});
}

std::vector<Vec3> tetrahedron_positions() {
  const double s = 1.0 / std::sqrt(3.0);
  return {Vec3(s, s, s), Vec3(s, -s, -s), Vec3(-s, s, -s), Vec3(-s, -s, s)};
}

std::shared_ptr<const Triangulation> octahedron() {
  return shared({{0, 1, 4},
                 {1, 2, 4},
                 {2, 3, 4},
                 {3, 0, 4},
                 {1, 0, 5},
                 {2, 1, 5},
                 {3, 2, 5},
                 {0, 3, 5}});
}

std::vector<Vec3> octahedron_positions() {
  return {Vec3(1, 0, 0),  Vec3(0, 1, 0),  Vec3(-1, 0, 0),
          Vec3(0, -1, 0), Vec3(0, 0, 1),  Vec3(0, 0, -1)};
}

std::shared_ptr<const Triangulation> icosahedron() {
  return shared({{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                 {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                 {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                 {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}});
}

std::vector<Vec3> icosahedron_positions() {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  const double n = std::sqrt(1.0 + t * t);
  auto v = [&](double a, double b, double c) -> Vec3 { return Vec3(a, b, c) / n; };
  return {v(-1, t, 0), v(1, t, 0),  v(-1, -t, 0), v(1, -t, 0),
          v(0, -1, t), v(0, 1, t),  v(0, -1, -t), v(0, 1, -t),
          v(t, 0, -1), v(t, 0, 1),  v(-t, 0, -1), v(-t, 0, 1)};
}

std::vector<double> lengths_from_positions(const Triangulation& tri,
                                           const std::vector<Complex>& z) {
  std::vector<double> l(tri.edges.size());
  for (size_t e = 0; e < tri.edges.size(); ++e)
    l[e] = std::abs(z[tri.edges[e][0]] - z[tri.edges[e][1]]);
  return l;
}

std::vector<double> lengths_from_positions(const Triangulation& tri,
                                           const std::vector<Vec3>& p) {
  std::vector<double> l(tri.edges.size());
  for (size_t e = 0; e < tri.edges.size(); ++e)
    l[e] = (p[tri.edges[e][0]] - p[tri.edges[e][1]]).norm();
  return l;
}

DiskSample lattice_disk(std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    int rows = 4 + static_cast<int>(rng() % 4);          // 4..7
    int max_cols = std::min<int>(14, 100 / rows);
    int min_cols = (19 / rows) + 1;                      // rows*cols >= 20
    int cols = min_cols + static_cast<int>(rng() % (max_cols - min_cols + 1));

    std::vector<Complex> z(static_cast<size_t>(rows) * cols);
    const double h = std::sqrt(3.0) / 2.0;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        double r = 0.16 * std::sqrt(uniform(rng, 0.0, 1.0));
        double a = uniform(rng, 0.0, 2.0 * kPi);
        z[static_cast<size_t>(i) * cols + j] =
            Complex(j + 0.5 * i + r * std::cos(a), i * h + r * std::sin(a));
      }

    std::vector<std::array<int, 3>> faces;
    auto id = [&](int i, int j) { return i * cols + j; };
    for (int i = 0; i + 1 < rows; ++i)
      for (int j = 0; j + 1 < cols; ++j) {
        faces.push_back({id(i, j), id(i, j + 1), id(i + 1, j)});
        faces.push_back({id(i, j + 1), id(i + 1, j + 1), id(i + 1, j)});
      }

    auto tri = shared(faces);
    std::vector<double> l = lengths_from_positions(*tri, z);
    MetricMesh m(tri, l, Flavor::Euclidean);
    double eps = regularity(m);
    if (eps >= 0.1)
      return {std::move(tri), std::move(z), std::move(l), eps};
  }
  throw std::logic_error("lattice_disk: no regular sample in 100 attempts");
}

std::vector<double> admissible_factor(const MetricMesh& m, std::mt19937_64& rng,
                                      double amplitude) {
  std::vector<double> u(m.tri().n_vertices);
  for (double& v : u) v = uniform(rng, -amplitude, amplitude);
  for (int halving = 0; halving < 60; ++halving) {
    std::vector<double> scaled(m.length());
    for (size_t e = 0; e < scaled.size(); ++e) {
      auto [i, j] = m.tri().edges[e];
      scaled[e] *= std::exp(0.5 * (u[i] + u[j]));
    }
    CornerAngles angles;
    if (try_face_angles(m.tri(), scaled, Flavor::Euclidean, angles) &&
        regularity(m.tri(), angles) > 0.02)
      return u;
    for (double& v : u) v *= 0.5;
  }
  throw std::logic_error("admissible_factor: could not shrink into admissibility");
}

PlanarLayout random_delaunay_layout(std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    bool two_rings = (rng() % 2) == 1;
    int n = 6 + static_cast<int>(rng() % 5);  // ring size 6..10

    std::vector<Complex> z{Complex(0.0, 0.0)};
    std::vector<double> theta(n);
    for (int k = 0; k < n; ++k)
      theta[k] = 2.0 * kPi * k / n + uniform(rng, -0.3, 0.3) * 2.0 * kPi / n;
    auto push_ring = [&](double radius) {
      for (int k = 0; k < n; ++k) {
        double r = radius * (1.0 + uniform(rng, -0.07, 0.07));
        z.emplace_back(r * std::cos(theta[k]), r * std::sin(theta[k]));
      }
    };

    std::vector<std::array<int, 3>> faces;
    if (two_rings) {
      push_ring(0.55);
      push_ring(1.0);
      for (int k = 0; k < n; ++k) {
        int a = 1 + k, b = 1 + (k + 1) % n;
        int ao = 1 + n + k, bo = 1 + n + (k + 1) % n;
        faces.push_back({0, a, b});
        faces.push_back({a, ao, bo});
        faces.push_back({a, bo, b});
      }
    } else {
      push_ring(1.0);
      for (int k = 0; k < n; ++k)
        faces.push_back({0, 1 + k, 1 + (k + 1) % n});
    }

    // Random similarity; the origin vertex stays pinned at 0.
    Complex g = std::polar(uniform(rng, 0.6, 1.6), uniform(rng, 0.0, 2.0 * kPi));
    for (Complex& p : z) p *= g;

    auto tri = shared(faces);
    std::vector<double> l = lengths_from_positions(*tri, z);
    CornerAngles angles;
    if (!try_face_angles(*tri, l, Flavor::Euclidean, angles)) continue;
    std::vector<double> margins = delaunay_margins(*tri, angles);
    bool ok = true;
    for (size_t e = 0; e < margins.size() && ok; ++e)
      if (!tri->edge_on_boundary[e] && !(margins[e] > 2e-3)) ok = false;
    std::vector<double> curvature = discrete_curvature(*tri, angles);
    for (int v = 0; v < tri->n_vertices && ok; ++v)
      if (tri->vertex_on_boundary[v] && !(curvature[v] > 2e-3)) ok = false;
    if (!ok) continue;

    return make_layout(std::move(tri), std::move(z));
  }
  throw std::logic_error("random_delaunay_layout: no valid sample in 200 attempts");
}

MetricMesh jittered_sphere_metric(std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    SpherePoints base = octasphere(static_cast<int>(rng() % 2));
    std::vector<Vec3> p(base.position.size());
    for (size_t v = 0; v < p.size(); ++v) {
      Vec3 dir = base.position[v] +
                 0.25 * Vec3(uniform(rng, -1, 1), uniform(rng, -1, 1),
                             uniform(rng, -1, 1));
      p[v] = (0.75 + 0.5 * uniform(rng, 0.0, 1.0)) * dir.normalized();
    }
    std::vector<double> l = lengths_from_positions(*base.tri, p);
    CornerAngles angles;
    if (!try_face_angles(*base.tri, l, Flavor::Euclidean, angles)) continue;
    return MetricMesh(base.tri, std::move(l), Flavor::Euclidean);
  }
  throw std::logic_error("jittered_sphere_metric: no admissible sample in 100 attempts");
}

std::array<double, 3> regular_triangle_sides(std::mt19937_64& rng, double min_angle,
                                             double scale_lo, double scale_hi) {
  std::array<double, 3> w;
  double sum = 0.0;
  for (double& x : w) {
    x = uniform(rng, 0.1, 1.0);
    sum += x;
  }
  double slack = kPi - 3.0 * min_angle;
  std::array<double, 3> sides;
  double scale = uniform(rng, scale_lo, scale_hi);
  for (int c = 0; c < 3; ++c)
    sides[c] = scale * std::sin(min_angle + slack * w[c] / sum);
  return sides;
}

}  // namespace genus0::testing
