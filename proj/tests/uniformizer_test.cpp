#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "doctest.h"
#include "genus0/conformal_scaling.hpp"
#include "genus0/uniformizer.hpp"
#include "support/fixtures.hpp"

using namespace genus0;
namespace tt = genus0::testing;

namespace {
constexpr double kPi = std::numbers::pi;

MetricMesh round_octahedron() {
  auto oct = tt::octahedron();
  std::vector<double> l(oct->edges.size(), kPi / 2);
  return MetricMesh(oct, l, Flavor::Spherical);
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::OutOfRange;
}
}  // namespace

TEST_CASE("make_problem validation") {
  auto oct = tt::octahedron();
  CHECK(code_of([&] {
          std::vector<double> l(oct->edges.size(), 1.0);
          make_problem(MetricMesh(oct, l, Flavor::Euclidean), 4, 0, 5);
        }) == ErrorCode::InadmissibleLengths);
  CHECK(code_of([&] {
          auto disk = std::make_shared<const Triangulation>(
              build_triangulation({{0, 1, 2}}));
          make_problem(MetricMesh(disk, {1.0, 1.0, 1.0}, Flavor::Spherical), 0, 1, 2);
        }) == ErrorCode::NotClosed);
  CHECK(code_of([&] { make_problem(round_octahedron(), 4, 0, 6); }) ==
        ErrorCode::MarksNotVertices);
  CHECK(code_of([&] { make_problem(round_octahedron(), 4, 0, 4); }) ==
        ErrorCode::CoincidentMarks);
}

TEST_CASE("dirichlet data vanishes for quarter arcs") {
  // l_ix = pi/2 gives log 2 - 2 log(2 sin(pi/4)) = log 2 - log 2 = 0.
  UniformizationProblem p = make_problem(round_octahedron(), 4, 0, 5);
  StarRemoval removal = remove_open_star(p.mesh.tri(), 4);
  std::vector<double> d = dirichlet_data(p, removal);
  REQUIRE(d.size() == 5);
  for (double v : d) CHECK(std::abs(v) < 1e-15);
}

TEST_CASE("initial guess extends the boundary values") {
  UniformizationProblem p = make_problem(round_octahedron(), 4, 0, 5);
  StarRemoval removal = remove_open_star(p.mesh.tri(), 4);
  auto disk = std::make_shared<const Triangulation>(removal.disk);
  std::vector<double> chords(p.mesh.tri().edges.size(), std::sqrt(2.0));
  std::vector<double> l = restrict_lengths(removal, p.mesh.tri(), chords);
  std::vector<double> zero(5, 0.0);
  std::vector<double> u0 = initial_guess(disk, l, zero);
  for (double v : u0) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("curvature solve flattens the southern pyramid") {
  // Chord octahedron minus the north star: square rim plus the south vertex,
  // every edge sqrt(2). Flat means unit spokes, so u_south = -log 2.
  UniformizationProblem p = make_problem(round_octahedron(), 4, 0, 5);
  StarRemoval removal = remove_open_star(p.mesh.tri(), 4);
  auto disk = std::make_shared<const Triangulation>(removal.disk);
  std::vector<double> chords(p.mesh.tri().edges.size(), std::sqrt(2.0));
  std::vector<double> l = restrict_lengths(removal, p.mesh.tri(), chords);
  std::vector<double> dirichlet(5, 0.0);

  BvpResult r = solve_curvature_bvp(disk, l, dirichlet);
  for (int i = 0; i < 4; ++i) CHECK(r.u[i] == 0.0);
  CHECK(r.u[4] == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
  CHECK(r.residual <= 1e-10);
  CHECK(r.iterations >= 1);
  CHECK(r.min_delaunay_margin > 0.0);
  CHECK(r.min_boundary_curvature > 0.0);
  CHECK(r.update_ratio >= 0.0);

  SUBCASE("already flat input converges in zero iterations") {
    std::vector<double> scaled = scale_euclidean(*disk, l, r.u);
    BvpResult again = solve_curvature_bvp(disk, scaled, dirichlet);
    CHECK(again.iterations == 0);
    for (double v : again.u) CHECK(std::abs(v) < 1e-15);
  }
}

TEST_CASE("layout of a single 3-4-5 triangle") {
  auto disk = std::make_shared<const Triangulation>(build_triangulation({{0, 1, 2}}));
  std::vector<double> l(3);
  l[disk->edge_index(0, 1)] = 3.0;
  l[disk->edge_index(0, 2)] = 5.0;
  l[disk->edge_index(1, 2)] = 4.0;
  FlatLayout f = layout_flat(disk, l);
  CHECK(std::abs(f.layout.position[0]) < 1e-15);
  CHECK(std::abs(f.layout.position[1] - Complex(3, 0)) < 1e-12);
  CHECK(std::abs(f.layout.position[2] - Complex(3, 4)) < 1e-12);
  CHECK(f.consistency_residual < 1e-12);
  CHECK(f.diameter == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("layout rejects curved or concave input") {
  auto disk = std::make_shared<const Triangulation>(
      build_triangulation({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}}));
  std::vector<double> l(disk->edges.size(), 1.0);
  bool raised = false;
  try {
    layout_flat(disk, l);  // hub angle sum 4 pi/3, curvature 2 pi/3
  } catch (const Error& e) {
    raised = e.code() == ErrorCode::HolonomyResidualExceeded;
  }
  CHECK(raised);
}

TEST_CASE("solved octahedron develops onto a square") {
  UniformizationProblem p = make_problem(round_octahedron(), 4, 0, 5);
  StarRemoval removal = remove_open_star(p.mesh.tri(), 4);
  auto disk = std::make_shared<const Triangulation>(removal.disk);
  std::vector<double> chords(p.mesh.tri().edges.size(), std::sqrt(2.0));
  std::vector<double> l = restrict_lengths(removal, p.mesh.tri(), chords);
  BvpResult r = solve_curvature_bvp(disk, l, std::vector<double>(5, 0.0));
  std::vector<double> scaled = scale_euclidean(*disk, l, r.u);

  FlatLayout f = layout_flat(disk, scaled);
  const double s = std::sqrt(2.0);
  CHECK(std::abs(f.layout.position[0] - Complex(0, 0)) < 1e-12);
  CHECK(std::abs(f.layout.position[1] - Complex(s, 0)) < 1e-12);
  CHECK(std::abs(f.layout.position[2] - Complex(s, -s)) < 1e-12);
  CHECK(std::abs(f.layout.position[3] - Complex(0, -s)) < 1e-12);
  CHECK(std::abs(f.layout.position[4] - Complex(s / 2, -s / 2)) < 1e-12);
  CHECK(f.diameter == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.consistency_residual < 1e-12);

  SUBCASE("normalization pins y to 1 and z to 0") {
    NormalizedLayout n = normalize_layout(f.layout, 0, 4);
    CHECK(std::abs(n.log_dist_yz) < 1e-12);
    CHECK(std::abs(n.layout.position[0] - Complex(1, 0)) < 1e-12);
    CHECK(std::abs(n.layout.position[1] - Complex(0, -1)) < 1e-12);
    CHECK(std::abs(n.layout.position[2] - Complex(-1, 0)) < 1e-12);
    CHECK(std::abs(n.layout.position[3] - Complex(0, 1)) < 1e-12);
    CHECK(std::abs(n.layout.position[4]) < 1e-12);
  }
  SUBCASE("normalization rejections") {
    CHECK(code_of([&] { normalize_layout(f.layout, 0, 9); }) ==
          ErrorCode::MarksNotVertices);
    CHECK(code_of([&] { normalize_layout(f.layout, 2, 2); }) ==
          ErrorCode::CoincidentMarks);
  }
}

TEST_CASE("octahedron uniformizes to the identity") {
  UniformizationProblem p = make_problem(round_octahedron(), 4, 0, 5);
  UniformizationResult r = uniformize(p);

  for (double v : r.u) CHECK(std::abs(v) < 1e-12);
  std::vector<Vec3> expect = tt::octahedron_positions();
  for (int v = 0; v < 6; ++v)
    CHECK((r.sphere_position[v] - expect[v]).norm() < 1e-12);

  CHECK(r.diag.method == "newton");
  CHECK(r.diag.solver_iterations >= 1);
  CHECK(r.diag.solver_iterations <= 10);
  CHECK(r.diag.interior_curvature_residual <= 1e-12);
  CHECK(r.diag.min_delaunay_margin == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(r.diag.min_boundary_curvature == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(r.diag.layout_diameter == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.diag.layout_consistency_residual < 1e-12);
  CHECK(r.diag.apex_spread <= 1e-12);
  CHECK(r.diag.max_dictionary_gap <= 1e-12);
  CHECK(r.diag.min_lift_dihedral_margin ==
        doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(r.diag.min_lift_circumcircle_margin ==
        doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(r.diag.min_origin_offset ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(r.diag.mark_y_error <= 1e-15);
  CHECK(r.diag.mark_z_error <= 1e-15);
}

TEST_CASE("perturbed octahedra keep every certificate") {
  auto oct = tt::octahedron();
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<double> l;
    while (true) {
      l.assign(oct->edges.size(), 0.0);
      for (double& v : l) v = kPi / 2 * (1.0 + jitter(rng));
      bool ok = true;
      for (size_t f = 0; f < oct->faces.size() && ok; ++f) {
        std::array<double, 3> s{l[oct->face_edges[f][0]], l[oct->face_edges[f][1]],
                                l[oct->face_edges[f][2]]};
        std::array<double, 3> a{};
        ok = try_triangle_angles(s, Flavor::Spherical, a);
      }
      if (ok) break;
    }
    UniformizationProblem p = make_problem(MetricMesh(oct, l, Flavor::Spherical), 4, 0, 5);
    UniformizationResult r = uniformize(p);

    CHECK(r.diag.interior_curvature_residual <= 1e-10);
    CHECK(r.diag.min_delaunay_margin > 0.0);
    CHECK(r.diag.min_boundary_curvature > 0.0);
    CHECK(r.diag.layout_consistency_residual <= 1e-8 * r.diag.layout_diameter);
    CHECK(r.diag.apex_spread <= 1e-8);
    CHECK(r.diag.max_dictionary_gap <= 1e-8);
    CHECK(r.diag.mark_y_error <= 1e-8);
    CHECK(r.diag.mark_z_error <= 1e-8);
    CHECK(verify_inscribed(r.polyhedron).pass());
    CHECK((r.sphere_position[4] - Vec3(0, 0, 1)).norm() == 0.0);
  }
}

TEST_CASE("regular tetrahedron cannot satisfy the marking") {
  // Removing any vertex leaves a single face, so the z mark is normalized to
  // the origin while standing on the layout boundary: the lift has no room
  // to wrap the sphere around the origin.
  auto tet = tt::tetrahedron();
  double arc = 2.0 * std::asin(std::sqrt(2.0 / 3.0));
  std::vector<double> l(tet->edges.size(), arc);
  UniformizationProblem p = make_problem(MetricMesh(tet, l, Flavor::Spherical), 0, 1, 2);
  bool raised = false;
  try {
    uniformize(p);
  } catch (const Error& e) {
    raised = error_class(e.code()) == ErrorClass::Certificate && e.stage() == "lift";
  }
  CHECK(raised);
}

TEST_CASE("boundary gauge shifts cancel in the assembled factor") {
  UniformizationProblem p = make_problem(round_octahedron(), 4, 0, 5);
  const Triangulation& parent = p.mesh.tri();
  StarRemoval removal = remove_open_star(parent, 4);
  auto disk = std::make_shared<const Triangulation>(removal.disk);
  std::vector<double> chords(parent.edges.size(), std::sqrt(2.0));
  std::vector<double> l = restrict_lengths(removal, parent, chords);
  std::vector<double> dirichlet = dirichlet_data(p, removal);

  auto run = [&](double c) {
    std::vector<double> d = dirichlet;
    for (int v = 0; v < removal.disk.n_vertices; ++v)
      if (removal.disk.vertex_on_boundary[v]) d[v] += c;
    BvpResult bvp = solve_curvature_bvp(disk, l, d);
    std::vector<double> scaled = scale_euclidean(*disk, l, bvp.u);
    FlatLayout flat = layout_flat(disk, scaled);
    NormalizedLayout n =
        normalize_layout(flat.layout, removal.from_parent[0], removal.from_parent[5]);
    std::vector<double> u_tilde = bvp.u;
    for (double& v : u_tilde) v -= n.log_dist_yz;
    InscribedPolyhedron poly = lift_to_polyhedron(n.layout);
    return assemble_factor(u_tilde, n.layout, poly, p, removal);
  };

  AssembledFactor base = run(0.0);
  AssembledFactor shifted = run(0.5);
  REQUIRE(base.u.size() == shifted.u.size());
  for (size_t i = 0; i < base.u.size(); ++i)
    CHECK(std::abs(base.u[i] - shifted.u[i]) <= 1e-9);
}

TEST_CASE("continuation agrees with newton") {
  UniformizationProblem p = make_problem(round_octahedron(), 4, 0, 5);
  SolverOptions opts;
  opts.method = SolverOptions::Method::Continuation;
  UniformizationResult c = uniformize(p, opts);
  UniformizationResult n = uniformize(p);
  CHECK(c.diag.method == "continuation");
  for (size_t i = 0; i < c.u.size(); ++i)
    CHECK(std::abs(c.u[i] - n.u[i]) <= 1e-8);
}
