#include "genus0/uniformizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Sparse>

#include "genus0/conformal_scaling.hpp"
#include "genus0/error.hpp"

namespace genus0 {

UniformizationProblem make_problem(MetricMesh mesh, int x, int y, int z) {
  const Triangulation& tri = mesh.tri();
  if (mesh.flavor() != Flavor::Spherical)
    fail(ErrorCode::InadmissibleLengths, "uniformization expects spherical edge lengths");
  if (tri.topology != TopologyClass::ClosedSphere)
    fail(ErrorCode::NotClosed, "uniformization expects a closed sphere");
  for (int m : {x, y, z})
    if (m < 0 || m >= tri.n_vertices)
      fail(ErrorCode::MarksNotVertices, "mark " + std::to_string(m) + " is not a vertex");
  if (x == y || y == z || x == z)
    fail(ErrorCode::CoincidentMarks, "marks must be three distinct vertices");
  return UniformizationProblem{std::move(mesh), x, y, z};
}

std::vector<double> dirichlet_data(const UniformizationProblem& problem,
                                   const StarRemoval& removal) {
  const Triangulation& parent = problem.mesh.tri();
  std::vector<double> d(removal.disk.n_vertices, 0.0);
  for (int i = 0; i < removal.disk.n_vertices; ++i) {
    if (!removal.disk.vertex_on_boundary[i]) continue;
    int e = parent.edge_index(removal.to_parent[i], removal.removed_vertex);
    if (e < 0)
      fail(ErrorCode::BadLink, "boundary vertex lost its edge to the removed vertex");
    double half = 0.5 * problem.mesh.length()[e];
    d[i] = std::log(2.0) - 2.0 * std::log(2.0 * std::sin(half));
  }
  return d;
}

namespace {

// Everything Newton needs about the scaled disk at a given factor.
struct Evaluation {
  bool admissible = false;
  std::vector<double> lengths;
  CornerAngles angles;
  std::vector<double> curvature;
  std::vector<double> margins;
  double interior_residual = 0.0;     // ||K_interior - target||_inf
  double interior_residual_l2 = 0.0;  // ||K_interior - target||_2
  double min_interior_margin = std::numeric_limits<double>::infinity();
};

Evaluation evaluate(const Triangulation& disk, const std::vector<double>& l,
                    const std::vector<double>& u, const std::vector<double>& target) {
  Evaluation ev;
  ev.lengths = scale_euclidean(disk, l, u);
  if (!try_face_angles(disk, ev.lengths, Flavor::Euclidean, ev.angles)) return ev;
  ev.admissible = true;
  ev.curvature = discrete_curvature(disk, ev.angles);
  ev.margins = delaunay_margins(disk, ev.angles);
  double sq = 0.0;
  for (int i = 0; i < disk.n_vertices; ++i)
    if (!disk.vertex_on_boundary[i]) {
      double r = std::abs(ev.curvature[i] - target[i]);
      ev.interior_residual = std::max(ev.interior_residual, r);
      sq += r * r;
    }
  ev.interior_residual_l2 = std::sqrt(sq);
  for (size_t e = 0; e < disk.edges.size(); ++e)
    if (!disk.edge_on_boundary[e])
      ev.min_interior_margin = std::min(ev.min_interior_margin, ev.margins[e]);
  return ev;
}

// Cotangent weights straight from precomputed corner angles.
std::vector<double> weights_from_angles(const Triangulation& disk, const CornerAngles& angles) {
  std::vector<double> eta(disk.edges.size(), 0.0);
  for (size_t f = 0; f < disk.faces.size(); ++f)
    for (int c = 0; c < 3; ++c)
      eta[disk.face_edges[f][c]] += 0.5 / std::tan(angles[f][c]);
  return eta;
}

struct NewtonState {
  std::vector<double> u;
  Evaluation ev;
  int iterations = 0;
};

// One Newton correction toward K_interior = target, with a backtracking line
// search that keeps the scaled mesh admissible, every interior margin
// positive and the residual decreasing. Returns false if the line search ran
// out of halvings.
bool newton_step(const Triangulation& disk, const std::vector<double>& l,
                 const std::vector<int>& interior, const std::vector<int>& interior_index,
                 const std::vector<double>& target, const SolverOptions& opts,
                 NewtonState& st) {
  const int n = static_cast<int>(interior.size());
  std::vector<double> eta = weights_from_angles(disk, st.ev.angles);

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(disk.edges.size() * 2 + interior.size());
  std::vector<double> diag(n, 0.0);
  for (size_t e = 0; e < disk.edges.size(); ++e) {
    auto [a, b] = disk.edges[e];
    int ia = interior_index[a], ib = interior_index[b];
    if (ia < 0 && ib < 0) continue;
    if (ia >= 0) diag[ia] += eta[e];
    if (ib >= 0) diag[ib] += eta[e];
    if (ia >= 0 && ib >= 0) {
      trips.emplace_back(ia, ib, -eta[e]);
      trips.emplace_back(ib, ia, -eta[e]);
    }
  }
  for (int r = 0; r < n; ++r) trips.emplace_back(r, r, diag[r]);
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trips.begin(), trips.end());

  Eigen::VectorXd rhs(n);
  for (int r = 0; r < n; ++r)
    rhs[r] = target[interior[r]] - st.ev.curvature[interior[r]];
  Eigen::VectorXd delta = solve_spd(A, rhs, opts.linear);

  double s = 1.0;
  for (int h = 0; h <= opts.max_halvings; ++h, s *= 0.5) {
    std::vector<double> trial = st.u;
    for (int r = 0; r < n; ++r) trial[interior[r]] += s * delta[r];
    Evaluation ev = evaluate(disk, l, trial, target);
    if (!ev.admissible) continue;
    if (ev.min_interior_margin <= 0.0) continue;
    // Decrease is tested in l2: the interior Jacobian is positive definite
    // while the margins stay positive, so the Newton direction is a descent
    // direction for the l2 residual. The max norm is not descended
    // monotonically far from the solution and would strangle the step size;
    // it only gates termination.
    if (ev.interior_residual_l2 >= st.ev.interior_residual_l2) continue;
    st.u = std::move(trial);
    st.ev = std::move(ev);
    ++st.iterations;
    return true;
  }
  return false;
}

void newton_to_target(const Triangulation& disk, const std::vector<double>& l,
                      const std::vector<int>& interior, const std::vector<int>& interior_index,
                      const std::vector<double>& target, const SolverOptions& opts,
                      NewtonState& st) {
  int steps = 0;
  st.ev = evaluate(disk, l, st.u, target);
  if (!st.ev.admissible)
    fail(ErrorCode::LeftAdmissibleRegion, "iterate left the admissible region");
  while (st.ev.interior_residual > opts.tolerance) {
    if (steps >= opts.max_iterations)
      fail(ErrorCode::MaxIterations,
           "no convergence after " + std::to_string(opts.max_iterations) + " iterations");
    if (!newton_step(disk, l, interior, interior_index, target, opts, st))
      fail(ErrorCode::StuckLineSearch,
           "line search stalled after " + std::to_string(opts.max_halvings) + " halvings");
    ++steps;
  }
}

}  // namespace

std::vector<double> initial_guess(const std::shared_ptr<const Triangulation>& disk,
                                  const std::vector<double>& l,
                                  const std::vector<double>& dirichlet) {
  const Triangulation& tri = *disk;
  MetricMesh flat(disk, l, Flavor::Euclidean);  // validates admissibility at u = 0

  std::vector<int> interior;
  double boundary_mean = 0.0;
  int n_boundary = 0;
  for (int i = 0; i < tri.n_vertices; ++i) {
    if (tri.vertex_on_boundary[i]) {
      boundary_mean += dirichlet[i];
      ++n_boundary;
    } else {
      interior.push_back(i);
    }
  }
  if (n_boundary == 0)
    fail(ErrorCode::NotClosed, "disk has no boundary to pin");
  boundary_mean /= n_boundary;

  std::vector<double> u(tri.n_vertices, 0.0);
  for (int i = 0; i < tri.n_vertices; ++i)
    if (tri.vertex_on_boundary[i]) u[i] = dirichlet[i];
  if (interior.empty()) return u;

  // Harmonic extension of the boundary data in the cotangent weights of the
  // unscaled disk; if that system is not usable, start from the constant.
  std::vector<double> harmonic(interior.size(), boundary_mean);
  try {
    std::vector<double> eta = cotangent_weights(flat);
    std::vector<int> interior_index(tri.n_vertices, -1);
    for (size_t r = 0; r < interior.size(); ++r) interior_index[interior[r]] = static_cast<int>(r);
    const int n = static_cast<int>(interior.size());
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    std::vector<double> diag(n, 0.0);
    for (size_t e = 0; e < tri.edges.size(); ++e) {
      auto [a, b] = tri.edges[e];
      int ia = interior_index[a], ib = interior_index[b];
      if (ia < 0 && ib < 0) continue;
      if (ia >= 0) diag[ia] += eta[e];
      if (ib >= 0) diag[ib] += eta[e];
      if (ia >= 0 && ib >= 0) {
        trips.emplace_back(ia, ib, -eta[e]);
        trips.emplace_back(ib, ia, -eta[e]);
      } else if (ia >= 0) {
        rhs[ia] += eta[e] * dirichlet[b];
      } else {
        rhs[ib] += eta[e] * dirichlet[a];
      }
    }
    for (int r = 0; r < n; ++r) trips.emplace_back(r, r, diag[r]);
    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(trips.begin(), trips.end());
    Eigen::VectorXd sol = solve_spd(A, rhs);
    for (int r = 0; r < n; ++r) harmonic[r] = sol[r];
  } catch (const Error&) {
    // keep the constant extension
  }

  // Blend the interior toward the constant until the scaled mesh admits
  // triangle angles everywhere.
  double s = 1.0;
  for (int h = 0; h <= 60; ++h, s *= 0.5) {
    for (size_t r = 0; r < interior.size(); ++r)
      u[interior[r]] = boundary_mean + s * (harmonic[r] - boundary_mean);
    std::vector<double> scaled = scale_euclidean(tri, l, u);
    CornerAngles angles;
    if (try_face_angles(tri, scaled, Flavor::Euclidean, angles)) return u;
  }
  fail(ErrorCode::NoAdmissibleStart, "no admissible starting factor found");
}

BvpResult solve_curvature_bvp(const std::shared_ptr<const Triangulation>& disk,
                              const std::vector<double>& l,
                              const std::vector<double>& dirichlet,
                              const SolverOptions& opts) {
  const Triangulation& tri = *disk;
  if (tri.topology != TopologyClass::Disk)
    fail(ErrorCode::UnsupportedTopology, "curvature problem expects a disk");
  if (dirichlet.size() != static_cast<size_t>(tri.n_vertices))
    fail(ErrorCode::OutOfRange, "dirichlet data has wrong size");

  std::vector<int> interior;
  std::vector<int> interior_index(tri.n_vertices, -1);
  for (int i = 0; i < tri.n_vertices; ++i)
    if (!tri.vertex_on_boundary[i]) {
      interior_index[i] = static_cast<int>(interior.size());
      interior.push_back(i);
    }

  NewtonState st;
  st.u = initial_guess(disk, l, dirichlet);
  const std::vector<double> u_start = st.u;
  std::vector<double> target(tri.n_vertices, 0.0);

  st.ev = evaluate(tri, l, st.u, target);
  if (!st.ev.admissible)
    fail(ErrorCode::LeftAdmissibleRegion, "starting factor is not admissible");

  if (!interior.empty() && st.ev.interior_residual > opts.tolerance) {
    if (opts.method == SolverOptions::Method::Continuation) {
      std::vector<double> k0(tri.n_vertices, 0.0);
      for (int i : interior) k0[i] = st.ev.curvature[i];
      const int m = std::max(1, opts.continuation_steps);
      for (int step = 1; step <= m; ++step) {
        double t = static_cast<double>(step) / m;
        for (int i : interior) target[i] = (1.0 - t) * k0[i];
        newton_to_target(tri, l, interior, interior_index, target, opts, st);
      }
    } else {
      newton_to_target(tri, l, interior, interior_index, target, opts, st);
    }

    // A few extra corrections toward the floating point floor keep the
    // developed layout consistent on fine meshes; stop quietly once the
    // line search cannot improve the residual.
    for (int p = 0; p < 3 && st.ev.interior_residual > 1e-13; ++p)
      if (!newton_step(tri, l, interior, interior_index, target, opts, st)) break;
  }

  BvpResult out;
  out.u = st.u;
  out.iterations = st.iterations;
  out.residual = st.ev.interior_residual;
  out.min_delaunay_margin = st.ev.min_interior_margin;
  out.min_boundary_curvature = std::numeric_limits<double>::infinity();
  for (int i = 0; i < tri.n_vertices; ++i)
    if (tri.vertex_on_boundary[i])
      out.min_boundary_curvature = std::min(out.min_boundary_curvature, st.ev.curvature[i]);
  std::vector<double> diff(st.u.size());
  for (size_t i = 0; i < st.u.size(); ++i) diff[i] = st.u[i] - u_start[i];
  out.update_ratio = elliptic_ratio(diff, l);
  return out;
}

namespace {

// Third corner of a counterclockwise triangle: a and b are placed, the new
// corner lies at distance la from a and lb from b, to the left of a -> b.
Complex place_third(Complex pa, Complex pb, double la, double lb) {
  Complex ab = pb - pa;
  double d = std::abs(ab);
  if (d <= 0.0) fail(ErrorCode::InadmissibleLengths, "degenerate edge in layout");
  double x = (la * la + d * d - lb * lb) / (2.0 * d);
  double y2 = la * la - x * x;
  double y = y2 > 0.0 ? std::sqrt(y2) : 0.0;
  Complex dir = ab / d;
  return pa + dir * Complex(x, y);
}

}  // namespace

FlatLayout layout_flat(const std::shared_ptr<const Triangulation>& disk,
                       const std::vector<double>& l) {
  const Triangulation& tri = *disk;
  if (tri.topology != TopologyClass::Disk)
    fail(ErrorCode::UnsupportedTopology, "layout expects a disk");
  MetricMesh mesh(disk, l, Flavor::Euclidean);
  CornerAngles angles = corner_angles(mesh);
  std::vector<double> curvature = discrete_curvature(tri, angles);
  for (int i = 0; i < tri.n_vertices; ++i) {
    if (!tri.vertex_on_boundary[i] && std::abs(curvature[i]) > 1e-8)
      fail(ErrorCode::HolonomyResidualExceeded,
           "interior vertex " + std::to_string(i) + " carries curvature " +
               std::to_string(curvature[i]));
    if (tri.vertex_on_boundary[i] && curvature[i] <= 0.0)
      fail(ErrorCode::NonConvexBoundary,
           "boundary vertex " + std::to_string(i) + " is not convex");
  }

  // Seed: lexicographically smallest face triple, lowest vertex at the
  // origin, edge toward its smaller neighbor along the positive real axis.
  int seed = 0;
  std::array<int, 3> best{};
  for (size_t f = 0; f < tri.faces.size(); ++f) {
    std::array<int, 3> key = tri.faces[f];
    std::sort(key.begin(), key.end());
    if (f == 0 || key < best) {
      best = key;
      seed = static_cast<int>(f);
    }
  }
  const auto& sf = tri.faces[seed];
  int ca = 0;  // corner of the lowest vertex
  for (int c = 1; c < 3; ++c)
    if (sf[c] < sf[ca]) ca = c;
  int va = sf[ca];
  int vnext = sf[(ca + 1) % 3], vprev = sf[(ca + 2) % 3];
  int vb = std::min(vnext, vprev);

  std::vector<Complex> pos(tri.n_vertices);
  std::vector<char> placed(tri.n_vertices, 0);
  pos[va] = Complex(0.0, 0.0);
  pos[vb] = Complex(l[tri.edge_index(va, vb)], 0.0);
  placed[va] = placed[vb] = 1;

  // Breadth-first development over face adjacency; every face is entered
  // across an edge whose endpoints are already placed, so its third corner
  // (if new) drops out of the two edge lengths.
  auto settle = [&](int f) {
    const auto& fc = tri.faces[f];
    int t = -1;
    for (int c = 0; c < 3; ++c)
      if (!placed[fc[c]]) {
        if (t >= 0) fail(ErrorCode::CertificateFailure, "development lost connectivity");
        t = c;
      }
    if (t < 0) return;
    int a = fc[(t + 1) % 3], b = fc[(t + 2) % 3];
    double la = l[tri.face_edges[f][(t + 2) % 3]];  // edge a - third
    double lb = l[tri.face_edges[f][(t + 1) % 3]];  // edge b - third
    pos[fc[t]] = place_third(pos[a], pos[b], la, lb);
    placed[fc[t]] = 1;
  };

  std::vector<char> visited(tri.faces.size(), 0);
  std::vector<int> queue{seed};
  visited[seed] = 1;
  for (size_t head = 0; head < queue.size(); ++head) {
    int f = queue[head];
    settle(f);
    for (int c = 0; c < 3; ++c) {
      int e = tri.face_edges[f][c];
      int other = tri.edge_faces[e][0] == f ? tri.edge_faces[e][1] : tri.edge_faces[e][0];
      if (other >= 0 && !visited[other]) {
        visited[other] = 1;
        queue.push_back(other);
      }
    }
  }
  for (int i = 0; i < tri.n_vertices; ++i)
    if (!placed[i]) fail(ErrorCode::CertificateFailure, "development left a vertex unplaced");

  // Position spread: every face re-derives each of its corners from the
  // other two; the worst disagreement with the stored position is the
  // consistency residual of the development.
  double residual = 0.0;
  for (size_t f = 0; f < tri.faces.size(); ++f) {
    const auto& fc = tri.faces[f];
    for (int t = 0; t < 3; ++t) {
      int a = fc[(t + 1) % 3], b = fc[(t + 2) % 3];
      Complex candidate = place_third(pos[a], pos[b], l[tri.face_edges[f][(t + 2) % 3]],
                                      l[tri.face_edges[f][(t + 1) % 3]]);
      residual = std::max(residual, std::abs(candidate - pos[fc[t]]));
    }
  }

  double diameter = 0.0;
  for (size_t i = 0; i < tri.boundary_loop.size(); ++i)
    for (size_t j = i + 1; j < tri.boundary_loop.size(); ++j)
      diameter = std::max(diameter,
                          std::abs(pos[tri.boundary_loop[i]] - pos[tri.boundary_loop[j]]));

  if (residual > 1e-8 * diameter)
    fail(ErrorCode::HolonomyResidualExceeded,
         "development is inconsistent: spread " + std::to_string(residual) +
             " exceeds 1e-8 * diameter");

  // The developed boundary must turn left at every vertex (the metric check
  // above guarantees it; this guards the realized positions).
  const auto& loop = tri.boundary_loop;
  const size_t nb = loop.size();
  for (size_t i = 0; i < nb; ++i) {
    Complex prev = pos[loop[(i + nb - 1) % nb]];
    Complex here = pos[loop[i]];
    Complex next = pos[loop[(i + 1) % nb]];
    Complex in = here - prev, out = next - here;
    if (in.real() * out.imag() - in.imag() * out.real() <= 0.0)
      fail(ErrorCode::NonConvexBoundary,
           "developed boundary fails to turn left at vertex " + std::to_string(loop[i]));
  }

  FlatLayout out{make_layout(disk, pos), residual, diameter};
  return out;
}

NormalizedLayout normalize_layout(const PlanarLayout& q, int y_vertex, int z_vertex) {
  const int n = q.tri->n_vertices;
  if (y_vertex < 0 || y_vertex >= n || z_vertex < 0 || z_vertex >= n)
    fail(ErrorCode::MarksNotVertices, "normalization marks are not vertices");
  Complex zz = q.position[z_vertex];
  Complex span = q.position[y_vertex] - zz;
  double scale = 0.0;
  for (const Complex& p : q.position) scale = std::max(scale, std::abs(p - zz));
  if (std::abs(span) <= 1e-12 * scale)
    fail(ErrorCode::CoincidentMarks, "normalization marks coincide in the layout");
  std::vector<Complex> pos(q.position.size());
  for (size_t i = 0; i < pos.size(); ++i) pos[i] = (q.position[i] - zz) / span;
  return NormalizedLayout{make_layout(q.tri, pos), std::log(std::abs(span))};
}

AssembledFactor assemble_factor(const std::vector<double>& u_tilde,
                                const PlanarLayout& normalized,
                                const InscribedPolyhedron& lifted,
                                const UniformizationProblem& problem,
                                const StarRemoval& removal) {
  const Triangulation& parent = problem.mesh.tri();
  const Triangulation& disk = removal.disk;
  const int apex = disk.n_vertices;

  AssembledFactor out;
  out.u.assign(parent.n_vertices, 0.0);
  for (int i = 0; i < disk.n_vertices; ++i) {
    double w = std::log((std::norm(normalized.position[i]) + 1.0) / 2.0);
    out.u[removal.to_parent[i]] = u_tilde[i] - w;
  }

  // Every neighbor of the removed vertex determines its factor through the
  // scaling identity on the shared edge; the candidates must agree.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  int count = 0;
  for (int i = 0; i < disk.n_vertices; ++i) {
    if (!disk.vertex_on_boundary[i]) continue;
    int e = parent.edge_index(removal.to_parent[i], removal.removed_vertex);
    double half = 0.5 * problem.mesh.length()[e];
    double candidate =
        std::log(2.0) - 2.0 * std::log(2.0 * std::sin(half)) - u_tilde[i];
    lo = std::min(lo, candidate);
    hi = std::max(hi, candidate);
    sum += candidate;
    ++count;
  }
  out.apex_spread = hi - lo;
  if (out.apex_spread > 1e-8)
    fail(ErrorCode::InconsistentApex,
         "apex factor candidates spread " + std::to_string(out.apex_spread));
  out.u[removal.removed_vertex] = sum / count;

  // Chord dictionary: on every parent edge the scaled spherical length must
  // reproduce the chord of the lifted polyhedron.
  out.max_dictionary_gap = 0.0;
  for (size_t e = 0; e < parent.edges.size(); ++e) {
    auto [a, b] = parent.edges[e];
    int ca = a == removal.removed_vertex ? apex : removal.from_parent[a];
    int cb = b == removal.removed_vertex ? apex : removal.from_parent[b];
    int ce = lifted.tri->edge_index(ca, cb);
    if (ce < 0)
      fail(ErrorCode::EdgeDictionaryMismatch,
           "parent edge " + std::to_string(a) + "-" + std::to_string(b) +
               " is missing from the polyhedron");
    double chord = lifted.chord_length[ce];
    double expected = std::exp(0.5 * (out.u[a] + out.u[b])) *
                      2.0 * std::sin(0.5 * problem.mesh.length()[e]);
    double gap = std::abs(expected - chord) / chord;
    out.max_dictionary_gap = std::max(out.max_dictionary_gap, gap);
  }
  if (out.max_dictionary_gap > 1e-8)
    fail(ErrorCode::EdgeDictionaryMismatch,
         "scaled lengths disagree with polyhedron chords by " +
             std::to_string(out.max_dictionary_gap));
  return out;
}

namespace {

template <typename F>
auto stage(const char* name, F&& body) {
  try {
    return body();
  } catch (Error& err) {
    err.set_stage(name);
    throw;
  }
}

}  // namespace

UniformizationResult uniformize(const UniformizationProblem& problem,
                                const SolverOptions& opts) {
  const Triangulation& parent = problem.mesh.tri();

  StarRemoval removal =
      stage("surgery", [&] { return remove_open_star(parent, problem.x); });
  auto disk = std::make_shared<const Triangulation>(removal.disk);

  // Chord lengths: the disk inherits 2 sin(l/2) on every surviving edge.
  std::vector<double> chords(parent.edges.size());
  for (size_t e = 0; e < parent.edges.size(); ++e)
    chords[e] = 2.0 * std::sin(0.5 * problem.mesh.length()[e]);
  std::vector<double> disk_l = restrict_lengths(removal, parent, chords);

  std::vector<double> dirichlet =
      stage("dirichlet", [&] { return dirichlet_data(problem, removal); });

  BvpResult bvp = stage("solve", [&] {
    return solve_curvature_bvp(disk, disk_l, dirichlet, opts);
  });

  std::vector<double> scaled = scale_euclidean(*disk, disk_l, bvp.u);
  FlatLayout flat = stage("layout", [&] { return layout_flat(disk, scaled); });

  NormalizedLayout normalized = stage("normalize", [&] {
    return normalize_layout(flat.layout, removal.from_parent[problem.y],
                            removal.from_parent[problem.z]);
  });

  // Absorb the normalization scale into the factor.
  std::vector<double> u_tilde = bvp.u;
  for (double& v : u_tilde) v -= normalized.log_dist_yz;

  InscribedPolyhedron poly =
      stage("lift", [&] { return lift_to_polyhedron(normalized.layout); });

  AssembledFactor assembled = stage("assemble", [&] {
    return assemble_factor(u_tilde, normalized.layout, poly, problem, removal);
  });

  UniformizationResult out{std::vector<double>(), std::vector<Vec3>(parent.n_vertices),
                           poly, removal, UniformizationDiagnostics{}};
  out.u = assembled.u;
  for (int i = 0; i < removal.disk.n_vertices; ++i)
    out.sphere_position[removal.to_parent[i]] = poly.position[i];
  out.sphere_position[problem.x] = poly.position[removal.disk.n_vertices];

  InscribedCertificates certs = verify_inscribed(poly);
  out.diag.method =
      opts.method == SolverOptions::Method::Continuation ? "continuation" : "newton";
  out.diag.solver_iterations = bvp.iterations;
  out.diag.interior_curvature_residual = bvp.residual;
  out.diag.min_delaunay_margin = bvp.min_delaunay_margin;
  out.diag.min_boundary_curvature = bvp.min_boundary_curvature;
  out.diag.layout_consistency_residual = flat.consistency_residual;
  out.diag.layout_diameter = flat.diameter;
  out.diag.apex_spread = assembled.apex_spread;
  out.diag.max_dictionary_gap = assembled.max_dictionary_gap;
  out.diag.min_lift_dihedral_margin = certs.min_dihedral_margin;
  out.diag.min_lift_circumcircle_margin = certs.min_circumcircle_margin;
  out.diag.min_origin_offset = certs.min_origin_offset;
  out.diag.update_ratio = bvp.update_ratio;

  stage("assemble", [&] {
    Vec3 py = out.sphere_position[problem.y];
    Vec3 pz = out.sphere_position[problem.z];
    out.diag.mark_y_error = std::abs(stereo_project(py) - Complex(1.0, 0.0));
    out.diag.mark_z_error = std::abs(stereo_project(pz));
    if (out.diag.mark_y_error > 1e-8 || out.diag.mark_z_error > 1e-8)
      fail(ErrorCode::CertificateFailure, "marked vertices missed their targets");
    Vec3 px = out.sphere_position[problem.x];
    if ((px - Vec3(0.0, 0.0, 1.0)).norm() != 0.0)
      fail(ErrorCode::CertificateFailure, "apex is not at the north pole");
    return 0;
  });

  return out;
}

}  // namespace genus0
