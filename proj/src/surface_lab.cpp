#include "genus0/surface_lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "genus0/error.hpp"

namespace genus0 {

namespace {

constexpr double kPi = 3.14159265358979323846;

double round_arc(const Vec3& a, const Vec3& b) {
  return 2.0 * std::atan2((a - b).norm(), (a + b).norm());
}

}  // namespace

SpherePoints subdivide_projected(const SpherePoints& base) {
  const Triangulation& tri = *base.tri;
  const int n = tri.n_vertices;
  std::vector<Vec3> position = base.position;
  position.reserve(n + tri.edges.size());
  for (const auto& [a, b] : tri.edges)
    position.push_back(central_project(base.position[a] + base.position[b]));

  std::vector<std::array<int, 3>> faces;
  faces.reserve(tri.faces.size() * 4);
  for (size_t f = 0; f < tri.faces.size(); ++f) {
    const auto& fc = tri.faces[f];
    // midpoint opposite corner c sits on edge face_edges[f][c]
    std::array<int, 3> m;
    for (int c = 0; c < 3; ++c) m[c] = n + tri.face_edges[f][c];
    faces.push_back({fc[0], m[2], m[1]});
    faces.push_back({fc[1], m[0], m[2]});
    faces.push_back({fc[2], m[1], m[0]});
    faces.push_back({m[0], m[1], m[2]});
  }
  return SpherePoints{std::make_shared<const Triangulation>(build_triangulation(faces)),
                      std::move(position)};
}

SpherePoints octasphere(int level) {
  if (level < 0) fail(ErrorCode::OutOfRange, "subdivision level must be nonnegative");
  if (level > 7)
    fail(ErrorCode::LevelTooLarge, "subdivision level " + std::to_string(level) +
                                       " exceeds the supported maximum 7");
  std::vector<Vec3> position = {Vec3(1, 0, 0),  Vec3(0, 1, 0), Vec3(-1, 0, 0),
                                Vec3(0, -1, 0), Vec3(0, 0, 1), Vec3(0, 0, -1)};
  std::vector<std::array<int, 3>> faces = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4},
                                           {1, 0, 5}, {2, 1, 5}, {3, 2, 5}, {0, 3, 5}};
  SpherePoints s{std::make_shared<const Triangulation>(build_triangulation(faces)),
                 std::move(position)};
  for (int l = 0; l < level; ++l) s = subdivide_projected(s);
  return s;
}

std::array<int, 3> canonical_marks(const SpherePoints& s) {
  const Vec3 targets[3] = {Vec3(0, 0, 1), Vec3(1, 0, 0), Vec3(0, 0, -1)};
  std::array<int, 3> marks{-1, -1, -1};
  for (int t = 0; t < 3; ++t) {
    for (size_t i = 0; i < s.position.size(); ++i)
      if ((s.position[i] - targets[t]).norm() <= 1e-12) {
        marks[t] = static_cast<int>(i);
        break;
      }
    if (marks[t] < 0)
      fail(ErrorCode::MarksNotVertices, "canonical mark is not a mesh vertex");
  }
  return marks;
}

std::vector<double> metric_lengths(const SpherePoints& s, const SmoothFactor& phi,
                                   const LengthOptions& opts) {
  const Triangulation& tri = *s.tri;
  if (opts.samples < 1) fail(ErrorCode::OutOfRange, "need at least one sample panel");
  std::vector<double> l(tri.edges.size());
  for (size_t e = 0; e < tri.edges.size(); ++e) {
    auto [i, j] = tri.edges[e];
    const Vec3& a = s.position[i];
    const Vec3& b = s.position[j];
    if ((a - b).norm() == 0.0)
      fail(ErrorCode::InadmissibleLengths, "adjacent positions coincide");
    double arc = round_arc(a, b);
    if (arc >= kPi) fail(ErrorCode::ArcTooLong, "round arc reaches pi");
    double value;
    if (opts.mode == LengthMode::VertexScaled) {
      value = std::exp(0.5 * (phi(a) + phi(b))) * arc;
    } else {
      double sum = 0.0;
      double sin_arc = std::sin(arc);
      for (int k = 0; k < opts.samples; ++k) {
        double t = (k + 0.5) / opts.samples;
        Vec3 p = sin_arc > 1e-12
                     ? Vec3((std::sin((1.0 - t) * arc) * a + std::sin(t * arc) * b) / sin_arc)
                     : central_project((1.0 - t) * a + t * b);
        sum += std::exp(phi(p));
      }
      value = arc * sum / opts.samples;
    }
    if (value >= kPi)
      fail(ErrorCode::ArcTooLong, "scaled arc on edge " + std::to_string(i) + "-" +
                                      std::to_string(j) + " reaches pi");
    l[e] = value;
  }
  return l;
}

std::vector<double> ground_truth_factor(const SpherePoints& s, const SmoothFactor& phi) {
  canonical_marks(s);
  std::vector<double> u(s.position.size());
  for (size_t i = 0; i < s.position.size(); ++i) u[i] = -phi(s.position[i]);
  return u;
}

namespace {

ConvergenceRow run_level(int level, const SmoothFactor& phi, const ConvergenceOptions& opts) {
  SpherePoints s = octasphere(level);
  std::array<int, 3> marks = canonical_marks(s);
  std::vector<double> l = metric_lengths(s, phi, opts.lengths);

  ConvergenceRow row;
  row.level = level;
  for (size_t e = 0; e < s.tri->edges.size(); ++e) {
    auto [a, b] = s.tri->edges[e];
    row.max_arc = std::max(row.max_arc, round_arc(s.position[a], s.position[b]));
  }

  MetricMesh mesh(s.tri, l, Flavor::Spherical);
  row.regularity = regularity(mesh);
  UniformizationProblem problem = make_problem(std::move(mesh), marks[0], marks[1], marks[2]);
  UniformizationResult result = uniformize(problem, opts.solver);

  std::vector<double> exact = ground_truth_factor(s, phi);
  for (size_t i = 0; i < exact.size(); ++i)
    row.err_inf = std::max(row.err_inf, std::abs(result.u[i] - exact[i]));
  row.curvature_residual = result.diag.interior_curvature_residual;
  row.min_dihedral_margin = result.diag.min_lift_dihedral_margin;
  row.min_circumcircle_margin = result.diag.min_lift_circumcircle_margin;
  row.min_origin_offset = result.diag.min_origin_offset;
  row.iterations = result.diag.solver_iterations;
  return row;
}

}  // namespace

std::vector<ConvergenceRow> convergence_experiment(const SmoothFactor& phi,
                                                   const std::vector<int>& levels,
                                                   const ConvergenceOptions& opts) {
  if (levels.empty()) fail(ErrorCode::OutOfRange, "need at least one level");
  for (size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1])
      fail(ErrorCode::OutOfRange, "levels must be strictly ascending");

  std::vector<ConvergenceRow> table(levels.size());
  std::vector<std::exception_ptr> failures(levels.size());
  const int jobs = std::min<int>(std::max(1, opts.jobs), static_cast<int>(levels.size()));
  if (jobs <= 1) {
    for (size_t i = 0; i < levels.size(); ++i) table[i] = run_level(levels[i], phi, opts);
  } else {
    std::atomic<size_t> cursor{0};
    auto worker = [&] {
      for (size_t i = cursor++; i < levels.size(); i = cursor++) {
        try {
          table[i] = run_level(levels[i], phi, opts);
        } catch (...) {
          failures[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    for (std::exception_ptr& p : failures)
      if (p) std::rethrow_exception(p);
  }

  // Ratios and the running slope are derived sequentially so the table is
  // identical however many threads ran the levels.
  std::vector<double> log_arc, log_err;
  for (size_t i = 0; i < table.size(); ++i) {
    ConvergenceRow& row = table[i];
    row.ratio = i == 0 ? std::numeric_limits<double>::quiet_NaN()
                       : row.err_inf / table[i - 1].err_inf;
    log_arc.push_back(std::log(row.max_arc));
    log_err.push_back(std::log(std::max(row.err_inf, 1e-300)));
    if (log_arc.size() >= 2) {
      double mx = 0.0, my = 0.0;
      for (size_t k = 0; k < log_arc.size(); ++k) {
        mx += log_arc[k];
        my += log_err[k];
      }
      mx /= log_arc.size();
      my /= log_err.size();
      double sxx = 0.0, sxy = 0.0;
      for (size_t k = 0; k < log_arc.size(); ++k) {
        sxx += (log_arc[k] - mx) * (log_arc[k] - mx);
        sxy += (log_arc[k] - mx) * (log_err[k] - my);
      }
      row.slope = sxy / sxx;
    } else {
      row.slope = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return table;
}

}  // namespace genus0
