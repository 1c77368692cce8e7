#include "genus0/conformal_scaling.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace genus0 {

namespace {

void check_sizes(const Triangulation& tri, const std::vector<double>& l,
                 const std::vector<double>& u) {
  if (l.size() != tri.edges.size())
    fail(ErrorCode::OutOfRange, "one length per edge required");
  if (u.size() != static_cast<size_t>(tri.n_vertices))
    fail(ErrorCode::OutOfRange, "one factor per vertex required");
}

}  // namespace

std::vector<double> scale_euclidean(const Triangulation& tri,
                                    const std::vector<double>& l,
                                    const std::vector<double>& u) {
  check_sizes(tri, l, u);
  std::vector<double> out(l.size());
  for (size_t e = 0; e < l.size(); ++e)
    out[e] = std::exp(0.5 * (u[tri.edges[e][0]] + u[tri.edges[e][1]])) * l[e];
  return out;
}

std::vector<double> scale_spherical(const Triangulation& tri,
                                    const std::vector<double>& l,
                                    const std::vector<double>& u) {
  check_sizes(tri, l, u);
  std::vector<double> out(l.size());
  for (size_t e = 0; e < l.size(); ++e) {
    if (!(l[e] > 0.0 && l[e] < std::numbers::pi))
      fail(ErrorCode::InadmissibleLengths,
           "spherical length outside (0, pi) on edge " + std::to_string(e));
    double s = std::exp(0.5 * (u[tri.edges[e][0]] + u[tri.edges[e][1]])) *
               std::sin(0.5 * l[e]);
    if (s >= 1.0)
      fail(ErrorCode::OutOfRange,
           "scaled half-chord reaches 1 on edge " + std::to_string(e));
    out[e] = 2.0 * std::asin(s);
  }
  return out;
}

EdgeWeight cotangent_weights(const MetricMesh& m) {
  if (m.flavor() != Flavor::Euclidean)
    fail(ErrorCode::InadmissibleLengths, "cotangent weights are Euclidean");
  const Triangulation& tri = m.tri();
  CornerAngles angles = corner_angles(m);
  EdgeWeight eta(tri.edges.size(), 0.0);
  for (size_t f = 0; f < tri.faces.size(); ++f)
    for (int c = 0; c < 3; ++c)
      eta[tri.face_edges[f][c]] += 0.5 / std::tan(angles[f][c]);
  return eta;
}

Eigen::SparseMatrix<double> curvature_jacobian(const MetricMesh& m,
                                               const std::vector<double>& u) {
  MetricMesh scaled(m.tri_ptr(), scale_euclidean(m.tri(), m.length(), u),
                    Flavor::Euclidean);
  EdgeWeight eta = cotangent_weights(scaled);
  const Triangulation& tri = m.tri();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(tri.edges.size() * 4);
  for (size_t e = 0; e < tri.edges.size(); ++e) {
    auto [i, j] = tri.edges[e];
    double w = eta[e];
    trip.emplace_back(i, j, -w);
    trip.emplace_back(j, i, -w);
    trip.emplace_back(i, i, w);
    trip.emplace_back(j, j, w);
  }
  Eigen::SparseMatrix<double> jac(tri.n_vertices, tri.n_vertices);
  jac.setFromTriplets(trip.begin(), trip.end());
  return jac;
}

double fd_jacobian_check(const MetricMesh& m, const std::vector<double>& u,
                         double h) {
  const Triangulation& tri = m.tri();
  const int n = tri.n_vertices;
  Eigen::MatrixXd analytic(curvature_jacobian(m, u));

  auto curvature_at = [&](const std::vector<double>& v) {
    MetricMesh scaled(m.tri_ptr(), scale_euclidean(tri, m.length(), v),
                      Flavor::Euclidean);
    return discrete_curvature(scaled);
  };

  double worst = 0.0;
  std::vector<double> probe = u;
  for (int j = 0; j < n; ++j) {
    probe[j] = u[j] + h;
    std::vector<double> kp = curvature_at(probe);
    probe[j] = u[j] - h;
    std::vector<double> km = curvature_at(probe);
    probe[j] = u[j];
    for (int i = 0; i < n; ++i) {
      double fd = (kp[i] - km[i]) / (2.0 * h);
      worst = std::max(worst,
                       std::abs(analytic(i, j) - fd) / (1.0 + std::abs(analytic(i, j))));
    }
  }
  return worst;
}

}  // namespace genus0
