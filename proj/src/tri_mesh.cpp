#include "genus0/tri_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <unordered_map>

namespace genus0 {

namespace {

constexpr double kPi = std::numbers::pi;
// Law-of-cosines arguments may exceed [-1,1] by this much before the lengths
// are declared inadmissible; anything inside the slack is clamped.
constexpr double kCosineSlack = 1e-9;

int64_t directed_key(int i, int j) {
  return (static_cast<int64_t>(i) << 32) | static_cast<uint32_t>(j);
}

std::string edge_str(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

double robust_triangle_area(const std::array<double, 3>& s) {
  // Heron with the factors kept separate; fine for validated triangles.
  double a = s[0], b = s[1], c = s[2];
  double p = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c);
  return 0.25 * std::sqrt(std::max(p, 0.0));
}

}  // namespace

int Triangulation::edge_index(int i, int j) const {
  if (i == j) return -1;
  if (i < 0 || j < 0 || i >= n_vertices || j >= n_vertices) return -1;
  const auto& row = edge_lookup_[i];
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const std::array<int, 2>& a, int v) { return a[0] < v; });
  if (it != row.end() && (*it)[0] == j) return (*it)[1];
  return -1;
}

Triangulation build_triangulation(const std::vector<std::array<int, 3>>& faces) {
  if (faces.empty())
    fail(ErrorCode::UnsupportedTopology, "empty face list");

  Triangulation t;
  t.faces = faces;

  int max_index = -1;
  for (size_t f = 0; f < faces.size(); ++f) {
    const auto& fc = faces[f];
    for (int c = 0; c < 3; ++c) {
      if (fc[c] < 0)
        fail(ErrorCode::NonSimplicial,
             "negative vertex index in face " + std::to_string(f));
      max_index = std::max(max_index, fc[c]);
    }
    if (fc[0] == fc[1] || fc[1] == fc[2] || fc[0] == fc[2])
      fail(ErrorCode::NonSimplicial,
           "face " + std::to_string(f) + " repeats a vertex");
  }
  t.n_vertices = max_index + 1;

  {
    std::vector<std::array<int, 3>> sorted(faces.size());
    for (size_t f = 0; f < faces.size(); ++f) {
      sorted[f] = faces[f];
      std::sort(sorted[f].begin(), sorted[f].end());
    }
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end())
      fail(ErrorCode::NonSimplicial, "duplicate face on vertices " +
                                         edge_str((*dup)[0], (*dup)[1]) + "+" +
                                         std::to_string((*dup)[2]));
  }

  // Undirected edge multiplicities, then orientation consistency.
  std::map<std::array<int, 2>, int> edge_count;
  for (const auto& fc : faces) {
    for (int c = 0; c < 3; ++c) {
      int i = fc[c], j = fc[(c + 1) % 3];
      std::array<int, 2> key{std::min(i, j), std::max(i, j)};
      ++edge_count[key];
    }
  }
  for (const auto& [key, count] : edge_count) {
    if (count > 2)
      fail(ErrorCode::NonManifoldEdge, "edge " + edge_str(key[0], key[1]) +
                                           " lies in " + std::to_string(count) +
                                           " faces");
  }
  {
    std::unordered_map<int64_t, int> directed;
    directed.reserve(faces.size() * 4);
    for (size_t f = 0; f < faces.size(); ++f) {
      const auto& fc = faces[f];
      for (int c = 0; c < 3; ++c) {
        int i = fc[c], j = fc[(c + 1) % 3];
        auto [it, fresh] = directed.emplace(directed_key(i, j), static_cast<int>(f));
        if (!fresh)
          fail(ErrorCode::BadLink, "faces " + std::to_string(it->second) + " and " +
                                       std::to_string(f) + " both traverse edge " +
                                       edge_str(i, j) +
                                       "; orientations are inconsistent");
      }
    }
  }

  // Canonical edge ordering (map is already lexicographic).
  t.edges.reserve(edge_count.size());
  std::map<std::array<int, 2>, int> edge_id;
  for (const auto& [key, count] : edge_count) {
    edge_id[key] = static_cast<int>(t.edges.size());
    t.edges.push_back(key);
  }
  t.edge_faces.assign(t.edges.size(), {-1, -1});
  t.face_edges.assign(faces.size(), {-1, -1, -1});
  for (size_t f = 0; f < faces.size(); ++f) {
    const auto& fc = faces[f];
    for (int c = 0; c < 3; ++c) {
      int i = fc[(c + 1) % 3], j = fc[(c + 2) % 3];
      int e = edge_id[{std::min(i, j), std::max(i, j)}];
      t.face_edges[f][c] = e;
      if (t.edge_faces[e][0] < 0)
        t.edge_faces[e][0] = static_cast<int>(f);
      else
        t.edge_faces[e][1] = static_cast<int>(f);
    }
  }
  t.edge_on_boundary.assign(t.edges.size(), false);
  for (size_t e = 0; e < t.edges.size(); ++e)
    t.edge_on_boundary[e] = (t.edge_faces[e][1] < 0);

  // Rotational order around every vertex: walk the fan.
  std::vector<std::vector<std::array<int, 3>>> corner(t.n_vertices);
  for (size_t f = 0; f < faces.size(); ++f) {
    const auto& fc = faces[f];
    for (int c = 0; c < 3; ++c)
      corner[fc[c]].push_back({fc[(c + 1) % 3], fc[(c + 2) % 3], static_cast<int>(f)});
  }
  t.vertex_ring.assign(t.n_vertices, {});
  t.ring_faces.assign(t.n_vertices, {});
  t.vertex_on_boundary.assign(t.n_vertices, false);
  for (int v = 0; v < t.n_vertices; ++v) {
    const auto& fans = corner[v];
    if (fans.empty())
      fail(ErrorCode::BadLink, "vertex " + std::to_string(v) + " has no incident face");
    std::map<int, std::array<int, 2>> out;  // first neighbor -> (second, face)
    std::map<int, int> indegree;
    for (const auto& fan : fans) {
      if (!out.emplace(fan[0], std::array<int, 2>{fan[1], fan[2]}).second)
        fail(ErrorCode::BadLink, "vertex " + std::to_string(v) +
                                     " has two corners starting at neighbor " +
                                     std::to_string(fan[0]));
      ++indegree[fan[1]];
    }
    int start = -1, starts = 0;
    for (const auto& [a, rest] : out) {
      if (indegree.find(a) == indegree.end()) {
        ++starts;
        if (start < 0) start = a;
      }
    }
    bool boundary;
    if (starts == 0) {
      boundary = false;
      start = out.begin()->first;  // cycle; deterministic entry point
    } else if (starts == 1) {
      boundary = true;
    } else {
      fail(ErrorCode::BadLink, "link of vertex " + std::to_string(v) +
                                   " splits into several fans");
    }
    auto& ring = t.vertex_ring[v];
    auto& rfaces = t.ring_faces[v];
    int a = start;
    ring.push_back(a);
    for (size_t steps = 0; steps < fans.size(); ++steps) {
      auto it = out.find(a);
      if (it == out.end())
        fail(ErrorCode::BadLink, "link walk at vertex " + std::to_string(v) +
                                     " stops early; link is not a single " +
                                     (starts ? std::string("path") : std::string("cycle")));
      rfaces.push_back(it->second[1]);
      a = it->second[0];
      if (!boundary && a == start && steps + 1 < fans.size())
        fail(ErrorCode::BadLink, "link of vertex " + std::to_string(v) +
                                     " closes without covering all faces");
      if (boundary || steps + 1 < fans.size()) ring.push_back(a);
    }
    if (!boundary && a != start)
      fail(ErrorCode::BadLink, "link of vertex " + std::to_string(v) +
                                   " does not close into a cycle");
    t.vertex_on_boundary[v] = boundary;
  }

  // Connectivity over the 1-skeleton.
  {
    std::vector<char> seen(t.n_vertices, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : t.vertex_ring[v]) {
        if (!seen[u]) {
          seen[u] = 1;
          ++visited;
          stack.push_back(u);
        }
      }
    }
    if (visited != t.n_vertices)
      fail(ErrorCode::UnsupportedTopology, "surface is not connected");
  }

  bool has_boundary =
      std::any_of(t.edge_on_boundary.begin(), t.edge_on_boundary.end(),
                  [](bool b) { return b; });
  int chi = t.euler_characteristic();
  if (!has_boundary) {
    if (chi != 2)
      fail(ErrorCode::UnsupportedTopology,
           "closed surface with Euler characteristic " + std::to_string(chi));
    t.topology = TopologyClass::ClosedSphere;
  } else {
    if (chi != 1)
      fail(ErrorCode::UnsupportedTopology,
           "surface with boundary has Euler characteristic " + std::to_string(chi));
    t.topology = TopologyClass::Disk;

    // Trace the boundary in the orientation induced by the faces.
    std::map<int, int> next;
    int first = t.n_vertices;
    for (size_t f = 0; f < faces.size(); ++f) {
      const auto& fc = faces[f];
      for (int c = 0; c < 3; ++c) {
        int i = fc[c], j = fc[(c + 1) % 3];
        int e = t.face_edges[f][(c + 2) % 3];
        if (t.edge_on_boundary[e]) {
          next[i] = j;
          first = std::min(first, i);
        }
      }
    }
    int v = first;
    do {
      t.boundary_loop.push_back(v);
      v = next.at(v);
    } while (v != first && t.boundary_loop.size() <= next.size());
    if (t.boundary_loop.size() != next.size())
      fail(ErrorCode::UnsupportedTopology, "boundary is not a single cycle");
  }

  // Neighbor -> edge lookup, sorted per vertex.
  t.edge_lookup_.assign(t.n_vertices, {});
  for (size_t e = 0; e < t.edges.size(); ++e) {
    auto [i, j] = t.edges[e];
    t.edge_lookup_[i].push_back({j, static_cast<int>(e)});
    t.edge_lookup_[j].push_back({i, static_cast<int>(e)});
  }
  for (auto& row : t.edge_lookup_) std::sort(row.begin(), row.end());

  return t;
}

bool try_triangle_angles(const std::array<double, 3>& s, Flavor flavor,
                         std::array<double, 3>& angles) {
  for (double x : s)
    if (!std::isfinite(x) || !(x > 0.0)) return false;
  if (flavor == Flavor::Spherical) {
    if (!(s[0] < kPi && s[1] < kPi && s[2] < kPi)) return false;
    // Triangle inequality and perimeter < 2*pi are caught below: the
    // law-of-cosines argument leaves [-1, 1] exactly when they fail.
  }
  for (int c = 0; c < 3; ++c) {
    int j = (c + 1) % 3, k = (c + 2) % 3;
    double raw;
    if (flavor == Flavor::Euclidean) {
      raw = (s[j] * s[j] + s[k] * s[k] - s[c] * s[c]) / (2.0 * s[j] * s[k]);
    } else {
      raw = (std::cos(s[c]) - std::cos(s[j]) * std::cos(s[k])) /
            (std::sin(s[j]) * std::sin(s[k]));
    }
    if (!(raw >= -1.0 - kCosineSlack && raw <= 1.0 + kCosineSlack)) return false;
    angles[c] = std::acos(std::clamp(raw, -1.0, 1.0));
  }
  return true;
}

bool try_face_angles(const Triangulation& tri, const std::vector<double>& length,
                     Flavor flavor, CornerAngles& angles) {
  angles.resize(tri.faces.size());
  std::array<double, 3> s, a;
  for (size_t f = 0; f < tri.faces.size(); ++f) {
    for (int c = 0; c < 3; ++c) s[c] = length[tri.face_edges[f][c]];
    if (!try_triangle_angles(s, flavor, a)) return false;
    angles[f] = a;
  }
  return true;
}

MetricMesh::MetricMesh(std::shared_ptr<const Triangulation> tri,
                       std::vector<double> length, Flavor flavor)
    : tri_(std::move(tri)), length_(std::move(length)), flavor_(flavor) {
  if (!tri_) fail(ErrorCode::InadmissibleLengths, "null triangulation");
  if (length_.size() != tri_->edges.size())
    fail(ErrorCode::InadmissibleLengths,
         "expected " + std::to_string(tri_->edges.size()) + " edge lengths, got " +
             std::to_string(length_.size()));
  for (size_t e = 0; e < length_.size(); ++e) {
    double l = length_[e];
    if (!std::isfinite(l) || !(l > 0.0))
      fail(ErrorCode::InadmissibleLengths,
           "nonpositive length on edge " + std::to_string(e));
    if (flavor_ == Flavor::Spherical && !(l < kPi))
      fail(ErrorCode::InadmissibleLengths,
           "spherical length >= pi on edge " + std::to_string(e));
  }
  std::array<double, 3> s, a;
  for (size_t f = 0; f < tri_->faces.size(); ++f) {
    for (int c = 0; c < 3; ++c) s[c] = length_[tri_->face_edges[f][c]];
    for (int c = 0; c < 3; ++c) {
      if (!(s[(c + 1) % 3] + s[(c + 2) % 3] > s[c]))
        fail(ErrorCode::InadmissibleLengths,
             "triangle inequality fails in face " + std::to_string(f));
    }
    if (flavor_ == Flavor::Spherical && !(s[0] + s[1] + s[2] < 2.0 * kPi))
      fail(ErrorCode::InadmissibleLengths,
           "spherical perimeter >= 2*pi in face " + std::to_string(f));
    if (!try_triangle_angles(s, flavor_, a))
      fail(ErrorCode::InadmissibleLengths,
           "degenerate corner in face " + std::to_string(f));
  }
}

CornerAngles corner_angles(const MetricMesh& m) {
  CornerAngles angles;
  if (!try_face_angles(m.tri(), m.length(), m.flavor(), angles))
    fail(ErrorCode::InadmissibleLengths, "corner angle outside admissible range");
  return angles;
}

std::vector<double> discrete_curvature(const Triangulation& tri,
                                       const CornerAngles& angles) {
  std::vector<double> sum(tri.n_vertices, 0.0);
  for (size_t f = 0; f < tri.faces.size(); ++f)
    for (int c = 0; c < 3; ++c) sum[tri.faces[f][c]] += angles[f][c];
  std::vector<double> k(tri.n_vertices);
  for (int v = 0; v < tri.n_vertices; ++v)
    k[v] = (tri.vertex_on_boundary[v] ? kPi : 2.0 * kPi) - sum[v];
  return k;
}

std::vector<double> discrete_curvature(const MetricMesh& m) {
  return discrete_curvature(m.tri(), corner_angles(m));
}

std::vector<double> delaunay_margins(const Triangulation& tri,
                                     const CornerAngles& angles) {
  std::vector<double> margin(tri.edges.size(),
                             std::numeric_limits<double>::infinity());
  for (size_t e = 0; e < tri.edges.size(); ++e) {
    if (tri.edge_on_boundary[e]) continue;
    double opposite = 0.0, adjacent = 0.0;
    for (int side = 0; side < 2; ++side) {
      int f = tri.edge_faces[e][side];
      for (int c = 0; c < 3; ++c) {
        if (tri.face_edges[f][c] == static_cast<int>(e))
          opposite += angles[f][c];
        else
          adjacent += angles[f][c];
      }
    }
    margin[e] = adjacent - opposite;
  }
  return margin;
}

std::vector<double> delaunay_margins(const MetricMesh& m) {
  return delaunay_margins(m.tri(), corner_angles(m));
}

double regularity(const Triangulation& tri, const CornerAngles& angles) {
  double eps = std::numeric_limits<double>::infinity();
  for (const auto& a : angles)
    for (int c = 0; c < 3; ++c) eps = std::min(eps, a[c]);
  for (size_t e = 0; e < tri.edges.size(); ++e) {
    if (tri.edge_on_boundary[e]) continue;
    double opposite = 0.0;
    for (int side = 0; side < 2; ++side) {
      int f = tri.edge_faces[e][side];
      for (int c = 0; c < 3; ++c)
        if (tri.face_edges[f][c] == static_cast<int>(e)) opposite += angles[f][c];
    }
    eps = std::min(eps, kPi - opposite);
  }
  return eps;
}

double regularity(const MetricMesh& m) {
  return regularity(m.tri(), corner_angles(m));
}

PerturbationReport angle_perturbation_bound(const std::array<double, 3>& l,
                                            const std::array<double, 3>& lp,
                                            double epsilon) {
  if (!(epsilon > 0.0))
    fail(ErrorCode::HypothesisViolated, "epsilon must be positive");
  std::array<double, 3> a, ap;
  if (!try_triangle_angles(l, Flavor::Euclidean, a))
    fail(ErrorCode::InadmissibleLengths, "reference triangle is degenerate");
  for (int c = 0; c < 3; ++c)
    if (a[c] < epsilon - 1e-12)
      fail(ErrorCode::HypothesisViolated,
           "reference triangle has an angle below epsilon");
  double delta = 0.0;
  for (int c = 0; c < 3; ++c)
    delta = std::max(delta, std::abs(lp[c] - l[c]) / l[c]);
  if (!(delta < epsilon * epsilon / 48.0))
    fail(ErrorCode::HypothesisViolated,
         "relative perturbation too large: delta = " + std::to_string(delta));
  if (!try_triangle_angles(lp, Flavor::Euclidean, ap))
    fail(ErrorCode::InadmissibleLengths, "perturbed triangle is degenerate");

  PerturbationReport r;
  r.delta = delta;
  r.epsilon = epsilon;
  r.max_angle_change = 0.0;
  for (int c = 0; c < 3; ++c)
    r.max_angle_change = std::max(r.max_angle_change, std::abs(ap[c] - a[c]));
  r.angle_bound = 24.0 * delta / epsilon;
  double area = robust_triangle_area(l), areap = robust_triangle_area(lp);
  r.area_change = std::abs(areap - area) / area;
  r.area_bound = 576.0 * delta / (epsilon * epsilon);
  r.angle_within_bound = r.max_angle_change <= r.angle_bound;
  r.area_within_bound = r.area_change <= r.area_bound;
  return r;
}

MapSingularValues singular_values_of_map(const std::array<double, 3>& l,
                                         const std::array<double, 3>& lp) {
  std::array<double, 3> a;
  if (!try_triangle_angles(l, Flavor::Euclidean, a) ||
      !try_triangle_angles(lp, Flavor::Euclidean, a))
    fail(ErrorCode::InadmissibleLengths, "both triples must be admissible");

  // Lay both triangles out with corner 0 at the origin and corner 1 on the
  // positive axis; the linear map is E' * E^{-1} on edge vectors.
  auto layout = [](const std::array<double, 3>& s, double out[4]) {
    double x = (s[1] * s[1] + s[2] * s[2] - s[0] * s[0]) / (2.0 * s[2]);
    double y = std::sqrt(std::max(s[1] * s[1] - x * x, 0.0));
    out[0] = s[2];  // P1 - P0
    out[1] = 0.0;
    out[2] = x;  // P2 - P0
    out[3] = y;
  };
  double e[4], ep[4];
  layout(l, e);
  layout(lp, ep);
  double det = e[0] * e[3] - e[1] * e[2];
  // M = E' E^{-1} with E = [[e0, e2], [e1, e3]] (columns are edge vectors).
  double inv[4] = {e[3] / det, -e[2] / det, -e[1] / det, e[0] / det};
  double m00 = ep[0] * inv[0] + ep[2] * inv[2];
  double m01 = ep[0] * inv[1] + ep[2] * inv[3];
  double m10 = ep[1] * inv[0] + ep[3] * inv[2];
  double m11 = ep[1] * inv[1] + ep[3] * inv[3];

  // Closed-form 2x2 singular values.
  double q1 = std::hypot(m00 + m11, m10 - m01);
  double q2 = std::hypot(m00 - m11, m10 + m01);
  MapSingularValues r;
  r.lambda_max = 0.5 * (q1 + q2);
  r.lambda_min = 0.5 * std::abs(q1 - q2);
  r.area_ratio = (ep[0] * ep[3] - ep[1] * ep[2]) / det;
  return r;
}

AngleGapReport spherical_euclidean_angle_gap(const std::array<double, 3>& l) {
  AngleGapReport r;
  if (!try_triangle_angles(l, Flavor::Euclidean, r.euclidean_angles) ||
      !try_triangle_angles(l, Flavor::Spherical, r.spherical_angles))
    fail(ErrorCode::InadmissibleLengths,
         "lengths must be admissible in both geometries");
  for (double s : l)
    if (!(s < kPi / 3.0))
      fail(ErrorCode::HypothesisViolated, "edge length >= pi/3");
  r.max_gap = 0.0;
  for (int c = 0; c < 3; ++c)
    r.max_gap = std::max(r.max_gap,
                         std::abs(r.spherical_angles[c] - r.euclidean_angles[c]));
  double per = l[0] + l[1] + l[2];
  r.bound = 2.0 * per * per;
  r.within_bound = r.max_gap <= r.bound;
  return r;
}

StarRemoval remove_open_star(const Triangulation& tri, int v) {
  if (tri.topology != TopologyClass::ClosedSphere)
    fail(ErrorCode::NotClosed, "star removal needs a closed sphere");
  if (v < 0 || v >= tri.n_vertices)
    fail(ErrorCode::OutOfRange, "vertex " + std::to_string(v) + " out of range");
  if (tri.degree(v) < 3)
    fail(ErrorCode::DegenerateLink,
         "vertex " + std::to_string(v) + " has degree " + std::to_string(tri.degree(v)));

  StarRemoval r;
  r.removed_vertex = v;
  r.to_parent.reserve(tri.n_vertices - 1);
  r.from_parent.assign(tri.n_vertices, -1);
  for (int u = 0; u < tri.n_vertices; ++u) {
    if (u == v) continue;
    r.from_parent[u] = static_cast<int>(r.to_parent.size());
    r.to_parent.push_back(u);
  }

  std::vector<std::array<int, 3>> faces;
  faces.reserve(tri.faces.size() - tri.degree(v));
  for (const auto& fc : tri.faces) {
    if (fc[0] == v || fc[1] == v || fc[2] == v) continue;
    faces.push_back({r.from_parent[fc[0]], r.from_parent[fc[1]], r.from_parent[fc[2]]});
  }
  r.disk = build_triangulation(faces);
  return r;
}

std::vector<double> restrict_lengths(const StarRemoval& removal,
                                     const Triangulation& parent,
                                     const std::vector<double>& length) {
  if (length.size() != parent.edges.size())
    fail(ErrorCode::InadmissibleLengths, "length vector does not match parent mesh");
  std::vector<double> out(removal.disk.edges.size());
  for (size_t e = 0; e < removal.disk.edges.size(); ++e) {
    auto [a, b] = removal.disk.edges[e];
    int pe = parent.edge_index(removal.to_parent[a], removal.to_parent[b]);
    if (pe < 0)
      fail(ErrorCode::BadLink, "disk edge missing from parent mesh");
    out[e] = length[pe];
  }
  return out;
}

std::optional<std::vector<int>> find_small_vertex_cut(const Triangulation& tri,
                                                      int max_size,
                                                      int max_vertices) {
  int n = tri.n_vertices;
  if (n > max_vertices)
    fail(ErrorCode::TooLargeForExhaustive,
         "exhaustive cut search capped at " + std::to_string(max_vertices) +
             " vertices");

  std::vector<char> removed(n, 0), seen(n, 0);
  std::vector<int> stack;
  auto disconnected = [&]() {
    int start = -1, alive = 0;
    for (int v = 0; v < n; ++v) {
      seen[v] = 0;
      if (!removed[v]) {
        ++alive;
        if (start < 0) start = v;
      }
    }
    if (alive <= 1) return false;
    stack.assign(1, start);
    seen[start] = 1;
    int visited = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : tri.vertex_ring[v]) {
        if (!removed[u] && !seen[u]) {
          seen[u] = 1;
          ++visited;
          stack.push_back(u);
        }
      }
    }
    return visited != alive;
  };

  std::vector<int> cut;
  // Sizes in increasing order so the first hit is a minimum cut.
  for (int size = 1; size <= max_size; ++size) {
    cut.assign(size, 0);
    for (int i = 0; i < size; ++i) cut[i] = i;
    while (true) {
      for (int v : cut) removed[v] = 1;
      bool split = disconnected();
      for (int v : cut) removed[v] = 0;
      if (split) return cut;
      int i = size - 1;
      while (i >= 0 && cut[i] == n - size + i) --i;
      if (i < 0) break;
      ++cut[i];
      for (int j = i + 1; j < size; ++j) cut[j] = cut[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace genus0
