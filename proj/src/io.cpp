#include "genus0/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "genus0/error.hpp"

namespace genus0 {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

// Whitespace tokens with '#' comments stripped, as OFF allows them anywhere.
std::vector<std::string> tokenize(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string t;
    while (ls >> t) tokens.push_back(t);
  }
  return tokens;
}

long parse_long(const std::string& t, const char* what) {
  char* end = nullptr;
  long v = std::strtol(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size())
    fail(ErrorCode::ParseError, std::string("expected ") + what + ", got '" + t + "'");
  return v;
}

double parse_number(const std::string& t, const char* what) {
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size())
    fail(ErrorCode::ParseError, std::string("expected ") + what + ", got '" + t + "'");
  return v;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
  return in;
}

// Guards the position array invariant: faces must reference exactly the
// declared vertices, no more (out of range) and no fewer (unused trailing
// vertices would misalign positions).
std::shared_ptr<const Triangulation> build_shared(size_t n_declared,
                                                  const std::vector<std::array<int, 3>>& faces) {
  for (const auto& f : faces)
    for (int v : f)
      if (v < 0 || v >= static_cast<int>(n_declared))
        fail(ErrorCode::ParseError, "face index " + std::to_string(v) + " out of range");
  auto tri = std::make_shared<const Triangulation>(build_triangulation(faces));
  if (tri->n_vertices != static_cast<int>(n_declared))
    fail(ErrorCode::ParseError, "mesh has vertices not referenced by any face");
  return tri;
}

}  // namespace

MeshWithPositions read_off(std::istream& in) {
  std::vector<std::string> tokens = tokenize(in);
  size_t pos = 0;
  auto next = [&](const char* what) -> const std::string& {
    if (pos >= tokens.size())
      fail(ErrorCode::ParseError, std::string("unexpected end of OFF data, expected ") + what);
    return tokens[pos++];
  };
  if (next("OFF header") != "OFF") fail(ErrorCode::ParseError, "missing OFF header");
  long nv = parse_long(next("vertex count"), "vertex count");
  long nf = parse_long(next("face count"), "face count");
  parse_long(next("edge count"), "edge count");
  if (nv < 0 || nf < 0) fail(ErrorCode::ParseError, "negative counts in OFF header");

  MeshWithPositions m;
  m.position.reserve(nv);
  for (long i = 0; i < nv; ++i) {
    double x = parse_number(next("coordinate"), "coordinate");
    double y = parse_number(next("coordinate"), "coordinate");
    double z = parse_number(next("coordinate"), "coordinate");
    m.position.emplace_back(x, y, z);
  }
  std::vector<std::array<int, 3>> faces;
  faces.reserve(nf);
  for (long f = 0; f < nf; ++f) {
    long arity = parse_long(next("face size"), "face size");
    if (arity != 3) fail(ErrorCode::ParseError, "only triangle faces are supported");
    std::array<int, 3> face;
    for (int c = 0; c < 3; ++c)
      face[c] = static_cast<int>(parse_long(next("vertex index"), "vertex index"));
    faces.push_back(face);
  }
  if (pos != tokens.size()) fail(ErrorCode::ParseError, "trailing data after faces");
  m.tri = build_shared(m.position.size(), faces);
  return m;
}

MeshWithPositions read_off_file(const std::string& path) {
  auto in = open_input(path);
  return read_off(in);
}

void write_off(std::ostream& out, const MeshWithPositions& m) {
  out << "OFF\n"
      << m.tri->n_vertices << ' ' << m.tri->faces.size() << ' ' << m.tri->edges.size()
      << '\n';
  for (const Vec3& p : m.position)
    out << format_double(p.x()) << ' ' << format_double(p.y()) << ' '
        << format_double(p.z()) << '\n';
  for (const auto& f : m.tri->faces)
    out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

void write_off_file(const std::string& path, const MeshWithPositions& m) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::ParseError, "cannot open '" + path + "' for writing");
  write_off(out, m);
}

MeshWithPositions read_obj(std::istream& in) {
  MeshWithPositions m;
  std::vector<std::array<int, 3>> faces;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z)) fail(ErrorCode::ParseError, "malformed vertex record");
      m.position.emplace_back(x, y, z);
    } else if (kind == "f") {
      std::array<int, 3> face;
      std::string ref;
      int c = 0;
      while (ls >> ref) {
        if (c >= 3) fail(ErrorCode::ParseError, "only triangle faces are supported");
        std::string first = ref.substr(0, ref.find('/'));
        long idx = parse_long(first, "vertex index");
        if (idx < 1 || idx > static_cast<long>(m.position.size()))
          fail(ErrorCode::ParseError, "face index " + first + " out of range");
        face[c++] = static_cast<int>(idx - 1);
      }
      if (c != 3) fail(ErrorCode::ParseError, "only triangle faces are supported");
      faces.push_back(face);
    }
  }
  m.tri = build_shared(m.position.size(), faces);
  return m;
}

MeshWithPositions read_obj_file(const std::string& path) {
  auto in = open_input(path);
  return read_obj(in);
}

MeshWithPositions read_mesh_file(const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".off") return read_off_file(path);
  if (ext == ".obj") return read_obj_file(path);
  fail(ErrorCode::ParseError, "unsupported mesh format '" + ext + "'");
}

LinearFactor parse_linear_factor(const std::string& expr) {
  size_t pos = 0;
  auto skip = [&] {
    while (pos < expr.size() && std::isspace(static_cast<unsigned char>(expr[pos]))) ++pos;
  };
  LinearFactor out;
  skip();
  if (pos == expr.size()) fail(ErrorCode::ParseError, "empty expression");
  while (pos < expr.size()) {
    double sign = 1.0;
    skip();
    while (pos < expr.size() && (expr[pos] == '+' || expr[pos] == '-')) {
      if (expr[pos] == '-') sign = -sign;
      ++pos;
      skip();
    }
    // one term: a product of numbers and at most one of x, y, z
    double coeff = sign;
    char var = 0;
    bool saw_factor = false;
    while (true) {
      skip();
      if (pos < expr.size() && (expr[pos] == 'x' || expr[pos] == 'y' || expr[pos] == 'z')) {
        if (var) fail(ErrorCode::ParseError, "expression must be linear in x, y, z");
        var = expr[pos++];
        saw_factor = true;
      } else if (pos < expr.size() &&
                 (std::isdigit(static_cast<unsigned char>(expr[pos])) || expr[pos] == '.')) {
        char* end = nullptr;
        coeff *= std::strtod(expr.c_str() + pos, &end);
        if (end == expr.c_str() + pos) fail(ErrorCode::ParseError, "malformed number");
        pos = end - expr.c_str();
        saw_factor = true;
      } else {
        break;
      }
      skip();
      if (pos < expr.size() && expr[pos] == '*') {
        ++pos;
        continue;
      }
      // juxtaposition like "0.3z" keeps the term going; +, - or end close it
    }
    if (!saw_factor)
      fail(ErrorCode::ParseError, "unexpected character '" + expr.substr(pos, 1) + "'");
    if (var == 'x') out.x += coeff;
    else if (var == 'y') out.y += coeff;
    else if (var == 'z') out.z += coeff;
    else out.constant += coeff;
    skip();
    if (pos < expr.size() && expr[pos] != '+' && expr[pos] != '-')
      fail(ErrorCode::ParseError, "unexpected character '" + expr.substr(pos, 1) + "'");
  }
  return out;
}

std::vector<double> spherical_lengths_from_positions(const MeshWithPositions& m,
                                                     LengthInterpretation interp) {
  std::vector<double> l(m.tri->edges.size());
  for (size_t e = 0; e < m.tri->edges.size(); ++e) {
    auto [i, j] = m.tri->edges[e];
    if (interp == LengthInterpretation::Arc) {
      Vec3 a = central_project(m.position[i]);
      Vec3 b = central_project(m.position[j]);
      l[e] = 2.0 * std::atan2((a - b).norm(), (a + b).norm());
    } else {
      double c = (m.position[i] - m.position[j]).norm();
      if (c >= 2.0)
        fail(ErrorCode::InadmissibleLengths,
             "chord of edge " + std::to_string(i) + "-" + std::to_string(j) +
                 " reaches the diameter");
      l[e] = 2.0 * std::asin(0.5 * c);
    }
  }
  return l;
}

std::vector<double> euclidean_lengths_from_positions(const MeshWithPositions& m) {
  std::vector<double> l(m.tri->edges.size());
  for (size_t e = 0; e < m.tri->edges.size(); ++e) {
    auto [i, j] = m.tri->edges[e];
    l[e] = (m.position[i] - m.position[j]).norm();
  }
  return l;
}

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

LoadedProblem problem_from_mesh(MeshWithPositions mesh, LengthInterpretation interp) {
  std::vector<double> l = spherical_lengths_from_positions(mesh, interp);
  return LoadedProblem{MetricMesh(mesh.tri, std::move(l), Flavor::Spherical), std::nullopt,
                       SolverOptions{}, std::move(mesh.position)};
}

LoadedProblem load_problem_json(const json& j, const std::string& base_dir,
                                LengthInterpretation default_interp) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "problem file must be a JSON object");

  MeshWithPositions mesh;
  if (!j.contains("mesh")) fail(ErrorCode::ParseError, "missing \"mesh\" source");
  const json& jm = j.at("mesh");
  auto resolve = [&](const std::string& rel) {
    std::filesystem::path p(rel);
    return p.is_absolute() ? p.string() : (std::filesystem::path(base_dir) / p).string();
  };
  if (jm.contains("off")) {
    mesh = read_off_file(resolve(jm.at("off").get<std::string>()));
  } else if (jm.contains("obj")) {
    mesh = read_obj_file(resolve(jm.at("obj").get<std::string>()));
  } else if (jm.contains("octasphere")) {
    SpherePoints s = octasphere(jm.at("octasphere").at("level").get<int>());
    mesh = MeshWithPositions{s.tri, std::move(s.position)};
  } else {
    fail(ErrorCode::ParseError, "mesh source must be \"off\", \"obj\" or \"octasphere\"");
  }

  std::vector<double> lengths;
  if (j.contains("lengths")) {
    const json& jl = j.at("lengths");
    int sources = static_cast<int>(jl.contains("from_positions")) +
                  static_cast<int>(jl.contains("explicit")) +
                  static_cast<int>(jl.contains("surface"));
    if (sources != 1)
      fail(ErrorCode::ParseError, "exactly one length source is required");
    if (jl.contains("from_positions")) {
      std::string mode = jl.at("from_positions").get<std::string>();
      if (mode != "arc" && mode != "chord")
        fail(ErrorCode::ParseError, "from_positions must be \"arc\" or \"chord\"");
      lengths = spherical_lengths_from_positions(
          mesh, mode == "arc" ? LengthInterpretation::Arc : LengthInterpretation::Chord);
    } else if (jl.contains("explicit")) {
      const json& ex = jl.at("explicit");
      if (!ex.is_object()) fail(ErrorCode::ParseError, "\"explicit\" must be a map");
      if (ex.size() != mesh.tri->edges.size())
        fail(ErrorCode::ParseError, "explicit lengths must cover every edge exactly once");
      lengths.resize(mesh.tri->edges.size());
      for (size_t e = 0; e < mesh.tri->edges.size(); ++e) {
        auto [a, b] = mesh.tri->edges[e];
        std::string key = std::to_string(a) + "-" + std::to_string(b);
        if (!ex.contains(key))
          fail(ErrorCode::ParseError, "missing explicit length for edge " + key);
        lengths[e] = ex.at(key).get<double>();
      }
    } else {
      const json& js = jl.at("surface");
      LinearFactor phi = parse_linear_factor(js.at("phi").get<std::string>());
      LengthOptions lo;
      if (js.contains("mode")) {
        std::string mode = js.at("mode").get<std::string>();
        if (mode == "vertex_scaled") lo.mode = LengthMode::VertexScaled;
        else if (mode == "integrated") lo.mode = LengthMode::Integrated;
        else fail(ErrorCode::ParseError, "mode must be \"vertex_scaled\" or \"integrated\"");
      }
      if (js.contains("samples")) lo.samples = js.at("samples").get<int>();
      SpherePoints s{mesh.tri, mesh.position};
      for (Vec3& p : s.position) p = central_project(p);
      lengths = metric_lengths(s, [&phi](const Vec3& p) { return phi(p); }, lo);
    }
  } else {
    lengths = spherical_lengths_from_positions(mesh, default_interp);
  }

  std::optional<std::array<int, 3>> marks;
  if (j.contains("marks")) {
    const json& jk = j.at("marks");
    marks = std::array<int, 3>{jk.at("x").get<int>(), jk.at("y").get<int>(),
                               jk.at("z").get<int>()};
  }

  SolverOptions solver;
  if (j.contains("solver")) {
    const json& js = j.at("solver");
    if (js.contains("method")) {
      std::string method = js.at("method").get<std::string>();
      if (method == "newton") solver.method = SolverOptions::Method::Newton;
      else if (method == "continuation") solver.method = SolverOptions::Method::Continuation;
      else fail(ErrorCode::ParseError, "method must be \"newton\" or \"continuation\"");
    }
    if (js.contains("tolerance")) solver.tolerance = js.at("tolerance").get<double>();
    if (js.contains("max_iterations"))
      solver.max_iterations = js.at("max_iterations").get<int>();
    if (js.contains("continuation_steps"))
      solver.continuation_steps = js.at("continuation_steps").get<int>();
    if (js.contains("dense_threshold"))
      solver.linear.dense_threshold = js.at("dense_threshold").get<int>();
  }

  return LoadedProblem{MetricMesh(mesh.tri, std::move(lengths), Flavor::Spherical),
                       marks, solver, std::move(mesh.position)};
}

}  // namespace

LoadedProblem load_problem_file(const std::string& path, LengthInterpretation default_interp) {
  std::string ext = std::filesystem::path(path).extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".off") return problem_from_mesh(read_off_file(path), default_interp);
  if (ext == ".obj") return problem_from_mesh(read_obj_file(path), default_interp);
  if (ext != ".json") fail(ErrorCode::ParseError, "unsupported problem format '" + ext + "'");
  auto in = open_input(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_problem_text(buf.str(), std::filesystem::path(path).parent_path().string(),
                           default_interp);
}

LoadedProblem load_problem_text(const std::string& text, const std::string& base_dir,
                                LengthInterpretation default_interp) {
  try {
    json j = json::parse(text);
    return load_problem_json(j, base_dir.empty() ? "." : base_dir, default_interp);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

std::string uniformization_report(const UniformizationProblem& problem,
                                  const UniformizationResult& result) {
  ordered_json out;
  out["n_vertices"] = problem.mesh.tri().n_vertices;
  out["marks"] = {{"x", problem.x}, {"y", problem.y}, {"z", problem.z}};
  out["u"] = result.u;
  ordered_json positions = ordered_json::array();
  for (const Vec3& p : result.sphere_position)
    positions.push_back({p.x(), p.y(), p.z()});
  out["sphere_positions"] = std::move(positions);
  const UniformizationDiagnostics& d = result.diag;
  out["diagnostics"] = {{"method", d.method},
                        {"solver_iterations", d.solver_iterations},
                        {"interior_curvature_residual", d.interior_curvature_residual},
                        {"min_delaunay_margin", d.min_delaunay_margin},
                        {"min_boundary_curvature", d.min_boundary_curvature},
                        {"layout_consistency_residual", d.layout_consistency_residual},
                        {"layout_diameter", d.layout_diameter},
                        {"apex_spread", d.apex_spread},
                        {"max_dictionary_gap", d.max_dictionary_gap},
                        {"min_lift_dihedral_margin", d.min_lift_dihedral_margin},
                        {"min_lift_circumcircle_margin", d.min_lift_circumcircle_margin},
                        {"min_origin_offset", d.min_origin_offset},
                        {"mark_y_error", d.mark_y_error},
                        {"mark_z_error", d.mark_z_error},
                        {"update_ratio", d.update_ratio}};
  return out.dump(2) + "\n";
}

std::string convergence_csv(const std::vector<ConvergenceRow>& table) {
  std::string out = "level,max_arc,epsilon,err_inf,ratio,slope_so_far,K_residual\n";
  auto field = [](double v) { return std::isnan(v) ? std::string() : format_double(v); };
  for (const ConvergenceRow& r : table) {
    out += std::to_string(r.level);
    out += ',';
    out += field(r.max_arc);
    out += ',';
    out += field(r.regularity);
    out += ',';
    out += field(r.err_inf);
    out += ',';
    out += field(r.ratio);
    out += ',';
    out += field(r.slope);
    out += ',';
    out += field(r.curvature_residual);
    out += '\n';
  }
  return out;
}

}  // namespace genus0
