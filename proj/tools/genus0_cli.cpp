#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "genus0/conformal_scaling.hpp"
#include "genus0/error.hpp"
#include "genus0/graph_calculus.hpp"
#include "genus0/io.hpp"
#include "genus0/stereo_bridge.hpp"
#include "genus0/surface_lab.hpp"
#include "genus0/uniformizer.hpp"

namespace {

using namespace genus0;

int exit_code(const Error& e) {
  switch (error_class(e.code())) {
    case ErrorClass::Parse: return 2;
    case ErrorClass::Validation: return 3;
    case ErrorClass::Solver: return 4;
    case ErrorClass::Certificate: return 5;
  }
  return 1;
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) fail(ErrorCode::ParseError, "cannot open '" + path + "' for writing");
  out << text;
}

std::array<int, 3> parse_marks(const std::string& spec) {
  std::array<int, 3> marks{};
  int consumed = -1;
  if (std::sscanf(spec.c_str(), "%d,%d,%d%n", &marks[0], &marks[1], &marks[2],
                  &consumed) != 3 ||
      consumed != static_cast<int>(spec.size()))
    fail(ErrorCode::ParseError, "marks must be three comma-separated indices");
  return marks;
}

std::vector<int> parse_levels(const std::string& spec) {
  std::vector<int> levels;
  auto dots = spec.find("..");
  if (dots != std::string::npos) {
    int a = 0, b = 0, consumed = -1;
    std::string head = spec.substr(0, dots), tail = spec.substr(dots + 2);
    if (std::sscanf(head.c_str(), "%d%n", &a, &consumed) != 1 ||
        consumed != static_cast<int>(head.size()))
      fail(ErrorCode::ParseError, "malformed level range '" + spec + "'");
    if (std::sscanf(tail.c_str(), "%d%n", &b, &consumed) != 1 ||
        consumed != static_cast<int>(tail.size()))
      fail(ErrorCode::ParseError, "malformed level range '" + spec + "'");
    if (a > b) fail(ErrorCode::ParseError, "empty level range '" + spec + "'");
    for (int l = a; l <= b; ++l) levels.push_back(l);
  } else {
    size_t pos = 0;
    while (pos <= spec.size()) {
      auto comma = spec.find(',', pos);
      std::string tok = spec.substr(pos, comma == std::string::npos ? std::string::npos
                                                                    : comma - pos);
      int v = 0, consumed = -1;
      if (std::sscanf(tok.c_str(), "%d%n", &v, &consumed) != 1 ||
          consumed != static_cast<int>(tok.size()))
        fail(ErrorCode::ParseError, "malformed level list '" + spec + "'");
      levels.push_back(v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return levels;
}

struct UniformizeArgs {
  std::string input;
  std::string marks;
  std::string method;
  std::string interp = "arc";
  std::string out = "-";
  int dense_threshold = -1;
};

int run_uniformize(const UniformizeArgs& args) {
  LengthInterpretation interp = args.interp == "chord" ? LengthInterpretation::Chord
                                                       : LengthInterpretation::Arc;
  LoadedProblem lp = load_problem_file(args.input, interp);
  std::array<int, 3> marks{};
  if (!args.marks.empty()) marks = parse_marks(args.marks);
  else if (lp.marks) marks = *lp.marks;
  else fail(ErrorCode::ParseError, "no marks: pass --marks X,Y,Z or set them in the problem file");
  if (args.method == "newton") lp.solver.method = SolverOptions::Method::Newton;
  else if (args.method == "continuation") lp.solver.method = SolverOptions::Method::Continuation;
  if (args.dense_threshold >= 0) lp.solver.linear.dense_threshold = args.dense_threshold;

  UniformizationProblem problem =
      make_problem(std::move(lp.mesh), marks[0], marks[1], marks[2]);
  UniformizationResult result = uniformize(problem, lp.solver);
  write_output(args.out, uniformization_report(problem, result));
  return 0;
}

struct ConvergeArgs {
  std::string phi;
  std::string levels;
  std::string mode = "vertex_scaled";
  std::string method = "newton";
  std::string out = "-";
  int samples = 8;
  int jobs = 1;
  int dense_threshold = -1;
};

int run_converge(const ConvergeArgs& args) {
  LinearFactor phi = parse_linear_factor(args.phi);
  std::vector<int> levels = parse_levels(args.levels);
  ConvergenceOptions opts;
  if (args.mode == "vertex_scaled") opts.lengths.mode = LengthMode::VertexScaled;
  else if (args.mode == "integrated") opts.lengths.mode = LengthMode::Integrated;
  else fail(ErrorCode::ParseError, "mode must be vertex_scaled or integrated");
  opts.lengths.samples = args.samples;
  opts.solver.method = args.method == "continuation" ? SolverOptions::Method::Continuation
                                                     : SolverOptions::Method::Newton;
  opts.jobs = args.jobs;
  if (args.dense_threshold >= 0) opts.solver.linear.dense_threshold = args.dense_threshold;

  auto table = convergence_experiment([&phi](const Vec3& p) { return phi(p); }, levels, opts);
  write_output(args.out, convergence_csv(table));
  return 0;
}

struct VerifyArgs {
  std::string input;
  bool json = false;
};

int run_verify(const VerifyArgs& args) {
  MeshWithPositions m = read_mesh_file(args.input);
  InscribedPolyhedron p = make_inscribed(m.tri, m.position);
  InscribedCertificates c = verify_inscribed(p);
  if (args.json) {
    std::string out = "{\n";
    out += "  \"max_unit_deviation\": " + format_double(c.max_unit_deviation) + ",\n";
    out += "  \"min_dihedral_margin\": " + format_double(c.min_dihedral_margin) + ",\n";
    out += "  \"min_circumcircle_margin\": " + format_double(c.min_circumcircle_margin) + ",\n";
    out += "  \"max_chord_arc_gap\": " + format_double(c.max_chord_arc_gap) + ",\n";
    out += "  \"min_origin_offset\": " + format_double(c.min_origin_offset) + ",\n";
    out += std::string("  \"pass\": ") + (c.pass() ? "true" : "false") + "\n}\n";
    std::cout << out;
  } else {
    auto line = [](const char* label, const char* kind, double v, bool ok) {
      std::printf("%-22s %s %-24.17g %s\n", label, kind, v, ok ? "PASS" : "FAIL");
    };
    line("unit deviation", "max", c.max_unit_deviation, c.max_unit_deviation <= 1e-10);
    line("dihedral margin", "min", c.min_dihedral_margin, c.min_dihedral_margin > 1e-12);
    line("circumcircle margin", "min", c.min_circumcircle_margin,
         c.min_circumcircle_margin > 1e-12);
    line("chord vs arc gap", "max", c.max_chord_arc_gap, c.max_chord_arc_gap <= 1e-10);
    line("origin offset", "min", c.min_origin_offset, c.min_origin_offset > 1e-12);
    std::printf("verdict: %s\n",
                c.pass() ? "inscribed convex polyhedron" : "certificates FAILED");
  }
  return c.pass() ? 0 : 5;
}

struct JacobianArgs {
  std::string input;
  double h = 1e-5;
  double amplitude = 0.0;
  unsigned long long seed = 1;
  bool json = false;
};

int run_jacobian_check(const JacobianArgs& args) {
  MeshWithPositions m = read_mesh_file(args.input);
  MetricMesh mesh(m.tri, euclidean_lengths_from_positions(m), Flavor::Euclidean);
  std::vector<double> u(m.tri->n_vertices, 0.0);
  if (args.amplitude > 0.0) {
    std::mt19937_64 rng(args.seed);
    std::uniform_real_distribution<double> dist(-args.amplitude, args.amplitude);
    for (double& v : u) v = dist(rng);
  }
  double worst = fd_jacobian_check(mesh, u, args.h);
  if (args.json)
    std::cout << "{\n  \"max_relative_error\": " << format_double(worst)
              << ",\n  \"h\": " << format_double(args.h) << "\n}\n";
  else
    std::printf("max relative discrepancy (analytic vs central difference): %.17g\n", worst);
  return 0;
}

struct IsoArgs {
  std::string input;
  bool exhaustive = false;
  int seeds = 8;
  unsigned long long seed = 20260816ull;
  bool json = false;
};

int run_isoperimetric(const IsoArgs& args) {
  MeshWithPositions m = read_mesh_file(args.input);
  Graph g = skeleton(*m.tri);
  std::vector<double> l = euclidean_lengths_from_positions(m);
  IsoperimetricOptions opts;
  opts.mode = args.exhaustive ? IsoperimetricMode::Exhaustive : IsoperimetricMode::Sampled;
  opts.sample_seeds = args.seeds;
  opts.rng_seed = args.seed;
  double c = isoperimetric_constant(g, l, opts);
  if (args.json)
    std::cout << "{\n  \"constant\": " << format_double(c) << ",\n  \"mode\": \""
              << (args.exhaustive ? "exhaustive" : "sampled") << "\"\n}\n";
  else
    std::printf("isoperimetric constant%s: %.17g\n",
                args.exhaustive ? "" : " (sampled lower bound)", c);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete uniformization of genus-zero triangle meshes"};
  app.require_subcommand(1);

  UniformizeArgs ua;
  CLI::App* uni = app.add_subcommand(
      "uniformize", "compute the conformal factor and inscribed realization");
  uni->add_option("--input", ua.input, "problem JSON, OFF or OBJ file")->required();
  uni->add_option("--marks", ua.marks, "marked vertices X,Y,Z (to infinity, 1, 0)");
  uni->add_option("--method", ua.method, "newton|continuation")
      ->check(CLI::IsMember({"newton", "continuation"}));
  uni->add_option("--length-interpretation", ua.interp,
                  "how positions turn into lengths: arc|chord")
      ->check(CLI::IsMember({"arc", "chord"}));
  uni->add_option("--dense-threshold", ua.dense_threshold,
                  "max unknowns for the dense linear path");
  uni->add_option("--out", ua.out, "output JSON path, - for stdout");

  ConvergeArgs ca;
  CLI::App* conv = app.add_subcommand(
      "converge", "error against the exact factor across octasphere levels");
  conv->add_option("--phi", ca.phi, "smooth factor, linear in x,y,z (e.g. 0.3*z)")
      ->required();
  conv->add_option("--levels", ca.levels, "subdivision levels, a..b or comma list")
      ->required();
  conv->add_option("--mode", ca.mode, "vertex_scaled|integrated")
      ->check(CLI::IsMember({"vertex_scaled", "integrated"}));
  conv->add_option("--samples", ca.samples, "midpoint panels for integrated mode");
  conv->add_option("--method", ca.method, "newton|continuation")
      ->check(CLI::IsMember({"newton", "continuation"}));
  conv->add_option("--jobs", ca.jobs, "levels to run in parallel");
  conv->add_option("--dense-threshold", ca.dense_threshold,
                   "max unknowns for the dense linear path");
  conv->add_option("--out", ca.out, "output CSV path, - for stdout");

  VerifyArgs va;
  CLI::App* ver = app.add_subcommand(
      "verify", "certify an embedded mesh as an inscribed convex polyhedron");
  ver->add_option("--input", va.input, "OFF or OBJ file with unit-sphere positions")
      ->required();
  ver->add_flag("--json", va.json, "machine-readable output");

  JacobianArgs ja;
  CLI::App* jac = app.add_subcommand(
      "jacobian-check", "compare the curvature derivative with difference quotients");
  jac->add_option("--input", ja.input, "OFF or OBJ file (Euclidean lengths from positions)")
      ->required();
  jac->add_option("--step", ja.h, "central difference step");
  jac->add_option("--amplitude", ja.amplitude, "random factor amplitude (0 checks at u = 0)");
  jac->add_option("--seed", ja.seed, "random factor seed");
  jac->add_flag("--json", ja.json, "machine-readable output");

  IsoArgs ia;
  CLI::App* iso = app.add_subcommand(
      "isoperimetric", "isoperimetric constant of the mesh 1-skeleton");
  iso->add_option("--input", ia.input, "OFF or OBJ file (Euclidean lengths from positions)")
      ->required();
  iso->add_flag("--exhaustive", ia.exhaustive, "enumerate every subset (small graphs)");
  iso->add_option("--seeds", ia.seeds, "sampled mode: number of ball seeds");
  iso->add_option("--seed", ia.seed, "sampled mode: RNG seed");
  iso->add_flag("--json", ia.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (uni->parsed()) return run_uniformize(ua);
    if (conv->parsed()) return run_converge(ca);
    if (ver->parsed()) return run_verify(va);
    if (jac->parsed()) return run_jacobian_check(ja);
    if (iso->parsed()) return run_isoperimetric(ia);
  } catch (const Error& e) {
    if (e.stage().empty()) std::cerr << "error: " << e.what() << "\n";
    else std::cerr << "error in stage " << e.stage() << ": " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
