#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "genus0/stereo_bridge.hpp"
#include "genus0/surface_lab.hpp"
#include "genus0/tri_mesh.hpp"
#include "genus0/uniformizer.hpp"

namespace genus0 {

// 17 significant digits, enough to round-trip a double.
std::string format_double(double v);

struct MeshWithPositions {
  std::shared_ptr<const Triangulation> tri;
  std::vector<Vec3> position;
};

// OFF: header line, "V F E" counts, vertex coordinate lines, "3 i j k" face
// lines; '#' starts a comment. OBJ is read-only: v/f records, 1-based
// indices, triangles only.
MeshWithPositions read_off(std::istream& in);
MeshWithPositions read_off_file(const std::string& path);
void write_off(std::ostream& out, const MeshWithPositions& m);
void write_off_file(const std::string& path, const MeshWithPositions& m);
MeshWithPositions read_obj(std::istream& in);
MeshWithPositions read_obj_file(const std::string& path);
// Dispatches on the file extension (.off / .obj).
MeshWithPositions read_mesh_file(const std::string& path);

// Linear expressions in x, y, z with constants: "0.3*z", "0.2x - 0.1*y + 1".
struct LinearFactor {
  double x = 0.0, y = 0.0, z = 0.0, constant = 0.0;
  double operator()(const Vec3& p) const {
    return x * p.x() + y * p.y() + z * p.z() + constant;
  }
};
LinearFactor parse_linear_factor(const std::string& expr);

// Spherical edge lengths from vertex positions: Arc measures the great
// circle arc between the rays, Chord converts the straight-line distance of
// unit vectors via l = 2 asin(|a - b| / 2).
enum class LengthInterpretation { Arc, Chord };
std::vector<double> spherical_lengths_from_positions(const MeshWithPositions& m,
                                                     LengthInterpretation interp);
// Straight-line distances, for Euclidean problem setups.
std::vector<double> euclidean_lengths_from_positions(const MeshWithPositions& m);

// A problem description: either a mesh file directly (lengths from its
// positions) or a JSON file naming a mesh source (OFF/OBJ path or builtin
// octasphere), exactly one length source (from_positions | explicit map
// keyed "i-j" | surface with a phi expression), optional marks and solver
// options. Relative paths resolve against the JSON file's directory.
struct LoadedProblem {
  MetricMesh mesh;  // spherical lengths
  std::optional<std::array<int, 3>> marks;
  SolverOptions solver;
  std::vector<Vec3> positions;  // empty when the source had none
};
LoadedProblem load_problem_file(const std::string& path,
                                LengthInterpretation default_interp = LengthInterpretation::Arc);
// Same, from JSON text (for tests); base_dir resolves relative mesh paths.
LoadedProblem load_problem_text(const std::string& text, const std::string& base_dir,
                                LengthInterpretation default_interp = LengthInterpretation::Arc);

// Deterministic machine-readable reports.
std::string uniformization_report(const UniformizationProblem& problem,
                                  const UniformizationResult& result);
std::string convergence_csv(const std::vector<ConvergenceRow>& table);

}  // namespace genus0
