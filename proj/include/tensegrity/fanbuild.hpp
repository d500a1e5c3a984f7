#pragma once

// Complete simplicial fan over a planar framework: vertices lifted to height
// one, cones over a constrained triangulation of the convex hull, and one
// assistant ray closing the fan from below.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tensegrity/exactlinalg.hpp"
#include "tensegrity/framework.hpp"

namespace tensegrity {

enum class RayKind { Vertex, Assistant };

struct Ray {
  IntVector generator;
  RayKind kind = RayKind::Vertex;
  std::string vertex_id;  // empty for the assistant ray
};

/// Simplicial cone given by sorted ray indices.
struct Cone {
  std::vector<std::size_t> rays;

  std::size_t dim() const noexcept { return rays.size(); }
  bool contains(std::size_t ray) const;
  friend bool operator==(const Cone&, const Cone&) = default;
};

enum class TriangulationOrder { Lex, RevLex };

struct Triangulation {
  /// Vertex-index triples, each sorted ascending; list sorted.
  std::vector<std::array<std::size_t, 3>> triangles;
  /// All triangulation edges as sorted vertex-index pairs.
  std::vector<std::array<std::size_t, 2>> edges;
  /// Triangulation edges that are not framework edges.
  std::vector<std::array<std::size_t, 2>> added_edges;
  /// Boundary cycle, counterclockwise, starting at the lexicographically
  /// smallest point; collinear boundary points included.
  std::vector<std::size_t> hull_cycle;
};

enum class WallKind { Framework, Added, Assistant };

std::string_view to_string(WallKind kind);

struct Wall {
  Cone cone;
  std::array<std::size_t, 2> adjacent{};  // maximal cone indices
  WallKind kind = WallKind::Framework;
  std::optional<std::size_t> framework_edge;  // index into PlanarFramework::edges
  std::string name;
};

/// Rays: index 0 is the assistant ray, index i >= 1 is the lift of vertex i-1.
/// Walls are stored in canonical order: assistant walls by ray index, then
/// boundary walls along the hull cycle from its lowest ray index, then the
/// remaining walls by ray pair.
struct Fan {
  std::vector<Ray> rays;
  std::vector<Cone> maximal_cones;
  std::vector<std::string> cone_names;
  std::vector<Wall> walls;
  std::vector<std::size_t> hull_cycle;  // ray indices

  std::optional<std::size_t> find_wall(std::size_t a, std::size_t b) const;
  std::optional<std::size_t> find_cone(std::vector<std::size_t> rays) const;
  std::size_t count(WallKind kind) const;
};

/// (p, 1) for every vertex.
std::vector<Ray> lift(const PlanarFramework& fw);

/// Constrained triangulation containing every framework edge. Candidate
/// segments are offered in lexicographic (or reverse) order of their endpoint
/// points and kept when they cross nothing already present, which yields a
/// maximal planar straight-line graph, i.e. a triangulation. Throws
/// DegenerateHull when all points are collinear.
Triangulation triangulate(const PlanarFramework& fw, TriangulationOrder order = TriangulationOrder::Lex);

/// primitive(-sum of generators).
Ray assistant_ray(const std::vector<Ray>& vertex_rays);

/// Throws FanInvalid (with witness) if the result fails validate_fan.
Fan build_fan(const PlanarFramework& fw, const Triangulation& t, const Ray& assistant);
Fan build_fan(const PlanarFramework& fw, TriangulationOrder order = TriangulationOrder::Lex);

struct FanIssue {
  std::string check;  // "simplicial", "wall", "completeness"
  std::string message;
  std::optional<IntVector> witness;
};

struct CompletenessResult {
  std::size_t samples = 0;
  std::size_t uncovered = 0;
  std::size_t multiply_covered = 0;
  std::optional<IntVector> witness;  // first failing direction in sample order

  bool ok() const noexcept { return uncovered == 0 && multiply_covered == 0; }
  friend bool operator==(const CompletenessResult&, const CompletenessResult&) = default;
};

struct FanReport {
  std::vector<FanIssue> issues;
  CompletenessResult completeness;
  bool ok() const noexcept { return issues.empty(); }
};

inline constexpr std::uint64_t kDefaultFanSeed = 0x5eed'7e45'e9a1ULL;

/// Fixed-seed pseudorandom integer directions, none zero.
std::vector<IntVector> sample_directions(std::size_t count, std::uint64_t seed = kDefaultFanSeed);

/// Each direction must lie in at least one maximal cone and in the interior
/// of at most one. Parallel over directions.
CompletenessResult sample_completeness(const Fan& fan, const std::vector<IntVector>& directions);
/// Reference sequential implementation of sample_completeness.
CompletenessResult sample_completeness_serial(const Fan& fan, const std::vector<IntVector>& directions);

/// Simpliciality, wall-in-two-cones (recomputed from the maximal cones) and
/// sampled completeness. Never throws.
FanReport validate_fan(const Fan& fan, std::size_t samples = 1000, std::uint64_t seed = kDefaultFanSeed);

}  // namespace tensegrity
