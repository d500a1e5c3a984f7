#pragma once

// Frameworks and their self-stresses, solved directly from the balancing
// condition at every edge. This is the triangulation-free route.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tensegrity/exactlinalg.hpp"

namespace tensegrity {

struct Point2 {
  Int x;
  Int y;
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Lexicographic (x, y) order.
bool lex_less(const Point2& a, const Point2& b);

struct PlanarVertex {
  std::string id;
  Point2 xy;
  friend bool operator==(const PlanarVertex&, const PlanarVertex&) = default;
};

struct PlanarFramework {
  std::vector<PlanarVertex> vertices;
  std::vector<std::pair<std::string, std::string>> edges;

  /// Index of a vertex id, or nullopt.
  std::optional<std::size_t> index_of(const std::string& id) const;
  /// Edges as vertex index pairs; throws InvalidFramework on unknown ids.
  std::vector<std::array<std::size_t, 2>> edge_indices() const;
  /// "a-b" label of edge i, used as the stress coordinate name.
  std::string edge_label(std::size_t i) const;

  friend bool operator==(const PlanarFramework&, const PlanarFramework&) = default;
};

/// An affine subspace base + span(dirs).
struct AffineSubspace {
  std::string id;
  RatVector point;
  std::vector<IntVector> dirs;
  friend bool operator==(const AffineSubspace&, const AffineSubspace&) = default;
};

struct Incidence {
  std::string edge;
  std::string face;
  std::optional<RatVector> sample;
  /// Optional explicit normal in the ambient lattice; checked against the
  /// sample side and for primitivity in the quotient.
  std::optional<IntVector> normal;
  friend bool operator==(const Incidence&, const Incidence&) = default;
};

/// Multidimensional framework: (k-1)-dimensional edges, k-dimensional faces
/// and incidences in Q^dim.
struct KFramework {
  int dim = 0;
  int k = 0;
  std::vector<AffineSubspace> edges;
  std::vector<AffineSubspace> faces;
  std::vector<Incidence> incidences;

  std::optional<std::size_t> edge_index(const std::string& id) const;
  std::optional<std::size_t> face_index(const std::string& id) const;

  friend bool operator==(const KFramework&, const KFramework&) = default;
};

enum class Severity { Error, Warning };

enum class IssueKind {
  DuplicateId,
  DuplicatePoint,
  UnknownVertex,
  Loop,
  RepeatedEdge,
  SegmentsCross,
  VertexOnEdge,
  LowDegree,
  DimensionMismatch,
  DegenerateEdge,
  DegenerateFace,
  UnknownEdge,
  UnknownFace,
  NotContained,
  SampleNotOnFace,
  SampleOnEdge,
  RepeatedIncidence,
  FewIncidences,
  InvalidNormal,
};

std::string_view to_string(IssueKind kind);

struct Issue {
  Severity severity;
  IssueKind kind;
  std::string location;
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> issues;

  bool valid() const;
  std::size_t error_count() const;
  std::size_t warning_count() const;
  bool has(IssueKind kind) const;
};

ValidationReport validate_planar(const PlanarFramework& fw);
ValidationReport validate_general(const KFramework& fw);

/// Integer projection N -> N/(N ∩ e) in a canonical quotient basis.
struct QuotientMap {
  IntMatrix projection;  // rows: quotient coordinates, cols: ambient coordinates
  std::size_t rank = 0;

  IntVector apply(std::span<const Int> v) const;
  RatVector apply(std::span<const Rat> v) const;
};

/// The projection rows are the Hermite basis of the saturated lattice of
/// integer functionals vanishing on the edge directions, so the map is
/// surjective onto Z^rank and kills the edge. Throws DegenerateEdge.
QuotientMap quotient_map(const AffineSubspace& edge, int dim);

struct IncidenceNormal {
  std::string edge;
  std::string face;
  IntVector vector;  // primitive, in quotient coordinates
};

/// Primitive image of (sample - base(edge)) in the quotient lattice.
/// Throws SampleOnEdge, InvalidNormal.
IncidenceNormal incidence_normal(const KFramework& fw, const Incidence& inc);
IncidenceNormal incidence_normal(const KFramework& fw, const Incidence& inc,
                                 const QuotientMap& q);

struct BalancingSystem {
  RatMatrix matrix;
  std::vector<std::string> row_labels;
  std::vector<std::string> column_ids;
};

/// Rows: (vertex, coordinate); columns: framework edges.
BalancingSystem balancing_matrix(const PlanarFramework& fw);
/// Rows: (edge, quotient coordinate); columns: faces.
BalancingSystem balancing_matrix(const KFramework& fw);

/// A basis of self-stresses, coordinates named by `ids` (planar edge labels or
/// face ids). Vectors are in canonical form (see canonical_span_basis).
struct StressBasis {
  std::vector<std::string> ids;
  std::vector<RatVector> vectors;

  std::size_t dim() const noexcept { return vectors.size(); }
};

StressBasis self_stress_basis(const PlanarFramework& fw);
StressBasis self_stress_basis(const KFramework& fw);

/// Exact residual of the balancing condition; all zero iff `stress` is a
/// self-stress.
RatVector balancing_residual(const PlanarFramework& fw, std::span<const Rat> stress);
RatVector balancing_residual(const KFramework& fw, std::span<const Rat> stress);

/// The planar framework as a d = 2, k = 1 framework: vertices become point
/// edges, graph edges become line faces.
KFramework as_general(const PlanarFramework& fw);

// Planar predicates shared with the triangulation.
Int orient(const Point2& a, const Point2& b, const Point2& c);
/// p lies strictly inside segment ab.
bool on_open_segment(const Point2& p, const Point2& a, const Point2& b);
/// Segments ab and cd meet somewhere other than a shared endpoint.
bool segments_conflict(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

}  // namespace tensegrity
