#pragma once

// Per-edge local fans of a codimension-one framework and the glued balancing
// system built from them. Faces shared between edges are identified by id.

#include <optional>
#include <string>
#include <vector>

#include "tensegrity/exactlinalg.hpp"
#include "tensegrity/framework.hpp"

namespace tensegrity {

/// Complete fan in the rank-2 quotient lattice of one edge. Rays are sorted
/// counterclockwise starting from the positive first axis; the 2-dimensional
/// cones are spanned by circularly consecutive rays.
struct LocalFan {
  std::string edge;
  std::vector<IntVector> rays;
  std::vector<std::string> labels;  // face id, or empty for the assistant ray
  std::optional<std::size_t> assistant;

  std::size_t cone_count() const noexcept { return rays.size(); }
};

/// Rays are the incidence normals of `edge`; an assistant ray
/// primitive(-sum) is added iff they all lie in a closed half-plane.
/// Throws UnsupportedCodim (quotient rank != 2) or GenericityViolation
/// (fewer than three faces, repeated faces, parallel rays).
LocalFan local_fan(const KFramework& fw, const std::string& edge);

/// All rays lie in a closed half-plane through the origin.
bool in_closed_half_plane(const std::vector<IntVector>& rays);

/// Every nonzero direction lies in a cone between consecutive rays.
bool is_complete_2d(const std::vector<IntVector>& sorted_rays);

/// Counterclockwise order starting from the direction (1, 0).
void sort_circular(std::vector<IntVector>& rays, std::vector<std::string>& labels);

/// Faces with the local rays they contribute across all local fans.
struct GluedIncidence {
  std::string face;
  std::vector<std::pair<std::string, IntVector>> occurrences;  // (edge id, ray)
};

struct GluedSystem {
  std::vector<std::string> unknowns;  // faces first, then one per assistant ray
  std::size_t face_count = 0;
  RatMatrix equations;                // two balancing rows per local fan
  std::vector<std::string> equation_labels;
  std::vector<std::size_t> pinned;    // assistant unknowns, forced to zero
  std::vector<LocalFan> fans;
  std::vector<GluedIncidence> incidences;
};

/// Local fans are built in parallel, one per edge with incidences.
GluedSystem glued_system(const KFramework& fw);

/// Kernel of the glued system with assistant unknowns pinned to zero,
/// restricted to faces. Throws InternalMismatch if it differs from
/// self_stress_basis(fw).
StressBasis glued_stress_space(const KFramework& fw);

struct EdgeBalance {
  std::string edge;
  std::size_t stress = 0;  // index of the basis vector checked
  RatVector residual;      // sum of weight * ray over the local fan
  bool ok = false;
};

struct LocalBalanceReport {
  std::vector<EdgeBalance> checks;
  bool ok() const;
};

/// For every stress vector and every local fan, the face weights (zero on the
/// assistant ray) must balance in the rank-2 sense.
LocalBalanceReport local_balance_check(const KFramework& fw, const StressBasis& stresses);

}  // namespace tensegrity
