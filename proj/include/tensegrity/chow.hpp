#pragma once

// Intersection theory on the complete simplicial fan of a planar framework:
// multiplicities, wall relations, the pairing D_rho . V(tau), the degree-one
// Chow group modulo linear relations, Minkowski weights, and the constrained
// solve that recovers the self-stress space.

#include <optional>
#include <string>
#include <vector>

#include "tensegrity/exactlinalg.hpp"
#include "tensegrity/fanbuild.hpp"
#include "tensegrity/framework.hpp"

namespace tensegrity {

/// Index of the sublattice generated by the cone's rays in the lattice of its
/// span; |det| for maximal cones.
Int mult(const Cone& cone, const Fan& fan);

/// alpha * u' + sum lambda_rho v_rho + beta * u'' = 0, where u' is the ray of
/// adjacent[0] outside the wall and u'' the ray of adjacent[1] outside it.
/// Coefficients are coprime integers with alpha, beta > 0.
struct WallRelation {
  std::size_t wall = 0;
  std::size_t first_opposite = 0;   // u'
  std::size_t second_opposite = 0;  // u''
  Int alpha;
  Int beta;
  std::vector<std::pair<std::size_t, Int>> lambdas;  // rays of the wall, ascending

  const Int& lambda(std::size_t ray) const;
};

/// Throws NotAWall if the stored adjacency does not describe two distinct
/// maximal cones through the wall.
WallRelation wall_relation(const Fan& fan, std::size_t wall);

/// D_ray . V(wall), evaluated from the first adjacent cone.
Rat intersect(const Fan& fan, std::size_t ray, std::size_t wall);
/// Same quantity evaluated from adjacent cone `side` (0 or 1).
Rat intersect_from_side(const Fan& fan, std::size_t ray, std::size_t wall, int side);
/// Four-case formula for an assistant wall Cone{v0, v_i}, written against the
/// hull neighbours v_{i-1}, v_{i+1} of v_i. Throws NotAWall on other walls.
Rat intersect_assistant_wall(const Fan& fan, std::size_t ray, std::size_t wall);

/// Rows: rays in index order; columns: walls in the fan's canonical order.
struct IntersectionTable {
  RatMatrix values;
  std::vector<std::string> ray_names;
  std::vector<std::string> wall_names;
};

/// Parallel over walls; bit-identical to the serial reference.
IntersectionTable intersection_table(const Fan& fan);
IntersectionTable intersection_table_serial(const Fan& fan);

struct MultiplicityTable {
  std::vector<std::string> wall_names;
  std::vector<Int> wall_mults;
  std::vector<std::string> cone_names;
  std::vector<Int> cone_mults;
};

MultiplicityTable multiplicity_table(const Fan& fan);

/// One relation sum_rho <e_k, v_rho> z_rho per standard dual basis vector.
IntMatrix linear_relations(const Fan& fan);

/// Rays whose divisor classes form a basis of A^1: the relations are pivoted
/// on the highest-index rays first and those rays are eliminated.
struct DivisorBasis {
  std::vector<std::size_t> basis;
  std::vector<std::size_t> eliminated;
};

/// Throws DegenerateFan if the rays do not span the ambient space.
DivisorBasis divisor_basis(const Fan& fan);

/// Coefficients of D = sum c_rho D_rho, indexed by ray.
struct Divisor {
  RatVector coeffs;
};

/// Values indexed by wall (canonical order).
struct MinkowskiWeight {
  RatVector values;
};

MinkowskiWeight weight_of(const Divisor& d, const Fan& fan);
MinkowskiWeight weight_of(const Divisor& d, const IntersectionTable& table);

struct RayBalance {
  std::size_t ray = 0;
  RatVector residues;  // one per basis vector of M(ray)
  bool ok() const;
};

struct MinkowskiReport {
  std::vector<RayBalance> rays;
  bool ok() const;
};

/// Balancing at every ray: for every m in a basis of ray^perp ∩ M,
/// sum over walls containing the ray of <m, n_{wall,ray}> w(wall) = 0, with
/// n the primitive image of the wall's other ray modulo the ray.
MinkowskiReport check_minkowski(const MinkowskiWeight& w, const Fan& fan);

/// Minimal sets of rays that do not span a cone of the fan.
std::vector<std::vector<std::size_t>> sr_minimal_nonfaces(const Fan& fan);

/// Divisor classes (in divisor_basis coordinates) pairing to zero with every
/// wall whose kind is listed.
std::vector<RatVector> vanishing_divisor_space(const Fan& fan, const IntersectionTable& table,
                                               const DivisorBasis& basis,
                                               const std::vector<WallKind>& kinds);

struct StressSpaceResult {
  DivisorBasis basis;
  std::vector<RatVector> coordinates;  // in basis.basis order
  std::vector<Divisor> divisors;       // full ray-indexed coefficients
  std::vector<MinkowskiWeight> weights;
  StressBasis stresses;                // canonical, on framework edges
  std::size_t dim() const noexcept { return coordinates.size(); }
};

/// Divisors pairing to zero with every added and assistant wall; their
/// values on framework walls are the self-stresses.
StressSpaceResult constrained_stress_space(const PlanarFramework& fw, const Fan& fan);
StressSpaceResult constrained_stress_space(const PlanarFramework& fw, const Fan& fan,
                                           const IntersectionTable& table);

struct RouteComparison {
  bool agree = false;
  std::size_t dim_direct = 0;
  std::size_t dim_toric = 0;
  StressBasis direct;
  StressBasis toric;
  std::vector<std::string> witnesses;
};

RouteComparison compare_routes(const PlanarFramework& fw,
                               TriangulationOrder order = TriangulationOrder::Lex);
RouteComparison compare_routes(const PlanarFramework& fw, const Fan& fan);

}  // namespace tensegrity
