#include "tensegrity/chow.hpp"

#include <algorithm>
#include <set>

namespace tensegrity {

Int mult(const Cone& cone, const Fan& fan) {
  IntMatrix g(cone.rays.size(), 3);
  for (std::size_t i = 0; i < cone.rays.size(); ++i)
    for (std::size_t j = 0; j < 3; ++j) g(i, j) = fan.rays.at(cone.rays[i]).generator[j];
  return lattice_index(g);
}

const Int& WallRelation::lambda(std::size_t ray) const {
  for (const auto& [r, value] : lambdas)
    if (r == ray) return value;
  throw Error(ErrorCode::NotAWall, "ray " + std::to_string(ray) + " is not on the wall");
}

namespace {

std::size_t opposite_ray(const Cone& maximal, const Cone& wall) {
  for (auto r : maximal.rays)
    if (!wall.contains(r)) return r;
  throw Error(ErrorCode::NotAWall, "maximal cone has no ray outside the wall");
}

// Coprime integer relation among the given generators with a positive first
// coefficient; the generators must have a one-dimensional relation space.
IntVector unique_relation(const Fan& fan, const std::vector<std::size_t>& rays) {
  IntMatrix cols(3, rays.size());
  for (std::size_t c = 0; c < rays.size(); ++c)
    for (std::size_t r = 0; r < 3; ++r) cols(r, c) = fan.rays[rays[c]].generator[r];
  IntMatrix kernel = integer_kernel(cols);
  if (kernel.rows() != 1)
    throw Error(ErrorCode::NotAWall, "rays around the wall do not satisfy a unique relation");
  IntVector rel = kernel.row_vector(0);
  if (rel.front() < 0)
    for (auto& x : rel) x = -x;
  return rel;
}

}  // namespace

WallRelation wall_relation(const Fan& fan, std::size_t wall) {
  if (wall >= fan.walls.size()) throw Error(ErrorCode::NotAWall, "wall index out of range");
  const Wall& w = fan.walls[wall];
  const auto [c0, c1] = w.adjacent;
  if (w.cone.dim() != 2 || c0 == c1 || c0 >= fan.maximal_cones.size() || c1 >= fan.maximal_cones.size())
    throw Error(ErrorCode::NotAWall, "wall " + w.name + " does not separate two maximal cones");
  for (auto c : {c0, c1}) {
    const auto& cone = fan.maximal_cones[c];
    if (cone.dim() != 3 || !cone.contains(w.cone.rays[0]) || !cone.contains(w.cone.rays[1]))
      throw Error(ErrorCode::NotAWall, "cone " + std::to_string(c) + " does not contain wall " + w.name);
  }

  WallRelation rel;
  rel.wall = wall;
  rel.first_opposite = opposite_ray(fan.maximal_cones[c0], w.cone);
  rel.second_opposite = opposite_ray(fan.maximal_cones[c1], w.cone);
  IntVector coeffs =
      unique_relation(fan, {rel.first_opposite, w.cone.rays[0], w.cone.rays[1], rel.second_opposite});
  rel.alpha = coeffs[0];
  rel.lambdas = {{w.cone.rays[0], coeffs[1]}, {w.cone.rays[1], coeffs[2]}};
  rel.beta = coeffs[3];
  if (rel.alpha <= 0 || rel.beta <= 0)
    throw Error(ErrorCode::NotAWall, "cones adjacent to wall " + w.name + " lie on the same side");
  return rel;
}

namespace {

struct WallData {
  WallRelation relation;
  Int wall_mult;
  Int side_mult[2];
};

WallData wall_data(const Fan& fan, std::size_t wall) {
  WallData d{wall_relation(fan, wall), mult(fan.walls[wall].cone, fan), {}};
  d.side_mult[0] = mult(fan.maximal_cones[fan.walls[wall].adjacent[0]], fan);
  d.side_mult[1] = mult(fan.maximal_cones[fan.walls[wall].adjacent[1]], fan);
  return d;
}

Rat intersect_with(const WallData& d, const Fan& fan, std::size_t ray, std::size_t wall, int side) {
  const auto& rel = d.relation;
  if (ray == rel.first_opposite) return make_rat(d.wall_mult, d.side_mult[0]);
  if (ray == rel.second_opposite) return make_rat(d.wall_mult, d.side_mult[1]);
  if (!fan.walls[wall].cone.contains(ray)) return 0;
  const Int& scale = side == 0 ? rel.alpha : rel.beta;
  return make_rat(rel.lambda(ray) * d.wall_mult, scale * d.side_mult[side]);
}

}  // namespace

Rat intersect(const Fan& fan, std::size_t ray, std::size_t wall) {
  return intersect_from_side(fan, ray, wall, 0);
}

Rat intersect_from_side(const Fan& fan, std::size_t ray, std::size_t wall, int side) {
  if (side != 0 && side != 1) throw Error(ErrorCode::NotAWall, "side must be 0 or 1");
  return intersect_with(wall_data(fan, wall), fan, ray, wall, side);
}

Rat intersect_assistant_wall(const Fan& fan, std::size_t ray, std::size_t wall) {
  const Wall& w = fan.walls.at(wall);
  if (w.kind != WallKind::Assistant || w.cone.rays[0] != 0)
    throw Error(ErrorCode::NotAWall, "wall " + w.name + " is not an assistant wall");
  const std::size_t i = w.cone.rays[1];
  const auto& cycle = fan.hull_cycle;
  auto it = std::find(cycle.begin(), cycle.end(), i);
  if (it == cycle.end()) throw Error(ErrorCode::NotAWall, "assistant wall over a non-hull vertex");
  const std::size_t k = static_cast<std::size_t>(it - cycle.begin());
  const std::size_t prev = cycle[(k + cycle.size() - 1) % cycle.size()];
  const std::size_t next = cycle[(k + 1) % cycle.size()];

  const Int tau = mult(w.cone, fan);
  if (ray != 0 && ray != i && ray != prev && ray != next) return 0;
  if (ray == prev || ray == next) {
    auto sigma = fan.find_cone({0, i, ray});
    if (!sigma) throw Error(ErrorCode::NotAWall, "missing assistant cone at wall " + w.name);
    return make_rat(tau, mult(fan.maximal_cones[*sigma], fan));
  }
  // alpha v_{i-1} + lambda_0 v_0 + lambda_i v_i + beta v_{i+1} = 0
  IntVector rel = unique_relation(fan, {prev, 0, i, next});
  auto sigma_prev = fan.find_cone({0, i, prev});
  if (!sigma_prev) throw Error(ErrorCode::NotAWall, "missing assistant cone at wall " + w.name);
  const Int& lambda = ray == 0 ? rel[1] : rel[2];
  return make_rat(lambda * tau, rel[0] * mult(fan.maximal_cones[*sigma_prev], fan));
}

namespace {

IntersectionTable empty_table(const Fan& fan) {
  IntersectionTable t;
  t.values = RatMatrix(fan.rays.size(), fan.walls.size());
  for (std::size_t r = 0; r < fan.rays.size(); ++r) t.ray_names.push_back("D" + std::to_string(r));
  for (const auto& w : fan.walls) t.wall_names.push_back("tau_" + w.name);
  return t;
}

}  // namespace

namespace {

void fill_column(IntersectionTable& t, const Fan& fan, std::size_t wall) {
  const WallData d = wall_data(fan, wall);
  const auto& rel = d.relation;
  for (std::size_t r : {rel.first_opposite, rel.second_opposite, fan.walls[wall].cone.rays[0],
                        fan.walls[wall].cone.rays[1]})
    t.values(r, wall) = intersect_with(d, fan, r, wall, 0);
}

}  // namespace

IntersectionTable intersection_table_serial(const Fan& fan) {
  auto t = empty_table(fan);
  for (std::size_t w = 0; w < fan.walls.size(); ++w) fill_column(t, fan, w);
  return t;
}

IntersectionTable intersection_table(const Fan& fan) {
  auto t = empty_table(fan);
  const auto walls = static_cast<std::ptrdiff_t>(fan.walls.size());
  // Each iteration owns one column; no shared mutable state.
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t w = 0; w < walls; ++w) fill_column(t, fan, static_cast<std::size_t>(w));
  return t;
}

MultiplicityTable multiplicity_table(const Fan& fan) {
  MultiplicityTable t;
  for (const auto& w : fan.walls) {
    t.wall_names.push_back("tau_" + w.name);
    t.wall_mults.push_back(mult(w.cone, fan));
  }
  for (std::size_t c = 0; c < fan.maximal_cones.size(); ++c) {
    t.cone_names.push_back("sigma_" + fan.cone_names[c]);
    t.cone_mults.push_back(mult(fan.maximal_cones[c], fan));
  }
  return t;
}

IntMatrix linear_relations(const Fan& fan) {
  IntMatrix lr(3, fan.rays.size());
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t r = 0; r < fan.rays.size(); ++r) lr(k, r) = fan.rays[r].generator[k];
  return lr;
}

DivisorBasis divisor_basis(const Fan& fan) {
  const IntMatrix lr = linear_relations(fan);
  DivisorBasis out;
  std::vector<RatVector> chosen;
  for (std::size_t j = fan.rays.size(); j-- > 0 && out.eliminated.size() < 3;) {
    auto col = to_rat(lr.column(j));
    auto trial = chosen;
    trial.push_back(col);
    if (canonical_span_basis(trial, 3).size() > chosen.size()) {
      chosen.push_back(std::move(col));
      out.eliminated.push_back(j);
    }
  }
  if (out.eliminated.size() < 3)
    throw Error(ErrorCode::DegenerateFan, "rays do not span the ambient space");
  for (std::size_t j = 0; j < fan.rays.size(); ++j)
    if (std::find(out.eliminated.begin(), out.eliminated.end(), j) == out.eliminated.end())
      out.basis.push_back(j);
  return out;
}

MinkowskiWeight weight_of(const Divisor& d, const IntersectionTable& table) {
  if (d.coeffs.size() != table.values.rows())
    throw Error(ErrorCode::DimensionMismatch, "divisor does not match the fan's rays");
  MinkowskiWeight w{RatVector(table.values.cols())};
  for (std::size_t r = 0; r < d.coeffs.size(); ++r) {
    if (d.coeffs[r] == 0) continue;
    for (std::size_t c = 0; c < w.values.size(); ++c) w.values[c] += d.coeffs[r] * table.values(r, c);
  }
  return w;
}

MinkowskiWeight weight_of(const Divisor& d, const Fan& fan) {
  return weight_of(d, intersection_table(fan));
}

bool RayBalance::ok() const {
  return std::all_of(residues.begin(), residues.end(), [](const Rat& q) { return q == 0; });
}

bool MinkowskiReport::ok() const {
  return std::all_of(rays.begin(), rays.end(), [](const RayBalance& b) { return b.ok(); });
}

MinkowskiReport check_minkowski(const MinkowskiWeight& w, const Fan& fan) {
  if (w.values.size() != fan.walls.size())
    throw Error(ErrorCode::DimensionMismatch, "weight does not match the fan's walls");
  MinkowskiReport report;
  for (std::size_t r = 0; r < fan.rays.size(); ++r) {
    IntMatrix ray_row(1, 3);
    for (std::size_t j = 0; j < 3; ++j) ray_row(0, j) = fan.rays[r].generator[j];
    const IntMatrix characters = integer_kernel(ray_row);  // basis of M(ray)
    RayBalance balance{r, RatVector(characters.rows())};
    for (std::size_t wi = 0; wi < fan.walls.size(); ++wi) {
      const auto& cone = fan.walls[wi].cone;
      if (!cone.contains(r) || w.values[wi] == 0) continue;
      const std::size_t other = cone.rays[0] == r ? cone.rays[1] : cone.rays[0];
      // The other generator is mult(wall) times the generator of N_wall / N_ray.
      const Int m = mult(cone, fan);
      for (std::size_t k = 0; k < characters.rows(); ++k) {
        balance.residues[k] += make_rat(dot(characters.row(k), fan.rays[other].generator), m) * w.values[wi];
      }
    }
    report.rays.push_back(std::move(balance));
  }
  return report;
}

std::vector<std::vector<std::size_t>> sr_minimal_nonfaces(const Fan& fan) {
  std::set<std::vector<std::size_t>> faces;
  for (const auto& cone : fan.maximal_cones) {
    const auto& r = cone.rays;
    const std::size_t n = r.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      std::vector<std::size_t> sub;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) sub.push_back(r[i]);
      faces.insert(sub);
    }
  }
  auto is_face = [&](const std::vector<std::size_t>& s) { return faces.count(s) > 0; };

  const std::size_t n = fan.rays.size();
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (!is_face({a, b})) out.push_back({a, b});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!is_face({a, b})) continue;
      for (std::size_t c = b + 1; c < n; ++c)
        if (is_face({a, c}) && is_face({b, c}) && !is_face({a, b, c})) out.push_back({a, b, c});
    }
  // A 4-set is a minimal non-face only if all of its triples are cones.
  std::set<std::vector<std::size_t>> quads;
  for (const auto& cone : fan.maximal_cones) {
    if (cone.dim() != 3) continue;
    for (std::size_t x = 0; x < n; ++x) {
      if (cone.contains(x)) continue;
      std::vector<std::size_t> q = cone.rays;
      q.push_back(x);
      std::sort(q.begin(), q.end());
      bool all = true;
      for (std::size_t drop = 0; drop < 4 && all; ++drop) {
        std::vector<std::size_t> t;
        for (std::size_t i = 0; i < 4; ++i)
          if (i != drop) t.push_back(q[i]);
        all = is_face(t);
      }
      if (all) quads.insert(q);
    }
  }
  out.insert(out.end(), quads.begin(), quads.end());
  return out;
}

std::vector<RatVector> vanishing_divisor_space(const Fan& fan, const IntersectionTable& table,
                                               const DivisorBasis& basis,
                                               const std::vector<WallKind>& kinds) {
  LinearSystem system(basis.basis.size());
  for (std::size_t w = 0; w < fan.walls.size(); ++w) {
    if (std::find(kinds.begin(), kinds.end(), fan.walls[w].kind) == kinds.end()) continue;
    RatVector row;
    for (auto b : basis.basis) row.push_back(table.values(b, w));
    system.add(table.wall_names[w], row);
  }
  return solve_constrained(system);
}

StressSpaceResult constrained_stress_space(const PlanarFramework& fw, const Fan& fan) {
  return constrained_stress_space(fw, fan, intersection_table(fan));
}

StressSpaceResult constrained_stress_space(const PlanarFramework& fw, const Fan& fan,
                                           const IntersectionTable& table) {
  StressSpaceResult out;
  out.basis = divisor_basis(fan);
  out.coordinates =
      vanishing_divisor_space(fan, table, out.basis, {WallKind::Added, WallKind::Assistant});

  std::vector<std::size_t> edge_wall(fw.edges.size(), fan.walls.size());
  for (std::size_t w = 0; w < fan.walls.size(); ++w)
    if (fan.walls[w].framework_edge) edge_wall.at(*fan.walls[w].framework_edge) = w;
  for (auto w : edge_wall)
    if (w == fan.walls.size()) throw Error(ErrorCode::FanInvalid, "framework edge without a wall");

  std::vector<RatVector> stresses;
  for (const auto& coords : out.coordinates) {
    Divisor d{RatVector(fan.rays.size())};
    for (std::size_t i = 0; i < coords.size(); ++i) d.coeffs[out.basis.basis[i]] = coords[i];
    MinkowskiWeight w = weight_of(d, table);
    RatVector stress;
    for (auto wall : edge_wall) stress.push_back(w.values[wall]);
    stresses.push_back(std::move(stress));
    out.divisors.push_back(std::move(d));
    out.weights.push_back(std::move(w));
  }
  for (std::size_t e = 0; e < fw.edges.size(); ++e) out.stresses.ids.push_back(fw.edge_label(e));
  out.stresses.vectors = canonical_span_basis(stresses, fw.edges.size());
  return out;
}

RouteComparison compare_routes(const PlanarFramework& fw, TriangulationOrder order) {
  return compare_routes(fw, build_fan(fw, order));
}

RouteComparison compare_routes(const PlanarFramework& fw, const Fan& fan) {
  RouteComparison cmp;
  cmp.direct = self_stress_basis(fw);
  cmp.toric = constrained_stress_space(fw, fan).stresses;
  cmp.dim_direct = cmp.direct.dim();
  cmp.dim_toric = cmp.toric.dim();
  const std::size_t n = fw.edges.size();

  for (const auto& v : cmp.toric.vectors)
    if (!in_span(v, cmp.direct.vectors)) {
      std::string s = "toric stress outside the direct space, residual:";
      for (const auto& r : balancing_residual(fw, v)) s += " " + to_string(r);
      cmp.witnesses.push_back(s);
    }
  for (const auto& v : cmp.direct.vectors)
    if (!in_span(v, cmp.toric.vectors)) {
      std::string s = "direct stress outside the toric space:";
      for (const auto& x : v) s += " " + to_string(x);
      cmp.witnesses.push_back(s);
    }
  cmp.agree = cmp.witnesses.empty() && cmp.dim_direct == cmp.dim_toric &&
              same_span(cmp.direct.vectors, cmp.toric.vectors, n);
  return cmp;
}

}  // namespace tensegrity
