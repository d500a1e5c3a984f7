#include "tensegrity/fanbuild.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace tensegrity {

std::string_view to_string(WallKind kind) {
  switch (kind) {
    case WallKind::Framework: return "framework";
    case WallKind::Added: return "added";
    case WallKind::Assistant: return "assistant";
  }
  return "unknown";
}

bool Cone::contains(std::size_t ray) const {
  return std::find(rays.begin(), rays.end(), ray) != rays.end();
}

std::optional<std::size_t> Fan::find_wall(std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  for (std::size_t w = 0; w < walls.size(); ++w)
    if (walls[w].cone.rays[0] == a && walls[w].cone.rays[1] == b) return w;
  return std::nullopt;
}

std::optional<std::size_t> Fan::find_cone(std::vector<std::size_t> r) const {
  std::sort(r.begin(), r.end());
  for (std::size_t c = 0; c < maximal_cones.size(); ++c)
    if (maximal_cones[c].rays == r) return c;
  return std::nullopt;
}

std::size_t Fan::count(WallKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(walls.begin(), walls.end(), [&](const Wall& w) { return w.kind == kind; }));
}

std::vector<Ray> lift(const PlanarFramework& fw) {
  std::vector<Ray> rays;
  rays.reserve(fw.vertices.size());
  for (const auto& v : fw.vertices) rays.push_back({IntVector{v.xy.x, v.xy.y, Int(1)}, RayKind::Vertex, v.id});
  return rays;
}

Ray assistant_ray(const std::vector<Ray>& vertex_rays) {
  if (vertex_rays.empty()) throw Error(ErrorCode::DegenerateFan, "assistant ray needs at least one ray");
  IntVector sum(vertex_rays.front().generator.size());
  for (const auto& r : vertex_rays)
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] -= r.generator[i];
  return {primitive(sum), RayKind::Assistant, ""};
}

namespace {

using Edge = std::array<std::size_t, 2>;

Edge sorted_edge(std::size_t a, std::size_t b) { return a < b ? Edge{a, b} : Edge{b, a}; }

std::string index_name(const std::vector<std::size_t>& idx) {
  bool compact = std::all_of(idx.begin(), idx.end(), [](std::size_t i) { return i < 10; });
  std::string s;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (!compact && k > 0) s += '_';
    s += std::to_string(idx[k]);
  }
  return s;
}

}  // namespace

Triangulation triangulate(const PlanarFramework& fw, TriangulationOrder order) {
  const auto& vs = fw.vertices;
  const std::size_t n = vs.size();
  bool flat = true;
  for (std::size_t i = 2; i < n && flat; ++i)
    for (std::size_t j = 1; j < i && flat; ++j)
      if (orient(vs[0].xy, vs[j].xy, vs[i].xy) != 0) flat = false;
  if (n < 3 || flat) throw Error(ErrorCode::DegenerateHull, "vertices do not span the plane");

  std::set<Edge> framework_edges;
  std::vector<Edge> present;
  for (const auto& e : fw.edge_indices()) {
    present.push_back(sorted_edge(e[0], e[1]));
    framework_edges.insert(present.back());
  }

  std::vector<std::size_t> by_point(n);
  for (std::size_t i = 0; i < n; ++i) by_point[i] = i;
  std::sort(by_point.begin(), by_point.end(),
            [&](std::size_t a, std::size_t b) { return lex_less(vs[a].xy, vs[b].xy); });
  std::vector<Edge> candidates;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) candidates.push_back({by_point[i], by_point[j]});
  if (order == TriangulationOrder::RevLex) std::reverse(candidates.begin(), candidates.end());

  std::set<Edge> have(present.begin(), present.end());
  for (const auto& [a, b] : candidates) {
    if (have.count(sorted_edge(a, b))) continue;
    const auto& pa = vs[a].xy;
    const auto& pb = vs[b].xy;
    bool blocked = false;
    for (std::size_t v = 0; v < n && !blocked; ++v) blocked = on_open_segment(vs[v].xy, pa, pb);
    for (std::size_t e = 0; e < present.size() && !blocked; ++e)
      blocked = segments_conflict(pa, pb, vs[present[e][0]].xy, vs[present[e][1]].xy);
    if (blocked) continue;
    present.push_back(sorted_edge(a, b));
    have.insert(present.back());
  }

  Triangulation t;
  t.edges.assign(have.begin(), have.end());
  for (const auto& e : t.edges)
    if (!framework_edges.count(e)) t.added_edges.push_back(e);

  std::vector<std::set<std::size_t>> adj(n);
  for (const auto& [a, b] : t.edges) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::map<Edge, std::vector<std::size_t>> edge_triangles;
  for (const auto& [a, b] : t.edges)
    for (std::size_t c : adj[a]) {
      if (c <= b || !adj[b].count(c)) continue;
      Int o = orient(vs[a].xy, vs[b].xy, vs[c].xy);
      if (o == 0) continue;
      bool empty = true;
      for (std::size_t v = 0; v < n && empty; ++v) {
        if (v == a || v == b || v == c) continue;
        int s1 = sgn(orient(vs[a].xy, vs[b].xy, vs[v].xy));
        int s2 = sgn(orient(vs[b].xy, vs[c].xy, vs[v].xy));
        int s3 = sgn(orient(vs[c].xy, vs[a].xy, vs[v].xy));
        if (s1 == s2 && s2 == s3 && s1 != 0) empty = false;
      }
      if (!empty) continue;
      t.triangles.push_back({a, b, c});
      edge_triangles[sorted_edge(a, b)].push_back(c);
      edge_triangles[sorted_edge(b, c)].push_back(a);
      edge_triangles[sorted_edge(a, c)].push_back(b);
    }
  std::sort(t.triangles.begin(), t.triangles.end());

  // Boundary: edges with exactly one triangle; orient each so that its
  // triangle lies to the left.
  std::map<std::size_t, std::size_t> next;
  for (const auto& [e, thirds] : edge_triangles) {
    if (thirds.size() == 2) continue;
    if (thirds.size() != 1) throw Error(ErrorCode::FanInvalid, "edge shared by more than two triangles");
    std::size_t a = e[0], b = e[1];
    if (orient(vs[a].xy, vs[b].xy, vs[thirds[0]].xy) < 0) std::swap(a, b);
    if (!next.emplace(a, b).second) throw Error(ErrorCode::FanInvalid, "boundary is not a simple cycle");
  }
  std::size_t start = by_point.front();
  std::size_t cur = start;
  do {
    t.hull_cycle.push_back(cur);
    auto it = next.find(cur);
    if (it == next.end() || t.hull_cycle.size() > n)
      throw Error(ErrorCode::FanInvalid, "boundary is not a simple cycle");
    cur = it->second;
  } while (cur != start);
  if (t.hull_cycle.size() != next.size())
    throw Error(ErrorCode::FanInvalid, "boundary has more than one component");

  // Euler count for a triangulated polygon with interior points.
  const std::size_t h = t.hull_cycle.size();
  if (t.triangles.size() != 2 * n - h - 2)
    throw Error(ErrorCode::FanInvalid, "triangle count does not match a triangulation of the hull");
  return t;
}

Fan build_fan(const PlanarFramework& fw, const Triangulation& t, const Ray& assistant) {
  Fan fan;
  fan.rays.push_back(assistant);
  for (auto& r : lift(fw)) fan.rays.push_back(std::move(r));

  // Hull cycle in ray indices, rotated to start at its smallest index.
  std::vector<std::size_t> cycle;
  for (auto v : t.hull_cycle) cycle.push_back(v + 1);
  fan.hull_cycle = cycle;
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  const std::size_t h = cycle.size();

  for (std::size_t k = 0; k < h; ++k) {
    std::size_t i = cycle[k], j = cycle[(k + 1) % h];
    std::vector<std::size_t> rays{0, i, j};
    fan.cone_names.push_back(index_name(rays));
    std::sort(rays.begin(), rays.end());
    fan.maximal_cones.push_back({rays});
  }
  for (const auto& tri : t.triangles) {
    std::vector<std::size_t> rays{tri[0] + 1, tri[1] + 1, tri[2] + 1};
    fan.maximal_cones.push_back({rays});
    fan.cone_names.push_back(index_name(rays));
  }

  std::map<Edge, std::vector<std::size_t>> incident;
  for (std::size_t c = 0; c < fan.maximal_cones.size(); ++c) {
    const auto& r = fan.maximal_cones[c].rays;
    for (std::size_t x = 0; x < 3; ++x)
      for (std::size_t y = x + 1; y < 3; ++y) incident[{r[x], r[y]}].push_back(c);
  }

  std::map<Edge, std::size_t> framework_edge;
  auto fe = fw.edge_indices();
  for (std::size_t e = 0; e < fe.size(); ++e) framework_edge[sorted_edge(fe[e][0] + 1, fe[e][1] + 1)] = e;

  auto make_wall = [&](std::size_t a, std::size_t b) {
    Edge key = sorted_edge(a, b);
    const auto& cones = incident.at(key);
    if (cones.size() != 2)
      throw Error(ErrorCode::FanInvalid, "wall " + index_name({a, b}) + " lies in " +
                                             std::to_string(cones.size()) + " maximal cones");
    Wall w;
    w.cone = {{key[0], key[1]}};
    w.adjacent = {cones[0], cones[1]};
    w.name = index_name({a, b});
    if (key[0] == 0) {
      w.kind = WallKind::Assistant;
    } else if (auto it = framework_edge.find(key); it != framework_edge.end()) {
      w.kind = WallKind::Framework;
      w.framework_edge = it->second;
    } else {
      w.kind = WallKind::Added;
    }
    return w;
  };

  std::set<Edge> placed;
  std::vector<std::size_t> hull_sorted = cycle;
  std::sort(hull_sorted.begin(), hull_sorted.end());
  for (auto i : hull_sorted) {
    fan.walls.push_back(make_wall(0, i));
    placed.insert({0, i});
  }
  for (std::size_t k = 0; k < h; ++k) {
    std::size_t i = cycle[k], j = cycle[(k + 1) % h];
    fan.walls.push_back(make_wall(i, j));
    placed.insert(sorted_edge(i, j));
  }
  for (const auto& [key, cones] : incident) {
    if (placed.count(key)) continue;
    fan.walls.push_back(make_wall(key[0], key[1]));
  }

  auto report = validate_fan(fan);
  if (!report.ok()) {
    const auto& issue = report.issues.front();
    std::string msg = issue.check + ": " + issue.message;
    if (issue.witness) {
      msg += " (witness";
      for (const auto& x : *issue.witness) msg += " " + x.get_str();
      msg += ")";
    }
    throw Error(ErrorCode::FanInvalid, msg);
  }
  return fan;
}

Fan build_fan(const PlanarFramework& fw, TriangulationOrder order) {
  auto t = triangulate(fw, order);
  return build_fan(fw, t, assistant_ray(lift(fw)));
}

std::vector<IntVector> sample_directions(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  constexpr std::uint64_t span = 2'000'001;
  std::vector<IntVector> out;
  out.reserve(count);
  while (out.size() < count) {
    IntVector d(3);
    for (auto& x : d) x = static_cast<long>(rng() % span) - 1'000'000L;
    if (d[0] != 0 || d[1] != 0 || d[2] != 0) out.push_back(std::move(d));
  }
  return out;
}

namespace {

// For a simplicial 3-cone with generator matrix G (columns = rays), the
// coordinates of x are adj(G) x / det(G).
struct ConeSolver {
  IntMatrix adjugate;
  int det_sign = 0;
};

std::vector<ConeSolver> cone_solvers(const Fan& fan) {
  std::vector<ConeSolver> out;
  for (const auto& cone : fan.maximal_cones) {
    ConeSolver s;
    if (cone.rays.size() != 3) {
      out.push_back(std::move(s));
      continue;
    }
    IntMatrix g(3, 3);
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t r = 0; r < 3; ++r) g(r, c) = fan.rays[cone.rays[c]].generator[r];
    s.det_sign = sgn(determinant(g));
    s.adjugate = IntMatrix(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        // adj(i, j) = (-1)^{i+j} minor(j, i)
        std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
        s.adjugate(i, j) = g(r0, c0) * g(r1, c1) - g(r0, c1) * g(r1, c0);
      }
    out.push_back(std::move(s));
  }
  return out;
}

struct Coverage {
  std::size_t containing = 0;
  std::size_t interior = 0;
};

Coverage classify(const std::vector<ConeSolver>& solvers, const IntVector& x) {
  Coverage cov;
  for (const auto& s : solvers) {
    if (s.det_sign == 0) continue;
    bool inside = true, strict = true;
    for (std::size_t i = 0; i < 3 && inside; ++i) {
      int sign = sgn(Int(s.adjugate(i, 0) * x[0] + s.adjugate(i, 1) * x[1] + s.adjugate(i, 2) * x[2])) *
                 s.det_sign;
      if (sign < 0) inside = false;
      if (sign == 0) strict = false;
    }
    if (!inside) continue;
    ++cov.containing;
    if (strict) ++cov.interior;
  }
  return cov;
}

CompletenessResult summarize(const std::vector<Coverage>& cov, const std::vector<IntVector>& dirs) {
  CompletenessResult out;
  out.samples = dirs.size();
  for (std::size_t i = 0; i < cov.size(); ++i) {
    bool bad = false;
    if (cov[i].containing == 0) {
      ++out.uncovered;
      bad = true;
    }
    if (cov[i].interior > 1) {
      ++out.multiply_covered;
      bad = true;
    }
    if (bad && !out.witness) out.witness = dirs[i];
  }
  return out;
}

}  // namespace

CompletenessResult sample_completeness_serial(const Fan& fan, const std::vector<IntVector>& directions) {
  auto solvers = cone_solvers(fan);
  std::vector<Coverage> cov(directions.size());
  for (std::size_t i = 0; i < directions.size(); ++i) cov[i] = classify(solvers, directions[i]);
  return summarize(cov, directions);
}

CompletenessResult sample_completeness(const Fan& fan, const std::vector<IntVector>& directions) {
  const auto solvers = cone_solvers(fan);
  std::vector<Coverage> cov(directions.size());
  const auto n = static_cast<std::ptrdiff_t>(directions.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) cov[i] = classify(solvers, directions[i]);
  return summarize(cov, directions);
}

FanReport validate_fan(const Fan& fan, std::size_t samples, std::uint64_t seed) {
  FanReport report;
  try {
    for (std::size_t c = 0; c < fan.maximal_cones.size(); ++c) {
      const auto& cone = fan.maximal_cones[c];
      bool ok = cone.rays.size() == 3;
      for (auto r : cone.rays) ok = ok && r < fan.rays.size() && fan.rays[r].generator.size() == 3;
      if (ok) {
        IntMatrix g(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j) g(i, j) = fan.rays[cone.rays[i]].generator[j];
        ok = determinant(g) != 0;
      }
      if (!ok) report.issues.push_back({"simplicial", "maximal cone " + std::to_string(c) +
                                                          " is not spanned by 3 independent rays",
                                        std::nullopt});
    }
    if (!report.ok()) return report;

    std::map<Edge, std::size_t> wall_count;
    for (const auto& cone : fan.maximal_cones)
      for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t y = x + 1; y < 3; ++y) ++wall_count[{cone.rays[x], cone.rays[y]}];
    for (const auto& [key, count] : wall_count)
      if (count != 2)
        report.issues.push_back({"wall",
                                 "wall " + index_name({key[0], key[1]}) + " lies in " +
                                     std::to_string(count) + " maximal cones",
                                 std::nullopt});

    report.completeness = sample_completeness(fan, sample_directions(samples, seed));
    if (!report.completeness.ok())
      report.issues.push_back({"completeness",
                               std::to_string(report.completeness.uncovered) + " uncovered and " +
                                   std::to_string(report.completeness.multiply_covered) +
                                   " multiply covered sample directions",
                               report.completeness.witness});
  } catch (const std::exception& e) {
    report.issues.push_back({"internal", e.what(), std::nullopt});
  }
  return report;
}

}  // namespace tensegrity
