#include "tensegrity/framework.hpp"

#include <map>
#include <set>

namespace tensegrity {

bool lex_less(const Point2& a, const Point2& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

std::optional<std::size_t> PlanarFramework::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].id == id) return i;
  return std::nullopt;
}

std::vector<std::array<std::size_t, 2>> PlanarFramework::edge_indices() const {
  std::map<std::string, std::size_t> lookup;
  for (std::size_t i = 0; i < vertices.size(); ++i) lookup.emplace(vertices[i].id, i);
  std::vector<std::array<std::size_t, 2>> out;
  out.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    auto ia = lookup.find(a), ib = lookup.find(b);
    if (ia == lookup.end() || ib == lookup.end())
      throw Error(ErrorCode::InvalidFramework, "edge " + a + "-" + b + " references an unknown vertex");
    out.push_back({ia->second, ib->second});
  }
  return out;
}

std::string PlanarFramework::edge_label(std::size_t i) const {
  return edges.at(i).first + "-" + edges.at(i).second;
}

std::optional<std::size_t> KFramework::edge_index(const std::string& id) const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].id == id) return i;
  return std::nullopt;
}

std::optional<std::size_t> KFramework::face_index(const std::string& id) const {
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (faces[i].id == id) return i;
  return std::nullopt;
}

std::string_view to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::DuplicateId: return "DuplicateId";
    case IssueKind::DuplicatePoint: return "DuplicatePoint";
    case IssueKind::UnknownVertex: return "UnknownVertex";
    case IssueKind::Loop: return "Loop";
    case IssueKind::RepeatedEdge: return "RepeatedEdge";
    case IssueKind::SegmentsCross: return "SegmentsCross";
    case IssueKind::VertexOnEdge: return "VertexOnEdge";
    case IssueKind::LowDegree: return "LowDegree";
    case IssueKind::DimensionMismatch: return "DimensionMismatch";
    case IssueKind::DegenerateEdge: return "DegenerateEdge";
    case IssueKind::DegenerateFace: return "DegenerateFace";
    case IssueKind::UnknownEdge: return "UnknownEdge";
    case IssueKind::UnknownFace: return "UnknownFace";
    case IssueKind::NotContained: return "NotContained";
    case IssueKind::SampleNotOnFace: return "SampleNotOnFace";
    case IssueKind::SampleOnEdge: return "SampleOnEdge";
    case IssueKind::RepeatedIncidence: return "RepeatedIncidence";
    case IssueKind::FewIncidences: return "FewIncidences";
    case IssueKind::InvalidNormal: return "InvalidNormal";
  }
  return "Unknown";
}

bool ValidationReport::valid() const { return error_count() == 0; }

std::size_t ValidationReport::error_count() const {
  std::size_t n = 0;
  for (const auto& i : issues) n += i.severity == Severity::Error;
  return n;
}

std::size_t ValidationReport::warning_count() const { return issues.size() - error_count(); }

bool ValidationReport::has(IssueKind kind) const {
  for (const auto& i : issues)
    if (i.kind == kind) return true;
  return false;
}

Int orient(const Point2& a, const Point2& b, const Point2& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

namespace {

bool on_closed_segment(const Point2& p, const Point2& a, const Point2& b) {
  if (orient(a, b, p) != 0) return false;
  return (p.x - a.x) * (p.x - b.x) <= 0 && (p.y - a.y) * (p.y - b.y) <= 0;
}

}  // namespace

bool on_open_segment(const Point2& p, const Point2& a, const Point2& b) {
  return !(p == a) && !(p == b) && on_closed_segment(p, a, b);
}

bool segments_conflict(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const bool ac = a == c, ad = a == d, bc = b == c, bd = b == d;
  if ((ac && bd) || (ad && bc)) return true;  // same segment
  if (ac || ad || bc || bd) {
    const Point2& shared = (ac || ad) ? a : b;
    const Point2& p = (ac || ad) ? b : a;
    const Point2& q = (ac || bc) ? d : c;
    // Only a collinear overlap beyond the shared endpoint conflicts.
    return orient(shared, p, q) == 0 &&
           (p.x - shared.x) * (q.x - shared.x) + (p.y - shared.y) * (q.y - shared.y) > 0;
  }
  Int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (sgn(o1) * sgn(o2) < 0 && sgn(o3) * sgn(o4) < 0) return true;
  return on_closed_segment(c, a, b) || on_closed_segment(d, a, b) ||
         on_closed_segment(a, c, d) || on_closed_segment(b, c, d);
}

ValidationReport validate_planar(const PlanarFramework& fw) {
  ValidationReport report;
  auto error = [&](IssueKind kind, std::string where, std::string msg) {
    report.issues.push_back({Severity::Error, kind, std::move(where), std::move(msg)});
  };

  std::map<std::string, std::size_t> ids;
  for (std::size_t i = 0; i < fw.vertices.size(); ++i) {
    const auto& v = fw.vertices[i];
    if (!ids.emplace(v.id, i).second)
      error(IssueKind::DuplicateId, "vertex " + v.id, "vertex id used twice");
  }
  for (std::size_t i = 0; i < fw.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < fw.vertices.size(); ++j)
      if (fw.vertices[i].xy == fw.vertices[j].xy)
        error(IssueKind::DuplicatePoint, "vertices " + fw.vertices[i].id + "," + fw.vertices[j].id,
              "two vertices share a point");

  std::vector<std::array<std::size_t, 2>> good;
  std::vector<std::size_t> good_index;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<std::size_t> degree(fw.vertices.size(), 0);
  for (std::size_t e = 0; e < fw.edges.size(); ++e) {
    const auto& [a, b] = fw.edges[e];
    auto ia = ids.find(a), ib = ids.find(b);
    const std::string where = "edge " + fw.edge_label(e);
    if (ia == ids.end() || ib == ids.end()) {
      error(IssueKind::UnknownVertex, where, "edge references an unknown vertex");
      continue;
    }
    if (ia->second == ib->second) {
      error(IssueKind::Loop, where, "edge joins a vertex to itself");
      continue;
    }
    auto key = std::minmax(ia->second, ib->second);
    if (!seen.insert({key.first, key.second}).second) {
      error(IssueKind::RepeatedEdge, where, "edge listed twice");
      continue;
    }
    ++degree[ia->second];
    ++degree[ib->second];
    good.push_back({ia->second, ib->second});
    good_index.push_back(e);
  }

  const auto& pts = fw.vertices;
  for (std::size_t s = 0; s < good.size(); ++s) {
    const auto& pa = pts[good[s][0]].xy;
    const auto& pb = pts[good[s][1]].xy;
    for (std::size_t v = 0; v < pts.size(); ++v)
      if (on_open_segment(pts[v].xy, pa, pb))
        error(IssueKind::VertexOnEdge, "edge " + fw.edge_label(good_index[s]),
              "vertex " + pts[v].id + " lies inside the segment");
    for (std::size_t t = s + 1; t < good.size(); ++t) {
      const auto& pc = pts[good[t][0]].xy;
      const auto& pd = pts[good[t][1]].xy;
      if (segments_conflict(pa, pb, pc, pd))
        error(IssueKind::SegmentsCross,
              "edges " + fw.edge_label(good_index[s]) + "," + fw.edge_label(good_index[t]),
              "segments meet away from a shared endpoint");
    }
  }

  for (std::size_t v = 0; v < pts.size(); ++v)
    if (degree[v] < 3)
      report.issues.push_back({Severity::Warning, IssueKind::LowDegree, "vertex " + pts[v].id,
                               "degree " + std::to_string(degree[v]) + " < 3"});
  return report;
}

namespace {

bool in_linear_span(const std::vector<IntVector>& dirs, std::span<const Rat> v, std::size_t dim) {
  std::vector<RatVector> basis;
  for (const auto& d : dirs) basis.push_back(to_rat(d));
  if (basis.empty()) {
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  }
  (void)dim;
  return in_span(v, basis);
}

RatVector difference(const RatVector& a, const RatVector& b) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

std::size_t dir_rank(const std::vector<IntVector>& dirs, std::size_t dim) {
  if (dirs.empty()) return 0;
  IntMatrix m(dirs.size(), dim);
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = dirs[i][j];
  return rank(to_rat(m));
}

}  // namespace

ValidationReport validate_general(const KFramework& fw) {
  ValidationReport report;
  auto error = [&](IssueKind kind, std::string where, std::string msg) {
    report.issues.push_back({Severity::Error, kind, std::move(where), std::move(msg)});
  };
  const auto dim = static_cast<std::size_t>(fw.dim);
  if (fw.dim < 1 || fw.k < 1 || fw.k > fw.dim) {
    error(IssueKind::DimensionMismatch, "framework", "need 1 <= k <= dim");
    return report;
  }

  auto check_subspace = [&](const AffineSubspace& s, std::size_t want_dirs, IssueKind degenerate,
                            const std::string& what) {
    bool ok = s.point.size() == dim && s.dirs.size() == want_dirs;
    for (const auto& d : s.dirs) ok = ok && d.size() == dim;
    if (!ok) {
      error(IssueKind::DimensionMismatch, what + " " + s.id,
            "expected a point in Q^" + std::to_string(dim) + " and " + std::to_string(want_dirs) +
                " direction vectors of that length");
      return false;
    }
    if (dir_rank(s.dirs, dim) != want_dirs) {
      error(degenerate, what + " " + s.id, "direction vectors are linearly dependent");
      return false;
    }
    return true;
  };

  std::set<std::string> ids;
  std::vector<bool> edge_ok, face_ok;
  for (const auto& e : fw.edges) {
    if (!ids.insert("e:" + e.id).second) error(IssueKind::DuplicateId, "edge " + e.id, "edge id used twice");
    edge_ok.push_back(check_subspace(e, fw.k - 1, IssueKind::DegenerateEdge, "edge"));
  }
  for (const auto& f : fw.faces) {
    if (!ids.insert("f:" + f.id).second) error(IssueKind::DuplicateId, "face " + f.id, "face id used twice");
    face_ok.push_back(check_subspace(f, fw.k, IssueKind::DegenerateFace, "face"));
  }

  std::set<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> count(fw.edges.size(), 0);
  for (const auto& inc : fw.incidences) {
    const std::string where = "incidence (" + inc.edge + "," + inc.face + ")";
    auto ei = fw.edge_index(inc.edge);
    auto fi = fw.face_index(inc.face);
    if (!ei) {
      error(IssueKind::UnknownEdge, where, "unknown edge id");
      continue;
    }
    if (!fi) {
      error(IssueKind::UnknownFace, where, "unknown face id");
      continue;
    }
    if (!pairs.insert({*ei, *fi}).second) {
      error(IssueKind::RepeatedIncidence, where, "incidence listed twice");
      continue;
    }
    ++count[*ei];
    if (!edge_ok[*ei] || !face_ok[*fi]) continue;
    const auto& e = fw.edges[*ei];
    const auto& f = fw.faces[*fi];
    bool contained = in_linear_span(f.dirs, difference(e.point, f.point), dim);
    for (const auto& d : e.dirs) contained = contained && in_linear_span(f.dirs, to_rat(d), dim);
    if (!contained) {
      error(IssueKind::NotContained, where, "face does not contain the edge");
      continue;
    }
    if (!inc.sample && !inc.normal) {
      error(IssueKind::InvalidNormal, where, "incidence needs a sample point or a normal");
      continue;
    }
    if (inc.sample) {
      if (inc.sample->size() != dim) {
        error(IssueKind::DimensionMismatch, where, "sample has the wrong length");
        continue;
      }
      if (!in_linear_span(f.dirs, difference(*inc.sample, f.point), dim)) {
        error(IssueKind::SampleNotOnFace, where, "sample point is not on the face");
        continue;
      }
      if (in_linear_span(e.dirs, difference(*inc.sample, e.point), dim)) {
        error(IssueKind::SampleOnEdge, where, "sample point lies on the edge");
        continue;
      }
    }
    if (inc.normal) {
      if (inc.normal->size() != dim) {
        error(IssueKind::DimensionMismatch, where, "normal has the wrong length");
        continue;
      }
      if (!in_linear_span(f.dirs, to_rat(*inc.normal), dim)) {
        error(IssueKind::InvalidNormal, where, "normal is not a direction of the face");
        continue;
      }
      try {
        (void)incidence_normal(fw, inc);
      } catch (const Error& err) {
        error(IssueKind::InvalidNormal, where, err.what());
      }
    }
  }
  for (std::size_t i = 0; i < fw.edges.size(); ++i)
    if (count[i] == 1 || count[i] == 2)
      report.issues.push_back({Severity::Warning, IssueKind::FewIncidences, "edge " + fw.edges[i].id,
                               std::to_string(count[i]) + " incident faces (expected 0 or >= 3)"});
  return report;
}

IntVector QuotientMap::apply(std::span<const Int> v) const {
  IntVector out(projection.rows());
  for (std::size_t r = 0; r < projection.rows(); ++r) out[r] = dot(projection.row(r), v);
  return out;
}

RatVector QuotientMap::apply(std::span<const Rat> v) const {
  RatVector out(projection.rows());
  for (std::size_t r = 0; r < projection.rows(); ++r)
    for (std::size_t c = 0; c < projection.cols(); ++c) out[r] += projection(r, c) * v[c];
  return out;
}

QuotientMap quotient_map(const AffineSubspace& edge, int dim) {
  const auto d = static_cast<std::size_t>(dim);
  IntMatrix dirs(edge.dirs.size(), d);
  for (std::size_t i = 0; i < edge.dirs.size(); ++i) {
    if (edge.dirs[i].size() != d)
      throw Error(ErrorCode::DegenerateEdge, "edge " + edge.id + " direction has the wrong length");
    for (std::size_t j = 0; j < d; ++j) dirs(i, j) = edge.dirs[i][j];
  }
  if (!edge.dirs.empty() && rank(dirs) != edge.dirs.size())
    throw Error(ErrorCode::DegenerateEdge, "edge " + edge.id + " has dependent directions");
  IntMatrix projection = edge.dirs.empty() ? IntMatrix::identity(d) : integer_kernel(dirs);
  const std::size_t r = projection.rows();
  return {std::move(projection), r};
}

IncidenceNormal incidence_normal(const KFramework& fw, const Incidence& inc) {
  auto ei = fw.edge_index(inc.edge);
  if (!ei) throw Error(ErrorCode::InvalidFramework, "unknown edge " + inc.edge);
  return incidence_normal(fw, inc, quotient_map(fw.edges[*ei], fw.dim));
}

IncidenceNormal incidence_normal(const KFramework& fw, const Incidence& inc, const QuotientMap& q) {
  auto ei = fw.edge_index(inc.edge);
  if (!ei) throw Error(ErrorCode::InvalidFramework, "unknown edge " + inc.edge);
  const auto& edge = fw.edges[*ei];

  std::optional<IntVector> from_sample;
  if (inc.sample) {
    RatVector diff(edge.point.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = (*inc.sample)[i] - edge.point[i];
    IntVector image = clear_denominators(q.apply(std::span<const Rat>(diff)));
    if (content(image) == 0)
      throw Error(ErrorCode::SampleOnEdge, "sample of (" + inc.edge + "," + inc.face + ") lies on the edge");
    from_sample = primitive(image);
  }
  if (!inc.normal) return {inc.edge, inc.face, std::move(*from_sample)};

  IntVector image = q.apply(std::span<const Int>(*inc.normal));
  if (content(image) != 1)
    throw Error(ErrorCode::InvalidNormal,
                "normal of (" + inc.edge + "," + inc.face + ") is not primitive in the quotient");
  if (from_sample && image != *from_sample)
    throw Error(ErrorCode::InvalidNormal,
                "normal of (" + inc.edge + "," + inc.face + ") points away from the sample side");
  return {inc.edge, inc.face, std::move(image)};
}

BalancingSystem balancing_matrix(const PlanarFramework& fw) {
  auto edges = fw.edge_indices();
  std::vector<std::vector<std::size_t>> star(fw.vertices.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    star[edges[e][0]].push_back(e);
    star[edges[e][1]].push_back(e);
  }
  BalancingSystem sys;
  sys.matrix = RatMatrix(0, edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) sys.column_ids.push_back(fw.edge_label(e));
  for (std::size_t v = 0; v < fw.vertices.size(); ++v) {
    if (star[v].empty()) continue;
    RatVector rx(edges.size()), ry(edges.size());
    const auto& p = fw.vertices[v].xy;
    for (auto e : star[v]) {
      const auto& other = fw.vertices[edges[e][0] == v ? edges[e][1] : edges[e][0]].xy;
      IntVector dir = primitive(IntVector{Int(other.x - p.x), Int(other.y - p.y)});
      rx[e] = dir[0];
      ry[e] = dir[1];
    }
    sys.matrix.append_row(rx);
    sys.matrix.append_row(ry);
    sys.row_labels.push_back(fw.vertices[v].id + ":x");
    sys.row_labels.push_back(fw.vertices[v].id + ":y");
  }
  return sys;
}

BalancingSystem balancing_matrix(const KFramework& fw) {
  BalancingSystem sys;
  const std::size_t nf = fw.faces.size();
  sys.matrix = RatMatrix(0, nf);
  for (const auto& f : fw.faces) sys.column_ids.push_back(f.id);
  for (const auto& edge : fw.edges) {
    std::vector<const Incidence*> incs;
    for (const auto& inc : fw.incidences)
      if (inc.edge == edge.id) incs.push_back(&inc);
    if (incs.empty()) continue;
    QuotientMap q = quotient_map(edge, fw.dim);
    std::vector<RatVector> rows(q.rank, RatVector(nf));
    for (const auto* inc : incs) {
      auto normal = incidence_normal(fw, *inc, q);
      auto fi = *fw.face_index(inc->face);
      for (std::size_t r = 0; r < q.rank; ++r) rows[r][fi] += normal.vector[r];
    }
    for (std::size_t r = 0; r < q.rank; ++r) {
      sys.matrix.append_row(rows[r]);
      sys.row_labels.push_back(edge.id + ":" + std::to_string(r));
    }
  }
  return sys;
}

StressBasis self_stress_basis(const PlanarFramework& fw) {
  auto sys = balancing_matrix(fw);
  return {sys.column_ids, solve_constrained(sys.column_ids.size(), sys.matrix)};
}

StressBasis self_stress_basis(const KFramework& fw) {
  auto sys = balancing_matrix(fw);
  return {sys.column_ids, solve_constrained(sys.column_ids.size(), sys.matrix)};
}

RatVector balancing_residual(const PlanarFramework& fw, std::span<const Rat> stress) {
  return multiply(balancing_matrix(fw).matrix, RatVector(stress.begin(), stress.end()));
}

RatVector balancing_residual(const KFramework& fw, std::span<const Rat> stress) {
  return multiply(balancing_matrix(fw).matrix, RatVector(stress.begin(), stress.end()));
}

KFramework as_general(const PlanarFramework& fw) {
  KFramework g;
  g.dim = 2;
  g.k = 1;
  auto edges = fw.edge_indices();
  for (const auto& v : fw.vertices) g.edges.push_back({v.id, {Rat(v.xy.x), Rat(v.xy.y)}, {}});
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& a = fw.vertices[edges[e][0]];
    const auto& b = fw.vertices[edges[e][1]];
    IntVector dir = primitive(IntVector{Int(b.xy.x - a.xy.x), Int(b.xy.y - a.xy.y)});
    std::string id = fw.edge_label(e);
    g.faces.push_back({id, {Rat(a.xy.x), Rat(a.xy.y)}, {dir}});
    g.incidences.push_back({a.id, id, RatVector{Rat(b.xy.x), Rat(b.xy.y)}, std::nullopt});
    g.incidences.push_back({b.id, id, RatVector{Rat(a.xy.x), Rat(a.xy.y)}, std::nullopt});
  }
  return g;
}

}  // namespace tensegrity
