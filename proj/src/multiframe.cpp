#include "tensegrity/multiframe.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numeric>
#include <set>

namespace tensegrity {

namespace {

Int cross(const IntVector& a, const IntVector& b) { return a[0] * b[1] - a[1] * b[0]; }

int half(const IntVector& v) { return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1; }

}  // namespace

void sort_circular(std::vector<IntVector>& rays, std::vector<std::string>& labels) {
  std::vector<std::size_t> order(rays.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    int ha = half(rays[a]), hb = half(rays[b]);
    if (ha != hb) return ha < hb;
    return cross(rays[a], rays[b]) > 0;
  });
  std::vector<IntVector> r;
  std::vector<std::string> l;
  for (auto i : order) {
    r.push_back(rays[i]);
    if (!labels.empty()) l.push_back(labels.at(i));
  }
  rays = std::move(r);
  if (!labels.empty()) labels = std::move(l);
}

bool in_closed_half_plane(const std::vector<IntVector>& rays) {
  if (rays.empty()) return true;
  // An optimal supporting line can be rotated until it contains a ray.
  for (const auto& v : rays)
    for (int sign : {1, -1}) {
      IntVector f{Int(-v[1] * sign), Int(v[0] * sign)};
      bool all = std::all_of(rays.begin(), rays.end(),
                             [&](const IntVector& u) { return f[0] * u[0] + f[1] * u[1] >= 0; });
      if (all) return true;
    }
  return false;
}

bool is_complete_2d(const std::vector<IntVector>& sorted_rays) {
  const std::size_t n = sorted_rays.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (cross(sorted_rays[i], sorted_rays[(i + 1) % n]) <= 0) return false;
  return true;
}

LocalFan local_fan(const KFramework& fw, const std::string& edge) {
  auto ei = fw.edge_index(edge);
  if (!ei) throw Error(ErrorCode::InvalidFramework, "unknown edge " + edge);
  QuotientMap q = quotient_map(fw.edges[*ei], fw.dim);
  if (q.rank != 2)
    throw Error(ErrorCode::UnsupportedCodim,
                "edge " + edge + " has quotient rank " + std::to_string(q.rank) + ", local fans need rank 2");

  LocalFan fan;
  fan.edge = edge;
  std::set<std::string> faces;
  for (const auto& inc : fw.incidences) {
    if (inc.edge != edge) continue;
    if (!faces.insert(inc.face).second)
      throw Error(ErrorCode::GenericityViolation, "face " + inc.face + " repeated at edge " + edge);
    fan.rays.push_back(incidence_normal(fw, inc, q).vector);
    fan.labels.push_back(inc.face);
  }
  if (fan.rays.size() < 3)
    throw Error(ErrorCode::GenericityViolation,
                "edge " + edge + " has " + std::to_string(fan.rays.size()) + " incident faces, need >= 3");
  for (std::size_t i = 0; i < fan.rays.size(); ++i)
    for (std::size_t j = i + 1; j < fan.rays.size(); ++j)
      if (fan.rays[i] == fan.rays[j])
        throw Error(ErrorCode::GenericityViolation,
                    "faces " + fan.labels[i] + " and " + fan.labels[j] + " give the same ray at edge " + edge);

  if (in_closed_half_plane(fan.rays)) {
    IntVector sum{Int(0), Int(0)};
    for (const auto& r : fan.rays) {
      sum[0] -= r[0];
      sum[1] -= r[1];
    }
    if (sum[0] == 0 && sum[1] == 0)
      throw Error(ErrorCode::GenericityViolation, "rays at edge " + edge + " lie on one line");
    fan.rays.push_back(primitive(sum));
    fan.labels.emplace_back();
  }
  sort_circular(fan.rays, fan.labels);
  for (std::size_t i = 0; i < fan.labels.size(); ++i)
    if (fan.labels[i].empty()) fan.assistant = i;
  if (!is_complete_2d(fan.rays))
    throw Error(ErrorCode::GenericityViolation, "local fan at edge " + edge + " is not complete");
  return fan;
}

GluedSystem glued_system(const KFramework& fw) {
  GluedSystem sys;
  std::vector<std::string> active;
  for (const auto& e : fw.edges)
    if (std::any_of(fw.incidences.begin(), fw.incidences.end(),
                    [&](const Incidence& inc) { return inc.edge == e.id; }))
      active.push_back(e.id);

  sys.fans.resize(active.size());
  std::vector<std::exception_ptr> failures(active.size());
  const auto n = static_cast<std::ptrdiff_t>(active.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      sys.fans[i] = local_fan(fw, active[i]);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  std::map<std::string, std::size_t> column;
  for (const auto& f : fw.faces) {
    column[f.id] = sys.unknowns.size();
    sys.unknowns.push_back(f.id);
    sys.incidences.push_back({f.id, {}});
  }
  sys.face_count = sys.unknowns.size();
  for (const auto& fan : sys.fans)
    if (fan.assistant) {
      sys.pinned.push_back(sys.unknowns.size());
      sys.unknowns.push_back("assistant@" + fan.edge);
    }

  sys.equations = RatMatrix(0, sys.unknowns.size());
  std::size_t next_assistant = 0;
  for (const auto& fan : sys.fans) {
    RatVector rows[2] = {RatVector(sys.unknowns.size()), RatVector(sys.unknowns.size())};
    for (std::size_t r = 0; r < fan.rays.size(); ++r) {
      std::size_t col;
      if (fan.labels[r].empty()) {
        col = sys.pinned[next_assistant++];
      } else {
        col = column.at(fan.labels[r]);
        sys.incidences[col].occurrences.push_back({fan.edge, fan.rays[r]});
      }
      rows[0][col] += fan.rays[r][0];
      rows[1][col] += fan.rays[r][1];
    }
    for (int k = 0; k < 2; ++k) {
      sys.equations.append_row(rows[k]);
      sys.equation_labels.push_back(fan.edge + ":" + std::to_string(k));
    }
  }
  return sys;
}

StressBasis glued_stress_space(const KFramework& fw) {
  GluedSystem sys = glued_system(fw);
  LinearSystem constraints(sys.unknowns.size());
  for (std::size_t i = 0; i < sys.equations.rows(); ++i)
    constraints.add(sys.equation_labels[i], sys.equations.row(i));
  for (auto p : sys.pinned) {
    RatVector pin(sys.unknowns.size());
    pin[p] = 1;
    constraints.add(sys.unknowns[p] + "=0", pin);
  }
  std::vector<RatVector> restricted;
  for (const auto& v : solve_constrained(constraints))
    restricted.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(sys.face_count));

  StressBasis out;
  out.ids.assign(sys.unknowns.begin(), sys.unknowns.begin() + static_cast<std::ptrdiff_t>(sys.face_count));
  out.vectors = canonical_span_basis(restricted, sys.face_count);

  StressBasis direct = self_stress_basis(fw);
  if (direct.ids != out.ids || direct.vectors != out.vectors)
    throw Error(ErrorCode::InternalMismatch, "glued stress space differs from the direct balancing solution");
  return out;
}

bool LocalBalanceReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const EdgeBalance& b) { return b.ok; });
}

LocalBalanceReport local_balance_check(const KFramework& fw, const StressBasis& stresses) {
  GluedSystem sys = glued_system(fw);
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < stresses.ids.size(); ++i) column[stresses.ids[i]] = i;

  LocalBalanceReport report;
  for (std::size_t s = 0; s < stresses.vectors.size(); ++s)
    for (const auto& fan : sys.fans) {
      EdgeBalance check{fan.edge, s, RatVector(2), true};
      for (std::size_t r = 0; r < fan.rays.size(); ++r) {
        if (fan.labels[r].empty()) continue;  // assistant ray carries weight 0
        auto it = column.find(fan.labels[r]);
        if (it == column.end())
          throw Error(ErrorCode::DimensionMismatch, "stress has no value for face " + fan.labels[r]);
        const Rat& w = stresses.vectors[s][it->second];
        check.residual[0] += w * fan.rays[r][0];
        check.residual[1] += w * fan.rays[r][1];
      }
      check.ok = check.residual[0] == 0 && check.residual[1] == 0;
      report.checks.push_back(std::move(check));
    }
  return report;
}

}  // namespace tensegrity
