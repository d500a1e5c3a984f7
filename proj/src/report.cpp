#include "tensegrity/report.hpp"

#include <sstream>

namespace tensegrity {

std::optional<bool> AnalysisReport::routes_agree() const {
  if (!route_a || !route_b) return std::nullopt;
  return route_a->ids == route_b->space.stresses.ids && route_a->vectors == route_b->space.stresses.vectors;
}

int AnalysisReport::exit_code() const {
  if (!validation.valid()) return 3;
  if (auto agree = routes_agree(); agree && !*agree) return 1;
  if (multiframe && (multiframe->mismatch || (multiframe->glued && !multiframe->balanced))) return 1;
  return 0;
}

namespace {

ToricResult toric_route(const PlanarFramework& fw, TriangulationOrder order) {
  Fan fan = build_fan(fw, order);
  IntersectionTable table = intersection_table(fan);
  StressSpaceResult space = constrained_stress_space(fw, fan, table);
  CompletenessResult completeness = sample_completeness(fan, sample_directions(1000));
  return {std::move(fan), std::move(space), std::move(table), completeness};
}

MultiframeResult multiframe_route(const KFramework& fw, const StressBasis& direct, std::vector<std::string>& notes) {
  MultiframeResult out;
  try {
    GluedSystem sys = glued_system(fw);
    out.local_fans = sys.fans.size();
    out.assistant_rays = sys.pinned.size();
    out.glued = glued_stress_space(fw);
    out.balanced = local_balance_check(fw, direct).ok();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InternalMismatch) {
      out.mismatch = true;
    } else if (e.code() == ErrorCode::UnsupportedCodim || e.code() == ErrorCode::GenericityViolation) {
      notes.push_back(std::string("local fans skipped: ") + e.what());
    } else {
      throw;
    }
  }
  return out;
}

Json ray_vector_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(int_json(x));
  return a;
}

}  // namespace

AnalysisReport analyze(const InputDocument& doc, const AnalyzeOptions& options) {
  AnalysisReport r;
  r.planar = doc.planar();
  r.tables = options.tables;
  if (r.planar) {
    if (options.tables && options.route == Route::A)
      throw Error(ErrorCode::ParseError, "tables come from the toric route");
    const auto& fw = doc.as_planar();
    r.validation = validate_planar(fw);
    if (!r.validation.valid()) return r;
    if (options.route != Route::B) r.route_a = self_stress_basis(fw);
    if (options.route != Route::A) {
      try {
        r.route_b = toric_route(fw, options.order);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateHull) throw;
        r.notes.push_back(std::string("toric route skipped: ") + e.what());
      }
    }
    return r;
  }
  if (options.route == Route::B)
    throw Error(ErrorCode::ParseError, "the toric route needs a planar framework");
  if (options.tables) throw Error(ErrorCode::ParseError, "tables need a planar framework");
  const auto& fw = doc.as_general();
  r.validation = validate_general(fw);
  if (!r.validation.valid()) return r;
  r.route_a = self_stress_basis(fw);
  if (options.route == Route::Both) r.multiframe = multiframe_route(fw, *r.route_a, r.notes);
  return r;
}

Json to_json(const ValidationReport& report) {
  Json issues = Json::array();
  for (const auto& i : report.issues)
    issues.push_back(Json{{"severity", i.severity == Severity::Error ? "error" : "warning"},
                          {"kind", std::string(to_string(i.kind))},
                          {"location", i.location},
                          {"message", i.message}});
  return issues;
}

Json to_json(const StressBasis& basis) {
  Json out = Json::array();
  for (const auto& v : basis.vectors) {
    Json entry = Json::object();
    for (std::size_t i = 0; i < basis.ids.size(); ++i) entry[basis.ids[i]] = to_string(v[i]);
    out.push_back(entry);
  }
  return out;
}

Json fan_json(const Fan& fan) {
  Json rays = Json::array();
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    const auto& r = fan.rays[i];
    Json j{{"name", "D" + std::to_string(i)}, {"generator", ray_vector_json(r.generator)}};
    if (r.kind == RayKind::Assistant)
      j["kind"] = "assistant";
    else
      j["vertex"] = r.vertex_id;
    rays.push_back(j);
  }
  Json cones = Json::array();
  for (std::size_t c = 0; c < fan.maximal_cones.size(); ++c)
    cones.push_back(Json{{"name", "sigma_" + fan.cone_names[c]}, {"rays", fan.maximal_cones[c].rays}});
  Json walls = Json::array();
  for (const auto& w : fan.walls) {
    Json j{{"name", "tau_" + w.name},
           {"rays", w.cone.rays},
           {"kind", std::string(to_string(w.kind))},
           {"cones", {"sigma_" + fan.cone_names[w.adjacent[0]], "sigma_" + fan.cone_names[w.adjacent[1]]}}};
    if (w.framework_edge) j["edge"] = *w.framework_edge;
    walls.push_back(j);
  }
  return Json{{"rays", rays}, {"maximal_cones", cones}, {"walls", walls}, {"hull_cycle", fan.hull_cycle}};
}

Json to_json(const AnalysisReport& r) {
  Json out;
  out["type"] = r.planar ? "planar" : "general";
  out["valid"] = r.validation.valid();
  out["issues"] = to_json(r.validation);
  const StressBasis* primary = r.route_a ? &*r.route_a : r.route_b ? &r.route_b->space.stresses : nullptr;
  out["dim_stress_space"] = primary ? Json(primary->dim()) : Json(nullptr);
  out["stress_basis"] = primary ? to_json(*primary) : Json(nullptr);
  out["route_a"] = r.route_a ? Json{{"dim", r.route_a->dim()}, {"basis", to_json(*r.route_a)}} : Json(nullptr);
  if (r.route_b) {
    const auto& s = r.route_b->space;
    Json basis = Json::array(), eliminated = Json::array(), divisors = Json::array();
    for (auto i : s.basis.basis) basis.push_back("D" + std::to_string(i));
    for (auto i : s.basis.eliminated) eliminated.push_back("D" + std::to_string(i));
    for (const auto& d : s.divisors) {
      Json j = Json::object();
      for (std::size_t i = 0; i < d.coeffs.size(); ++i)
        if (d.coeffs[i] != 0) j["D" + std::to_string(i)] = to_string(d.coeffs[i]);
      divisors.push_back(j);
    }
    out["route_b"] = Json{{"dim", s.dim()},
                          {"basis", to_json(s.stresses)},
                          {"divisor_basis", basis},
                          {"eliminated", eliminated},
                          {"divisors", divisors}};
  } else {
    out["route_b"] = nullptr;
  }
  auto agree = r.routes_agree();
  out["routes_agree"] = agree ? Json(*agree) : Json(nullptr);
  if (r.route_b) {
    const auto& fan = r.route_b->fan;
    out["fan"] = Json{{"rays", fan.rays.size()},
                      {"maximal_cones", fan.maximal_cones.size()},
                      {"walls", fan.walls.size()},
                      {"framework_walls", fan.count(WallKind::Framework)},
                      {"added_walls", fan.count(WallKind::Added)},
                      {"assistant_walls", fan.count(WallKind::Assistant)},
                      {"assistant_ray", ray_vector_json(fan.rays[0].generator)},
                      {"complete", r.route_b->completeness.ok()},
                      {"samples", r.route_b->completeness.samples}};
  } else {
    out["fan"] = nullptr;
  }
  if (r.multiframe) {
    const auto& m = *r.multiframe;
    Json j{{"local_fans", m.local_fans}, {"assistant_rays", m.assistant_rays}, {"mismatch", m.mismatch}};
    j["dim"] = m.glued ? Json(m.glued->dim()) : Json(nullptr);
    j["balanced"] = m.glued ? Json(m.balanced) : Json(nullptr);
    out["multiframe"] = j;
  } else {
    out["multiframe"] = nullptr;
  }
  out["notes"] = r.notes;
  if (r.tables && r.route_b) out["tables"] = tables_json(r.route_b->fan, r.route_b->table);
  return out;
}

std::string to_text(const AnalysisReport& r) {
  std::ostringstream os;
  os << (r.planar ? "planar" : "general") << " framework: " << (r.validation.valid() ? "valid" : "invalid") << "\n";
  for (const auto& i : r.validation.issues)
    os << "  " << (i.severity == Severity::Error ? "error" : "warning") << " " << to_string(i.kind) << " at "
       << i.location << ": " << i.message << "\n";
  auto print_basis = [&](const char* title, const StressBasis& b) {
    os << title << ": dimension " << b.dim() << "\n";
    for (const auto& v : b.vectors) {
      os << "  ";
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << b.ids[i] << "=" << to_string(v[i]);
      os << "\n";
    }
  };
  if (r.route_a) print_basis("direct balancing", *r.route_a);
  if (r.route_b) {
    print_basis("toric route", r.route_b->space.stresses);
    const auto& fan = r.route_b->fan;
    os << "  fan: " << fan.rays.size() << " rays, " << fan.maximal_cones.size() << " maximal cones, "
       << fan.walls.size() << " walls (" << fan.count(WallKind::Added) << " added), "
       << (r.route_b->completeness.ok() ? "complete" : "NOT complete") << "\n";
    for (const auto& d : r.route_b->space.divisors) {
      os << "  D =";
      bool any = false;
      for (std::size_t i = 0; i < d.coeffs.size(); ++i)
        if (d.coeffs[i] != 0) {
          os << " " << (any && d.coeffs[i] > 0 ? "+" : "") << to_string(d.coeffs[i]) << "*D" << i;
          any = true;
        }
      os << "\n";
    }
  }
  if (auto agree = r.routes_agree()) os << "routes agree: " << (*agree ? "yes" : "NO") << "\n";
  if (r.multiframe) {
    const auto& m = *r.multiframe;
    if (m.mismatch)
      os << "local fans: glued system disagrees with direct balancing\n";
    else if (m.glued)
      os << "local fans: " << m.local_fans << " (" << m.assistant_rays << " with assistant ray), glued dimension "
         << m.glued->dim() << ", balanced " << (m.balanced ? "yes" : "NO") << "\n";
  }
  if (r.route_a) os << (r.route_a->dim() == 0 ? "no tensegrity" : "tensegrity: nonzero self-stresses exist") << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  if (r.tables && r.route_b) os << "\n" << tables_tsv(r.route_b->fan, r.route_b->table);
  return os.str();
}

Json tables_json(const Fan& fan, const IntersectionTable& table) {
  MultiplicityTable m = multiplicity_table(fan);
  Json walls = Json::object(), cones = Json::object(), inter = Json::object();
  for (std::size_t i = 0; i < m.wall_names.size(); ++i) walls[m.wall_names[i]] = int_json(m.wall_mults[i]);
  for (std::size_t i = 0; i < m.cone_names.size(); ++i) cones[m.cone_names[i]] = int_json(m.cone_mults[i]);
  for (std::size_t r = 0; r < table.ray_names.size(); ++r) {
    Json row = Json::object();
    for (std::size_t w = 0; w < table.wall_names.size(); ++w) row[table.wall_names[w]] = to_string(table.values(r, w));
    inter[table.ray_names[r]] = row;
  }
  return Json{{"wall_multiplicities", walls}, {"cone_multiplicities", cones}, {"intersections", inter}};
}

std::string tables_tsv(const Fan& fan, const IntersectionTable& table) {
  MultiplicityTable m = multiplicity_table(fan);
  std::ostringstream os;
  os << "cone\tmult\n";
  for (std::size_t i = 0; i < m.wall_names.size(); ++i) os << m.wall_names[i] << "\t" << m.wall_mults[i] << "\n";
  for (std::size_t i = 0; i < m.cone_names.size(); ++i) os << m.cone_names[i] << "\t" << m.cone_mults[i] << "\n";
  os << "\n";
  for (const auto& w : table.wall_names) os << "\t" << w;
  os << "\n";
  for (std::size_t r = 0; r < table.ray_names.size(); ++r) {
    os << table.ray_names[r];
    for (std::size_t w = 0; w < table.wall_names.size(); ++w) os << "\t" << to_string(table.values(r, w));
    os << "\n";
  }
  return os.str();
}

std::string tables_markdown(const Fan& fan, const IntersectionTable& table) {
  MultiplicityTable m = multiplicity_table(fan);
  std::ostringstream os;
  os << "| cone | mult |\n|---|---|\n";
  for (std::size_t i = 0; i < m.wall_names.size(); ++i) os << "| " << m.wall_names[i] << " | " << m.wall_mults[i] << " |\n";
  for (std::size_t i = 0; i < m.cone_names.size(); ++i) os << "| " << m.cone_names[i] << " | " << m.cone_mults[i] << " |\n";
  os << "\n|";
  for (const auto& w : table.wall_names) os << " | V(" << w << ")";
  os << " |\n|---";
  for (std::size_t w = 0; w < table.wall_names.size(); ++w) os << "|---";
  os << "|\n";
  for (std::size_t r = 0; r < table.ray_names.size(); ++r) {
    os << "| " << table.ray_names[r];
    for (std::size_t w = 0; w < table.wall_names.size(); ++w) os << " | " << to_string(table.values(r, w));
    os << " |\n";
  }
  return os.str();
}

}  // namespace tensegrity
