#include "tensegrity/io.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace tensegrity {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, "field " + (where.empty() ? std::string("/") : where) + ": " + what);
}

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const Json& object(const Json& j, const std::string& path, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) fail(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto known = [&](std::initializer_list<const char*> keys) {
      return std::any_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; });
    };
    if (!known(required) && !known(optional)) fail(at(path, it.key()), "unknown field");
  }
  for (const char* k : required)
    if (!j.contains(k)) fail(at(path, k), "missing field");
  return j;
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Int integer(const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Int(std::to_string(j.get<std::uint64_t>()));
    return Int(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_number_float())
    fail(path, "expected an integer, got a floating point number (write integers beyond 64 bits as strings)");
  if (j.is_string()) {
    try {
      return parse_int(j.get<std::string>());
    } catch (const Error&) {
      fail(path, "expected an integer, got \"" + j.get<std::string>() + "\"");
    }
  }
  fail(path, "expected an integer");
}

Rat rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rat(integer(j, path));
  if (j.is_number_float()) fail(path, "expected a rational, got a floating point number");
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const Error&) {
      fail(path, "expected a rational \"p/q\", got \"" + j.get<std::string>() + "\"");
    }
  }
  fail(path, "expected a rational");
}

IntVector int_vector(const Json& j, const std::string& path) {
  IntVector v;
  const auto& a = array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) v.push_back(integer(a[i], at(path, i)));
  return v;
}

RatVector rat_vector(const Json& j, const std::string& path) {
  RatVector v;
  const auto& a = array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) v.push_back(rational(a[i], at(path, i)));
  return v;
}

int small_int(const Json& j, const std::string& path) {
  Int v = integer(j, path);
  if (v < 0 || v > 64) fail(path, "out of range");
  return static_cast<int>(v.get_si());
}

PlanarFramework read_planar(const Json& doc) {
  object(doc, "", {"type", "vertices", "edges"});
  PlanarFramework fw;
  const auto& vs = array(doc["vertices"], "/vertices");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::string p = at("/vertices", i);
    object(vs[i], p, {"id", "xy"});
    IntVector xy = int_vector(vs[i]["xy"], at(p, "xy"));
    if (xy.size() != 2) fail(at(p, "xy"), "expected 2 coordinates");
    fw.vertices.push_back({text(vs[i]["id"], at(p, "id")), {xy[0], xy[1]}});
  }
  const auto& es = array(doc["edges"], "/edges");
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::string p = at("/edges", i);
    if (!es[i].is_array() || es[i].size() != 2) fail(p, "expected a pair of vertex ids");
    fw.edges.emplace_back(text(es[i][0], at(p, 0)), text(es[i][1], at(p, 1)));
  }
  return fw;
}

std::vector<AffineSubspace> read_subspaces(const Json& j, const std::string& path) {
  std::vector<AffineSubspace> out;
  const auto& a = array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string p = at(path, i);
    object(a[i], p, {"id", "point", "dirs"});
    AffineSubspace s;
    s.id = text(a[i]["id"], at(p, "id"));
    s.point = rat_vector(a[i]["point"], at(p, "point"));
    const auto& dirs = array(a[i]["dirs"], at(p, "dirs"));
    for (std::size_t d = 0; d < dirs.size(); ++d) s.dirs.push_back(int_vector(dirs[d], at(at(p, "dirs"), d)));
    out.push_back(std::move(s));
  }
  return out;
}

KFramework read_general(const Json& doc) {
  object(doc, "", {"type", "dim", "k", "edges", "faces", "incidences"});
  KFramework fw;
  fw.dim = small_int(doc["dim"], "/dim");
  fw.k = small_int(doc["k"], "/k");
  fw.edges = read_subspaces(doc["edges"], "/edges");
  fw.faces = read_subspaces(doc["faces"], "/faces");
  const auto& incs = array(doc["incidences"], "/incidences");
  for (std::size_t i = 0; i < incs.size(); ++i) {
    std::string p = at("/incidences", i);
    object(incs[i], p, {"edge", "face"}, {"sample", "normal"});
    Incidence inc;
    inc.edge = text(incs[i]["edge"], at(p, "edge"));
    inc.face = text(incs[i]["face"], at(p, "face"));
    if (incs[i].contains("sample")) inc.sample = rat_vector(incs[i]["sample"], at(p, "sample"));
    if (incs[i].contains("normal")) inc.normal = int_vector(incs[i]["normal"], at(p, "normal"));
    if (!inc.sample && !inc.normal) fail(p, "needs a sample or a normal");
    fw.incidences.push_back(std::move(inc));
  }
  return fw;
}

Json subspace_json(const AffineSubspace& s) {
  Json point = Json::array();
  for (const auto& x : s.point) point.push_back(rat_json(x));
  Json dirs = Json::array();
  for (const auto& d : s.dirs) {
    Json row = Json::array();
    for (const auto& x : d) row.push_back(int_json(x));
    dirs.push_back(row);
  }
  return Json{{"id", s.id}, {"point", point}, {"dirs", dirs}};
}

}  // namespace

Json int_json(const Int& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

Json rat_json(const Rat& v) {
  if (v.get_den() == 1) return int_json(v.get_num());
  return Json(to_string(v));
}

InputDocument parse_document(std::string_view input) {
  Json doc;
  try {
    doc = Json::parse(input);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1 + static_cast<std::size_t>(
                               std::count(input.begin(), input.begin() + std::min(e.byte, input.size()), '\n'));
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": invalid JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) fail("", "expected an object");
  if (!doc.contains("type")) fail("/type", "missing field");
  std::string type = text(doc["type"], "/type");
  if (type == "planar") return {read_planar(doc)};
  if (type == "general") return {read_general(doc)};
  fail("/type", "expected \"planar\" or \"general\", got \"" + type + "\"");
}

InputDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

Json to_json(const InputDocument& doc) {
  if (doc.planar()) {
    const auto& fw = doc.as_planar();
    Json vs = Json::array();
    for (const auto& v : fw.vertices) vs.push_back(Json{{"id", v.id}, {"xy", {int_json(v.xy.x), int_json(v.xy.y)}}});
    Json es = Json::array();
    for (const auto& [a, b] : fw.edges) es.push_back(Json::array({a, b}));
    return Json{{"type", "planar"}, {"vertices", vs}, {"edges", es}};
  }
  const auto& fw = doc.as_general();
  Json out{{"type", "general"}, {"dim", fw.dim}, {"k", fw.k}};
  Json es = Json::array(), fs = Json::array(), incs = Json::array();
  for (const auto& e : fw.edges) es.push_back(subspace_json(e));
  for (const auto& f : fw.faces) fs.push_back(subspace_json(f));
  for (const auto& inc : fw.incidences) {
    Json j{{"edge", inc.edge}, {"face", inc.face}};
    if (inc.sample) {
      Json s = Json::array();
      for (const auto& x : *inc.sample) s.push_back(rat_json(x));
      j["sample"] = s;
    }
    if (inc.normal) {
      Json n = Json::array();
      for (const auto& x : *inc.normal) n.push_back(int_json(x));
      j["normal"] = n;
    }
    incs.push_back(j);
  }
  out["edges"] = es;
  out["faces"] = fs;
  out["incidences"] = incs;
  return out;
}

std::string serialize(const InputDocument& doc) { return to_json(doc).dump(2) + "\n"; }

}  // namespace tensegrity
