#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>

#include "corpus.hpp"
#include "tensegrity/io.hpp"
#include "tensegrity/report.hpp"

using namespace tensegrity;

namespace {

std::string parse_error(std::string_view text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    return e.what();
  }
  FAIL("expected a parse error");
  return {};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("fixtures parse") {
  auto a = load_document(FIXTURE_DIR "/example_3_5a.json");
  REQUIRE(a.planar());
  CHECK(a.as_planar().vertices.size() == 5);
  CHECK(a.as_planar().edges.size() == 8);
  CHECK(a.as_planar() == corpus::example_a());
  CHECK(load_document(FIXTURE_DIR "/example_3_5b.json").as_planar() == corpus::example_b());

  auto g = load_document(FIXTURE_DIR "/example_2_2.json");
  REQUIRE_FALSE(g.planar());
  CHECK(g.as_general().edges.size() == 12);
  CHECK(g.as_general().faces.size() == 9);
  CHECK(g.as_general().incidences.size() == 12);

  auto empty = parse_document(R"({"type":"planar","vertices":[],"edges":[]})");
  CHECK(empty.as_planar().vertices.empty());
}

TEST_CASE("strict schema") {
  CHECK(contains(parse_error(R"({"type":"planar","vertices":[{"id":"a","xy":[1.5,0]}],"edges":[]})"),
                 "/vertices/0/xy/0"));
  CHECK(contains(parse_error(R"({"type":"planar","vertices":[],"edges":[],"extra":1})"), "/extra"));
  CHECK(contains(parse_error(R"({"type":"planar","vertices":[{"id":"a","xy":[0,0],"z":1}],"edges":[]})"),
                 "/vertices/0/z"));
  CHECK(contains(parse_error(R"({"type":"planar","vertices":[]})"), "/edges"));
  CHECK(contains(parse_error(R"({"type":"spherical"})"), "/type"));
  CHECK(contains(parse_error("{\n\"type\": \"planar\",\n\"vertices\": [,]\n}"), "line 3"));
  CHECK(contains(parse_error(R"({"type":"planar","vertices":[{"id":"a","xy":["x",0]}],"edges":[]})"),
                 "/vertices/0/xy/0"));
  CHECK(contains(parse_error(R"({"type":"planar","vertices":[{"id":"a","xy":[0]}],"edges":[]})"), "/xy"));
  CHECK(contains(parse_error(R"({"type":"planar","vertices":[],"edges":[["a"]]})"), "/edges/0"));
  const char* bad_rat = R"({"type":"general","dim":2,"k":1,"edges":[{"id":"o","point":["1/0",0],"dirs":[]}],
                             "faces":[],"incidences":[]})";
  CHECK(contains(parse_error(bad_rat), "/edges/0/point/0"));
  const char* no_sample = R"({"type":"general","dim":2,"k":1,"edges":[],"faces":[],
                               "incidences":[{"edge":"o","face":"f"}]})";
  CHECK(contains(parse_error(no_sample), "/incidences/0"));
}

TEST_CASE("big integers and rationals") {
  auto doc = parse_document(
      R"({"type":"planar","vertices":[{"id":"a","xy":["123456789012345678901234567890",-3]}],"edges":[]})");
  CHECK(doc.as_planar().vertices[0].xy.x.get_str() == "123456789012345678901234567890");
  CHECK(int_json(Int("123456789012345678901234567890")).is_string());
  CHECK(int_json(Int(-5)).get<long>() == -5);
  CHECK(rat_json(Rat(1, 2)).get<std::string>() == "1/2");
  CHECK(rat_json(Rat(4)).get<long>() == 4);
}

TEST_CASE("round trip") {
  for (const auto& entry : std::filesystem::directory_iterator(FIXTURE_DIR)) {
    auto doc = load_document(entry.path());
    CHECK(parse_document(serialize(doc)) == doc);
  }
  for (const auto& fw : corpus::random_planar(20)) {
    InputDocument doc{fw};
    CHECK(parse_document(serialize(doc)) == doc);
    InputDocument gen{as_general(fw)};
    CHECK(parse_document(serialize(gen)) == gen);
  }
  auto g = load_document(FIXTURE_DIR "/example_2_2.json").as_general();
  g.incidences[0].sample = RatVector{Rat(1, 3), Rat(-2, 7), Rat(0)};
  g.incidences[1].normal = IntVector{Int(0), Int(1), Int(1)};
  InputDocument doc{g};
  CHECK(parse_document(serialize(doc)) == doc);
}

TEST_CASE("analysis reports") {
  auto a = analyze(load_document(FIXTURE_DIR "/example_3_5a.json"));
  CHECK(a.exit_code() == 0);
  REQUIRE(a.routes_agree().has_value());
  CHECK(*a.routes_agree());
  auto j = to_json(a);
  CHECK(j["valid"] == true);
  CHECK(j["dim_stress_space"] == 1);
  CHECK(j["stress_basis"][0]["p1-p2"] == "5");
  CHECK(j["routes_agree"] == true);
  CHECK(j["fan"]["walls"] == 12);

  auto only_a = analyze(load_document(FIXTURE_DIR "/example_3_5a.json"), {Route::A});
  CHECK_FALSE(only_a.routes_agree().has_value());
  CHECK(to_json(only_a)["routes_agree"].is_null());
  CHECK(to_json(only_a)["fan"].is_null());

  auto b = analyze(load_document(FIXTURE_DIR "/example_3_5b.json"));
  CHECK(to_json(b)["dim_stress_space"] == 0);
  CHECK(b.exit_code() == 0);

  auto bad = analyze(load_document(FIXTURE_DIR "/crossing.json"));
  CHECK(bad.exit_code() == 3);
  CHECK(to_json(bad)["dim_stress_space"].is_null());

  auto line = analyze(load_document(FIXTURE_DIR "/collinear.json"));
  CHECK(line.exit_code() == 0);
  CHECK_FALSE(line.routes_agree().has_value());
  CHECK(line.notes.size() == 1);

  auto g = analyze(load_document(FIXTURE_DIR "/example_2_2.json"));
  CHECK(g.exit_code() == 0);
  auto gj = to_json(g);
  CHECK(gj["dim_stress_space"] == 1);
  CHECK(gj["multiframe"]["dim"] == 1);
  CHECK(gj["multiframe"]["balanced"] == true);
  CHECK(gj["stress_basis"][0]["f0"] == "2");
  CHECK_THROWS_AS(analyze(load_document(FIXTURE_DIR "/example_2_2.json"), {Route::B}), Error);

  // a deliberately broken agreement flag drives exit code 1
  a.route_b->space.stresses.vectors.clear();
  CHECK(a.exit_code() == 1);
}

TEST_CASE("tables") {
  auto doc = load_document(FIXTURE_DIR "/example_3_5a.json");
  Fan fan = build_fan(doc.as_planar());
  auto t = intersection_table(fan);
  auto tsv = tables_tsv(fan, t);
  CHECK(contains(tsv, "tau_03\t6\n"));
  CHECK(contains(tsv, "sigma_041\t21\n"));
  CHECK(contains(tsv, "D5\t0\t0\t0\t0\t1/3\t1\t1\t1/5\t-7/15\t-2/3\t-1\t-3/5\n"));
  auto md = tables_markdown(fan, t);
  CHECK(contains(md, "| D0 | 1/42 | 1/21 |"));
  auto js = tables_json(fan, t);
  CHECK(js["intersections"]["D2"]["tau_03"] == "1/2");
  CHECK(js["cone_multiplicities"].size() == 8);
  CHECK(js["wall_multiplicities"].size() == 12);
}
