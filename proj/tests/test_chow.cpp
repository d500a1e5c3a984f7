#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "corpus.hpp"
#include "oracles.hpp"
#include "tensegrity/chow.hpp"

using namespace tensegrity;

namespace {

RatVector rv(std::initializer_list<long> xs) {
  RatVector v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

std::size_t wall(const Fan& fan, const std::string& name) {
  for (std::size_t i = 0; i < fan.walls.size(); ++i)
    if (fan.walls[i].name == name) return i;
  throw std::logic_error("no wall " + name);
}

Rat q(long n, long d) { return make_rat(Int(n), Int(d)); }

}  // namespace

TEST_CASE("multiplicities") {
  Fan fan = build_fan(corpus::example_a());
  CHECK(mult(fan.walls[wall(fan, "41")].cone, fan) == 1);
  CHECK(mult(*std::find_if(fan.maximal_cones.begin(), fan.maximal_cones.end(),
                           [](const Cone& c) { return c.rays == std::vector<std::size_t>{0, 1, 4}; }),
             fan) == 21);
  CHECK(mult(Cone{{5}}, fan) == 1);
}

TEST_CASE("wall relations") {
  Fan fan = build_fan(corpus::example_a());
  auto check_relation = [&](const std::string& name, std::size_t u1, std::size_t u2, long a, long b,
                            std::vector<std::pair<std::size_t, long>> lambdas) {
    auto r = wall_relation(fan, wall(fan, name));
    // orientation of the two sides is an implementation detail
    if (r.first_opposite != u1) {
      std::swap(u1, u2);
      std::swap(a, b);
    }
    CHECK(r.first_opposite == u1);
    CHECK(r.second_opposite == u2);
    CHECK(r.alpha == a);
    CHECK(r.beta == b);
    for (auto [ray, l] : lambdas) CHECK(r.lambda(ray) == l);
    IntVector sum(3);
    for (int k = 0; k < 3; ++k) {
      sum[k] = r.alpha * fan.rays[r.first_opposite].generator[k] + r.beta * fan.rays[r.second_opposite].generator[k];
      for (auto [ray, l] : r.lambdas) sum[k] += l * fan.rays[ray].generator[k];
    }
    CHECK(sum == IntVector(3));
  };
  check_relation("01", 2, 4, 3, 2, {{0, 1}, {1, 0}});
  check_relation("15", 2, 4, 5, 3, {{1, -1}, {5, -7}});

  // a unit square's diagonal with symmetric neighbours
  auto square = corpus::planar({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 3}});
  Fan sq = build_fan(square);
  auto r = wall_relation(sq, wall(sq, "13"));
  CHECK(r.lambda(1) == r.lambda(3));
  CHECK(r.alpha == r.beta);

  Fan broken = fan;
  broken.walls[0].adjacent = {0, 0};
  CHECK_THROWS_AS(wall_relation(broken, 0), Error);
}

TEST_CASE("intersection numbers") {
  Fan fan = build_fan(corpus::example_a());
  CHECK(intersect(fan, 0, wall(fan, "01")) == q(1, 42));
  CHECK(intersect(fan, 2, wall(fan, "01")) == q(1, 14));
  CHECK(intersect(fan, 5, wall(fan, "15")) == q(-7, 15));
  CHECK(intersect(fan, 2, wall(fan, "03")) == q(1, 2));
  for (std::size_t w = 0; w < 4; ++w)
    for (std::size_t r = 0; r < fan.rays.size(); ++r)
      CHECK(intersect_assistant_wall(fan, r, w) == intersect(fan, r, w));
  CHECK_THROWS_AS(intersect_assistant_wall(fan, 0, wall(fan, "15")), Error);
}

TEST_CASE("intersection table matches the oracle and the serial kernel") {
  for (const auto& fw : corpus::random_planar(30)) {
    Fan fan = build_fan(fw);
    auto t = intersection_table(fan);
    CHECK(t.values == intersection_table_serial(fan).values);
    for (std::size_t w = 0; w < fan.walls.size(); ++w) {
      auto col = oracle::wall_column(fan, w);
      for (std::size_t r = 0; r < fan.rays.size(); ++r) CHECK(t.values(r, w) == col[r]);
      // rays outside both adjacent cones pair to zero
      for (std::size_t r = 0; r < fan.rays.size(); ++r)
        if (!fan.maximal_cones[fan.walls[w].adjacent[0]].contains(r) &&
            !fan.maximal_cones[fan.walls[w].adjacent[1]].contains(r))
          CHECK(t.values(r, w) == 0);
    }
    bool assistant_row_nonzero = false;
    for (std::size_t w = 0; w < fan.walls.size(); ++w) assistant_row_nonzero |= t.values(0, w) != 0;
    CHECK(assistant_row_nonzero);
  }
}

TEST_CASE("linear relations and divisor basis") {
  Fan fan = build_fan(corpus::example_a());
  IntMatrix lr = linear_relations(fan);
  REQUIRE(lr.rows() == 3);
  CHECK(lr.row_vector(1) == IntVector{-1, 2, 1, -1, -1, 0});
  CHECK(lr.row_vector(2) == IntVector{-5, 1, 1, 1, 1, 1});
  // the first relation as evaluated from the rays: p4 = (2, -1) contributes +2
  CHECK(lr.row_vector(0) == IntVector{-1, 1, -1, -1, 2, 0});

  auto b = divisor_basis(fan);
  CHECK(b.basis == std::vector<std::size_t>{0, 1, 2});
  CHECK(divisor_basis(build_fan(corpus::example_b())).basis.size() == 4);
  CHECK(divisor_basis(build_fan(corpus::planar({{0, 0}, {1, 0}, {0, 1}}, {{1, 2}, {2, 3}, {3, 1}}))).basis.size() ==
        1);

  auto t = intersection_table(fan);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t w = 0; w < fan.walls.size(); ++w) {
      Rat s = 0;
      for (std::size_t r = 0; r < fan.rays.size(); ++r) s += lr(k, r) * t.values(r, w);
      CHECK(s == 0);
    }
}

TEST_CASE("weights and Minkowski balancing") {
  Fan fan = build_fan(corpus::example_a());
  auto t = intersection_table(fan);
  Divisor zero{RatVector(6)};
  auto w0 = weight_of(zero, t);
  for (const auto& x : w0.values) CHECK(x == 0);
  CHECK(check_minkowski(w0, fan).ok());

  Divisor d{rv({-6, 3, 2, 0, 0, 0})};
  auto w = weight_of(d, t);
  CHECK(w.values == weight_of(d, fan).values);
  for (std::size_t i = 0; i < 4; ++i) CHECK(w.values[i] == 0);
  bool nonzero = false;
  for (std::size_t i = 4; i < 12; ++i) nonzero |= w.values[i] != 0;
  CHECK(nonzero);
  CHECK(check_minkowski(w, fan).ok());

  for (std::size_t r = 0; r < fan.rays.size(); ++r) {
    Divisor single{RatVector(6)};
    single.coeffs[r] = 1;
    CHECK(check_minkowski(weight_of(single, t), fan).ok());
  }

  MinkowskiWeight spike{RatVector(12)};
  spike.values[wall(fan, "15")] = 1;
  auto rep = check_minkowski(spike, fan);
  CHECK_FALSE(rep.ok());
  for (const auto& rb : rep.rays) CHECK(rb.ok() == (rb.ray != 1 && rb.ray != 5));
}

TEST_CASE("Stanley-Reisner minimal non-faces") {
  Fan fan = build_fan(corpus::example_a());
  auto nf = sr_minimal_nonfaces(fan);
  std::set<std::vector<std::size_t>> s(nf.begin(), nf.end());
  CHECK(s.count({0, 5}));
  for (const auto& w : fan.walls) CHECK_FALSE(s.count(w.cone.rays));
  for (const auto& f : nf) CHECK(f.size() >= 2);

  Fan tri = build_fan(corpus::planar({{0, 0}, {1, 0}, {0, 1}}, {{1, 2}, {2, 3}, {3, 1}}));
  // every pair of the four rays spans a wall, so the only non-face is all four
  auto nt = sr_minimal_nonfaces(tri);
  CHECK(nt == std::vector<std::vector<std::size_t>>{{0, 1, 2, 3}});
}

TEST_CASE("constrained stress space") {
  auto fw = corpus::example_a();
  Fan fan = build_fan(fw);
  auto s = constrained_stress_space(fw, fan);
  REQUIRE(s.dim() == 1);
  CHECK(same_span(s.coordinates, {rv({-6, 3, 2})}, 3));
  CHECK(s.stresses.vectors == self_stress_basis(fw).vectors);

  auto fb = corpus::example_b();
  CHECK(constrained_stress_space(fb, build_fan(fb)).dim() == 0);
  auto tri = corpus::planar({{0, 0}, {1, 0}, {0, 1}}, {{1, 2}, {2, 3}, {3, 1}});
  CHECK(constrained_stress_space(tri, build_fan(tri)).dim() == 0);
  auto wheel = corpus::wheel3();
  CHECK(constrained_stress_space(wheel, build_fan(wheel)).dim() == 1);
}

TEST_CASE("property: routes agree and every wall is side independent") {
  for (const auto& fw : corpus::random_planar(50)) {
    for (auto order : {TriangulationOrder::Lex, TriangulationOrder::RevLex}) {
      Fan fan = build_fan(fw, order);
      auto cmp = compare_routes(fw, fan);
      CHECK(cmp.agree);
      CHECK(cmp.dim_direct == cmp.dim_toric);
      for (std::size_t w = 0; w < fan.walls.size(); ++w)
        for (auto r : fan.walls[w].cone.rays)
          CHECK(intersect_from_side(fan, r, w, 0) == intersect_from_side(fan, r, w, 1));
      auto s = constrained_stress_space(fw, fan);
      auto rows = oracle::planar_balancing_rows(fw);
      for (const auto& weight : s.weights) {
        CHECK(check_minkowski(weight, fan).ok());
        // framework-wall values re-substituted into the balancing equations
        RatVector stress(fw.edges.size());
        for (std::size_t w = 0; w < fan.walls.size(); ++w)
          if (fan.walls[w].framework_edge) stress[*fan.walls[w].framework_edge] = weight.values[w];
        for (const auto& row : rows) CHECK(dot(row, stress) == 0);
      }
    }
  }
}

TEST_CASE("assistant walls alone") {
  auto fb = corpus::example_b();
  Fan fan = build_fan(fb);
  auto t = intersection_table(fan);
  auto basis = divisor_basis(fan);
  auto space = vanishing_divisor_space(fan, t, basis, {WallKind::Assistant});
  CHECK(space.size() == 2);
  CHECK(in_span(rv({-7, 3, 2, 0}), space));
  CHECK(in_span(rv({3, 0, -1, -1}), space));
  CHECK(vanishing_divisor_space(fan, t, basis, {WallKind::Assistant, WallKind::Added}).empty());

  // the assistant-wall curves live on the toric surface of ray 0
  for (const auto& fw : corpus::random_planar(40)) {
    Fan f = build_fan(fw);
    auto tf = intersection_table(f);
    auto bf = divisor_basis(f);
    auto s = vanishing_divisor_space(f, tf, bf, {WallKind::Assistant});
    CHECK(bf.basis.size() - s.size() <= f.hull_cycle.size() - 2);
  }
}
