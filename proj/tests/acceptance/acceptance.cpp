// Prints one PASS/FAIL line per acceptance criterion; nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "corpus.hpp"
#include "oracles.hpp"
#include "tensegrity/chow.hpp"
#include "tensegrity/io.hpp"
#include "tensegrity/multiframe.hpp"

using namespace tensegrity;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  Outcome* out;
  void operator()(bool ok, const std::string& what) const {
    if (!ok && out->pass) {
      out->pass = false;
      out->detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Rat q(const std::string& s) { return parse_rat(s); }

RatVector rv(std::initializer_list<long> xs) {
  RatVector v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

std::vector<PlanarFramework> planar_fixtures() {
  std::vector<PlanarFramework> out;
  for (const char* name : {"example_3_5a", "example_3_5b", "triangle", "wheel"})
    out.push_back(load_document(std::string(FIXTURE_DIR) + "/" + name + ".json").as_planar());
  return out;
}

std::size_t wall_named(const Fan& fan, const std::string& name) {
  for (std::size_t i = 0; i < fan.walls.size(); ++i)
    if (fan.walls[i].name == name) return i;
  throw std::runtime_error("no wall " + name);
}

Outcome ac1() {
  Outcome o;
  Check check{&o};
  auto t0 = Clock::now();
  auto fw = load_document(FIXTURE_DIR "/example_3_5a.json").as_planar();
  Fan fan = build_fan(fw);
  check(fan.rays[0].generator == IntVector{-1, -1, -5}, "assistant ray");

  const std::vector<std::string> walls{"01", "02", "03", "04", "12", "23", "34", "41", "15", "25", "35", "45"};
  const std::vector<long> wall_mults{1, 2, 6, 3, 1, 2, 3, 1, 1, 1, 1, 1};
  const std::vector<std::vector<std::size_t>> cones{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 1, 4},
                                                    {1, 2, 5}, {2, 3, 5}, {3, 4, 5}, {1, 4, 5}};
  const std::vector<long> cone_mults{14, 12, 18, 21, 3, 2, 3, 5};
  const std::vector<std::vector<std::string>> table{
      {"1/42", "1/21", "1/6", "1/14", "1/14", "1/6", "1/6", "1/21", "0", "0", "0", "0"},
      {"0", "1/7", "0", "1/7", "1/21", "0", "0", "1/35", "-1/15", "1/3", "0", "1/5"},
      {"1/14", "-1/14", "1/2", "0", "-1/42", "0", "0", "0", "1/3", "-1/6", "1/2", "0"},
      {"0", "1/6", "0", "1/6", "0", "-1/6", "-1/6", "0", "0", "1/2", "1/6", "1/3"},
      {"1/21", "0", "1/3", "1/21", "0", "0", "0", "1/105", "1/5", "0", "1/3", "1/15"},
      {"0", "0", "0", "0", "1/3", "1", "1", "1/5", "-7/15", "-2/3", "-1", "-3/5"}};

  std::size_t matched = 0;
  for (std::size_t w = 0; w < walls.size(); ++w) {
    std::size_t i = wall_named(fan, walls[w]);
    bool ok = mult(fan.walls[i].cone, fan) == wall_mults[w];
    check(ok, "mult(tau_" + walls[w] + ")");
    matched += ok;
  }
  for (std::size_t c = 0; c < cones.size(); ++c) {
    auto i = fan.find_cone(cones[c]);
    bool ok = i && mult(fan.maximal_cones[*i], fan) == cone_mults[c];
    check(ok, "mult of cone " + std::to_string(c));
    matched += ok;
  }
  IntersectionTable t = intersection_table(fan);
  std::size_t entries = 0;
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t w = 0; w < walls.size(); ++w) {
      bool ok = t.values(r, wall_named(fan, walls[w])) == q(table[r][w]);
      check(ok, "D" + std::to_string(r) + ".V(tau_" + walls[w] + ")");
      entries += ok;
    }
  auto s = constrained_stress_space(fw, fan, t);
  check(s.dim() == 1 && same_span(s.coordinates, {rv({-6, 3, 2})}, 3), "constrained space");
  double secs = seconds_since(t0);
  check(secs < 1.0, "runtime");
  std::ostringstream d;
  d << matched << "/20 multiplicities, " << entries << "/72 intersection numbers, dim " << s.dim() << ", "
    << secs << " s";
  if (o.pass) o.detail = d.str();
  else o.detail += " (" + d.str() + ")";
  return o;
}

// Alternative triangulation with 15 and 45 as added edges.
Triangulation alternative_triangulation(const PlanarFramework& fw) {
  Triangulation t;
  t.triangles = {{0, 1, 4}, {0, 3, 5}, {0, 4, 5}, {1, 2, 4}, {2, 3, 4}, {3, 4, 5}};
  t.hull_cycle = {2, 3, 0, 1};
  std::set<std::array<std::size_t, 2>> edges;
  for (const auto& tri : t.triangles) {
    edges.insert({tri[0], tri[1]});
    edges.insert({tri[0], tri[2]});
    edges.insert({tri[1], tri[2]});
  }
  t.edges.assign(edges.begin(), edges.end());
  std::set<std::array<std::size_t, 2>> framework;
  for (auto e : fw.edge_indices()) {
    std::sort(e.begin(), e.end());
    framework.insert(e);
  }
  for (const auto& e : t.edges)
    if (!framework.count(e)) t.added_edges.push_back(e);
  return t;
}

Outcome ac2() {
  Outcome o;
  Check check{&o};
  auto t0 = Clock::now();
  auto fw = load_document(FIXTURE_DIR "/example_3_5b.json").as_planar();
  const RatVector expected = rv({-7, 3, 2, 0});
  std::size_t assistant_dim = 0;
  bool contains_expected = true, tau15_nonzero = false;

  for (int variant = 0; variant < 2; ++variant) {
    std::string tag = variant == 0 ? "computed triangulation: " : "alternative triangulation: ";
    Triangulation tri = variant == 0 ? triangulate(fw) : alternative_triangulation(fw);
    if (variant == 1)
      check(tri.added_edges == std::vector<std::array<std::size_t, 2>>{{0, 4}, {3, 4}}, tag + "added edges");
    Fan fan = build_fan(fw, tri, assistant_ray(lift(fw)));
    IntersectionTable t = intersection_table(fan);
    DivisorBasis basis = divisor_basis(fan);
    check(basis.basis == std::vector<std::size_t>{0, 1, 2, 3}, tag + "divisor basis");
    auto assistant_only = vanishing_divisor_space(fan, t, basis, {WallKind::Assistant});
    assistant_dim = assistant_only.size();
    contains_expected &= in_span(expected, assistant_only);
    check(vanishing_divisor_space(fan, t, basis, {WallKind::Assistant, WallKind::Added}).empty(),
          tag + "added walls leave a solution");
    check(constrained_stress_space(fw, fan, t).dim() == 0, tag + "constrained dimension");
    if (variant == 1) {
      Divisor d{RatVector(fan.rays.size())};
      for (std::size_t i = 0; i < 4; ++i) d.coeffs[i] = expected[i];
      tau15_nonzero = weight_of(d, t).values[wall_named(fan, "15")] != 0;
    }
  }
  check(contains_expected, "-7D0+3D1+2D2 does not solve the assistant-wall system");
  check(tau15_nonzero, "D.V(tau_15) vanishes on -7D0+3D1+2D2");
  // the curves V(tau_0j) lie on the surface of ray 0, whose Picard rank is 4 - 2
  check(assistant_dim == 1, "assistant-wall solve has dimension " + std::to_string(assistant_dim) +
                                ", not the single ray lambda(-7D0+3D1+2D2); that ray lies inside it, D.V(tau_15) "
                                "is nonzero on it, and added walls reduce the space to 0");
  double secs = seconds_since(t0);
  check(secs < 1.0, "runtime");
  if (o.pass) {
    std::ostringstream d;
    d << "assistant-only solution span(-7D0+3D1+2D2); dim 0 under both triangulations; " << secs << " s";
    o.detail = d.str();
  }
  return o;
}

Outcome ac3() {
  Outcome o;
  Check check{&o};
  auto t0 = Clock::now();
  auto corpus = corpus::random_planar(60);
  std::size_t agreed = 0, runs = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::size_t dims[2];
    int k = 0;
    for (auto order : {TriangulationOrder::Lex, TriangulationOrder::RevLex}) {
      Fan fan = build_fan(corpus[i], order);
      RouteComparison cmp = compare_routes(corpus[i], fan);
      ++runs;
      agreed += cmp.agree;
      check(cmp.agree, "framework " + std::to_string(i) + " routes disagree");
      dims[k++] = cmp.dim_toric;
    }
    check(dims[0] == dims[1], "framework " + std::to_string(i) + " dimension depends on triangulation");
  }
  double secs = seconds_since(t0);
  check(secs < 30.0, "runtime");
  if (o.pass) {
    std::ostringstream d;
    d << agreed << "/" << runs << " route comparisons agree over " << corpus.size() << " frameworks, " << secs
      << " s";
    o.detail = d.str();
  }
  return o;
}

std::vector<PlanarFramework> fixtures_and_corpus() {
  auto all = planar_fixtures();
  for (auto& fw : corpus::random_planar(60)) all.push_back(std::move(fw));
  return all;
}

Outcome ac4() {
  Outcome o;
  Check check{&o};
  std::size_t weights = 0, fans = 0;
  for (const auto& fw : fixtures_and_corpus())
    for (auto order : {TriangulationOrder::Lex, TriangulationOrder::RevLex}) {
      Fan fan = build_fan(fw, order);
      ++fans;
      auto s = constrained_stress_space(fw, fan);
      for (const auto& w : s.weights) {
        ++weights;
        check(check_minkowski(w, fan).ok(), "unbalanced weight");
      }
    }
  if (o.pass) o.detail = std::to_string(weights) + " weights balanced at every ray of " + std::to_string(fans) + " fans";
  return o;
}

Outcome ac5() {
  Outcome o;
  Check check{&o};
  std::size_t values = 0;
  for (const auto& fw : fixtures_and_corpus())
    for (auto order : {TriangulationOrder::Lex, TriangulationOrder::RevLex}) {
      Fan fan = build_fan(fw, order);
      for (std::size_t w = 0; w < fan.walls.size(); ++w)
        for (auto r : fan.walls[w].cone.rays) {
          ++values;
          check(intersect_from_side(fan, r, w, 0) == intersect_from_side(fan, r, w, 1),
                "wall " + fan.walls[w].name + " ray " + std::to_string(r));
        }
    }
  if (o.pass) o.detail = std::to_string(values) + " wall-ray values identical from both sides";
  return o;
}

RatVector cross(const RatVector& a, const RatVector& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Balancing for lines in space: sum_f w_f n_f lies on the edge line, i.e.
// d x sum_f w_f n_f = 0, where n_f is the face direction transverse to the
// edge divided by the index of Zd + Zu in the face lattice.
std::vector<RatVector> line_framework_rows(const KFramework& fw) {
  std::vector<RatVector> rows;
  for (const auto& e : fw.edges) {
    const IntVector& d = e.dirs.at(0);
    std::vector<std::pair<std::size_t, RatVector>> terms;
    for (const auto& inc : fw.incidences) {
      if (inc.edge != e.id) continue;
      std::size_t f = *fw.face_index(inc.face);
      const auto& face = fw.faces[f];
      IntVector u;
      for (const auto& dir : face.dirs)
        if (cross(to_rat(dir), to_rat(d)) != RatVector(3)) u = dir;
      IntMatrix du = IntMatrix::from_rows({d, u});
      Int g = oracle::gcd_of_maximal_minors(du);
      RatVector n(3);
      for (int i = 0; i < 3; ++i) n[i] = make_rat(u[i], g);
      RatVector side(3);
      for (int i = 0; i < 3; ++i) side[i] = (*inc.sample)[i] - e.point[i];
      if (dot(cross(to_rat(d), n), cross(to_rat(d), side)) < 0)
        for (auto& x : n) x = -x;
      terms.emplace_back(f, cross(to_rat(d), n));
    }
    if (terms.empty()) continue;
    for (int c = 0; c < 3; ++c) {
      RatVector row(fw.faces.size());
      for (const auto& [f, v] : terms) row[f] += v[c];
      rows.push_back(row);
    }
  }
  return rows;
}

Outcome ac6() {
  Outcome o;
  Check check{&o};
  auto t0 = Clock::now();
  auto fw = load_document(FIXTURE_DIR "/example_2_2.json").as_general();
  auto rows = line_framework_rows(fw);
  auto kernel = canonical_span_basis(oracle::nullspace(rows, fw.faces.size()), fw.faces.size());
  const RatVector expected = rv({2, 1, 1, 1, 1, 1, 1, 1, 1});
  check(oracle::rank(rows, fw.faces.size()) == 8, "oracle system rank");
  check(kernel == std::vector<RatVector>{expected}, "oracle kernel");
  StressBasis a = self_stress_basis(fw);
  check(a.vectors == std::vector<RatVector>{expected}, "direct route");
  StressBasis g = glued_stress_space(fw);
  check(g.vectors == std::vector<RatVector>{expected}, "glued local fans");
  check(local_balance_check(fw, g).ok(), "local balancing");
  double secs = seconds_since(t0);
  check(secs < 1.0, "runtime");
  if (o.pass) {
    std::ostringstream d;
    d << "oracle, direct and glued all give span(2,1,...,1) on f0..f8, " << secs << " s";
    o.detail = d.str();
  }
  return o;
}

IntMatrix random_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(1, 4), entry(-6, 6);
  std::size_t r = size(rng), c = size(rng);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(rng);
  return m;
}

Outcome ac7() {
  Outcome o;
  Check check{&o};
  std::mt19937_64 rng(corpus::kSeed);
  std::size_t matrices = 0;
  for (; matrices < 1200; ++matrices) {
    IntMatrix m = random_matrix(rng);
    auto divs = elementary_divisors(m);
    for (std::size_t i = 1; i < divs.size(); ++i) check(divs[i] % divs[i - 1] == 0, "divisibility chain");
    Int prod = 1;
    for (const auto& x : divs) prod *= x;
    if (divs.size() == std::min(m.rows(), m.cols())) {
      IntMatrix wide = m.rows() <= m.cols() ? m : m.transpose();
      check(prod == oracle::gcd_of_maximal_minors(wide), "invariant product vs minors");
    }
    IntMatrix k = integer_kernel(m);
    check(k.rows() + rank(m) == m.cols(), "kernel dimension");
    for (std::size_t i = 0; i < k.rows(); ++i)
      for (std::size_t r = 0; r < m.rows(); ++r) check(dot(m.row(r), k.row(i)) == 0, "kernel re-substitution");
    if (k.rows() > 0) check(lattice_index(k) == 1, "kernel saturated");
    if (m.rows() == m.cols() && rank(m) == m.rows()) {
      Int det = abs(oracle::det(m));
      check(det == abs(determinant(m)), "determinant");
      Int index = 1;
      for (const auto& x : divs) index *= x;
      check(index == det, "index vs determinant");
    }
  }
  std::size_t fans = 0, samples = 0;
  auto dirs = sample_directions(1000);
  for (const auto& fw : fixtures_and_corpus()) {
    Fan fan = build_fan(fw);
    auto c = sample_completeness(fan, dirs);
    ++fans;
    samples += c.samples;
    check(c.ok() && c.samples == 1000, "completeness");
  }
  if (o.pass) {
    std::ostringstream d;
    d << matrices << " random matrices; " << fans << " fans complete on " << samples << " sampled directions";
    o.detail = d.str();
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5}, {"AC6", ac6}, {"AC7", ac7}};
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << name << " " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
