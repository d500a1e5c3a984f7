#include "corpus.hpp"

#include <algorithm>
#include <random>

namespace corpus {

using namespace tensegrity;

PlanarFramework planar(const std::vector<std::pair<long, long>>& points,
                       const std::vector<std::pair<int, int>>& edges) {
  PlanarFramework fw;
  for (std::size_t i = 0; i < points.size(); ++i)
    fw.vertices.push_back({"p" + std::to_string(i + 1), {Int(points[i].first), Int(points[i].second)}});
  for (auto [a, b] : edges) fw.edges.emplace_back("p" + std::to_string(a), "p" + std::to_string(b));
  return fw;
}

PlanarFramework example_a() {
  return planar({{1, 2}, {-1, 1}, {-1, -1}, {2, -1}, {0, 0}},
                {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}, {2, 5}, {3, 5}, {4, 5}});
}

PlanarFramework example_b() {
  return planar({{2, 2}, {-1, 1}, {-1, -1}, {2, -1}, {0, 0}, {1, 0}},
                {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {5, 6}, {5, 3}, {5, 2}, {6, 1}, {6, 4}});
}

PlanarFramework wheel3() {
  return planar({{0, 0}, {4, 0}, {0, 4}, {1, 1}}, {{1, 2}, {2, 3}, {3, 1}, {1, 4}, {2, 4}, {3, 4}});
}

std::vector<PlanarFramework> random_planar(std::size_t count, std::size_t max_vertices, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-5, 5);
  std::uniform_int_distribution<std::size_t> size(3, max_vertices);
  std::vector<PlanarFramework> out;
  while (out.size() < count) {
    std::size_t n = size(rng);
    std::vector<Point2> pts;
    while (pts.size() < n) {
      Point2 p{Int(coord(rng)), Int(coord(rng))};
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    bool collinear = true;
    for (std::size_t i = 2; i < n && collinear; ++i)
      if (orient(pts[0], pts[1], pts[i]) != 0) collinear = false;
    if (collinear) continue;

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::bernoulli_distribution keep(0.7);
    std::vector<std::pair<std::size_t, std::size_t>> chosen;
    for (auto [i, j] : pairs) {
      if (!keep(rng)) continue;
      bool ok = true;
      for (std::size_t k = 0; k < n && ok; ++k)
        if (k != i && k != j && on_open_segment(pts[k], pts[i], pts[j])) ok = false;
      for (auto [a, b] : chosen)
        if (ok && segments_conflict(pts[i], pts[j], pts[a], pts[b])) ok = false;
      if (ok) chosen.emplace_back(i, j);
    }
    PlanarFramework fw;
    for (std::size_t i = 0; i < n; ++i) fw.vertices.push_back({"v" + std::to_string(i), pts[i]});
    for (auto [a, b] : chosen) fw.edges.emplace_back("v" + std::to_string(a), "v" + std::to_string(b));
    out.push_back(std::move(fw));
  }
  return out;
}

}  // namespace corpus
