#include <doctest.h>

#include <vector>

#include "feuilletage/metrics.hpp"
#include "feuilletage/oracle.hpp"
#include "stats.hpp"

using namespace feuilletage;

namespace {
HeightProcess H(Walk w) { return HeightProcess{std::move(w)}; }
using D = std::vector<std::int32_t>;
}  // namespace

TEST_CASE("tree distances") {
  CHECK(tree_distances(H({0, 1, 2}), 0).dist == D{0, 1, 2});
  const auto star = tree_distances(H({0, 1, 1, 1, 1}), 2);
  CHECK(star.dist == D{1, 2, 0, 2, 2});
  CHECK(diameter_proxy(star) == 2);
  CHECK(diameter_proxy(tree_distances(H({0, 1, 2}), 0)) == 2);
}

TEST_CASE("tree distances match Floyd-Warshall on a random tree") {
  auto s = derive_stream(MasterSeed{1}, 0, "metrics");
  const auto c = sample_dyck(64, s);
  const auto h = contour_to_height(c);
  const auto t = oracle::tree_from_contour(c);
  oracle::ExplicitGraph g{65, {}};
  for (std::int64_t v = 1; v <= 64; ++v) g.edges.emplace_back(t.parent[static_cast<std::size_t>(v)], v);
  const auto fw = oracle::all_pairs_distances(g);
  for (std::int64_t root = 0; root <= 64; ++root) {
    const auto p = tree_distances(h, root);
    for (std::int64_t v = 0; v <= 64; ++v) REQUIRE(p.dist[static_cast<std::size_t>(v)] == fw.at(root, v));
  }
}

TEST_CASE("quotient BFS equals Floyd-Warshall for D = 3, n = 32") {
  auto s = derive_stream(MasterSeed{2}, 0, "metrics");
  for (int seed = 0; seed < 100; ++seed) {
    const auto r = build_feuilletage(3, 32, s);
    const auto g = build_quotient_graph(r);
    REQUIRE(g.vertices == 35);
    oracle::ExplicitGraph eg{g.vertices, {}};
    for (std::int64_t v = 0; v < g.vertices; ++v)
      for (auto i = g.offsets[static_cast<std::size_t>(v)]; i < g.offsets[static_cast<std::size_t>(v) + 1]; ++i)
        eg.edges.emplace_back(v, g.neighbors[static_cast<std::size_t>(i)]);
    const auto fw = oracle::all_pairs_distances(eg);
    REQUIRE(fw.connected);
    const auto root = sample_root(r, s, RootSamplingMode::corner_uniform);
    const auto p = distances_from(r, root);
    for (std::int64_t v = 0; v < 35; ++v) REQUIRE(p.dist[static_cast<std::size_t>(v)] == fw.at(root, v));
  }
}

TEST_CASE("D = 2, n = 1 with labels (0, 1)") {
  // T^(2) is the path 2 - 0 - 1 after identification
  const auto r = fold_trees(2, ContourPath{{0, 1, 0}}, [](int, const ContourPath&) { return LabelProcess{{0, 1}}; });
  const auto g = build_quotient_graph(r);
  CHECK(g.vertices == 3);
  CHECK(g.half_edges() == 4);
  CHECK(distances_from(r, 2).dist == D{1, 2, 0});
  CHECK(distances_from(r, 0).dist == D{0, 1, 1});
  CHECK(distances_from(r, 1).dist == D{1, 0, 2});
}

TEST_CASE("corner-uniform root on a single edge") {
  auto s = derive_stream(MasterSeed{3}, 0, "roots");
  const auto r = build_feuilletage(1, 1, s);
  std::uint64_t at_root = 0;
  constexpr int kDraws = 100'000;
  for (int i = 0; i < kDraws; ++i) at_root += sample_root(r, s, RootSamplingMode::corner_uniform) == 0;
  CHECK(within_sigma(at_root, kDraws, 0.5));
}

TEST_CASE("corner-uniform root on a two-leaf star favours the centre") {
  auto s = derive_stream(MasterSeed{4}, 0, "roots");
  const auto g = build_tree_graph(H({0, 1, 1}));
  std::vector<std::uint64_t> counts(3);
  constexpr int kDraws = 100'000;
  for (int i = 0; i < kDraws; ++i) ++counts[static_cast<std::size_t>(sample_root(g, s, RootSamplingMode::corner_uniform))];
  CHECK(within_sigma(counts[0], kDraws, 0.5));
  CHECK(within_sigma(counts[1], kDraws, 0.25));
  CHECK(within_sigma(counts[2], kDraws, 0.25));
}

TEST_CASE("class-uniform root") {
  auto s = derive_stream(MasterSeed{5}, 0, "roots");
  const auto r = build_feuilletage(2, 5, s);
  std::vector<std::uint64_t> counts(7);
  constexpr int kDraws = 100'000;
  for (int i = 0; i < kDraws; ++i) ++counts[static_cast<std::size_t>(sample_root(r, s, RootSamplingMode::class_uniform))];
  for (auto c : counts) CHECK(within_sigma(c, kDraws, 1.0 / 7.0));
  CHECK(chi_square_uniform_p(counts) > 0.01);
}

TEST_CASE("root mode parsing") {
  CHECK(parse_root_mode("corner") == RootSamplingMode::corner_uniform);
  CHECK(parse_root_mode("class-uniform") == RootSamplingMode::class_uniform);
  CHECK(to_string(RootSamplingMode::class_uniform) == "class");
  CHECK_THROWS(parse_root_mode("vertex"));
}
