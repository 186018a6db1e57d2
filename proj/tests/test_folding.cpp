#include <doctest.h>

#include <set>
#include <sstream>

#include "feuilletage/folding.hpp"

using namespace feuilletage;

namespace {
ContourPath C(Walk w) { return ContourPath{std::move(w)}; }
LabelProcess L(Walk w) { return LabelProcess{std::move(w)}; }
HeightProcess H(Walk w) { return HeightProcess{std::move(w)}; }
}  // namespace

TEST_CASE("conjugate examples") {
  auto c = conjugate(L({0, 1}));
  CHECK(c.offset.value == 0);
  CHECK(c.height == H({0, 1, 2}));
  c = conjugate(L({0, -1}));
  CHECK(c.offset.value == 1);
  CHECK(c.height == H({0, 1, 2}));
  c = conjugate(L({0, 0, 0, 0}));
  CHECK(c.offset.value == 0);
  CHECK(c.height == H({0, 1, 1, 1, 1}));
  // first minimum wins
  c = conjugate(L({0, -1, 0, -1}));
  CHECK(c.offset.value == 1);
  CHECK(c.height == H({0, 1, 2, 1, 2}));
}

TEST_CASE("conjugation doubles the edge count and yields a valid tree") {
  auto s = derive_stream(MasterSeed{8}, 0, "conj");
  for (int i = 0; i < 200; ++i) {
    const auto tree = sample_dyck(1 + i % 40, s);
    const auto conj = conjugate(sample_labels(tree, s));
    REQUIRE_FALSE(validate(conj.height).has_value());
    REQUIRE(conj.height.edges() == 2 * tree.edges());
  }
}

TEST_CASE("node representatives") {
  CHECK(node_representatives(C({0, 1, 0})).rep == std::vector<std::int64_t>{0, 1, 0});
  CHECK(node_representatives(C({0, 1, 2, 1, 0})).rep == std::vector<std::int64_t>{0, 1, 2, 1, 0});
  CHECK(node_representatives(C({0, 1, 0, 1, 0})).rep == std::vector<std::int64_t>{0, 1, 0, 3, 0});
}

TEST_CASE("preorder index from first visit") {
  const auto c = C({0, 1, 2, 1, 2, 1, 0, 1, 0});
  const auto rep = node_representatives(c);
  std::set<std::int64_t> ids;
  for (auto r : rep.rep) ids.insert(preorder_at(c, r));
  CHECK(ids == std::set<std::int64_t>{0, 1, 2, 3, 4});
  CHECK(preorder_at(c, 7) == 4);
}

TEST_CASE("compose identifications, D = 2, n = 1, labels (0, 1)") {
  std::vector<LabelProcess> labels{L({0, 1})};
  FoldingTrace trace;
  const auto r = fold_trees(
      2, C({0, 1, 0}), [&](int level, const ContourPath&) { return labels.at(static_cast<std::size_t>(level - 1)); },
      &trace);
  CHECK(r.height == H({0, 1, 2}));
  // non-root vertices sit on corners 0 (root of T1) and 1 (child); fresh root gets id n + 1 = 2
  CHECK(r.classes.classes == std::vector<ClassId>{2, 0, 1});
  CHECK(class_count(r) == 3);
  CHECK(r.offsets == std::vector<std::int64_t>{0});
  REQUIRE(trace.levels.size() == 2);
  CHECK(trace.levels[1].contour == C({0, 1, 2, 1, 0}));
}

TEST_CASE("D = 2, n = 1, every label choice gives 3 classes") {
  for (int delta : {-1, 0, 1}) {
    const auto r = fold_trees(2, C({0, 1, 0}), [&](int, const ContourPath&) { return L({0, delta}); });
    CHECK(class_count(r) == 3);
  }
}

TEST_CASE("D = 1 is the identity") {
  auto s = derive_stream(MasterSeed{1}, 0, "fold");
  for (std::int64_t n : {1, 5, 77}) {
    const auto r = build_feuilletage(1, n, s);
    CHECK(class_count(r) == n + 1);
    CHECK(r.edges() == n);
    for (std::size_t v = 0; v < r.classes.classes.size(); ++v) CHECK(r.classes.classes[v] == static_cast<ClassId>(v));
  }
}

TEST_CASE("class count is n + D and T^(D) has 2^(D-1) n edges") {
  auto s = derive_stream(MasterSeed{2}, 0, "fold");
  for (int depth : {2, 3})
    for (std::int64_t n = 1; n <= 8; ++n)
      for (int seed = 0; seed < 500; ++seed) {
        const auto r = build_feuilletage(depth, n, s);
        REQUIRE(class_count(r) == n + depth);
        REQUIRE(r.edges() == (n << (depth - 1)));
        REQUIRE(r.first_level_corners.size() == static_cast<std::size_t>(2 * n));
      }
}

TEST_CASE("class_count examples") {
  auto s = derive_stream(MasterSeed{3}, 0, "fold");
  CHECK(class_count(build_feuilletage(1, 5, s)) == 6);
  CHECK(class_count(build_feuilletage(2, 100, s)) == 102);
  CHECK(class_count(build_feuilletage(3, 1 << 16, s)) == (1 << 16) + 3);
}

TEST_CASE("first-level corners map to level-1 classes") {
  auto s = derive_stream(MasterSeed{4}, 0, "fold");
  const auto r = build_feuilletage(3, 50, s);
  std::set<ClassId> seen(r.first_level_corners.begin(), r.first_level_corners.end());
  CHECK(seen.size() == 51);
  CHECK(*seen.begin() == 0);
  CHECK(*seen.rbegin() == 50);
}

TEST_CASE("dump records seed and offsets") {
  auto s = derive_stream(MasterSeed{5}, 0, "fold");
  const auto r = build_feuilletage(3, 4, s);
  std::ostringstream out;
  write_dump(out, r, 5);
  CHECK(out.str().find("seed=5") != std::string::npos);
  CHECK(out.str().find("a[2]=") != std::string::npos);
}
