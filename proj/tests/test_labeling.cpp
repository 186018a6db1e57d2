#include <doctest.h>

#include <algorithm>
#include <cstdlib>

#include "feuilletage/labeling.hpp"

using namespace feuilletage;

namespace {
ContourPath C(Walk w) { return ContourPath{std::move(w)}; }
LabelProcess L(Walk w) { return LabelProcess{std::move(w)}; }
}  // namespace

TEST_CASE("labels from increments") {
  const std::int8_t up[] = {+1};
  CHECK(labels_from_increments(C({0, 1, 0}), up) == L({0, 1}));
  const std::int8_t zigzag[] = {+1, -1};
  CHECK(labels_from_increments(C({0, 1, 2, 1, 0}), zigzag) == L({0, 1, 0, 1}));
  const std::int8_t zeros[] = {0, 0, 0};
  CHECK(labels_from_increments(C({0, 1, 0, 1, 2, 1, 0}), zeros) == L({0, 0, 0, 0, 0, 0}));
  const std::int8_t bad[] = {2};
  CHECK_THROWS(labels_from_increments(C({0, 1, 0}), bad));
  CHECK_THROWS(labels_from_increments(C({0, 1, 0}), std::span<const std::int8_t>{}));
}

TEST_CASE("vertex labels") {
  CHECK(vertex_labels(C({0, 1, 0}), L({0, 1})) == std::vector<std::int32_t>{0, 1});
  CHECK(vertex_labels(C({0, 1, 2, 1, 0}), L({0, 1, 0, 1})) == std::vector<std::int32_t>{0, 1, 0});
  CHECK(vertex_labels(C({0, 1, 0, 1, 0}), L({0, 0, 0, 0})) == std::vector<std::int32_t>{0, 0, 0});
  // corners of the same vertex must agree
  CHECK_THROWS(vertex_labels(C({0, 1, 2, 1, 0}), L({0, 1, 0, 0})));
  CHECK_THROWS(vertex_labels(C({0, 1, 0}), L({0, 1, 0})));
}

TEST_CASE("sampled labels satisfy the invariants") {
  auto s = derive_stream(MasterSeed{3}, 0, "labels");
  for (std::int64_t n : {1, 2, 5, 64, 5000}) {
    const auto c = sample_dyck(n, s);
    const auto l = sample_labels(c, s);
    REQUIRE(l.corners() == 2 * n);
    REQUIRE_FALSE(validate(l).has_value());
    CHECK(l.values[0] == 0);
    CHECK(std::abs(l.values.front() - l.values.back()) <= 1);
    const auto v = vertex_labels(c, l);
    CHECK(v.size() == static_cast<std::size_t>(n + 1));
  }
}

TEST_CASE("increment distribution is uniform on {-1, 0, +1}") {
  auto s = derive_stream(MasterSeed{4}, 0, "labels");
  const auto c = sample_dyck(30'000, s);
  const auto l = sample_labels(c, s);
  std::array<int, 3> seen{};
  for (std::size_t i = 0; i + 1 < l.values.size(); ++i)
    if (c.values[i + 1] > c.values[i]) ++seen[static_cast<std::size_t>(l.values[i + 1] - l.values[i] + 1)];
  for (int k : seen) CHECK(std::abs(k - 10'000) < 3 * 82);  // sd = sqrt(30000 * 2/9)
}

TEST_CASE("validate catches jumps") {
  CHECK(validate(L({0, 2})).has_value());
  CHECK(validate(L({1, 0})).has_value());
  CHECK_FALSE(validate(L({0, -1, 0, 1})).has_value());
}
