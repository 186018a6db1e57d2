#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "feuilletage/histograms.hpp"

using namespace feuilletage;

namespace {
DistanceProfile profile(std::vector<std::int32_t> d) {
  DistanceProfile p;
  p.max_distance = *std::max_element(d.begin(), d.end());
  p.dist = std::move(d);
  return p;
}
using Counts = std::vector<std::uint64_t>;
}  // namespace

TEST_CASE("accumulate") {
  DistanceHistogram h;
  accumulate(h, profile({0, 1, 2}));
  CHECK(h.counts == Counts{1, 1, 1});
  accumulate(h, profile({0, 1, 2}));
  CHECK(h.counts == Counts{2, 2, 2});
  accumulate_value(h, 5);
  CHECK(h.counts == Counts{2, 2, 2, 0, 0, 1});
}

TEST_CASE("accumulating one instance many times counts classes") {
  auto s = derive_stream(MasterSeed{1}, 0, "hist");
  const auto r = build_feuilletage(2, 8, s);
  DistanceHistogram h;
  for (int i = 0; i < 10'000; ++i) accumulate(h, distances_from(r, sample_root(r, s, RootSamplingMode::corner_uniform)));
  CHECK(h.total() == 10'000u * 10u);
}

TEST_CASE("merge") {
  DistanceHistogram a, b, empty;
  a.counts = {1, 2, 3};
  b.counts = {0, 5};
  CHECK(merge(a, empty) == a);
  CHECK(merge(a, b).counts == Counts{1, 7, 3});
  CHECK(merge(a, b).counts == merge(b, a).counts);
  b.meta.depth = 3;
  CHECK_THROWS(merge(a, b));
}

TEST_CASE("partitioned accumulation equals sequential") {
  auto s = derive_stream(MasterSeed{2}, 0, "hist");
  std::vector<DistanceProfile> profiles;
  for (int i = 0; i < 64; ++i) {
    const auto r = build_feuilletage(2, 100, s);
    profiles.push_back(distances_from(r, sample_root(r, s, RootSamplingMode::corner_uniform)));
  }
  DistanceHistogram sequential;
  for (const auto& p : profiles) accumulate(sequential, p);
  std::vector<DistanceHistogram> parts(8);
  for (std::size_t i = 0; i < profiles.size(); ++i) accumulate(parts[i % 8], profiles[i]);
  DistanceHistogram merged;
  for (const auto& p : parts) merged = merge(merged, p);
  CHECK(merged == sequential);
}

TEST_CASE("normalize") {
  DistanceHistogram h;
  h.counts = {1, 1, 2};
  const auto rho = normalize(h);
  CHECK(rho.values == std::vector<double>{0.25, 0.25, 0.5});
  CHECK(rho.at(-1) == 0.0);
  CHECK(rho.at(3) == 0.0);
  h.counts = {3, 17, 101, 7, 1, 0, 13};
  const auto r2 = normalize(h);
  CHECK(std::abs(std::accumulate(r2.values.begin(), r2.values.end(), 0.0) - 1.0) < 1e-12);
  CHECK_THROWS(normalize(DistanceHistogram{}));
}

TEST_CASE("file round trip") {
  DistanceHistogram h;
  h.meta = {3, 4096, MeasureMode::tree, RootSamplingMode::class_uniform, 99, 100, 10, 2};
  h.counts = {5, 0, 7, 9};
  std::stringstream io;
  write_histogram(io, h, "distance");
  const auto text = io.str();
  CHECK(text.find("# format_version=1") != std::string::npos);
  CHECK(text.find("# seed=99") != std::string::npos);
  CHECK(text.find("1,0") == std::string::npos);  // zero bins are omitted
  const auto back = read_histogram(io);
  CHECK(back.histogram == h);
  CHECK(back.quantity == "distance");
}

TEST_CASE("reader rejects a wrong total") {
  std::istringstream in(
      "# D=2\n# n=1\n# mode=feuilletage\n# root_mode=corner\n# seed=1\n# maps=1\n# roots=1\n# batch=0\n"
      "# format_version=1\n0,1\n1,2\n# total=4\n");
  CHECK_THROWS(read_histogram(in));
}

TEST_CASE("filenames") {
  HistogramMeta m;
  m.depth = 2;
  m.n = 2048;
  m.mode = MeasureMode::tree;
  m.batch = 1;
  CHECK(histogram_filename(m) == "hist_D2_tree_n2048_b1.txt");
  CHECK(diameter_filename(m) == "diam_D2_tree_n2048_b1.txt");
}
