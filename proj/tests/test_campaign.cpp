#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "feuilletage/campaign.hpp"

using namespace feuilletage;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("feuilletage_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

CampaignConfig small(const std::string& name) {
  CampaignConfig c;
  c.depth = 2;
  c.sizes = {2048};
  c.maps = 100;
  c.roots = 10;
  c.batches = 2;
  c.seed = 7;
  c.output_dir = scratch(name);
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  CampaignConfig c;
  CHECK(validate(c).has_value());  // no sizes
  c.sizes = {1024, 2048};
  CHECK_FALSE(validate(c).has_value());
  c.references = {4096};
  CHECK(validate(c).has_value());
  c.references = {2048};
  c.batches = 0;
  CHECK(validate(c).has_value());
  c.batches = 1;
  c.sizes = {0};
  c.references = {};
  CHECK(validate(c).has_value());
}

TEST_CASE("campaign output is reproducible byte for byte") {
  auto a = small("repro_a");
  auto b = small("repro_b");
  run_campaign(a);
  run_campaign(b);
  for (const auto& entry : fs::directory_iterator(a.output_dir))
    CHECK(slurp(entry.path()) == slurp(b.output_dir / entry.path().filename()));
  const auto h0 = read_histogram(a.output_dir / "hist_D2_feuilletage_n2048_b0.txt").histogram;
  const auto h1 = read_histogram(a.output_dir / "hist_D2_feuilletage_n2048_b1.txt").histogram;
  CHECK(h0.counts != h1.counts);
  CHECK(h0.total() == 100u * 10u * 2050u);
  fs::remove_all(a.output_dir);
  fs::remove_all(b.output_dir);
}

TEST_CASE("parallel and serial batches agree for any worker count") {
  auto c = small("workers");
  c.sizes = {500};
  c.maps = 37;
  const auto serial = run_batch_serial(c, 500, 1);
  for (int workers : {1, 3, 4, 16}) {
    const auto parallel = run_batch(c, 500, 1, workers);
    CHECK(parallel.distances == serial.distances);
    CHECK(parallel.diameters == serial.diameters);
    CHECK(parallel.completed == 37);
  }
}

TEST_CASE("file contract and resume") {
  auto c = small("contract");
  c.mode = MeasureMode::tree;
  c.sizes = {2048, 4096, 8192};
  c.maps = 30;
  c.seed = 1;
  auto first = run_campaign(c);
  CHECK(first.written == 6);
  int hist_files = 0;
  for (const auto& entry : fs::directory_iterator(c.output_dir))
    if (entry.path().filename().string().starts_with("hist_")) ++hist_files;
  CHECK(hist_files == 6);
  for (std::int64_t n : c.sizes) {
    const auto f = read_histogram(c.output_dir / ("hist_D2_tree_n" + std::to_string(n) + "_b0.txt")).histogram;
    CHECK(f.meta == batch_meta(c, n, 0));
    // T^(2) has 2n edges, so 2n + 1 vertices
    CHECK(f.total() == static_cast<std::uint64_t>(30 * 10 * (2 * n + 1)));
  }
  const auto before = slurp(c.output_dir / "hist_D2_tree_n4096_b1.txt");
  auto second = run_campaign(c);
  CHECK(second.written == 0);
  CHECK(second.skipped == 6);
  CHECK(slurp(c.output_dir / "hist_D2_tree_n4096_b1.txt") == before);

  // a truncated file is recomputed
  { std::ofstream(c.output_dir / "hist_D2_tree_n4096_b1.txt") << "# D=2\n"; }
  auto third = run_campaign(c);
  CHECK(third.written == 1);
  CHECK(slurp(c.output_dir / "hist_D2_tree_n4096_b1.txt") == before);
  fs::remove_all(c.output_dir);
}

TEST_CASE("counting identity at D = 3") {
  auto c = small("d3");
  c.depth = 3;
  c.sizes = {4096};
  c.batches = 1;
  const auto r = run_batch(c, 4096, 0);
  CHECK(r.distances.total() == 100u * 10u * (4096u + 3u));
  CHECK(r.diameters.total() == 100u * 10u);
}
