#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "feuilletage/report.hpp"

using namespace feuilletage;
namespace fs = std::filesystem;

namespace {

// gamma(4, 100) density, mode 300
double shape(double x) { return x <= 0.0 ? 0.0 : std::pow(x / 100.0, 3) * std::exp(-x / 100.0) / 600.0; }

DistanceHistogram synthetic(const HistogramMeta& meta, double k) {
  DistanceHistogram h;
  h.meta = meta;
  for (int y = 0; y < 3000; ++y) h.counts.push_back(static_cast<std::uint64_t>(std::llround(1e12 * k * shape(k * y))));
  return h;
}

// Histograms whose exact collapse factors are k_n = (n / n0)^(-1/4).
fs::path synthetic_campaign(const std::string& name, std::int64_t batches) {
  const auto dir = fs::temp_directory_path() / ("feuilletage_report_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::int64_t n0 = std::int64_t{1} << 21;
  for (int e = 11; e <= 21; ++e)
    for (std::int64_t b = 0; b < batches; ++b) {
      HistogramMeta m;
      m.depth = 2;
      m.n = std::int64_t{1} << e;
      m.seed = 3;
      m.maps = 1;
      m.roots = 1;
      m.batch = b;
      const double k = std::pow(static_cast<double>(m.n) / static_cast<double>(n0), -0.25);
      std::ofstream out(dir / histogram_filename(m));
      write_histogram(out, synthetic(m, k));
    }
  return dir;
}

}  // namespace

TEST_CASE("synthetic family gives d_H = 4 with zero spread") {
  const auto dir = synthetic_campaign("exact", 3);
  const auto set = load_histograms(dir);
  CHECK(set.sizes().size() == 11);
  CHECK(set.batches().size() == 3);
  const auto report = fit_campaign(set, {std::int64_t{1} << 21}, {0.5});
  REQUIRE(report.rows.size() == 1);
  CHECK(std::abs(report.rows[0].estimate.mean - 4.0) < 5e-4);
  CHECK(*report.rows[0].estimate.std < 5e-4);

  std::stringstream io;
  write_fit_report(io, report);
  CHECK(io.str().find("# format_version=1") != std::string::npos);
  const auto rows = read_fit_summary(io);
  REQUIRE(rows.size() == 1);
  const auto table = format_table(rows);
  CHECK(table.find("2^21 = 2097152") != std::string::npos);
  CHECK(table.find("4.000") != std::string::npos);
  CHECK(table.find("+- 0") != std::string::npos);

  std::ostringstream plot;
  write_plot_data(plot, report.rows[0].batches[0], std::int64_t{1} << 21);
  std::istringstream lines(plot.str());
  std::string header, line;
  std::getline(lines, header);
  int count = 0;
  while (std::getline(lines, line)) {
    double x, y, model;
    std::istringstream(line) >> x >> y >> model;
    CHECK(std::abs(y - model) < 1e-3);
    ++count;
  }
  CHECK(count == 11);
  fs::remove_all(dir);
}

TEST_CASE("three n0 by three deciles gives nine rows") {
  const auto dir = synthetic_campaign("grid", 2);
  const auto set = load_histograms(dir);
  const auto report =
      fit_campaign(set, {std::int64_t{1} << 19, std::int64_t{1} << 20, std::int64_t{1} << 21}, {0.75, 0.5, 0.25});
  std::stringstream io;
  write_fit_report(io, report);
  const auto rows = read_fit_summary(io);
  CHECK(rows.size() == 9);
  for (const auto& r : rows) CHECK(std::abs(r.d_h - 4.0) < 2e-2);
  fs::remove_all(dir);
}

TEST_CASE("missing histograms are listed") {
  const auto dir = synthetic_campaign("missing", 2);
  fs::remove(dir / "hist_D2_feuilletage_n8192_b1.txt");
  const auto set = load_histograms(dir);
  try {
    fit_campaign(set, {std::int64_t{1} << 21}, {0.5});
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("n=8192 batch=1") != std::string::npos);
  }
  CHECK_THROWS(fit_campaign(set, {12345}, {0.5}));
  fs::remove_all(dir);
}

TEST_CASE("single summary row") {
  std::istringstream in("# D=2\n# mode=tree\nsummary,131072,0.75,4.1,0.05,4\n");
  const auto rows = read_fit_summary(in);
  REQUIRE(rows.size() == 1);
  const auto table = format_table(rows);
  CHECK(table.find("T^2") != std::string::npos);
  CHECK(std::count(table.begin(), table.end(), '\n') == 3);
}

TEST_CASE("grouped median") {
  DistanceHistogram h;
  h.counts = {0, 0, 4};
  CHECK(grouped_median(h) == doctest::Approx(2.0));
  h.counts = {0, 2, 2};
  CHECK(grouped_median(h) == doctest::Approx(1.5));
}

TEST_CASE("diameter summary at D = 3 uses n^(1/8)") {
  HistogramSet set;
  set.campaign.depth = 3;
  set.campaign.mode = MeasureMode::tree;
  for (std::int64_t n : {4096, 16384}) {
    DistanceHistogram h;
    h.meta.depth = 3;
    h.meta.n = n;
    h.meta.mode = MeasureMode::tree;
    const auto median = static_cast<std::size_t>(std::lround(std::pow(static_cast<double>(n), 0.125) * 1000));
    h.counts.assign(median + 1, 0);
    h.counts[median] = 10;
    set.diameters[{n, 0}] = h;
  }
  const auto rows = diameter_summary(set);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].expected == doctest::Approx(std::pow(4.0, 0.125)));
  CHECK(std::abs(rows[1].ratio - rows[1].expected) < 0.02);
  CHECK(format_diameter_table(rows, 3).find("n^(1/8)") != std::string::npos);
}
