#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "feuilletage/histograms.hpp"
#include "feuilletage/scaling.hpp"

namespace feuilletage {

/// Histograms of one campaign keyed by (n, batch).
struct HistogramSet {
  HistogramMeta campaign;  // n = 0, batch = kMergedBatch
  std::map<std::pair<std::int64_t, std::int64_t>, DistanceHistogram> distances;
  std::map<std::pair<std::int64_t, std::int64_t>, DistanceHistogram> diameters;

  std::vector<std::int64_t> sizes() const;
  std::vector<std::int64_t> batches() const;
};

/// Reads every hist_*.txt / diam_*.txt in `dir`. Throws std::runtime_error if
/// the files belong to different campaigns.
HistogramSet load_histograms(const std::filesystem::path& dir);

struct BatchFit {
  std::int64_t batch = 0;
  Collapse collapse;
  DHFit dh;
};

struct FitRow {
  std::int64_t n0 = 0;
  double decile = 0.0;
  std::vector<BatchFit> batches;
  BatchEstimate estimate;
};

struct FitReport {
  HistogramMeta campaign;
  std::int64_t batch_count = 0;
  std::vector<FitRow> rows;
};

/// For every (n0, decile): per batch, collapse all n < n0 onto the n0 density
/// inside the decile window, fit d_H, then average over batches. Independent
/// (n0, decile, batch) tasks run in parallel.
/// Throws std::runtime_error listing missing (n, batch) histograms.
FitReport fit_campaign(const HistogramSet& set, const std::vector<std::int64_t>& references,
                       const std::vector<double>& deciles);

/// Machine-readable report. Lines: `# key=value` header, then CSV records
/// whose first field names the record type (batch_fit, k, summary).
void write_fit_report(std::ostream& out, const FitReport& report);

struct SummaryRow {
  int depth = 0;
  std::string mode;
  std::int64_t n0 = 0;
  double decile = 0.0;
  double d_h = 0.0;
  double std = 0.0;  // NaN when unavailable
  std::int64_t batches = 0;
};

/// Summary rows of a written fit report.
std::vector<SummaryRow> read_fit_summary(std::istream& in);

/// `n0 | decile | d_H +- std` table in the layout of the published tables.
std::string format_table(const std::vector<SummaryRow>& rows);

/// Columns: log(n/n0) log(k_n) log(model).
void write_plot_data(std::ostream& out, const BatchFit& fit, std::int64_t n0);
void write_plot_files(const std::filesystem::path& dir, const FitReport& report);

struct DiameterRow {
  std::int64_t n = 0;
  double median = 0.0;
  double ratio = 0.0;     // median(n) / median(previous n), 0 for the first row
  double expected = 0.0;  // (n / previous n)^(1/2^D)
  double trend = 0.0;     // median / n^(1/2^D)
};

/// Interpolated median of integer-valued observations (bins [v-1/2, v+1/2)).
double grouped_median(const DistanceHistogram& h);

std::vector<DiameterRow> diameter_summary(const HistogramSet& set);
std::string format_diameter_table(const std::vector<DiameterRow>& rows, int depth);

}  // namespace feuilletage
