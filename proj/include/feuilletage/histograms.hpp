#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "feuilletage/metrics.hpp"

namespace feuilletage {

/// What the distances are measured on: the bare tree T^(D) or the feuilletage.
enum class MeasureMode { tree, feuilletage };

std::string_view to_string(MeasureMode mode);
MeasureMode parse_measure_mode(std::string_view text);

inline constexpr int kFormatVersion = 1;
inline constexpr std::int64_t kMergedBatch = -1;

struct HistogramMeta {
  int depth = 2;
  std::int64_t n = 0;
  MeasureMode mode = MeasureMode::feuilletage;
  RootSamplingMode root_mode = RootSamplingMode::corner_uniform;
  std::uint64_t seed = 0;
  std::int64_t maps = 0;
  std::int64_t roots = 0;
  std::int64_t batch = 0;

  friend bool operator==(const HistogramMeta&, const HistogramMeta&) = default;
};

/// Integer-binned counts; counts[d] = number of (realization, root, vertex)
/// triples at distance d.
struct DistanceHistogram {
  HistogramMeta meta;
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const;
  friend bool operator==(const DistanceHistogram&, const DistanceHistogram&) = default;
};

/// rho(x) = counts[x] / total on the integer grid x = 0 .. size-1.
struct Density {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double at(std::int64_t x) const {
    return x >= 0 && x < static_cast<std::int64_t>(values.size()) ? values[static_cast<std::size_t>(x)] : 0.0;
  }
};

void accumulate(DistanceHistogram& h, const DistanceProfile& profile);
/// One observation of a scalar (used for diameter distributions).
void accumulate_value(DistanceHistogram& h, std::int64_t value);

/// Bin-wise sum. Meta must agree on D, n, mode, root mode, seed and roots.
/// Equal batches are treated as a worker partition of one batch (meta kept);
/// different batches give batch = kMergedBatch and summed `maps`.
DistanceHistogram merge(const DistanceHistogram& a, const DistanceHistogram& b);

Density normalize(const DistanceHistogram& h);

/// File format, version 1:
///   `# key=value` for D, n, mode, root_mode, seed, maps, roots, batch,
///   format_version (in that order), then `distance,count` in ascending
///   distance without zero bins, then `# total=<sum>`.
/// A non-empty `quantity` adds `# quantity=<q>` after format_version; it is
/// used only for sidecar files (e.g. diameters).
void write_histogram(std::ostream& out, const DistanceHistogram& h, std::string_view quantity = {});

struct HistogramFile {
  DistanceHistogram histogram;
  std::string quantity;
};

/// Throws std::runtime_error on malformed input or a total mismatch.
HistogramFile read_histogram(std::istream& in);
HistogramFile read_histogram(const std::filesystem::path& path);

std::string histogram_filename(const HistogramMeta& meta);
std::string diameter_filename(const HistogramMeta& meta);

}  // namespace feuilletage
