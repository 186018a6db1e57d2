#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "feuilletage/histograms.hpp"

namespace feuilletage {

struct CampaignConfig {
  int depth = 2;
  MeasureMode mode = MeasureMode::feuilletage;
  std::vector<std::int64_t> sizes;       // n values
  std::vector<std::int64_t> references;  // n0 values, each must be in `sizes`
  std::int64_t maps = 100;               // realizations per (n, batch)
  std::int64_t roots = 10;               // roots per realization
  std::int64_t batches = 1;
  std::vector<double> deciles{0.75, 0.50, 0.25};
  RootSamplingMode root_mode = RootSamplingMode::corner_uniform;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "campaign";
  int workers = 0;  // 0: OpenMP default
};

/// Human-readable reason if the config breaks an invariant.
std::optional<std::string> validate(const CampaignConfig& config);

HistogramMeta batch_meta(const CampaignConfig& config, std::int64_t n, std::int64_t batch);

/// Distance histogram and the distribution of per-profile maximum distances.
struct BatchResult {
  DistanceHistogram distances;
  DistanceHistogram diameters;
  std::int64_t completed = 0;  // realizations actually accumulated
};

/// Thrown when a batch could not finish; carries what was accumulated.
struct IncompleteBatch : std::runtime_error {
  IncompleteBatch(const std::string& what, BatchResult partial_result)
      : std::runtime_error(what), partial(std::move(partial_result)) {}
  BatchResult partial;
};

/// All work for realization index `realization` of (n, batch). Pure given
/// (config.seed, n, realization).
void simulate_realization(const CampaignConfig& config, std::int64_t n, std::uint64_t realization, BatchResult& into);

/// Realizations split statically across OpenMP threads, worker-local
/// histograms reduced at the end. Output does not depend on `workers`.
BatchResult run_batch(const CampaignConfig& config, std::int64_t n, std::int64_t batch, int workers = 0);

/// Single-threaded reference for run_batch.
BatchResult run_batch_serial(const CampaignConfig& config, std::int64_t n, std::int64_t batch);

struct CampaignSummary {
  int written = 0;
  int skipped = 0;
};

/// Writes one histogram file (plus diameter sidecar) per (n, batch) into
/// config.output_dir. Complete files already present are skipped; on failure
/// the partial result is flushed to `<file>.partial` and the error rethrown.
CampaignSummary run_campaign(const CampaignConfig& config, std::ostream* log = nullptr);

}  // namespace feuilletage
