#include "feuilletage/campaign.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace feuilletage {

std::optional<std::string> validate(const CampaignConfig& c) {
  if (c.depth < 1) return "D must be >= 1";
  if (c.sizes.empty()) return "no n values given";
  for (auto n : c.sizes)
    if (n < 1) return "n values must be >= 1";
  for (auto n0 : c.references)
    if (std::find(c.sizes.begin(), c.sizes.end(), n0) == c.sizes.end())
      return "reference n0=" + std::to_string(n0) + " is not among the n values";
  if (c.maps < 1) return "maps must be >= 1";
  if (c.roots < 1) return "roots must be >= 1";
  if (c.batches < 1) return "batches must be >= 1";
  for (auto d : c.deciles)
    if (!(d > 0.0 && d <= 1.0)) return "deciles must lie in (0, 1]";
  if (c.workers < 0) return "workers must be >= 0";
  return std::nullopt;
}

HistogramMeta batch_meta(const CampaignConfig& c, std::int64_t n, std::int64_t batch) {
  HistogramMeta m;
  m.depth = c.depth;
  m.n = n;
  m.mode = c.mode;
  m.root_mode = c.root_mode;
  m.seed = c.seed;
  m.maps = c.maps;
  m.roots = c.roots;
  m.batch = batch;
  return m;
}

namespace {

BatchResult empty_result(const HistogramMeta& meta) {
  BatchResult r;
  r.distances.meta = meta;
  r.diameters.meta = meta;
  return r;
}

void reduce_into(BatchResult& total, const BatchResult& part) {
  total.distances = merge(total.distances, part.distances);
  total.diameters = merge(total.diameters, part.diameters);
  total.completed += part.completed;
}

}  // namespace

void simulate_realization(const CampaignConfig& c, std::int64_t n, std::uint64_t realization, BatchResult& into) {
  const auto size_seed = derive_seed(MasterSeed{c.seed}, static_cast<std::uint64_t>(n));
  auto build_stream = derive_stream(size_seed, realization, "build");
  auto root_stream = derive_stream(size_seed, realization, "roots");

  auto r = build_feuilletage(c.depth, n, build_stream);
  if (c.mode == MeasureMode::tree) {
    const auto graph = build_tree_graph(r.height);
    r = {};
    for (std::int64_t i = 0; i < c.roots; ++i) {
      const auto p = bfs_distances(graph, sample_root(graph, root_stream, c.root_mode));
      accumulate(into.distances, p);
      accumulate_value(into.diameters, diameter_proxy(p));
    }
  } else {
    const auto graph = build_quotient_graph(r);
    for (std::int64_t i = 0; i < c.roots; ++i) {
      const auto p = bfs_distances(graph, sample_root(r, root_stream, c.root_mode));
      accumulate(into.distances, p);
      accumulate_value(into.diameters, diameter_proxy(p));
    }
  }
  ++into.completed;
}

BatchResult run_batch_serial(const CampaignConfig& c, std::int64_t n, std::int64_t batch) {
  auto result = empty_result(batch_meta(c, n, batch));
  const auto first = static_cast<std::uint64_t>(batch * c.maps);
  for (std::int64_t i = 0; i < c.maps; ++i) simulate_realization(c, n, first + static_cast<std::uint64_t>(i), result);
  return result;
}

BatchResult run_batch(const CampaignConfig& c, std::int64_t n, std::int64_t batch, int workers) {
  const auto meta = batch_meta(c, n, batch);
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  std::vector<BatchResult> partial(static_cast<std::size_t>(threads), empty_result(meta));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  const auto first = static_cast<std::uint64_t>(batch * c.maps);
  bool failed = false;

#pragma omp parallel num_threads(threads)
  {
    const auto tid = static_cast<std::size_t>(omp_get_thread_num());
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < c.maps; ++i) {
      bool stop;
#pragma omp atomic read
      stop = failed;
      if (stop) continue;
      try {
        simulate_realization(c, n, first + static_cast<std::uint64_t>(i), partial[tid]);
      } catch (...) {
        errors[tid] = std::current_exception();
#pragma omp atomic write
        failed = true;
      }
    }
  }

  auto total = empty_result(meta);
  for (const auto& p : partial) reduce_into(total, p);
  for (auto& e : errors) {
    if (!e) continue;
    std::string what = "unknown error";
    try {
      std::rethrow_exception(e);
    } catch (const std::exception& ex) {
      what = ex.what();
    } catch (...) {
    }
    total.distances.meta.maps = total.completed;
    total.diameters.meta.maps = total.completed;
    throw IncompleteBatch(what, std::move(total));
  }
  return total;
}

namespace {

void write_atomically(const std::filesystem::path& path, const DistanceHistogram& h, std::string_view quantity) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    write_histogram(out, h, quantity);
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

bool complete_file_exists(const std::filesystem::path& path, const HistogramMeta& meta) {
  if (!std::filesystem::exists(path)) return false;
  try {
    return read_histogram(path).histogram.meta == meta;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

CampaignSummary run_campaign(const CampaignConfig& c, std::ostream* log) {
  if (auto why = validate(c)) throw std::invalid_argument("invalid campaign config: " + *why);
  std::filesystem::create_directories(c.output_dir);
  CampaignSummary summary;
  for (auto n : c.sizes) {
    for (std::int64_t b = 0; b < c.batches; ++b) {
      const auto meta = batch_meta(c, n, b);
      const auto hist_path = c.output_dir / histogram_filename(meta);
      const auto diam_path = c.output_dir / diameter_filename(meta);
      if (complete_file_exists(hist_path, meta) && complete_file_exists(diam_path, meta)) {
        ++summary.skipped;
        if (log) *log << "skip " << hist_path.filename().string() << '\n';
        continue;
      }
      BatchResult result;
      try {
        result = run_batch(c, n, b, c.workers);
      } catch (const IncompleteBatch& e) {
        auto partial = hist_path;
        partial += ".partial";
        std::ofstream out(partial, std::ios::trunc);
        write_histogram(out, e.partial.distances);
        throw;
      }
      write_atomically(diam_path, result.diameters, "diameter");
      write_atomically(hist_path, result.distances, {});
      ++summary.written;
      if (log) *log << "wrote " << hist_path.filename().string() << " total=" << result.distances.total() << '\n';
    }
  }
  return summary;
}

}  // namespace feuilletage
