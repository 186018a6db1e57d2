#include "feuilletage/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace feuilletage {

std::vector<std::int64_t> HistogramSet::sizes() const {
  std::set<std::int64_t> s;
  for (const auto& [key, h] : distances) s.insert(key.first);
  return {s.begin(), s.end()};
}

std::vector<std::int64_t> HistogramSet::batches() const {
  std::set<std::int64_t> s;
  for (const auto& [key, h] : distances) s.insert(key.second);
  return {s.begin(), s.end()};
}

namespace {

HistogramMeta campaign_of(HistogramMeta m) {
  m.n = 0;
  m.batch = kMergedBatch;
  return m;
}

}  // namespace

HistogramSet load_histograms(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw std::runtime_error("not a directory: " + dir.string());
  HistogramSet set;
  bool first = true;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    const auto name = path.filename().string();
    const bool hist = name.starts_with("hist_") && path.extension() == ".txt";
    const bool diam = name.starts_with("diam_") && path.extension() == ".txt";
    if (!hist && !diam) continue;
    auto file = read_histogram(path);
    const auto& m = file.histogram.meta;
    if (first) {
      set.campaign = campaign_of(m);
      first = false;
    } else if (campaign_of(m) != set.campaign) {
      throw std::runtime_error(name + " belongs to a different campaign");
    }
    auto& target = hist ? set.distances : set.diameters;
    target[{m.n, m.batch}] = std::move(file.histogram);
  }
  if (set.distances.empty()) throw std::runtime_error("no histogram files in " + dir.string());
  return set;
}

FitReport fit_campaign(const HistogramSet& set, const std::vector<std::int64_t>& references,
                       const std::vector<double>& deciles) {
  const auto sizes = set.sizes();
  const auto batches = set.batches();

  std::vector<std::string> missing;
  for (auto n : sizes)
    for (auto b : batches)
      if (!set.distances.contains({n, b})) missing.push_back("n=" + std::to_string(n) + " batch=" + std::to_string(b));
  for (auto n0 : references)
    if (std::find(sizes.begin(), sizes.end(), n0) == sizes.end())
      missing.push_back("n=" + std::to_string(n0) + " (reference, all batches)");
  if (!missing.empty()) {
    std::string msg = "missing histograms:";
    for (const auto& m : missing) msg += "\n  " + m;
    throw std::runtime_error(msg);
  }

  FitReport report;
  report.campaign = set.campaign;
  report.batch_count = static_cast<std::int64_t>(batches.size());

  struct Task {
    std::size_t row;
    std::int64_t batch;
  };
  std::vector<Task> tasks;
  for (auto n0 : references)
    for (double decile : deciles) {
      FitRow row;
      row.n0 = n0;
      row.decile = decile;
      row.batches.resize(batches.size());
      for (std::size_t i = 0; i < batches.size(); ++i) {
        row.batches[i].batch = batches[i];
        tasks.push_back({report.rows.size(), batches[i]});
      }
      report.rows.push_back(std::move(row));
    }

  std::vector<std::string> errors(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    auto& row = report.rows[tasks[t].row];
    const auto b = tasks[t].batch;
    try {
      const auto reference = normalize(set.distances.at({row.n0, b}));
      const auto window = decile_window(reference, row.decile);
      std::vector<SizedDensity> densities;
      for (auto n : sizes)
        if (n < row.n0) densities.push_back({n, normalize(set.distances.at({n, b}))});
      const auto slot = static_cast<std::size_t>(std::find(batches.begin(), batches.end(), b) - batches.begin());
      auto& fit = row.batches[slot];
      fit.collapse = two_pass_collapse(densities, reference, window);
      std::vector<KPoint> points;
      for (const auto& k : fit.collapse.fits) points.push_back({k.n, k.k});
      fit.dh = fit_dh(points, row.n0);
    } catch (const std::exception& e) {
      errors[t] = "n0=" + std::to_string(row.n0) + " batch=" + std::to_string(b) + ": " + e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error("fit failed: " + e);

  for (auto& row : report.rows) {
    std::vector<double> values;
    for (const auto& b : row.batches) values.push_back(b.dh.d_h);
    row.estimate = batch_statistics(values);
  }
  return report;
}

void write_fit_report(std::ostream& out, const FitReport& report) {
  const auto& m = report.campaign;
  out << "# kind=fit_report\n"
      << "# format_version=" << kFormatVersion << '\n'
      << "# D=" << m.depth << '\n'
      << "# mode=" << to_string(m.mode) << '\n'
      << "# root_mode=" << to_string(m.root_mode) << '\n'
      << "# seed=" << m.seed << '\n'
      << "# maps=" << m.maps << '\n'
      << "# roots=" << m.roots << '\n'
      << "# batches=" << report.batch_count << '\n'
      << "# columns batch_fit=n0,decile,batch,d_H,a,b,delta,residual,power_law_d_H,mean_shift,sd_d_H,flags\n"
      << "# columns k=n0,decile,batch,n,k_n,s_n,k_free,residual\n"
      << "# columns summary=n0,decile,d_H_mean,d_H_std,batches\n";
  out << std::setprecision(9);
  for (const auto& row : report.rows) {
    for (const auto& b : row.batches) {
      std::string flags;
      if (b.dh.delta_at_bound) flags += "delta_at_bound;";
      if (!b.dh.converged) flags += "dh_not_converged;";
      for (const auto& k : b.collapse.fits)
        if (!k.converged) {
          flags += "k_not_converged;";
          break;
        }
      for (std::size_t i = 1; i < b.collapse.fits.size(); ++i)
        if (!(b.collapse.fits[i].k < b.collapse.fits[i - 1].k)) {
          flags += "k_not_monotone;";
          break;
        }
      if (std::abs(b.dh.b) >= b.dh.a) flags += "correction_dominates;";
      if (flags.empty()) flags = "ok";
      out << "batch_fit," << row.n0 << ',' << row.decile << ',' << b.batch << ',' << b.dh.d_h << ',' << b.dh.a << ','
          << b.dh.b << ',' << b.dh.delta << ',' << b.dh.residual << ',' << b.dh.power_law_d_h << ','
          << b.collapse.mean_shift << ',' << b.dh.sensitivity[0] << ',' << flags << '\n';
      for (std::size_t i = 0; i < b.collapse.fits.size(); ++i) {
        const auto& k = b.collapse.fits[i];
        out << "k," << row.n0 << ',' << row.decile << ',' << b.batch << ',' << k.n << ',' << k.k << ',' << k.s << ','
            << b.collapse.free_fits[i].k << ',' << k.residual << '\n';
      }
    }
  }
  for (const auto& row : report.rows) {
    out << "summary," << row.n0 << ',' << row.decile << ',' << row.estimate.mean << ',';
    if (row.estimate.std) out << *row.estimate.std;
    else out << "nan";
    out << ',' << row.estimate.values.size() << '\n';
  }
}

std::vector<SummaryRow> read_fit_summary(std::istream& in) {
  std::vector<SummaryRow> rows;
  std::string line;
  int depth = 0;
  std::string mode;
  while (std::getline(in, line)) {
    if (line.starts_with("# D=")) depth = std::stoi(line.substr(4));
    if (line.starts_with("# mode=")) mode = line.substr(7);
    if (!line.starts_with("summary,")) continue;
    std::istringstream s(line.substr(8));
    std::string field;
    std::vector<std::string> f;
    while (std::getline(s, field, ',')) f.push_back(field);
    if (f.size() != 5) throw std::runtime_error("fit report: malformed summary line '" + line + "'");
    SummaryRow r;
    r.depth = depth;
    r.mode = mode;
    r.n0 = std::stoll(f[0]);
    r.decile = std::stod(f[1]);
    r.d_h = std::stod(f[2]);
    r.std = f[3] == "nan" ? std::numeric_limits<double>::quiet_NaN() : std::stod(f[3]);
    r.batches = std::stoll(f[4]);
    rows.push_back(r);
  }
  return rows;
}

namespace {

std::string size_label(std::int64_t n) {
  std::ostringstream s;
  const auto log2 = std::log2(static_cast<double>(n));
  if (std::abs(log2 - std::round(log2)) < 1e-12) s << "2^" << static_cast<int>(std::round(log2)) << " = ";
  s << n;
  return s.str();
}

}  // namespace

std::string format_table(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(8) << "object" << " | " << std::setw(16) << "n0" << " | " << std::setw(6) << "decile"
      << " | d_H\n";
  out << std::string(60, '-') << '\n';
  for (const auto& r : rows) {
    std::ostringstream object;
    object << (r.mode == "tree" ? "T^" : "R[") << r.depth << (r.mode == "tree" ? "" : "]");
    out << std::left << std::setw(8) << object.str() << " | " << std::setw(16) << size_label(r.n0) << " | "
        << std::fixed << std::setprecision(2) << std::setw(6) << r.decile << " | " << std::defaultfloat
        << std::setprecision(6) << r.d_h;
    if (std::isnan(r.std)) out << " (single batch)";
    else out << " +- " << r.std;
    out << '\n';
  }
  return out.str();
}

void write_plot_data(std::ostream& out, const BatchFit& fit, std::int64_t n0) {
  out << "# log(n/n0) log(k_n) log(model)\n" << std::setprecision(10);
  std::vector<KPoint> points;
  for (const auto& k : fit.collapse.fits) points.push_back({k.n, k.k});
  points.push_back({n0, 1.0});
  std::sort(points.begin(), points.end(), [](auto a, auto b) { return a.n < b.n; });
  for (const auto& p : points) {
    const double ratio = static_cast<double>(p.n) / static_cast<double>(n0);
    out << std::log(ratio) << ' ' << std::log(p.k) << ' ' << std::log(dh_model(fit.dh, ratio)) << '\n';
  }
}

void write_plot_files(const std::filesystem::path& dir, const FitReport& report) {
  std::filesystem::create_directories(dir);
  for (const auto& row : report.rows)
    for (const auto& b : row.batches) {
      std::ostringstream name;
      name << "plot_n0_" << row.n0 << "_d" << static_cast<int>(std::lround(row.decile * 100)) << "_b" << b.batch
           << ".dat";
      std::ofstream out(dir / name.str());
      if (!out) throw std::runtime_error("cannot write " + (dir / name.str()).string());
      write_plot_data(out, b, row.n0);
    }
}

double grouped_median(const DistanceHistogram& h) {
  const auto total = h.total();
  if (total == 0) throw std::invalid_argument("grouped_median: empty histogram");
  const double half = static_cast<double>(total) / 2.0;
  double below = 0.0;
  for (std::size_t v = 0; v < h.counts.size(); ++v) {
    const auto c = static_cast<double>(h.counts[v]);
    if (c > 0 && below + c >= half) return static_cast<double>(v) - 0.5 + (half - below) / c;
    below += c;
  }
  return static_cast<double>(h.counts.size()) - 0.5;
}

std::vector<DiameterRow> diameter_summary(const HistogramSet& set) {
  std::map<std::int64_t, DistanceHistogram> merged;
  for (const auto& [key, h] : set.diameters) {
    auto it = merged.find(key.first);
    if (it == merged.end()) merged.emplace(key.first, h);
    else it->second = merge(it->second, h);
  }
  const double exponent = 1.0 / std::pow(2.0, set.campaign.depth);
  std::vector<DiameterRow> rows;
  for (const auto& [n, h] : merged) {
    DiameterRow r;
    r.n = n;
    r.median = grouped_median(h);
    r.trend = r.median / std::pow(static_cast<double>(n), exponent);
    if (!rows.empty()) {
      r.ratio = r.median / rows.back().median;
      r.expected = std::pow(static_cast<double>(n) / static_cast<double>(rows.back().n), exponent);
    }
    rows.push_back(r);
  }
  return rows;
}

std::string format_diameter_table(const std::vector<DiameterRow>& rows, int depth) {
  std::ostringstream out;
  out << "n | median max distance | ratio to previous | expected (n ratio)^(1/" << (1 << depth)
      << ") | median / n^(1/" << (1 << depth) << ")\n";
  out << std::setprecision(6);
  for (const auto& r : rows) {
    out << r.n << " | " << r.median << " | ";
    if (r.ratio > 0) out << r.ratio << " | " << r.expected;
    else out << "- | -";
    out << " | " << r.trend << '\n';
  }
  return out.str();
}

}  // namespace feuilletage
