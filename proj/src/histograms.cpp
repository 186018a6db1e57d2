#include "feuilletage/histograms.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace feuilletage {

std::string_view to_string(MeasureMode mode) { return mode == MeasureMode::tree ? "tree" : "feuilletage"; }

MeasureMode parse_measure_mode(std::string_view text) {
  if (text == "tree") return MeasureMode::tree;
  if (text == "feuilletage" || text == "map") return MeasureMode::feuilletage;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

std::uint64_t DistanceHistogram::total() const { return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}); }

void accumulate(DistanceHistogram& h, const DistanceProfile& profile) {
  if (h.counts.size() <= static_cast<std::size_t>(profile.max_distance))
    h.counts.resize(static_cast<std::size_t>(profile.max_distance) + 1, 0);
  for (auto d : profile.dist) ++h.counts[static_cast<std::size_t>(d)];
}

void accumulate_value(DistanceHistogram& h, std::int64_t value) {
  if (value < 0) throw std::invalid_argument("accumulate_value: negative value");
  if (h.counts.size() <= static_cast<std::size_t>(value)) h.counts.resize(static_cast<std::size_t>(value) + 1, 0);
  ++h.counts[static_cast<std::size_t>(value)];
}

DistanceHistogram merge(const DistanceHistogram& a, const DistanceHistogram& b) {
  const auto& x = a.meta;
  const auto& y = b.meta;
  if (x.depth != y.depth || x.n != y.n || x.mode != y.mode || x.root_mode != y.root_mode || x.seed != y.seed ||
      x.roots != y.roots)
    throw std::invalid_argument("merge: incompatible histogram metadata");
  DistanceHistogram out;
  out.meta = x;
  if (x.batch != y.batch) {
    out.meta.batch = kMergedBatch;
    out.meta.maps = x.maps + y.maps;
  } else if (x.maps != y.maps) {
    throw std::invalid_argument("merge: worker partitions of one batch disagree on maps");
  }
  out.counts.assign(std::max(a.counts.size(), b.counts.size()), 0);
  for (std::size_t i = 0; i < a.counts.size(); ++i) out.counts[i] += a.counts[i];
  for (std::size_t i = 0; i < b.counts.size(); ++i) out.counts[i] += b.counts[i];
  return out;
}

Density normalize(const DistanceHistogram& h) {
  const auto total = h.total();
  if (total == 0) throw std::invalid_argument("normalize: empty histogram");
  Density d;
  d.values.resize(h.counts.size());
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    d.values[i] = static_cast<double>(h.counts[i]) / static_cast<double>(total);
  return d;
}

void write_histogram(std::ostream& out, const DistanceHistogram& h, std::string_view quantity) {
  const auto& m = h.meta;
  out << "# D=" << m.depth << '\n'
      << "# n=" << m.n << '\n'
      << "# mode=" << to_string(m.mode) << '\n'
      << "# root_mode=" << to_string(m.root_mode) << '\n'
      << "# seed=" << m.seed << '\n'
      << "# maps=" << m.maps << '\n'
      << "# roots=" << m.roots << '\n'
      << "# batch=" << m.batch << '\n'
      << "# format_version=" << kFormatVersion << '\n';
  if (!quantity.empty()) out << "# quantity=" << quantity << '\n';
  for (std::size_t d = 0; d < h.counts.size(); ++d)
    if (h.counts[d] != 0) out << d << ',' << h.counts[d] << '\n';
  out << "# total=" << h.total() << '\n';
}

namespace {

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw std::runtime_error("histogram file: bad " + std::string(what) + " '" + std::string(text) + "'");
  return value;
}

}  // namespace

HistogramFile read_histogram(std::istream& in) {
  HistogramFile file;
  auto& h = file.histogram;
  std::map<std::string, std::string, std::less<>> header;
  std::string line;
  bool have_total = false;
  std::uint64_t declared_total = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.starts_with("# ")) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw std::runtime_error("histogram file: malformed header '" + line + "'");
      auto key = line.substr(2, eq - 2);
      auto value = line.substr(eq + 1);
      if (key == "total") {
        declared_total = parse_number<std::uint64_t>(value, "total");
        have_total = true;
      } else {
        header[key] = value;
      }
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("histogram file: malformed row '" + line + "'");
    const auto d = parse_number<std::uint64_t>(std::string_view(line).substr(0, comma), "distance");
    const auto c = parse_number<std::uint64_t>(std::string_view(line).substr(comma + 1), "count");
    if (h.counts.size() <= d) h.counts.resize(d + 1, 0);
    h.counts[d] += c;
  }
  auto get = [&](std::string_view key) -> const std::string& {
    auto it = header.find(key);
    if (it == header.end()) throw std::runtime_error("histogram file: missing header key '" + std::string(key) + "'");
    return it->second;
  };
  if (parse_number<int>(get("format_version"), "format_version") != kFormatVersion)
    throw std::runtime_error("histogram file: unsupported format_version");
  h.meta.depth = parse_number<int>(get("D"), "D");
  h.meta.n = parse_number<std::int64_t>(get("n"), "n");
  h.meta.mode = parse_measure_mode(get("mode"));
  h.meta.root_mode = parse_root_mode(get("root_mode"));
  h.meta.seed = parse_number<std::uint64_t>(get("seed"), "seed");
  h.meta.maps = parse_number<std::int64_t>(get("maps"), "maps");
  h.meta.roots = parse_number<std::int64_t>(get("roots"), "roots");
  h.meta.batch = parse_number<std::int64_t>(get("batch"), "batch");
  if (auto it = header.find("quantity"); it != header.end()) file.quantity = it->second;
  if (!have_total) throw std::runtime_error("histogram file: missing total (incomplete file?)");
  if (declared_total != h.total()) throw std::runtime_error("histogram file: total does not match counts");
  return file;
}

HistogramFile read_histogram(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_histogram(in);
}

namespace {

std::string stem(const HistogramMeta& m) {
  std::ostringstream s;
  s << "D" << m.depth << '_' << to_string(m.mode) << "_n" << m.n << "_b" << m.batch << ".txt";
  return s.str();
}

}  // namespace

std::string histogram_filename(const HistogramMeta& meta) { return "hist_" + stem(meta); }
std::string diameter_filename(const HistogramMeta& meta) { return "diam_" + stem(meta); }

}  // namespace feuilletage
